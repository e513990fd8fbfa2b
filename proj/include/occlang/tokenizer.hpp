#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace occlang {

enum class TokenKind : std::uint8_t {
  word,
  hashtag,
  mention,
  url,
  emoticon,
  emoji,
  number,
  punctuation,
};

const char* token_kind_name(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind;

  bool operator==(const Token&) const = default;
};

/// Fixed emoji inventory, one entry per line in the table file ('#' comments
/// allowed). Entries may span several code points; matching is longest-first.
class EmojiTable {
 public:
  static EmojiTable load(const std::string& path);
  static EmojiTable from_entries(std::vector<std::string> entries);

  bool empty() const { return entries_.empty(); }
  const std::vector<std::string>& entries() const { return entries_; }
  bool contains(std::string_view s) const;

  /// Length in bytes of the longest entry starting at `pos`, or 0.
  std::size_t match(std::string_view text, std::size_t pos) const;

 private:
  std::vector<std::string> entries_;                      // sorted, unique
  std::array<std::vector<std::uint32_t>, 256> by_first_;  // per lead byte, longest first
  void index();
};

/// Splits a post into typed tokens. Ordered rules: table emojis
/// (longest match, anywhere, even glued to words), URLs, @mentions,
/// #hashtags, a fixed emoticon list, numbers, alphanumeric words with
/// internal apostrophes, then single-code-point punctuation for the rest.
/// Words, hashtags and mentions are lowercased; emoticon surfaces are
/// canonicalized to the list form.
std::vector<Token> tokenize(std::string_view text, const EmojiTable& emoji);

/// The built-in emoticon inventory (canonical, lowercase forms).
const std::vector<std::string>& emoticon_inventory();

}  // namespace occlang
