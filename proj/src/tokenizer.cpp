#include "occlang/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "occlang/util.hpp"

namespace occlang {

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::hashtag: return "hashtag";
    case TokenKind::mention: return "mention";
    case TokenKind::url: return "url";
    case TokenKind::emoticon: return "emoticon";
    case TokenKind::emoji: return "emoji";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
  }
  return "unknown";
}

EmojiTable EmojiTable::load(const std::string& path) {
  std::vector<std::string> entries;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    line.erase(0, start);
    if (!line.empty()) entries.push_back(line);
  }
  return from_entries(std::move(entries));
}

EmojiTable EmojiTable::from_entries(std::vector<std::string> entries) {
  EmojiTable table;
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  if (entries.empty()) throw Error("emoji table is empty");
  table.entries_ = std::move(entries);
  table.index();
  return table;
}

void EmojiTable::index() {
  for (auto& bucket : by_first_) bucket.clear();
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    by_first_[static_cast<unsigned char>(entries_[i][0])].push_back(i);
  }
  for (auto& bucket : by_first_) {
    std::sort(bucket.begin(), bucket.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (entries_[a].size() != entries_[b].size()) {
        return entries_[a].size() > entries_[b].size();
      }
      return entries_[a] < entries_[b];
    });
  }
}

bool EmojiTable::contains(std::string_view s) const {
  return std::binary_search(entries_.begin(), entries_.end(), s);
}

std::size_t EmojiTable::match(std::string_view text, std::size_t pos) const {
  if (pos >= text.size()) return 0;
  for (std::uint32_t idx : by_first_[static_cast<unsigned char>(text[pos])]) {
    const std::string& entry = entries_[idx];
    if (text.compare(pos, entry.size(), entry) == 0) return entry.size();
  }
  return 0;
}

namespace {

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_word_char(char c) { return is_alnum(c) || c == '_'; }

// Bytes of the UTF-8 sequence led by `c`; malformed input degrades to 1.
std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 1;
}

// Canonical (lowercase) emoticon forms. Entries never contain whitespace so
// tokenization stays idempotent under space-rejoining; ":D"-style case
// variants are unified by case-insensitive matching against this list.
const std::vector<std::string> kEmoticons = {
    ":-)", ":-(", ":-d", ":-p", ":-o", ":-/", ":-\\", ":-|", ":-*",
    ";-)", ";-(", ";-d", ";-p", ":^)", ":^(", ":')",  ":'(",
    ":)",  ":(",  ":d",  ":p",  ":o",  ":/",  ":\\",  ":|",  ":*",
    ":3",  ":s",  ":$",  ":@",  ";)",  ";(",  ";d",   ";p",
    "=)",  "=(",  "=d",  "=p",  "</3", "<3",  "^_^",  "-_-", "^^",
};

struct EmoticonMatcher {
  // Grouped by first byte, longest first, for single-pass prefix tests.
  std::array<std::vector<const std::string*>, 256> by_first{};

  EmoticonMatcher() {
    for (const auto& e : kEmoticons) {
      by_first[static_cast<unsigned char>(e[0])].push_back(&e);
    }
    for (auto& bucket : by_first) {
      std::sort(bucket.begin(), bucket.end(), [](const std::string* a, const std::string* b) {
        if (a->size() != b->size()) return a->size() > b->size();
        return *a < *b;
      });
    }
  }

  // Returns the canonical form matched at `pos`, or nullptr. Matching is
  // case-insensitive; an emoticon ending in a letter or digit must not be
  // followed by a word character (":dog" is not ":d" + "og").
  const std::string* match(std::string_view text, std::size_t pos) const {
    const char lead = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
    for (const std::string* e : by_first[static_cast<unsigned char>(lead)]) {
      if (pos + e->size() > text.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < e->size(); ++i) {
        const char c =
            static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos + i])));
        if (c != (*e)[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (is_alnum(e->back()) && pos + e->size() < text.size() &&
          is_word_char(text[pos + e->size()])) {
        continue;
      }
      return e;
    }
    return nullptr;
  }
};

const EmoticonMatcher& emoticon_matcher() {
  static const EmoticonMatcher matcher;
  return matcher;
}

// "scheme://" or "www." at pos.
std::size_t url_start_len(std::string_view text, std::size_t pos) {
  if (text.compare(pos, 4, "www.") == 0) return 4;
  std::size_t i = pos;
  if (i >= text.size() || !is_alpha(text[i])) return 0;
  ++i;
  while (i < text.size() &&
         (is_alnum(text[i]) || text[i] == '+' || text[i] == '.' || text[i] == '-')) {
    ++i;
  }
  if (text.compare(i, 3, "://") == 0) return i - pos + 3;
  return 0;
}

}  // namespace

const std::vector<std::string>& emoticon_inventory() { return kEmoticons; }

std::vector<Token> tokenize(std::string_view text, const EmojiTable& emoji) {
  std::vector<Token> tokens;
  const EmoticonMatcher& emoticons = emoticon_matcher();
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (is_ws(text[i])) {
      ++i;
      continue;
    }
    // 1. table emojis, longest match, even inside other runs
    if (const std::size_t len = emoji.match(text, i)) {
      tokens.push_back({std::string(text.substr(i, len)), TokenKind::emoji});
      i += len;
      continue;
    }
    // 2. URLs: consume to whitespace, but a table emoji still splits off
    if (const std::size_t head = url_start_len(text, i)) {
      std::size_t j = i + head;
      while (j < n && !is_ws(text[j]) && emoji.match(text, j) == 0) ++j;
      tokens.push_back({std::string(text.substr(i, j - i)), TokenKind::url});
      i = j;
      continue;
    }
    // 3. mentions, 4. hashtags
    if ((text[i] == '@' || text[i] == '#') && i + 1 < n && is_word_char(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_word_char(text[j])) ++j;
      tokens.push_back({lower_ascii(std::string(text.substr(i, j - i))),
                        text[i] == '@' ? TokenKind::mention : TokenKind::hashtag});
      i = j;
      continue;
    }
    // 5. emoticons
    if (const std::string* e = emoticons.match(text, i)) {
      tokens.push_back({*e, TokenKind::emoticon});
      i += e->size();
      continue;
    }
    // 6. numbers: digit runs, separators kept when flanked by digits
    if (is_digit(text[i])) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_digit(text[j])) {
          ++j;
        } else if ((text[j] == '.' || text[j] == ',') && j + 1 < n && is_digit(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      tokens.push_back({std::string(text.substr(i, j - i)), TokenKind::number});
      i = j;
      continue;
    }
    // 7. words: letter-led alphanumeric runs with internal apostrophes
    if (is_alpha(text[i])) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_alnum(text[j])) {
          ++j;
        } else if (text[j] == '\'' && j + 1 < n && is_alnum(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      tokens.push_back({lower_ascii(std::string(text.substr(i, j - i))), TokenKind::word});
      i = j;
      continue;
    }
    // 8. residue: one code point of punctuation
    const std::size_t len =
        std::min(utf8_len(static_cast<unsigned char>(text[i])), n - i);
    tokens.push_back({std::string(text.substr(i, len)), TokenKind::punctuation});
    i += len;
  }
  return tokens;
}

}  // namespace occlang
