#pragma once

#include <map>
#include <string>
#include <vector>

#include "occlang/corpus.hpp"
#include "occlang/matrix.hpp"
#include "occlang/tokenizer.hpp"

namespace occlang {

/// Category dictionary in the classic .dic interchange format: a '%' line,
/// `id<TAB>name` category lines, a closing '%', then `pattern<TAB>id...`
/// lines. A trailing '*' makes a pattern a prefix wildcard.
class Lexicon {
 public:
  static Lexicon parse(const std::string& path);
  static Lexicon parse_text(const std::string& text, const std::string& source);

  const std::map<int, std::string>& categories() const { return categories_; }
  std::size_t pattern_count() const { return n_patterns_; }

  /// Categories the word matches: an exact pattern wins, otherwise the
  /// longest matching wildcard prefix. Empty when nothing matches.
  const std::vector<int>& match(const std::string& word) const;

  /// Fixed order: WC, Sixltr, Exclam, Parenth, then categories by id.
  std::vector<std::string> feature_names() const;

 private:
  std::map<int, std::string> categories_;
  std::map<std::string, std::vector<int>> exact_;
  std::map<std::string, std::vector<int>> wildcard_;  // key = prefix without '*'
  std::size_t n_patterns_ = 0;
};

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;

  double at(const std::string& name) const;
};

/// Category percentages over word tokens (hashtag bodies included as words)
/// plus structural features: WC, Sixltr (% words with more than six
/// letters), Exclam and Parenth (% of all tokens). Empty input gives zeros.
FeatureVector extract_features(const std::vector<Token>& tokens, const Lexicon& lexicon);

/// One row per corpus user, columns prefixed "lex:".
FeatureMatrix lexicon_feature_matrix(const Corpus& corpus, const Lexicon& lexicon,
                                     const EmojiTable& emoji);

}  // namespace occlang
