#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "occlang/corpus.hpp"
#include "occlang/tokenizer.hpp"

namespace occlang {

/// A term is a sequence of 1..max_n token surfaces.
using Term = std::vector<std::string>;

/// Joins a term with the 0x1f unit separator; unambiguous even for surfaces
/// containing spaces.
std::string term_key(const Term& term);
Term term_from_key(const std::string& key);
std::string term_display(const Term& term);

struct TermStats {
  Term term;
  double user_support = 0.0;
  long long total_count = 0;
  double pmi = std::numeric_limits<double>::quiet_NaN();  // defined for n >= 2

  int n() const { return static_cast<int>(term.size()); }
};

struct VocabularyConfig {
  double min_support = 0.10;
  double max_support = 0.95;
  double pmi_factor = 2.0;
  int max_n = 3;
  double log_base = 2.0;

  void validate() const;
};

struct Vocabulary {
  // Ordered by n, then descending total_count, then lexicographic.
  std::vector<TermStats> terms;

  std::vector<TermStats> at_level(int n) const;
};

/// Per-user token surfaces eligible for vocabulary terms (words, hashtags,
/// emoticons, emojis), split into runs at excluded tokens so n-grams never
/// span a URL, mention, number or punctuation. total_tokens counts every
/// token of every kind and is the N of the PMI estimator.
struct TokenizedCorpus {
  std::vector<std::vector<std::vector<std::string>>> user_runs;
  long long total_tokens = 0;

  std::size_t n_users() const { return user_runs.size(); }
  static TokenizedCorpus build(const Corpus& corpus, const EmojiTable& emoji);
};

bool vocabulary_kind(TokenKind kind);

/// Corpus counts backing the PMI estimate: P(x) = count(x) / total_tokens.
struct CorpusStats {
  long long total_tokens = 0;
  std::unordered_map<std::string, long long> counts;  // term_key -> occurrences

  long long count(const Term& term) const;
  /// Counts every contiguous n-gram up to max_n, within runs.
  static CorpusStats build(const TokenizedCorpus& tc, int max_n);
};

/// Fraction of users whose aggregate document contains `term` contiguously.
double compute_user_support(const TokenizedCorpus& tc, const Term& term);
double compute_user_support(const Corpus& corpus, const EmojiTable& emoji, const Term& term);

/// Corpus-occurring n-grams of length `level` whose leading and trailing
/// (level-1)-grams both appear in `retained`. Sorted, unique.
std::vector<Term> generate_candidates(const TokenizedCorpus& tc, int level,
                                      const std::vector<Term>& retained);

/// log_base( P(phrase) / prod_t P(t) ). Throws if the phrase was never
/// observed or a constituent unigram has zero count.
double pmi(const CorpusStats& stats, const Term& phrase, double log_base = 2.0);

/// Full pipeline: unigram support filter, level-wise Apriori growth with the
/// same support filter, max-support removal on all levels, then the PMI
/// filter (keep pmi >= pmi_factor * n) on n >= 2.
Vocabulary build_vocabulary(const Corpus& corpus, const EmojiTable& emoji,
                            const VocabularyConfig& config);

void write_vocabulary_csv(const Vocabulary& vocab, const std::string& path);

}  // namespace occlang
