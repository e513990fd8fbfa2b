#include "occlang/phrase_miner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "occlang/csv.hpp"
#include "occlang/util.hpp"

namespace occlang {

namespace {
constexpr char kSep = '\x1f';
}

std::string term_key(const Term& term) {
  std::string key;
  for (std::size_t i = 0; i < term.size(); ++i) {
    if (i) key += kSep;
    key += term[i];
  }
  return key;
}

Term term_from_key(const std::string& key) {
  Term term;
  std::string part;
  for (char c : key) {
    if (c == kSep) {
      term.push_back(part);
      part.clear();
    } else {
      part += c;
    }
  }
  term.push_back(part);
  return term;
}

std::string term_display(const Term& term) { return join(term, " "); }

void VocabularyConfig::validate() const {
  if (!(min_support >= 0.0 && min_support < max_support && max_support <= 1.0)) {
    throw Error("vocabulary config: need 0 <= min_support < max_support <= 1");
  }
  if (max_n < 1) throw Error("vocabulary config: max_n must be >= 1");
  if (!(log_base > 0.0) || log_base == 1.0) {
    throw Error("vocabulary config: log_base must be positive and != 1");
  }
}

std::vector<TermStats> Vocabulary::at_level(int n) const {
  std::vector<TermStats> out;
  for (const auto& t : terms) {
    if (t.n() == n) out.push_back(t);
  }
  return out;
}

bool vocabulary_kind(TokenKind kind) {
  return kind == TokenKind::word || kind == TokenKind::hashtag ||
         kind == TokenKind::emoticon || kind == TokenKind::emoji;
}

TokenizedCorpus TokenizedCorpus::build(const Corpus& corpus, const EmojiTable& emoji) {
  TokenizedCorpus tc;
  tc.user_runs.reserve(corpus.users.size());
  for (const auto& user : corpus.users) {
    const std::vector<Token> tokens = tokenize(aggregate_document(user), emoji);
    tc.total_tokens += static_cast<long long>(tokens.size());
    std::vector<std::vector<std::string>> runs;
    std::vector<std::string> run;
    for (const auto& tok : tokens) {
      if (vocabulary_kind(tok.kind)) {
        run.push_back(tok.surface);
      } else if (!run.empty()) {
        runs.push_back(std::move(run));
        run.clear();
      }
    }
    if (!run.empty()) runs.push_back(std::move(run));
    tc.user_runs.push_back(std::move(runs));
  }
  return tc;
}

long long CorpusStats::count(const Term& term) const {
  const auto it = counts.find(term_key(term));
  return it == counts.end() ? 0 : it->second;
}

CorpusStats CorpusStats::build(const TokenizedCorpus& tc, int max_n) {
  CorpusStats stats;
  stats.total_tokens = tc.total_tokens;
  for (const auto& runs : tc.user_runs) {
    for (const auto& run : runs) {
      for (int n = 1; n <= max_n; ++n) {
        if (run.size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t i = 0; i + n <= run.size(); ++i) {
          std::string key = run[i];
          for (int j = 1; j < n; ++j) {
            key += kSep;
            key += run[i + j];
          }
          ++stats.counts[key];
        }
      }
    }
  }
  return stats;
}

namespace {

struct LevelCounts {
  // term_key -> (total occurrences, distinct users)
  std::unordered_map<std::string, std::pair<long long, long long>> counts;
};

// Counts n-grams at one level, optionally restricted to the Apriori
// candidate set (leading and trailing sub-grams retained at the previous
// level). User counts come from per-user presence sets.
LevelCounts count_level(const TokenizedCorpus& tc, int n,
                        const std::unordered_set<std::string>* retained_prev) {
  LevelCounts level;
  std::unordered_set<std::string> seen_this_user;
  for (const auto& runs : tc.user_runs) {
    seen_this_user.clear();
    for (const auto& run : runs) {
      if (run.size() < static_cast<std::size_t>(n)) continue;
      for (std::size_t i = 0; i + n <= run.size(); ++i) {
        if (retained_prev) {
          std::string lead = run[i];
          for (int j = 1; j < n - 1; ++j) {
            lead += kSep;
            lead += run[i + j];
          }
          if (!retained_prev->count(lead)) continue;
          std::string trail = run[i + 1];
          for (int j = 2; j < n; ++j) {
            trail += kSep;
            trail += run[i + j];
          }
          if (!retained_prev->count(trail)) continue;
        }
        std::string key = run[i];
        for (int j = 1; j < n; ++j) {
          key += kSep;
          key += run[i + j];
        }
        auto& entry = level.counts[key];
        ++entry.first;
        if (seen_this_user.insert(key).second) ++entry.second;
      }
    }
  }
  return level;
}

bool term_order(const TermStats& a, const TermStats& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  if (a.total_count != b.total_count) return a.total_count > b.total_count;
  return a.term < b.term;
}

}  // namespace

double compute_user_support(const TokenizedCorpus& tc, const Term& term) {
  if (tc.n_users() == 0) throw Error("compute_user_support: empty corpus");
  if (term.empty()) throw Error("compute_user_support: empty term");
  const std::size_t n = term.size();
  long long users = 0;
  for (const auto& runs : tc.user_runs) {
    bool found = false;
    for (const auto& run : runs) {
      if (run.size() < n) continue;
      for (std::size_t i = 0; !found && i + n <= run.size(); ++i) {
        found = std::equal(term.begin(), term.end(), run.begin() + i);
      }
      if (found) break;
    }
    if (found) ++users;
  }
  return static_cast<double>(users) / static_cast<double>(tc.n_users());
}

double compute_user_support(const Corpus& corpus, const EmojiTable& emoji, const Term& term) {
  if (corpus.users.empty()) throw Error("compute_user_support: empty corpus");
  return compute_user_support(TokenizedCorpus::build(corpus, emoji), term);
}

std::vector<Term> generate_candidates(const TokenizedCorpus& tc, int level,
                                      const std::vector<Term>& retained) {
  if (level < 2) throw Error("generate_candidates: level must be >= 2");
  std::unordered_set<std::string> prev;
  for (const auto& term : retained) {
    if (static_cast<int>(term.size()) != level - 1) {
      throw Error("generate_candidates: retained terms must have length level-1");
    }
    prev.insert(term_key(term));
  }
  const LevelCounts counts = count_level(tc, level, &prev);
  std::set<std::string> keys;
  for (const auto& [key, _] : counts.counts) keys.insert(key);
  std::vector<Term> out;
  out.reserve(keys.size());
  for (const auto& key : keys) out.push_back(term_from_key(key));
  return out;
}

double pmi(const CorpusStats& stats, const Term& phrase, double log_base) {
  if (phrase.size() < 2) throw Error("pmi: phrase must have length >= 2");
  if (stats.total_tokens <= 0) throw Error("pmi: empty corpus stats");
  const long long phrase_count = stats.count(phrase);
  if (phrase_count <= 0) {
    throw Error("pmi: phrase \"" + term_display(phrase) + "\" has zero count (undefined)");
  }
  // log(P(phrase) / prod P(t)) with P(x) = c(x)/N, evaluated in log space:
  // log c(phrase) + (k-1) log N - sum log c(t).
  const double log_n = std::log(static_cast<double>(stats.total_tokens));
  double acc = std::log(static_cast<double>(phrase_count)) +
               (static_cast<double>(phrase.size()) - 1.0) * log_n;
  for (const auto& word : phrase) {
    const long long c = stats.count({word});
    if (c <= 0) {
      throw Error("pmi: constituent \"" + word + "\" has zero count");
    }
    acc -= std::log(static_cast<double>(c));
  }
  return acc / std::log(log_base);
}

Vocabulary build_vocabulary(const Corpus& corpus, const EmojiTable& emoji,
                            const VocabularyConfig& config) {
  config.validate();
  if (corpus.users.empty()) throw Error("build_vocabulary: empty corpus");
  const TokenizedCorpus tc = TokenizedCorpus::build(corpus, emoji);
  const double n_users = static_cast<double>(tc.n_users());

  // Level-wise growth. Unigram counts are kept in full for the PMI terms.
  const LevelCounts unigrams = count_level(tc, 1, nullptr);
  CorpusStats stats;
  stats.total_tokens = tc.total_tokens;
  for (const auto& [key, counts] : unigrams.counts) stats.counts[key] = counts.first;

  struct Retained {
    std::string key;
    long long total = 0;
    long long users = 0;
  };
  std::vector<std::vector<Retained>> levels;

  std::vector<Retained> level1;
  for (const auto& [key, counts] : unigrams.counts) {
    if (static_cast<double>(counts.second) / n_users >= config.min_support) {
      level1.push_back({key, counts.first, counts.second});
    }
  }
  levels.push_back(std::move(level1));

  for (int n = 2; n <= config.max_n; ++n) {
    std::unordered_set<std::string> prev;
    for (const auto& r : levels[n - 2]) prev.insert(r.key);
    if (prev.empty()) {
      levels.emplace_back();
      continue;
    }
    const LevelCounts counts = count_level(tc, n, &prev);
    std::vector<Retained> level;
    for (const auto& [key, c] : counts.counts) {
      stats.counts[key] = c.first;
      if (static_cast<double>(c.second) / n_users >= config.min_support) {
        level.push_back({key, c.first, c.second});
      }
    }
    levels.push_back(std::move(level));
  }

  Vocabulary vocab;
  for (const auto& level : levels) {
    for (const auto& r : level) {
      const double support = static_cast<double>(r.users) / n_users;
      if (support > config.max_support) continue;
      TermStats ts;
      ts.term = term_from_key(r.key);
      ts.user_support = support;
      ts.total_count = r.total;
      if (ts.n() >= 2) {
        ts.pmi = pmi(stats, ts.term, config.log_base);
        if (ts.pmi < config.pmi_factor * ts.n()) continue;
      }
      vocab.terms.push_back(std::move(ts));
    }
  }
  std::sort(vocab.terms.begin(), vocab.terms.end(), term_order);
  return vocab;
}

void write_vocabulary_csv(const Vocabulary& vocab, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(vocab.terms.size());
  for (const auto& t : vocab.terms) {
    rows.push_back({term_display(t.term), std::to_string(t.n()),
                    format_double(t.user_support), std::to_string(t.total_count),
                    t.n() >= 2 ? format_double(t.pmi) : std::string()});
  }
  write_csv(path, {"term", "n", "user_support", "total_count", "pmi"}, rows);
}

}  // namespace occlang
