#include "occlang/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "occlang/csv.hpp"
#include "occlang/kernels.hpp"
#include "occlang/util.hpp"

namespace occlang {

FeatureMatrix tfidf(const Corpus& corpus, const EmojiTable& emoji, const Vocabulary& vocab) {
  if (vocab.terms.empty()) throw Error("tfidf: empty vocabulary");
  const TokenizedCorpus tc = TokenizedCorpus::build(corpus, emoji);
  const std::size_t n_users = tc.n_users();

  // Group vocabulary terms by level for single-pass window counting.
  int max_n = 1;
  for (const auto& t : vocab.terms) max_n = std::max(max_n, t.n());
  std::unordered_map<std::string, std::size_t> column;  // term_key -> column
  std::vector<bool> level_used(static_cast<std::size_t>(max_n) + 1, false);
  for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
    column.emplace(term_key(vocab.terms[i].term), i);
    level_used[static_cast<std::size_t>(vocab.terms[i].n())] = true;
  }

  RowMatrix tf(n_users, vocab.terms.size());
  std::vector<long long> df(vocab.terms.size(), 0);
  for (std::size_t u = 0; u < n_users; ++u) {
    for (const auto& run : tc.user_runs[u]) {
      for (int n = 1; n <= max_n; ++n) {
        if (!level_used[static_cast<std::size_t>(n)]) continue;
        if (run.size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t i = 0; i + n <= run.size(); ++i) {
          std::string key = run[i];
          for (int j = 1; j < n; ++j) {
            key += '\x1f';
            key += run[i + j];
          }
          const auto it = column.find(key);
          if (it != column.end()) tf.at(u, it->second) += 1.0;
        }
      }
    }
    for (std::size_t c = 0; c < vocab.terms.size(); ++c) {
      if (tf.at(u, c) > 0.0) ++df[c];
    }
  }

  FeatureMatrix out;
  out.names.reserve(vocab.terms.size());
  out.row_ids.reserve(n_users);
  for (const auto& user : corpus.users) out.row_ids.push_back(user.user_id);
  for (const auto& t : vocab.terms) out.names.push_back("term:" + term_display(t.term));
  out.values = RowMatrix(n_users, vocab.terms.size());
  for (std::size_t c = 0; c < vocab.terms.size(); ++c) {
    if (df[c] == 0) {
      throw Error("tfidf: vocabulary term \"" + term_display(vocab.terms[c].term) +
                  "\" does not occur in the corpus");
    }
    const double idf =
        std::log(static_cast<double>(n_users) / static_cast<double>(df[c]));
    for (std::size_t u = 0; u < n_users; ++u) {
      out.values.at(u, c) = tf.at(u, c) * idf;
    }
  }
  return out;
}

namespace {

// Continued fraction for the incomplete beta (Lentz's algorithm).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

namespace {

struct PearsonCore {
  double r;
  double p;
};

// Core without preconditions-as-exceptions; nullopt when either side has
// zero variance.
std::optional<PearsonCore> pearson_core(std::span<const double> x,
                                        std::span<const double> y) {
  const std::size_t n = x.size();
  const double dn = static_cast<double>(n);
  const double mx = kernels::sum(x.data(), n) / dn;
  const double my = kernels::sum(y.data(), n) / dn;
  const double sxx = kernels::centered_dot(x.data(), x.data(), mx, mx, n);
  const double syy = kernels::centered_dot(y.data(), y.data(), my, my, n);
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  const double sxy = kernels::centered_dot(x.data(), y.data(), mx, my, n);
  double r = sxy / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);
  const double df = dn - 2.0;
  double p;
  if (1.0 - r * r <= 0.0) {
    p = 0.0;
  } else {
    const double t2 = r * r * df / (1.0 - r * r);
    // Two-tailed p via the t-distribution: P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2).
    p = incomplete_beta(df / 2.0, 0.5, df / (df + t2));
  }
  return PearsonCore{r, p};
}

}  // namespace

std::pair<double, double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: length mismatch");
  if (x.size() < 3) throw Error("pearson: need at least 3 samples");
  for (double v : x) {
    if (!std::isfinite(v)) throw Error("pearson: non-finite value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw Error("pearson: non-finite value");
  }
  const auto core = pearson_core(x, y);
  if (!core) throw Error("pearson: zero variance input");
  return {core->r, core->p};
}

CorrelationReport correlate_matrix(const FeatureMatrix& features,
                                   const std::vector<int>& job_ids,
                                   const RowMatrix& job_weights, double p_threshold) {
  if (features.values.rows() != job_weights.rows()) {
    throw Error("correlate_matrix: row count mismatch");
  }
  if (job_ids.size() != job_weights.cols()) {
    throw Error("correlate_matrix: job id / column mismatch");
  }
  if (!(p_threshold > 0.0 && p_threshold <= 1.0)) {
    throw Error("correlate_matrix: p_threshold must be in (0, 1]");
  }
  const std::size_t n_rows = features.values.rows();
  CorrelationReport report;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = 0; j < job_ids.size(); ++j) {
    std::vector<CorrelationResult> job_results;
    for (std::size_t f = 0; f < features.names.size(); ++f) {
      xs.clear();
      ys.clear();
      for (std::size_t u = 0; u < n_rows; ++u) {
        const double x = features.values.at(u, f);
        if (std::isnan(x)) continue;
        xs.push_back(x);
        ys.push_back(job_weights.at(u, j));
      }
      if (xs.size() < 3) {
        ++report.skipped_small_n;
        continue;
      }
      const auto core = pearson_core(xs, ys);
      if (!core) {
        ++report.skipped_constant;
        continue;
      }
      if (core->p < p_threshold) {
        job_results.push_back(
            {features.names[f], job_ids[j], core->r, core->p, xs.size()});
      }
    }
    std::sort(job_results.begin(), job_results.end(),
              [](const CorrelationResult& a, const CorrelationResult& b) {
                if (a.r != b.r) return a.r > b.r;
                return a.feature < b.feature;
              });
    for (auto& res : job_results) report.results.push_back(std::move(res));
  }
  return report;
}

FeatureMatrix trait_matrix(const Corpus& corpus) {
  std::vector<std::string> names;
  for (const auto& user : corpus.users) {
    if (!user.traits) continue;
    for (const auto& [name, score] : *user.traits) {
      (void)score;
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
  }
  std::sort(names.begin(), names.end());
  FeatureMatrix out;
  out.values = RowMatrix(corpus.users.size(), names.size(),
                         std::numeric_limits<double>::quiet_NaN());
  for (const auto& name : names) out.names.push_back("trait:" + name);
  out.row_ids.reserve(corpus.users.size());
  for (std::size_t u = 0; u < corpus.users.size(); ++u) {
    out.row_ids.push_back(corpus.users[u].user_id);
    if (!corpus.users[u].traits) continue;
    for (std::size_t c = 0; c < names.size(); ++c) {
      const auto it = corpus.users[u].traits->find(names[c]);
      if (it != corpus.users[u].traits->end()) out.values.at(u, c) = it->second;
    }
  }
  return out;
}

FeatureMatrix topic_feature_matrix(const LdaModel& model,
                                   const std::vector<std::string>& user_ids) {
  if (model.theta.rows() != user_ids.size()) {
    throw Error("topic_feature_matrix: theta rows do not match user count");
  }
  FeatureMatrix out;
  out.row_ids = user_ids;
  for (int j = 0; j < model.config.k; ++j) out.names.push_back("topic:" + std::to_string(j));
  out.values = model.theta;
  return out;
}

void write_correlations_csv(const CorrelationReport& report, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(report.results.size());
  for (const auto& res : report.results) {
    rows.push_back({res.feature, std::to_string(res.job), format_double(res.r),
                    format_double(res.p), std::to_string(res.n)});
  }
  write_csv(path, {"feature", "job", "r", "p", "n"}, rows);
}

}  // namespace occlang
