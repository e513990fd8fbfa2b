#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "occlang/corpus.hpp"
#include "occlang/jobs.hpp"
#include "occlang/matrix.hpp"
#include "occlang/phrase_miner.hpp"

namespace occlang {

/// Per-user TF-IDF over the mined vocabulary: tf(u, t) * ln(N / df(t)) with
/// df the number of users using t at least once. Columns prefixed "term:".
FeatureMatrix tfidf(const Corpus& corpus, const EmojiTable& emoji, const Vocabulary& vocab);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Sample Pearson r and the two-tailed p-value from the t transform with
/// n - 2 degrees of freedom. Requires n >= 3 and non-constant inputs.
std::pair<double, double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationResult {
  std::string feature;
  int job = 0;
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

struct CorrelationReport {
  std::vector<CorrelationResult> results;  // job order, then descending r
  std::size_t skipped_constant = 0;
  std::size_t skipped_small_n = 0;
};

/// Every (feature, job) pair with p < p_threshold. Rows with NaN feature
/// values are excluded pairwise and the effective n recorded; constant
/// columns are skipped and counted.
CorrelationReport correlate_matrix(const FeatureMatrix& features,
                                   const std::vector<int>& job_ids,
                                   const RowMatrix& job_weights, double p_threshold);

/// Columns "trait:<name>" over the union of trait names, NaN where missing.
FeatureMatrix trait_matrix(const Corpus& corpus);

/// Topic weights of a fitted tweet-topic model as features "topic:<i>".
FeatureMatrix topic_feature_matrix(const LdaModel& model,
                                   const std::vector<std::string>& user_ids);

void write_correlations_csv(const CorrelationReport& report, const std::string& path);

}  // namespace occlang
