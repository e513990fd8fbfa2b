#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occlang/jobs.hpp"
#include "occlang/matrix.hpp"

namespace occlang {

/// The four feature sets tried for job prediction. "all" is the column-wise
/// concatenation lexicon + topics + terms, in that fixed order.
enum class FeatureSetSpec { lexicon, topics, terms, all };

const char* feature_set_name(FeatureSetSpec spec);
FeatureSetSpec feature_set_from_name(const std::string& name);

/// Columns of the assembled feature matrix belonging to `spec`. The matrix
/// must carry "lex:", "topic:" and "term:" prefixed columns.
FeatureMatrix select_feature_set(const FeatureMatrix& features, FeatureSetSpec spec);

struct TrainingSet {
  RowMatrix X;
  std::vector<int> y;  // 1 positive, 0 negative; equal class sizes
  int positive_job = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> user_rows;  // rows of X in the original matrix
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-3;
  std::uint64_t seed = 0;
};

/// L2-regularized logistic regression trained by full-batch gradient
/// descent on z-scored features (statistics from the training data only).
struct LinearModel {
  std::vector<double> weights;  // on the standardized scale
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> stdev;
  TrainConfig config;
};

/// Positives: users hard-labeled `job` at the strict threshold. Users with
/// no hard label are removed; negatives are an equal-size uniform sample
/// without replacement from users labeled any other job.
TrainingSet build_dataset(const JobModel& jobs, const FeatureMatrix& features, int job,
                          FeatureSetSpec spec, double threshold, std::uint64_t seed);

LinearModel train(const TrainingSet& ts, const TrainConfig& config);

/// (sigmoid probability, predicted class at 0.5).
std::pair<double, int> predict(const LinearModel& model, std::span<const double> x);

/// Mean log p(y | x) under the model; used by the nested-model checks.
double mean_log_likelihood(const LinearModel& model, const RowMatrix& X,
                           const std::vector<int>& y);

/// Loss and gradient of the regularized objective at (w, b); exposed so the
/// analytic gradient can be checked against finite differences.
double logistic_loss(const RowMatrix& X, const std::vector<int>& y,
                     const std::vector<double>& w, double b, double l2);
std::pair<std::vector<double>, double> logistic_gradient(const RowMatrix& X,
                                                         const std::vector<int>& y,
                                                         const std::vector<double>& w,
                                                         double b, double l2);

struct JobEval {
  int job = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

struct SpecEval {
  FeatureSetSpec spec = FeatureSetSpec::all;
  std::vector<JobEval> jobs;
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  double avg_f = 0.0;
};

struct EvalReport {
  std::vector<SpecEval> specs;
};

/// Stratified seeded k-fold cross-validation of one feature set across every
/// retained job; metrics are pooled over held-out folds.
SpecEval cross_validate(const JobModel& jobs, const FeatureMatrix& features,
                        FeatureSetSpec spec, int folds, std::uint64_t seed,
                        const TrainConfig& config, double threshold);

/// All four feature sets.
EvalReport evaluate_all(const JobModel& jobs, const FeatureMatrix& features, int folds,
                        std::uint64_t seed, const TrainConfig& config, double threshold);

void write_eval_csv(const EvalReport& report, const JobModel& jobs, const std::string& path);
void write_eval_summary_json(const EvalReport& report, const JobModel& jobs,
                             const std::string& path);

void save_linear_model(const LinearModel& model, const std::string& path);
LinearModel load_linear_model(const std::string& path);

}  // namespace occlang
