#include "occlang/classifier.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

#include "occlang/csv.hpp"
#include "occlang/kernels.hpp"
#include "occlang/util.hpp"

namespace occlang {

const char* feature_set_name(FeatureSetSpec spec) {
  switch (spec) {
    case FeatureSetSpec::lexicon: return "lexicon";
    case FeatureSetSpec::topics: return "topics";
    case FeatureSetSpec::terms: return "terms";
    case FeatureSetSpec::all: return "all";
  }
  return "unknown";
}

FeatureSetSpec feature_set_from_name(const std::string& name) {
  if (name == "lexicon") return FeatureSetSpec::lexicon;
  if (name == "topics") return FeatureSetSpec::topics;
  if (name == "terms") return FeatureSetSpec::terms;
  if (name == "all") return FeatureSetSpec::all;
  throw Error("unknown feature set: " + name);
}

FeatureMatrix select_feature_set(const FeatureMatrix& features, FeatureSetSpec spec) {
  switch (spec) {
    case FeatureSetSpec::lexicon: return features.select_prefix("lex:");
    case FeatureSetSpec::topics: return features.select_prefix("topic:");
    case FeatureSetSpec::terms: return features.select_prefix("term:");
    case FeatureSetSpec::all: return features;
  }
  throw Error("unknown feature set");
}

TrainingSet build_dataset(const JobModel& jobs, const FeatureMatrix& features, int job,
                          FeatureSetSpec spec, double threshold, std::uint64_t seed) {
  if (features.values.rows() != jobs.weights.rows()) {
    throw Error("build_dataset: feature rows do not match job model users");
  }
  jobs.job_column(job);  // retained check
  const std::vector<std::optional<int>> labels = hard_labels(jobs, threshold);
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negative_pool;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    if (!labels[u]) continue;  // no job weight above the threshold: removed
    if (*labels[u] == job) {
      positives.push_back(u);
    } else {
      negative_pool.push_back(u);
    }
  }
  if (positives.empty()) {
    throw Error("build_dataset: job " + std::to_string(job) + " has no hard-labeled users");
  }
  if (negative_pool.size() < positives.size()) {
    throw Error("build_dataset: job " + std::to_string(job) + " needs " +
                std::to_string(positives.size()) + " negatives but only " +
                std::to_string(negative_pool.size()) + " users are labeled with other jobs");
  }
  Rng rng(seed);
  std::vector<std::size_t> picks =
      rng.sample_without_replacement(negative_pool.size(), positives.size());
  std::vector<std::size_t> negatives;
  negatives.reserve(picks.size());
  for (std::size_t p : picks) negatives.push_back(negative_pool[p]);
  std::sort(negatives.begin(), negatives.end());

  const FeatureMatrix selected = select_feature_set(features, spec);
  TrainingSet ts;
  ts.positive_job = job;
  ts.seed = seed;
  ts.X = RowMatrix(positives.size() + negatives.size(), selected.values.cols());
  std::size_t row = 0;
  for (std::size_t u : positives) {
    for (std::size_t c = 0; c < selected.values.cols(); ++c) {
      ts.X.at(row, c) = selected.values.at(u, c);
    }
    ts.y.push_back(1);
    ts.user_rows.push_back(u);
    ++row;
  }
  for (std::size_t u : negatives) {
    for (std::size_t c = 0; c < selected.values.cols(); ++c) {
      ts.X.at(row, c) = selected.values.at(u, c);
    }
    ts.y.push_back(0);
    ts.user_rows.push_back(u);
    ++row;
  }
  return ts;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

RowMatrix standardize(const RowMatrix& X, std::vector<double>& mean,
                      std::vector<double>& stdev) {
  const std::size_t m = X.rows();
  const std::size_t d = X.cols();
  mean.assign(d, 0.0);
  stdev.assign(d, 1.0);
  for (std::size_t c = 0; c < d; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += X.at(r, c);
    mean[c] = acc / static_cast<double>(m);
    double var = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double diff = X.at(r, c) - mean[c];
      var += diff * diff;
    }
    var /= static_cast<double>(m);
    stdev[c] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  RowMatrix Z(m, d);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Z.at(r, c) = (X.at(r, c) - mean[c]) / stdev[c];
    }
  }
  return Z;
}

}  // namespace

double logistic_loss(const RowMatrix& X, const std::vector<int>& y,
                     const std::vector<double>& w, double b, double l2) {
  const std::size_t m = X.rows();
  double loss = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double z = kernels::dot(w.data(), X.row(r), w.size()) + b;
    // log(1 + exp(-yz)) in a overflow-safe form
    const double yz = (y[r] == 1 ? 1.0 : -1.0) * z;
    loss += yz > 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
  }
  loss /= static_cast<double>(m);
  double reg = 0.0;
  for (double wi : w) reg += wi * wi;
  return loss + 0.5 * l2 * reg;
}

std::pair<std::vector<double>, double> logistic_gradient(const RowMatrix& X,
                                                         const std::vector<int>& y,
                                                         const std::vector<double>& w,
                                                         double b, double l2) {
  const std::size_t m = X.rows();
  const std::size_t d = X.cols();
  std::vector<double> grad(d, 0.0);
  double grad_b = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double z = kernels::dot(w.data(), X.row(r), d) + b;
    const double err = sigmoid(z) - static_cast<double>(y[r]);
    kernels::axpy(err, X.row(r), grad.data(), d);
    grad_b += err;
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t c = 0; c < d; ++c) grad[c] = grad[c] * inv_m + l2 * w[c];
  return {std::move(grad), grad_b * inv_m};
}

LinearModel train(const TrainingSet& ts, const TrainConfig& config) {
  const std::size_t m = ts.X.rows();
  if (m != ts.y.size()) throw Error("train: label count mismatch");
  std::size_t n_pos = 0;
  for (int label : ts.y) n_pos += static_cast<std::size_t>(label == 1);
  if (n_pos < 2 || m - n_pos < 2) throw Error("train: need at least 2 examples per class");
  for (double v : ts.X.data()) {
    if (!std::isfinite(v)) throw Error("train: non-finite feature value");
  }
  if (config.epochs <= 0 || config.learning_rate <= 0.0 || config.l2 < 0.0) {
    throw Error("train: invalid config");
  }

  LinearModel model;
  model.config = config;
  const RowMatrix Z = standardize(ts.X, model.mean, model.stdev);
  model.weights.assign(Z.cols(), 0.0);
  model.bias = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    auto [grad, grad_b] = logistic_gradient(Z, ts.y, model.weights, model.bias, config.l2);
    kernels::axpy(-config.learning_rate, grad.data(), model.weights.data(), grad.size());
    model.bias -= config.learning_rate * grad_b;
  }
  return model;
}

std::pair<double, int> predict(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw Error("predict: expected " + std::to_string(model.weights.size()) +
                " features, got " + std::to_string(x.size()));
  }
  double z = model.bias;
  for (std::size_t c = 0; c < x.size(); ++c) {
    z += model.weights[c] * (x[c] - model.mean[c]) / model.stdev[c];
  }
  const double p = sigmoid(z);
  return {p, p >= 0.5 ? 1 : 0};
}

double mean_log_likelihood(const LinearModel& model, const RowMatrix& X,
                           const std::vector<int>& y) {
  double ll = 0.0;
  for (std::size_t r = 0; r < X.rows(); ++r) {
    const auto [p, cls] = predict(model, std::span<const double>(X.row(r), X.cols()));
    (void)cls;
    ll += y[r] == 1 ? std::log(p) : std::log1p(-p);
  }
  return ll / static_cast<double>(X.rows());
}

SpecEval cross_validate(const JobModel& jobs, const FeatureMatrix& features,
                        FeatureSetSpec spec, int folds, std::uint64_t seed,
                        const TrainConfig& config, double threshold) {
  if (folds < 2) throw Error("cross_validate: folds must be >= 2");
  SpecEval eval;
  eval.spec = spec;
  for (int job : jobs.job_ids) {
    const std::uint64_t task_seed =
        seed_mix(seed, static_cast<std::uint64_t>(job), static_cast<std::uint64_t>(spec));
    TrainingSet ts = build_dataset(jobs, features, job, spec, threshold, task_seed);

    // Stratified fold assignment: shuffle each class separately, stripe.
    std::vector<std::size_t> pos_rows;
    std::vector<std::size_t> neg_rows;
    for (std::size_t r = 0; r < ts.y.size(); ++r) {
      (ts.y[r] == 1 ? pos_rows : neg_rows).push_back(r);
    }
    Rng fold_rng(seed_mix(task_seed, 0xf01d5u));
    fold_rng.shuffle(pos_rows);
    fold_rng.shuffle(neg_rows);
    std::vector<int> fold_of(ts.y.size(), 0);
    for (std::size_t i = 0; i < pos_rows.size(); ++i) {
      fold_of[pos_rows[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
    for (std::size_t i = 0; i < neg_rows.size(); ++i) {
      fold_of[neg_rows[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }

    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    for (int f = 0; f < folds; ++f) {
      TrainingSet train_set;
      train_set.positive_job = ts.positive_job;
      std::vector<std::size_t> test_rows;
      std::size_t n_train = 0;
      for (std::size_t r = 0; r < ts.y.size(); ++r) n_train += (fold_of[r] != f);
      train_set.X = RowMatrix(n_train, ts.X.cols());
      std::size_t out_row = 0;
      for (std::size_t r = 0; r < ts.y.size(); ++r) {
        if (fold_of[r] == f) {
          test_rows.push_back(r);
          continue;
        }
        for (std::size_t c = 0; c < ts.X.cols(); ++c) {
          train_set.X.at(out_row, c) = ts.X.at(r, c);
        }
        train_set.y.push_back(ts.y[r]);
        ++out_row;
      }
      const LinearModel model = train(train_set, config);
      for (std::size_t r : test_rows) {
        const auto [p, predicted] =
            predict(model, std::span<const double>(ts.X.row(r), ts.X.cols()));
        (void)p;
        if (predicted == 1 && ts.y[r] == 1) ++tp;
        else if (predicted == 1 && ts.y[r] == 0) ++fp;
        else if (predicted == 0 && ts.y[r] == 1) ++fn;
      }
    }
    JobEval je;
    je.job = job;
    je.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    je.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    je.f_score = je.precision + je.recall > 0.0
                     ? 2.0 * je.precision * je.recall / (je.precision + je.recall)
                     : 0.0;
    eval.jobs.push_back(je);
  }
  for (const auto& je : eval.jobs) {
    eval.avg_precision += je.precision;
    eval.avg_recall += je.recall;
    eval.avg_f += je.f_score;
  }
  const double n_jobs = static_cast<double>(eval.jobs.size());
  if (n_jobs > 0) {
    eval.avg_precision /= n_jobs;
    eval.avg_recall /= n_jobs;
    eval.avg_f /= n_jobs;
  }
  return eval;
}

EvalReport evaluate_all(const JobModel& jobs, const FeatureMatrix& features, int folds,
                        std::uint64_t seed, const TrainConfig& config, double threshold) {
  EvalReport report;
  for (FeatureSetSpec spec : {FeatureSetSpec::lexicon, FeatureSetSpec::topics,
                              FeatureSetSpec::terms, FeatureSetSpec::all}) {
    report.specs.push_back(cross_validate(jobs, features, spec, folds, seed, config, threshold));
  }
  return report;
}

void write_eval_csv(const EvalReport& report, const JobModel& jobs, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& spec : report.specs) {
    for (const auto& je : spec.jobs) {
      rows.push_back({jobs.job_label(je.job), feature_set_name(spec.spec),
                      format_double(je.precision), format_double(je.recall),
                      format_double(je.f_score)});
    }
    rows.push_back({"average", feature_set_name(spec.spec), format_double(spec.avg_precision),
                    format_double(spec.avg_recall), format_double(spec.avg_f)});
  }
  write_csv(path, {"job", "feature_set", "precision", "recall", "f_score"}, rows);
}

void write_eval_summary_json(const EvalReport& report, const JobModel& jobs,
                             const std::string& path) {
  nlohmann::ordered_json obj;
  for (const auto& spec : report.specs) {
    nlohmann::ordered_json entry;
    entry["average"] = {{"precision", spec.avg_precision},
                        {"recall", spec.avg_recall},
                        {"f_score", spec.avg_f}};
    nlohmann::ordered_json per_job = nlohmann::ordered_json::array();
    for (const auto& je : spec.jobs) {
      per_job.push_back({{"job", je.job},
                         {"label", jobs.job_label(je.job)},
                         {"precision", je.precision},
                         {"recall", je.recall},
                         {"f_score", je.f_score}});
    }
    entry["jobs"] = std::move(per_job);
    obj[feature_set_name(spec.spec)] = std::move(entry);
  }
  write_file(path, obj.dump(2) + "\n");
}

void save_linear_model(const LinearModel& model, const std::string& path) {
  nlohmann::json obj;
  obj["format"] = "occlang-linear";
  obj["version"] = 1;
  obj["weights"] = model.weights;
  obj["bias"] = model.bias;
  obj["mean"] = model.mean;
  obj["stdev"] = model.stdev;
  obj["config"] = {{"learning_rate", model.config.learning_rate},
                   {"epochs", model.config.epochs},
                   {"l2", model.config.l2},
                   {"seed", model.config.seed}};
  write_file(path, obj.dump());
}

LinearModel load_linear_model(const std::string& path) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("linear model " + path + ": invalid JSON: " + e.what());
  }
  if (obj.value("format", "") != "occlang-linear") {
    throw Error("linear model " + path + ": unrecognized format");
  }
  LinearModel model;
  model.weights = obj.at("weights").get<std::vector<double>>();
  model.bias = obj.at("bias").get<double>();
  model.mean = obj.at("mean").get<std::vector<double>>();
  model.stdev = obj.at("stdev").get<std::vector<double>>();
  const auto& cfg = obj.at("config");
  model.config.learning_rate = cfg.at("learning_rate").get<double>();
  model.config.epochs = cfg.at("epochs").get<int>();
  model.config.l2 = cfg.at("l2").get<double>();
  model.config.seed = cfg.at("seed").get<std::uint64_t>();
  return model;
}

}  // namespace occlang
