#include "occlang/jobs.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

#include "occlang/csv.hpp"
#include "occlang/util.hpp"

namespace occlang {

std::size_t JobModel::job_column(int job_id) const {
  for (std::size_t i = 0; i < job_ids.size(); ++i) {
    if (job_ids[i] == job_id) return i;
  }
  throw Error("job " + std::to_string(job_id) + " is not retained");
}

std::string JobModel::job_label(int job_id) const {
  const auto it = labels.find(job_id);
  return it == labels.end() ? "job_" + std::to_string(job_id) : it->second;
}

DocTermMatrix vectorize_skills(const Corpus& corpus) {
  std::map<std::string, int> index;
  for (const auto& user : corpus.users) {
    for (const auto& [skill, count] : user.skills) {
      if (count > 0) index.emplace(skill, 0);
    }
  }
  DocTermMatrix matrix;
  matrix.terms.reserve(index.size());
  int next = 0;
  for (auto& [skill, idx] : index) {
    idx = next++;
    matrix.terms.push_back(skill);
  }
  matrix.docs.reserve(corpus.users.size());
  matrix.doc_ids.reserve(corpus.users.size());
  for (const auto& user : corpus.users) {
    std::vector<std::pair<int, long long>> doc;
    for (const auto& [skill, count] : user.skills) {
      if (count > 0) doc.emplace_back(index.at(skill), count);
    }
    if (doc.empty()) {
      throw Error("user \"" + user.user_id + "\" has no endorsed skills");
    }
    std::sort(doc.begin(), doc.end());
    matrix.docs.push_back(std::move(doc));
    matrix.doc_ids.push_back(user.user_id);
  }
  return matrix;
}

JobModel categorize(const Corpus& corpus, const LdaConfig& config) {
  const DocTermMatrix matrix = vectorize_skills(corpus);
  JobModel model;
  model.lda = fit(matrix, config);
  model.user_ids = matrix.doc_ids;
  model.raw_weights = model.lda.theta;
  model.weights = model.lda.theta;
  model.job_ids.resize(config.k);
  for (int j = 0; j < config.k; ++j) model.job_ids[j] = j;
  model.unassigned.assign(corpus.users.size(), false);
  return model;
}

namespace {

std::size_t argmax_row(const RowMatrix& m, std::size_t r) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < m.cols(); ++c) {
    if (m.at(r, c) > m.at(r, best)) best = c;
  }
  return best;
}

}  // namespace

JobModel prune_jobs(const JobModel& model, long long min_users) {
  if (min_users < 0) throw Error("prune_jobs: min_users must be >= 0");
  const std::size_t n_users = model.weights.rows();
  std::vector<long long> population(model.job_ids.size(), 0);
  for (std::size_t u = 0; u < n_users; ++u) {
    ++population[argmax_row(model.weights, u)];
  }
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < model.job_ids.size(); ++j) {
    if (population[j] >= min_users) keep.push_back(j);
  }
  if (keep.empty()) {
    throw Error("prune_jobs: every job falls below " + std::to_string(min_users) + " users");
  }

  JobModel out;
  out.lda = model.lda;
  out.labels = model.labels;
  out.user_ids = model.user_ids;
  out.raw_weights = model.raw_weights;
  out.job_ids.reserve(keep.size());
  for (std::size_t j : keep) out.job_ids.push_back(model.job_ids[j]);
  out.weights = RowMatrix(n_users, keep.size());
  out.unassigned.assign(n_users, false);
  for (std::size_t u = 0; u < n_users; ++u) {
    double total = 0.0;
    for (std::size_t c = 0; c < keep.size(); ++c) total += model.weights.at(u, keep[c]);
    if (total <= 0.0) {
      out.unassigned[u] = true;
      continue;
    }
    for (std::size_t c = 0; c < keep.size(); ++c) {
      out.weights.at(u, c) = model.weights.at(u, keep[c]) / total;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> top_skills(const JobModel& model, int job_id,
                                                       int n) {
  if (n < 0) throw Error("top_skills: n must be >= 0");
  model.job_column(job_id);  // retained check
  if (job_id < 0 || job_id >= model.lda.config.k) {
    throw Error("top_skills: job id out of range");
  }
  std::vector<std::pair<std::string, double>> all;
  all.reserve(model.lda.terms.size());
  for (std::size_t w = 0; w < model.lda.terms.size(); ++w) {
    all.emplace_back(model.lda.terms[w], model.lda.phi.at(static_cast<std::size_t>(job_id), w));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<std::size_t>(n) < all.size()) all.resize(static_cast<std::size_t>(n));
  return all;
}

std::optional<std::size_t> hard_label(std::span<const double> weights, double threshold) {
  if (weights.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[i] > weights[best]) best = i;
  }
  if (weights[best] > threshold) return best;
  return std::nullopt;
}

std::vector<std::optional<int>> hard_labels(const JobModel& model, double threshold) {
  std::vector<std::optional<int>> out(model.weights.rows());
  for (std::size_t u = 0; u < model.weights.rows(); ++u) {
    const auto idx = hard_label(
        std::span<const double>(model.weights.row(u), model.weights.cols()), threshold);
    if (idx) out[u] = model.job_ids[*idx];
  }
  return out;
}

void write_job_model_json(const JobModel& model, const std::string& path, int top_n_skills) {
  nlohmann::ordered_json obj;
  obj["k"] = model.lda.config.k;
  obj["jobs"] = nlohmann::ordered_json::array();
  for (int job_id : model.job_ids) {
    nlohmann::ordered_json job;
    job["id"] = job_id;
    job["label"] = model.job_label(job_id);
    nlohmann::ordered_json skills = nlohmann::ordered_json::array();
    for (const auto& [skill, p] : top_skills(model, job_id, top_n_skills)) {
      skills.push_back({{"skill", skill}, {"probability", p}});
    }
    job["top_skills"] = std::move(skills);
    obj["jobs"].push_back(std::move(job));
  }
  write_file(path, obj.dump(2) + "\n");
}

void write_job_weights_csv(const JobModel& model, const std::string& path) {
  std::vector<std::string> header = {"user_id"};
  for (int job_id : model.job_ids) header.push_back("job_" + std::to_string(job_id));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(model.user_ids.size());
  for (std::size_t u = 0; u < model.user_ids.size(); ++u) {
    std::vector<std::string> row = {model.user_ids[u]};
    for (std::size_t c = 0; c < model.weights.cols(); ++c) {
      row.push_back(format_double(model.weights.at(u, c)));
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_job_raw_weights_csv(const JobModel& model, const std::string& path) {
  std::vector<std::string> header = {"user_id"};
  for (int j = 0; j < model.lda.config.k; ++j) header.push_back("topic_" + std::to_string(j));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(model.user_ids.size());
  for (std::size_t u = 0; u < model.user_ids.size(); ++u) {
    std::vector<std::string> row = {model.user_ids[u]};
    for (std::size_t c = 0; c < model.raw_weights.cols(); ++c) {
      row.push_back(format_double(model.raw_weights.at(u, c)));
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace occlang
