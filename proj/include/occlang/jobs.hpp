#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "occlang/corpus.hpp"
#include "occlang/topic_model.hpp"

namespace occlang {

/// Soft job categories over the skill vocabulary. `weights` rows are per-user
/// distributions over the retained jobs (renormalized after pruning); the
/// pre-pruning theta rows are kept in `raw_weights` for audit.
struct JobModel {
  LdaModel lda;
  std::vector<int> job_ids;  // retained topic indices, ascending
  std::map<int, std::string> labels;
  std::vector<std::string> user_ids;  // corpus order
  RowMatrix weights;                  // users x |job_ids|
  RowMatrix raw_weights;              // users x k
  std::vector<bool> unassigned;       // retained weight was zero before renorm

  std::size_t job_column(int job_id) const;
  std::string job_label(int job_id) const;
};

/// Skill-name vocabulary in sorted order; counts are endorsement votes.
/// Zero-count endorsements are dropped; a user with no positive skill fails.
DocTermMatrix vectorize_skills(const Corpus& corpus);

/// Fits LDA on the skill matrix. All k topics retained (pre-pruning).
JobModel categorize(const Corpus& corpus, const LdaConfig& config);

/// A job "contains" the users whose argmax weight it is (ties to the lowest
/// index). Jobs containing fewer than min_users are dropped and the remaining
/// per-user weights renormalized to sum 1.
JobModel prune_jobs(const JobModel& model, long long min_users);

/// n most probable skills of a retained job, descending, ties lexicographic.
std::vector<std::pair<std::string, double>> top_skills(const JobModel& model, int job_id,
                                                       int n);

/// Index of the argmax weight when it strictly exceeds `threshold`.
std::optional<std::size_t> hard_label(std::span<const double> weights, double threshold);

/// Per-user hard labels as retained job ids; nullopt where no weight clears
/// the threshold.
std::vector<std::optional<int>> hard_labels(const JobModel& model, double threshold);

void write_job_model_json(const JobModel& model, const std::string& path, int top_n_skills);
void write_job_weights_csv(const JobModel& model, const std::string& path);
void write_job_raw_weights_csv(const JobModel& model, const std::string& path);

}  // namespace occlang
