#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "occlang/classifier.hpp"
#include "occlang/phrase_miner.hpp"
#include "occlang/topic_model.hpp"

namespace occlang {

/// Everything the pipeline needs, loadable from a JSON config file. The
/// defaults carry the reference operating point (support bounds 0.10/0.95,
/// PMI factor 2, hard-label threshold 0.8, job floor 300 users, p < 1e-4,
/// k = 20 skill clusters, k = 2000 tweet topics, 5 CV folds); small corpora
/// will want smaller topic counts and floors via the config file.
struct PipelineConfig {
  std::string corpus_path;
  std::string emoji_path;
  std::string lexicon_path;
  std::string labels_path;  // optional: JSON {"<topic index>": "<name>"}
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  long long min_tweets = 2000;
  bool require_skills = true;

  VocabularyConfig vocab;

  LdaConfig skills_lda;                 // k = 20
  std::vector<int> skills_k_candidates; // non-empty enables select_k
  int select_folds = 10;
  double plateau_tol = 0.02;
  long long min_job_users = 300;

  LdaConfig tweets_lda;  // k = 2000

  double p_threshold = 1e-4;

  bool run_classifier = true;
  TrainConfig train;
  int cv_folds = 5;
  double hard_label_threshold = 0.8;

  int wordcloud_terms = 200;
  int wordcloud_topics = 5;
  int topic_words = 10;
  int top_skills_export = 5;

  static PipelineConfig defaults();
  static PipelineConfig load(const std::string& path);
};

/// Artifact registry for the manifest: name, repo-relative path, content
/// hash. Notes record intentionally omitted artifacts.
struct Manifest {
  struct Entry {
    std::string name;
    std::string path;
    std::string sha256;
    std::uint64_t bytes = 0;
  };
  std::vector<Entry> entries;
  std::vector<std::string> notes;
  std::string status = "complete";
  std::string failed_stage;

  void add(const std::string& name, const std::string& path);
  void write(const std::string& path) const;
};

/// Individual stages; each consumes only files produced by earlier stages,
/// so any prefix of the pipeline can be re-run on its own.
void stage_ingest(const PipelineConfig& cfg);
void stage_mine_phrases(const PipelineConfig& cfg);
void stage_cluster_jobs(const PipelineConfig& cfg);
void stage_features(const PipelineConfig& cfg);
void stage_correlate(const PipelineConfig& cfg);
void stage_classify(const PipelineConfig& cfg);
void stage_report(const PipelineConfig& cfg);

/// Runs every stage and writes the manifest. Throws Error with the stage
/// name on failure after recording a partial manifest.
void run_pipeline(const PipelineConfig& cfg);

}  // namespace occlang
