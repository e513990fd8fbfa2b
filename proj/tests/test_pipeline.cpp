#include <doctest.h>

#include <filesystem>
#include <string>

#include "occlang/pipeline.hpp"
#include "occlang/sha256.hpp"
#include "occlang/synth.hpp"
#include "occlang/util.hpp"

using namespace occlang;
namespace fs = std::filesystem;

namespace {

const std::string kData = OCCLANG_DATA_DIR;

// Small fixture: 4 archetypes, enough users for clean clusters.
SynthSpec small_spec() {
  SynthSpec spec = SynthSpec::jobs8();
  spec.archetypes.resize(4);
  spec.users_per_archetype = 15;
  spec.tweets_per_user = 12;
  spec.tokens_per_tweet = 8;
  return spec;
}

PipelineConfig small_config(const std::string& dir) {
  PipelineConfig cfg = PipelineConfig::defaults();
  cfg.corpus_path = dir + "/corpus.jsonl";
  cfg.emoji_path = kData + "/emoji.txt";
  cfg.lexicon_path = kData + "/demo.dic";
  cfg.out_dir = dir + "/out";
  cfg.seed = 7;
  cfg.min_tweets = 1;
  cfg.vocab.min_support = 0.10;
  cfg.vocab.max_support = 0.95;
  cfg.skills_lda.k = 4;
  cfg.skills_lda.alpha = 0.1;
  cfg.skills_lda.iterations = 150;
  cfg.skills_lda.burn_in = 30;
  cfg.min_job_users = 5;
  cfg.tweets_lda.k = 6;
  cfg.tweets_lda.alpha = 0.5;
  cfg.tweets_lda.iterations = 120;
  cfg.tweets_lda.burn_in = 30;
  cfg.p_threshold = 0.05;
  cfg.train.epochs = 200;
  cfg.cv_folds = 3;
  cfg.wordcloud_terms = 40;
  cfg.wordcloud_topics = 3;
  return cfg;
}

std::string fresh_dir(const std::string& name) {
  const std::string dir = "/tmp/occlang_" + name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("synthetic generation is deterministic and labeled") {
  const SynthSpec spec = small_spec();
  const SynthResult a = generate_synthetic(spec, 99);
  const SynthResult b = generate_synthetic(spec, 99);
  CHECK(corpus_to_jsonl(a.corpus) == corpus_to_jsonl(b.corpus));
  CHECK(a.truth == b.truth);
  const SynthResult c = generate_synthetic(spec, 100);
  CHECK(corpus_to_jsonl(a.corpus) != corpus_to_jsonl(c.corpus));
  CHECK(a.corpus.size() == 4 * 15);
  for (const auto& user : a.corpus.users) {
    CHECK(!user.tweets.empty());
    CHECK(!user.skills.empty());
    CHECK(user.traits.has_value());
    CHECK(a.truth.count(user.user_id) == 1);
  }
}

TEST_CASE("single archetype and invalid distributions") {
  SynthSpec spec = small_spec();
  spec.archetypes.resize(1);
  const SynthResult r = generate_synthetic(spec, 1);
  CHECK(r.corpus.size() == 15);
  for (const auto& [id, name] : r.truth) {
    (void)id;
    CHECK(name == spec.archetypes[0].name);
  }
  SynthSpec bad = small_spec();
  for (auto& [term, weight] : bad.archetypes[0].terms) weight = 0.0;
  CHECK_THROWS_WITH_AS((void)generate_synthetic(bad, 1),
                       doctest::Contains("not normalizable"), Error);
}

TEST_CASE("synth spec json round-trip") {
  const std::string dir = fresh_dir("synthspec");
  const std::string path = dir + "/spec.json";
  write_file(path, R"({
    "users_per_archetype": 3,
    "tweets_per_user": 2,
    "tokens_per_tweet": 4,
    "background_mix": 0.0,
    "skills_per_user": 1,
    "endorsements_per_user": 5,
    "archetypes": [
      {"name": "A", "skills": {"S1": 1.0}, "terms": {"alpha": 1.0},
       "traits": {"openness": 0.5}},
      {"name": "B", "skills": {"S2": 1.0}, "terms": {"beta": 1.0}}
    ]
  })");
  const SynthSpec spec = SynthSpec::load(path);
  CHECK(spec.archetypes.size() == 2);
  const SynthResult r = generate_synthetic(spec, 5);
  CHECK(r.corpus.size() == 6);
  CHECK(r.corpus.users[0].skills.count("S1") == 1);
}

TEST_CASE("full pipeline produces stable artifacts") {
  const std::string dir = fresh_dir("pipeline");
  const SynthResult synth = generate_synthetic(small_spec(), 31);
  write_synthetic(synth, dir + "/corpus.jsonl", dir + "/truth.json");

  PipelineConfig cfg = small_config(dir);
  run_pipeline(cfg);
  for (const char* artifact :
       {"corpus.jsonl", "vocabulary.csv", "job_model.json", "job_weights.csv",
        "job_weights_raw.csv", "features_lexicon.csv", "features_terms.csv",
        "features_topics.csv", "features_traits.csv", "tweet_topics.json",
        "correlations_lexicon.csv", "correlations_terms.csv", "correlations_topics.csv",
        "correlations_traits.csv", "evaluation.csv", "evaluation_summary.json",
        "radar.json", "manifest.json"}) {
    CHECK(fs::exists(cfg.out_dir + "/" + artifact));
  }
  const std::string manifest_a = read_file(cfg.out_dir + "/manifest.json");
  CHECK(manifest_a.find("\"status\": \"complete\"") != std::string::npos);

  // identical config + inputs => identical manifest (hashes included)
  PipelineConfig cfg2 = cfg;
  cfg2.out_dir = dir + "/out2";
  run_pipeline(cfg2);
  CHECK(read_file(cfg2.out_dir + "/manifest.json") == manifest_a);
}

TEST_CASE("missing lexicon aborts in the features stage") {
  const std::string dir = fresh_dir("nolexicon");
  const SynthResult synth = generate_synthetic(small_spec(), 41);
  write_synthetic(synth, dir + "/corpus.jsonl", dir + "/truth.json");
  PipelineConfig cfg = small_config(dir);
  cfg.lexicon_path.clear();
  CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("stage features"), Error);
  const std::string manifest = read_file(cfg.out_dir + "/manifest.json");
  CHECK(manifest.find("\"status\": \"partial\"") != std::string::npos);
  CHECK(manifest.find("features") != std::string::npos);
}

TEST_CASE("classifier disabled leaves no evaluation artifacts") {
  const std::string dir = fresh_dir("noclassifier");
  const SynthResult synth = generate_synthetic(small_spec(), 51);
  write_synthetic(synth, dir + "/corpus.jsonl", dir + "/truth.json");
  PipelineConfig cfg = small_config(dir);
  cfg.run_classifier = false;
  run_pipeline(cfg);
  CHECK(!fs::exists(cfg.out_dir + "/evaluation.csv"));
  const std::string manifest = read_file(cfg.out_dir + "/manifest.json");
  CHECK(manifest.find("classifier disabled") != std::string::npos);
  CHECK(manifest.find("evaluation.csv") == std::string::npos);
}

TEST_CASE("radar omitted without trait data") {
  const std::string dir = fresh_dir("notraits");
  SynthSpec spec = small_spec();
  spec.emit_traits = false;
  const SynthResult synth = generate_synthetic(spec, 61);
  write_synthetic(synth, dir + "/corpus.jsonl", dir + "/truth.json");
  PipelineConfig cfg = small_config(dir);
  run_pipeline(cfg);
  CHECK(!fs::exists(cfg.out_dir + "/radar.json"));
  const std::string manifest = read_file(cfg.out_dir + "/manifest.json");
  CHECK(manifest.find("radar omitted") != std::string::npos);
}

TEST_CASE("config file loading applies overrides") {
  const std::string dir = fresh_dir("config");
  const std::string path = dir + "/config.json";
  write_file(path, R"({
    "corpus": "c.jsonl",
    "emoji_table": "e.txt",
    "lexicon": "l.dic",
    "out_dir": "results",
    "seed": 99,
    "filter": {"min_tweets": 100},
    "vocabulary": {"min_support": 0.2, "max_n": 2},
    "skills_lda": {"k": 6, "min_job_users": 42, "select_k_candidates": [2, 3]},
    "tweets_lda": {"k": 77},
    "correlation": {"p_threshold": 0.01},
    "classifier": {"enabled": false, "folds": 7},
    "reports": {"wordcloud_terms": 11}
  })");
  const PipelineConfig cfg = PipelineConfig::load(path);
  CHECK(cfg.corpus_path == "c.jsonl");
  CHECK(cfg.seed == 99);
  CHECK(cfg.min_tweets == 100);
  CHECK(cfg.vocab.min_support == 0.2);
  CHECK(cfg.vocab.max_n == 2);
  CHECK(cfg.skills_lda.k == 6);
  CHECK(cfg.min_job_users == 42);
  CHECK(cfg.skills_k_candidates == std::vector<int>{2, 3});
  CHECK(cfg.tweets_lda.k == 77);
  CHECK(cfg.p_threshold == 0.01);
  CHECK(!cfg.run_classifier);
  CHECK(cfg.cv_folds == 7);
  CHECK(cfg.wordcloud_terms == 11);
  // untouched keys keep reference defaults
  CHECK(cfg.vocab.max_support == 0.95);
  CHECK(cfg.hard_label_threshold == 0.8);
}

}  // TEST_SUITE
