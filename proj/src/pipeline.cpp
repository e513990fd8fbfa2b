#include "occlang/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include "occlang/analysis.hpp"
#include "occlang/csv.hpp"
#include "occlang/lexicon.hpp"
#include "occlang/sha256.hpp"
#include "occlang/util.hpp"

namespace occlang {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig cfg;
  cfg.skills_lda.k = 20;
  cfg.skills_lda.alpha = 0.0;  // 50/k
  cfg.skills_lda.beta = 0.01;
  cfg.skills_lda.iterations = 1000;
  cfg.skills_lda.burn_in = 200;
  cfg.tweets_lda = cfg.skills_lda;
  cfg.tweets_lda.k = 2000;
  return cfg;
}

namespace {

void load_lda_section(const json& obj, LdaConfig& lda) {
  lda.k = obj.value("k", lda.k);
  lda.alpha = obj.value("alpha", lda.alpha);
  lda.beta = obj.value("beta", lda.beta);
  lda.iterations = obj.value("iterations", lda.iterations);
  lda.burn_in = obj.value("burn_in", lda.burn_in);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  json obj;
  try {
    obj = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("config " + path + ": invalid JSON: " + e.what());
  }
  PipelineConfig cfg = defaults();
  cfg.corpus_path = obj.value("corpus", cfg.corpus_path);
  cfg.emoji_path = obj.value("emoji_table", cfg.emoji_path);
  cfg.lexicon_path = obj.value("lexicon", cfg.lexicon_path);
  cfg.labels_path = obj.value("labels", cfg.labels_path);
  cfg.out_dir = obj.value("out_dir", cfg.out_dir);
  cfg.seed = obj.value("seed", cfg.seed);
  if (obj.contains("filter")) {
    cfg.min_tweets = obj["filter"].value("min_tweets", cfg.min_tweets);
    cfg.require_skills = obj["filter"].value("require_skills", cfg.require_skills);
  }
  if (obj.contains("vocabulary")) {
    const json& v = obj["vocabulary"];
    cfg.vocab.min_support = v.value("min_support", cfg.vocab.min_support);
    cfg.vocab.max_support = v.value("max_support", cfg.vocab.max_support);
    cfg.vocab.pmi_factor = v.value("pmi_factor", cfg.vocab.pmi_factor);
    cfg.vocab.max_n = v.value("max_n", cfg.vocab.max_n);
    cfg.vocab.log_base = v.value("log_base", cfg.vocab.log_base);
  }
  if (obj.contains("skills_lda")) {
    const json& s = obj["skills_lda"];
    load_lda_section(s, cfg.skills_lda);
    if (s.contains("select_k_candidates")) {
      cfg.skills_k_candidates = s["select_k_candidates"].get<std::vector<int>>();
    }
    cfg.select_folds = s.value("select_folds", cfg.select_folds);
    cfg.plateau_tol = s.value("plateau_tol", cfg.plateau_tol);
    cfg.min_job_users = s.value("min_job_users", cfg.min_job_users);
  }
  if (obj.contains("tweets_lda")) load_lda_section(obj["tweets_lda"], cfg.tweets_lda);
  if (obj.contains("correlation")) {
    cfg.p_threshold = obj["correlation"].value("p_threshold", cfg.p_threshold);
  }
  if (obj.contains("classifier")) {
    const json& c = obj["classifier"];
    cfg.run_classifier = c.value("enabled", cfg.run_classifier);
    cfg.train.learning_rate = c.value("learning_rate", cfg.train.learning_rate);
    cfg.train.epochs = c.value("epochs", cfg.train.epochs);
    cfg.train.l2 = c.value("l2", cfg.train.l2);
    cfg.cv_folds = c.value("folds", cfg.cv_folds);
    cfg.hard_label_threshold = c.value("hard_label_threshold", cfg.hard_label_threshold);
  }
  if (obj.contains("reports")) {
    const json& r = obj["reports"];
    cfg.wordcloud_terms = r.value("wordcloud_terms", cfg.wordcloud_terms);
    cfg.wordcloud_topics = r.value("wordcloud_topics", cfg.wordcloud_topics);
    cfg.topic_words = r.value("topic_words", cfg.topic_words);
    cfg.top_skills_export = r.value("top_skills", cfg.top_skills_export);
  }
  return cfg;
}

void Manifest::add(const std::string& name, const std::string& path) {
  Entry entry;
  entry.name = name;
  entry.path = path;
  const std::string data = read_file(path);
  entry.sha256 = sha256_hex(data);
  entry.bytes = data.size();
  entries.push_back(std::move(entry));
}

void Manifest::write(const std::string& path) const {
  ordered_json obj;
  obj["status"] = status;
  if (!failed_stage.empty()) obj["failed_stage"] = failed_stage;
  obj["artifacts"] = ordered_json::array();
  std::vector<Entry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });
  for (const auto& e : sorted) {
    obj["artifacts"].push_back({{"name", e.name},
                                {"path", e.path},
                                {"sha256", e.sha256},
                                {"bytes", e.bytes}});
  }
  obj["notes"] = notes;
  write_file(path, obj.dump(2) + "\n");
}

namespace {

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void ensure_out_dir(const PipelineConfig& cfg) {
  fs::create_directories(cfg.out_dir);
}

EmojiTable load_emoji(const PipelineConfig& cfg) {
  if (cfg.emoji_path.empty()) throw Error("no emoji table configured");
  return EmojiTable::load(cfg.emoji_path);
}

Corpus load_stage_corpus(const PipelineConfig& cfg) {
  return load_corpus(out_path(cfg, "corpus.jsonl"));
}

Vocabulary load_vocabulary_csv(const std::string& path) {
  const auto records = read_csv(path);
  if (records.empty()) throw Error("vocabulary " + path + ": empty file");
  Vocabulary vocab;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& row = records[i];
    if (row.size() < 5) throw Error("vocabulary " + path + ": short row");
    TermStats ts;
    // Display form is space-joined; surfaces never contain spaces.
    std::string part;
    for (char c : row[0]) {
      if (c == ' ') {
        ts.term.push_back(part);
        part.clear();
      } else {
        part += c;
      }
    }
    ts.term.push_back(part);
    ts.user_support = std::stod(row[2]);
    ts.total_count = std::stoll(row[3]);
    ts.pmi = row[4].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(row[4]);
    vocab.terms.push_back(std::move(ts));
  }
  return vocab;
}

void save_feature_csv(const FeatureMatrix& fm, const std::string& path) {
  std::vector<std::string> header = {"user_id"};
  header.insert(header.end(), fm.names.begin(), fm.names.end());
  std::vector<std::vector<std::string>> rows;
  rows.reserve(fm.values.rows());
  for (std::size_t r = 0; r < fm.values.rows(); ++r) {
    std::vector<std::string> row = {fm.row_ids[r]};
    for (std::size_t c = 0; c < fm.values.cols(); ++c) {
      const double v = fm.values.at(r, c);
      row.push_back(std::isnan(v) ? std::string() : format_double(v));
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

FeatureMatrix load_feature_csv(const std::string& path) {
  const auto records = read_csv(path);
  if (records.empty()) throw Error("features " + path + ": empty file");
  FeatureMatrix fm;
  fm.names.assign(records[0].begin() + 1, records[0].end());
  fm.values = RowMatrix(records.size() - 1, fm.names.size());
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& row = records[i];
    if (row.size() != records[0].size()) throw Error("features " + path + ": ragged row");
    fm.row_ids.push_back(row[0]);
    for (std::size_t c = 0; c < fm.names.size(); ++c) {
      fm.values.at(i - 1, c) = row[c + 1].empty()
                                   ? std::numeric_limits<double>::quiet_NaN()
                                   : std::stod(row[c + 1]);
    }
  }
  return fm;
}

struct JobWeights {
  std::vector<int> job_ids;
  RowMatrix weights;
  std::vector<std::string> user_ids;
  std::map<int, std::string> labels;
};

JobWeights load_job_weights(const PipelineConfig& cfg) {
  const auto records = read_csv(out_path(cfg, "job_weights.csv"));
  if (records.size() < 1 || records[0].size() < 2) {
    throw Error("job_weights.csv: missing or empty");
  }
  JobWeights jw;
  for (std::size_t c = 1; c < records[0].size(); ++c) {
    const std::string& name = records[0][c];
    if (name.rfind("job_", 0) != 0) throw Error("job_weights.csv: bad column " + name);
    jw.job_ids.push_back(std::stoi(name.substr(4)));
  }
  jw.weights = RowMatrix(records.size() - 1, jw.job_ids.size());
  for (std::size_t i = 1; i < records.size(); ++i) {
    jw.user_ids.push_back(records[i][0]);
    for (std::size_t c = 0; c < jw.job_ids.size(); ++c) {
      jw.weights.at(i - 1, c) = std::stod(records[i][c + 1]);
    }
  }
  const std::string model_path = out_path(cfg, "job_model.json");
  if (fs::exists(model_path)) {
    const json obj = json::parse(read_file(model_path));
    for (const auto& job : obj.value("jobs", json::array())) {
      jw.labels[job.at("id").get<int>()] = job.value("label", "");
    }
  }
  return jw;
}

JobModel job_model_from_weights(const JobWeights& jw) {
  JobModel model;
  model.job_ids = jw.job_ids;
  model.weights = jw.weights;
  model.user_ids = jw.user_ids;
  model.labels = jw.labels;
  model.unassigned.assign(jw.weights.rows(), false);
  return model;
}

DocTermMatrix tweet_doc_matrix(const Corpus& corpus, const EmojiTable& emoji,
                               const Vocabulary& vocab) {
  // Tweet topics are modeled over the vocabulary's unigrams.
  DocTermMatrix matrix;
  std::map<std::string, int> index;
  for (const auto& t : vocab.terms) {
    if (t.n() == 1) {
      index.emplace(t.term[0], 0);
    }
  }
  int next = 0;
  for (auto& [term, idx] : index) {
    idx = next++;
    matrix.terms.push_back(term);
  }
  if (matrix.terms.empty()) throw Error("tweet topics: vocabulary has no unigrams");
  const TokenizedCorpus tc = TokenizedCorpus::build(corpus, emoji);
  matrix.docs.reserve(tc.n_users());
  for (std::size_t u = 0; u < tc.n_users(); ++u) {
    std::map<int, long long> counts;
    for (const auto& run : tc.user_runs[u]) {
      for (const auto& surface : run) {
        const auto it = index.find(surface);
        if (it != index.end()) ++counts[it->second];
      }
    }
    std::vector<std::pair<int, long long>> doc(counts.begin(), counts.end());
    matrix.docs.push_back(std::move(doc));
    matrix.doc_ids.push_back(corpus.users[u].user_id);
  }
  return matrix;
}

CorrelationReport correlate_features(const FeatureMatrix& features, const JobWeights& jw,
                                     double p_threshold) {
  return correlate_matrix(features, jw.job_ids, jw.weights, p_threshold);
}

}  // namespace

void stage_ingest(const PipelineConfig& cfg) {
  ensure_out_dir(cfg);
  if (cfg.corpus_path.empty()) throw Error("no corpus path configured");
  const Corpus raw = load_corpus(cfg.corpus_path);
  const Corpus filtered = filter_users(raw, cfg.min_tweets, cfg.require_skills);
  write_corpus(filtered, out_path(cfg, "corpus.jsonl"));
}

void stage_mine_phrases(const PipelineConfig& cfg) {
  const Corpus corpus = load_stage_corpus(cfg);
  const EmojiTable emoji = load_emoji(cfg);
  const Vocabulary vocab = build_vocabulary(corpus, emoji, cfg.vocab);
  write_vocabulary_csv(vocab, out_path(cfg, "vocabulary.csv"));
}

void stage_cluster_jobs(const PipelineConfig& cfg) {
  const Corpus corpus = load_stage_corpus(cfg);
  LdaConfig lda = cfg.skills_lda;
  lda.seed = seed_mix(cfg.seed, 0x5311115u);
  std::optional<KSelection> selection;
  if (!cfg.skills_k_candidates.empty()) {
    const DocTermMatrix matrix = vectorize_skills(corpus);
    LdaConfig tmpl = lda;
    selection = select_k(matrix, cfg.skills_k_candidates, cfg.select_folds, tmpl,
                         cfg.plateau_tol);
    lda.k = selection->chosen_k;
  }
  JobModel model = categorize(corpus, lda);
  if (!cfg.labels_path.empty()) {
    const json labels = json::parse(read_file(cfg.labels_path));
    for (const auto& [key, value] : labels.items()) {
      model.labels[std::stoi(key)] = value.get<std::string>();
    }
  }
  model = prune_jobs(model, cfg.min_job_users);
  write_job_model_json(model, out_path(cfg, "job_model.json"), cfg.top_skills_export);
  write_job_weights_csv(model, out_path(cfg, "job_weights.csv"));
  write_job_raw_weights_csv(model, out_path(cfg, "job_weights_raw.csv"));
  if (selection) {
    ordered_json obj;
    obj["chosen_k"] = selection->chosen_k;
    obj["curve"] = ordered_json::array();
    for (const auto& [k, mean] : selection->curve) {
      obj["curve"].push_back({{"k", k}, {"mean_perplexity", mean}});
    }
    write_file(out_path(cfg, "k_selection.json"), obj.dump(2) + "\n");
  }
}

void stage_features(const PipelineConfig& cfg) {
  const Corpus corpus = load_stage_corpus(cfg);
  const EmojiTable emoji = load_emoji(cfg);
  if (cfg.lexicon_path.empty()) {
    throw Error("no lexicon configured for the closed-vocabulary features");
  }
  const Lexicon lexicon = Lexicon::parse(cfg.lexicon_path);
  save_feature_csv(lexicon_feature_matrix(corpus, lexicon, emoji),
                   out_path(cfg, "features_lexicon.csv"));

  const Vocabulary vocab = load_vocabulary_csv(out_path(cfg, "vocabulary.csv"));
  save_feature_csv(tfidf(corpus, emoji, vocab), out_path(cfg, "features_terms.csv"));

  LdaConfig lda = cfg.tweets_lda;
  lda.seed = seed_mix(cfg.seed, 0x70e75u);
  const DocTermMatrix matrix = tweet_doc_matrix(corpus, emoji, vocab);
  const LdaModel topics = fit(matrix, lda);
  topics.save(out_path(cfg, "tweet_topics.json"));
  save_feature_csv(topic_feature_matrix(topics, matrix.doc_ids),
                   out_path(cfg, "features_topics.csv"));

  save_feature_csv(trait_matrix(corpus), out_path(cfg, "features_traits.csv"));
}

void stage_correlate(const PipelineConfig& cfg) {
  const JobWeights jw = load_job_weights(cfg);
  const struct {
    const char* in;
    const char* out;
  } reports[] = {
      {"features_lexicon.csv", "correlations_lexicon.csv"},
      {"features_terms.csv", "correlations_terms.csv"},
      {"features_topics.csv", "correlations_topics.csv"},
      {"features_traits.csv", "correlations_traits.csv"},
  };
  for (const auto& r : reports) {
    const FeatureMatrix features = load_feature_csv(out_path(cfg, r.in));
    write_correlations_csv(correlate_features(features, jw, cfg.p_threshold),
                           out_path(cfg, r.out));
  }
}

void stage_classify(const PipelineConfig& cfg) {
  if (!cfg.run_classifier) return;
  const JobWeights jw = load_job_weights(cfg);
  const JobModel model = job_model_from_weights(jw);
  const FeatureMatrix lex = load_feature_csv(out_path(cfg, "features_lexicon.csv"));
  const FeatureMatrix topics = load_feature_csv(out_path(cfg, "features_topics.csv"));
  const FeatureMatrix terms = load_feature_csv(out_path(cfg, "features_terms.csv"));
  const FeatureMatrix features = concat_columns({&lex, &topics, &terms});
  TrainConfig train_cfg = cfg.train;
  train_cfg.seed = seed_mix(cfg.seed, 0xc1a55u);
  const EvalReport report = evaluate_all(model, features, cfg.cv_folds, train_cfg.seed,
                                         train_cfg, cfg.hard_label_threshold);
  write_eval_csv(report, model, out_path(cfg, "evaluation.csv"));
  write_eval_summary_json(report, model, out_path(cfg, "evaluation_summary.json"));
}

namespace {

struct TermCorrelation {
  std::string feature;
  double r;
};

std::map<int, std::vector<TermCorrelation>> correlations_by_job(const std::string& path) {
  std::map<int, std::vector<TermCorrelation>> by_job;
  const auto records = read_csv(path);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& row = records[i];
    by_job[std::stoi(row[1])].push_back({row[0], std::stod(row[2])});
  }
  return by_job;
}

ordered_json top_entries(const std::vector<TermCorrelation>& list, int k, bool positive,
                         const std::string& strip_prefix) {
  std::vector<TermCorrelation> sorted = list;
  std::sort(sorted.begin(), sorted.end(), [&](const TermCorrelation& a, const TermCorrelation& b) {
    return positive ? a.r > b.r : a.r < b.r;
  });
  ordered_json out = ordered_json::array();
  for (const auto& tc : sorted) {
    if (static_cast<int>(out.size()) >= k) break;
    if (positive ? tc.r <= 0.0 : tc.r >= 0.0) break;
    std::string name = tc.feature;
    if (name.rfind(strip_prefix, 0) == 0) name = name.substr(strip_prefix.size());
    out.push_back({{"feature", name}, {"r", tc.r}});
  }
  return out;
}

}  // namespace

void stage_report(const PipelineConfig& cfg) {
  const JobWeights jw = load_job_weights(cfg);

  // Word-cloud data: top correlated terms plus topics with their words.
  const auto term_corr = correlations_by_job(out_path(cfg, "correlations_terms.csv"));
  const auto topic_corr = correlations_by_job(out_path(cfg, "correlations_topics.csv"));
  const LdaModel topics = LdaModel::load(out_path(cfg, "tweet_topics.json"));

  auto topic_words = [&](const std::string& feature) {
    const int topic = std::stoi(feature.substr(std::string("topic:").size()));
    std::vector<std::pair<double, std::string>> ranked;
    for (std::size_t w = 0; w < topics.terms.size(); ++w) {
      ranked.emplace_back(topics.phi.at(static_cast<std::size_t>(topic), w), topics.terms[w]);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    ordered_json words = ordered_json::array();
    for (int i = 0; i < cfg.topic_words && i < static_cast<int>(ranked.size()); ++i) {
      words.push_back(ranked[static_cast<std::size_t>(i)].second);
    }
    return words;
  };

  for (std::size_t j = 0; j < jw.job_ids.size(); ++j) {
    const int job = jw.job_ids[j];
    ordered_json cloud;
    cloud["job"] = job;
    const auto label = jw.labels.find(job);
    cloud["label"] = label == jw.labels.end() ? "job_" + std::to_string(job) : label->second;
    const auto terms_it = term_corr.find(job);
    static const std::vector<TermCorrelation> kEmpty;
    const auto& terms = terms_it == term_corr.end() ? kEmpty : terms_it->second;
    cloud["positive_terms"] = top_entries(terms, cfg.wordcloud_terms, true, "term:");
    cloud["negative_terms"] = top_entries(terms, cfg.wordcloud_terms, false, "term:");
    const auto topics_it = topic_corr.find(job);
    const auto& tops = topics_it == topic_corr.end() ? kEmpty : topics_it->second;
    for (const char* side : {"positive_topics", "negative_topics"}) {
      const bool positive = std::string(side) == "positive_topics";
      ordered_json arr = ordered_json::array();
      for (const auto& entry : top_entries(tops, cfg.wordcloud_topics, positive, "")) {
        ordered_json topic;
        topic["topic"] = entry["feature"];
        topic["r"] = entry["r"];
        topic["words"] = topic_words(entry["feature"].get<std::string>());
        arr.push_back(std::move(topic));
      }
      cloud[side] = std::move(arr);
    }
    write_file(out_path(cfg, "wordcloud_job" + std::to_string(job) + ".json"),
               cloud.dump(2) + "\n");
  }

  // Radar data: trait correlations in O, C, E, A, N order, unfiltered.
  const FeatureMatrix traits = load_feature_csv(out_path(cfg, "features_traits.csv"));
  if (!traits.names.empty()) {
    const CorrelationReport all = correlate_matrix(traits, jw.job_ids, jw.weights, 1.0);
    static const char* kOrder[5] = {"openness", "conscientiousness", "extraversion",
                                    "agreeableness", "neuroticism"};
    ordered_json radar;
    radar["axes"] = {"O", "C", "E", "A", "N"};
    radar["traits"] = std::vector<std::string>(kOrder, kOrder + 5);
    radar["jobs"] = ordered_json::array();
    for (const int job : jw.job_ids) {
      ordered_json entry;
      entry["id"] = job;
      const auto label = jw.labels.find(job);
      entry["label"] = label == jw.labels.end() ? "job_" + std::to_string(job) : label->second;
      ordered_json rs = ordered_json::array();
      ordered_json ps = ordered_json::array();
      for (const char* trait : kOrder) {
        const std::string feature = std::string("trait:") + trait;
        const CorrelationResult* found = nullptr;
        for (const auto& res : all.results) {
          if (res.job == job && res.feature == feature) {
            found = &res;
            break;
          }
        }
        if (found) {
          rs.push_back(found->r);
          ps.push_back(found->p);
        } else {
          rs.push_back(nullptr);
          ps.push_back(nullptr);
        }
      }
      entry["r"] = std::move(rs);
      entry["p"] = std::move(ps);
      radar["jobs"].push_back(std::move(entry));
    }
    write_file(out_path(cfg, "radar.json"), radar.dump(2) + "\n");
  }
}

void run_pipeline(const PipelineConfig& cfg) {
  ensure_out_dir(cfg);
  Manifest manifest;

  struct Stage {
    const char* name;
    void (*fn)(const PipelineConfig&);
    std::vector<std::string> artifacts;
  };
  std::vector<Stage> stages = {
      {"ingest", stage_ingest, {"corpus.jsonl"}},
      {"mine-phrases", stage_mine_phrases, {"vocabulary.csv"}},
      {"cluster-jobs",
       stage_cluster_jobs,
       {"job_model.json", "job_weights.csv", "job_weights_raw.csv"}},
      {"features",
       stage_features,
       {"features_lexicon.csv", "features_terms.csv", "tweet_topics.json",
        "features_topics.csv", "features_traits.csv"}},
      {"correlate",
       stage_correlate,
       {"correlations_lexicon.csv", "correlations_terms.csv", "correlations_topics.csv",
        "correlations_traits.csv"}},
      {"classify", stage_classify, {}},
      {"report", stage_report, {}},
  };

  for (auto& stage : stages) {
    try {
      stage.fn(cfg);
    } catch (const std::exception& e) {
      manifest.status = "partial";
      manifest.failed_stage = stage.name;
      manifest.notes.push_back(std::string("stage ") + stage.name + " failed: " + e.what());
      manifest.write(out_path(cfg, "manifest.json"));
      throw Error(std::string("stage ") + stage.name + ": " + e.what());
    }
    if (std::string(stage.name) == "classify") {
      if (cfg.run_classifier) {
        stage.artifacts = {"evaluation.csv", "evaluation_summary.json"};
      } else {
        manifest.notes.push_back("evaluation omitted: classifier disabled");
      }
    }
    if (std::string(stage.name) == "cluster-jobs" && !cfg.skills_k_candidates.empty()) {
      stage.artifacts.push_back("k_selection.json");
    }
    if (std::string(stage.name) == "report") {
      for (const int job : load_job_weights(cfg).job_ids) {
        stage.artifacts.push_back("wordcloud_job" + std::to_string(job) + ".json");
      }
      if (fs::exists(out_path(cfg, "radar.json"))) {
        stage.artifacts.push_back("radar.json");
      } else {
        manifest.notes.push_back("radar omitted: corpus has no trait scores");
      }
    }
    for (const auto& name : stage.artifacts) {
      manifest.add(name, out_path(cfg, name));
    }
  }
  manifest.write(out_path(cfg, "manifest.json"));
}

}  // namespace occlang
