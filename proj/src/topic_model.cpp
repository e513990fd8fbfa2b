#include "occlang/topic_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "occlang/kernels.hpp"
#include "occlang/util.hpp"

namespace occlang {

long long DocTermMatrix::doc_total(std::size_t d) const {
  long long total = 0;
  for (const auto& [idx, count] : docs[d]) {
    (void)idx;
    total += count;
  }
  return total;
}

std::string DocTermMatrix::doc_name(std::size_t d) const {
  if (d < doc_ids.size()) return doc_ids[d];
  return "#" + std::to_string(d);
}

void DocTermMatrix::validate() const {
  const int v = static_cast<int>(terms.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& [idx, count] : docs[d]) {
      if (idx < 0 || idx >= v) {
        throw Error("document " + doc_name(d) + ": term index " + std::to_string(idx) +
                    " out of range");
      }
      if (count <= 0) {
        throw Error("document " + doc_name(d) + ": counts must be positive");
      }
    }
  }
}

DocTermMatrix DocTermMatrix::subset(const std::vector<std::size_t>& doc_indices) const {
  DocTermMatrix out;
  out.terms = terms;
  out.docs.reserve(doc_indices.size());
  for (std::size_t d : doc_indices) {
    out.docs.push_back(docs[d]);
    if (d < doc_ids.size()) out.doc_ids.push_back(doc_ids[d]);
  }
  return out;
}

void LdaConfig::validate() const {
  if (k < 1) throw Error("lda config: k must be >= 1");
  if (resolved_alpha() <= 0.0 || beta <= 0.0) {
    throw Error("lda config: alpha and beta must be positive");
  }
  if (!(iterations > burn_in && burn_in >= 0)) {
    throw Error("lda config: need iterations > burn_in >= 0");
  }
}

namespace {

// Sequential in-place cumulative sum; the draw below depends on this exact
// addition order, which keeps sampling identical across kernel ISAs.
inline int draw_from_scores(std::vector<double>& scores, int k, double u01) {
  double cum = 0.0;
  for (int j = 0; j < k; ++j) {
    cum += scores[j];
    scores[j] = cum;
  }
  const double target = u01 * cum;
  for (int j = 0; j < k; ++j) {
    if (target < scores[j]) return j;
  }
  return k - 1;
}

}  // namespace

LdaModel fit(const DocTermMatrix& matrix, const LdaConfig& config) {
  config.validate();
  matrix.validate();
  if (matrix.docs.empty()) throw Error("lda fit: empty document set");
  const std::size_t n_docs = matrix.docs.size();
  const int k = config.k;
  const std::size_t v = matrix.vocab_size();
  if (v == 0) throw Error("lda fit: empty vocabulary");
  const double alpha = config.resolved_alpha();
  const double beta = config.beta;
  const double v_beta = static_cast<double>(v) * beta;

  // Flattened token instances; an endorsement/count of c expands to c tokens.
  std::vector<int> token_word;
  std::vector<std::size_t> doc_begin(n_docs + 1, 0);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const long long total = matrix.doc_total(d);
    if (total <= 0) {
      throw Error("lda fit: document " + matrix.doc_name(d) + " has no tokens");
    }
    for (const auto& [idx, count] : matrix.docs[d]) {
      for (long long c = 0; c < count; ++c) token_word.push_back(idx);
    }
    doc_begin[d + 1] = token_word.size();
  }

  std::vector<int> z(token_word.size());
  // Transposed layouts keep the per-token inner loop over k contiguous.
  std::vector<double> n_wk(v * static_cast<std::size_t>(k), 0.0);
  std::vector<double> n_dk(n_docs * static_cast<std::size_t>(k), 0.0);
  std::vector<double> n_k(k, 0.0);

  Rng rng(config.seed);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (std::size_t t = doc_begin[d]; t < doc_begin[d + 1]; ++t) {
      const int topic = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
      z[t] = topic;
      n_wk[static_cast<std::size_t>(token_word[t]) * k + topic] += 1.0;
      n_dk[d * k + topic] += 1.0;
      n_k[topic] += 1.0;
    }
  }

  std::vector<double> scores(k);
  for (int it = 0; it < config.iterations; ++it) {
    for (std::size_t d = 0; d < n_docs; ++d) {
      double* dk = n_dk.data() + d * k;
      for (std::size_t t = doc_begin[d]; t < doc_begin[d + 1]; ++t) {
        const int w = token_word[t];
        double* wk = n_wk.data() + static_cast<std::size_t>(w) * k;
        const int old = z[t];
        wk[old] -= 1.0;
        dk[old] -= 1.0;
        n_k[old] -= 1.0;
        kernels::topic_scores(wk, dk, n_k.data(), alpha, beta, v_beta, scores.data(),
                              static_cast<std::size_t>(k));
        const int topic = draw_from_scores(scores, k, rng.uniform01());
        z[t] = topic;
        wk[topic] += 1.0;
        dk[topic] += 1.0;
        n_k[topic] += 1.0;
      }
    }
  }

  LdaModel model;
  model.config = config;
  model.terms = matrix.terms;
  model.phi = RowMatrix(k, v);
  model.theta = RowMatrix(n_docs, k);
  for (int j = 0; j < k; ++j) {
    const double denom = n_k[j] + v_beta;
    for (std::size_t w = 0; w < v; ++w) {
      model.phi.at(j, w) = (n_wk[w * k + j] + beta) / denom;
    }
  }
  for (std::size_t d = 0; d < n_docs; ++d) {
    const double total = static_cast<double>(doc_begin[d + 1] - doc_begin[d]);
    const double denom = total + static_cast<double>(k) * alpha;
    for (int j = 0; j < k; ++j) {
      model.theta.at(d, j) = (n_dk[d * k + j] + alpha) / denom;
    }
  }
  return model;
}

std::vector<double> infer(const LdaModel& model,
                          const std::vector<std::pair<int, long long>>& doc,
                          std::uint64_t seed, int iterations) {
  const int k = model.config.k;
  const std::size_t v = model.terms.size();
  if (iterations < 0) iterations = model.config.iterations;

  long long total = 0;
  for (const auto& [idx, count] : doc) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= v) {
      throw Error("lda infer: term index " + std::to_string(idx) + " out of range");
    }
    if (count < 0) throw Error("lda infer: negative count");
    total += count;
  }
  if (total <= 0) throw Error("lda infer: document has no tokens");

  // Gather phi columns for the document's distinct terms; the sweep loop is
  // then contiguous over k.
  std::vector<double> phi_cols(doc.size() * static_cast<std::size_t>(k));
  std::vector<int> token_term;  // index into doc
  for (std::size_t i = 0; i < doc.size(); ++i) {
    for (int j = 0; j < k; ++j) {
      phi_cols[i * k + j] = model.phi.at(j, doc[i].first);
    }
    for (long long c = 0; c < doc[i].second; ++c) token_term.push_back(static_cast<int>(i));
  }

  const double alpha = model.config.resolved_alpha();
  std::vector<double> dk(k, 0.0);
  std::vector<int> z(token_term.size());
  Rng rng(seed);
  for (std::size_t t = 0; t < token_term.size(); ++t) {
    const int topic = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    z[t] = topic;
    dk[topic] += 1.0;
  }
  std::vector<double> scores(k);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t t = 0; t < token_term.size(); ++t) {
      const int old = z[t];
      dk[old] -= 1.0;
      const double* col = phi_cols.data() + static_cast<std::size_t>(token_term[t]) * k;
      kernels::fold_scores(col, dk.data(), alpha, scores.data(), static_cast<std::size_t>(k));
      const int topic = draw_from_scores(scores, k, rng.uniform01());
      z[t] = topic;
      dk[topic] += 1.0;
    }
  }
  std::vector<double> weights(k);
  const double denom = static_cast<double>(total) + static_cast<double>(k) * alpha;
  for (int j = 0; j < k; ++j) weights[j] = (dk[j] + alpha) / denom;
  return weights;
}

double perplexity(const LdaModel& model, const DocTermMatrix& heldout) {
  const int k = model.config.k;
  const std::size_t v = model.terms.size();
  double log_likelihood = 0.0;
  long long total_tokens = 0;
  std::vector<double> phi_col(k);
  for (std::size_t d = 0; d < heldout.docs.size(); ++d) {
    const auto& doc = heldout.docs[d];
    for (const auto& [idx, count] : doc) {
      (void)count;
      if (idx < 0 || static_cast<std::size_t>(idx) >= v) {
        throw Error("perplexity: term index " + std::to_string(idx) +
                    " not in model vocabulary");
      }
    }
    const std::vector<double> theta =
        infer(model, doc, seed_mix(model.config.seed, 0x9e1d0u, d));
    for (const auto& [idx, count] : doc) {
      for (int j = 0; j < k; ++j) phi_col[j] = model.phi.at(j, idx);
      const double p = kernels::dot(theta.data(), phi_col.data(), static_cast<std::size_t>(k));
      log_likelihood += static_cast<double>(count) * std::log(p);
      total_tokens += count;
    }
  }
  if (total_tokens <= 0) throw Error("perplexity: held-out set has no tokens");
  return std::exp(-log_likelihood / static_cast<double>(total_tokens));
}

KSelection select_k(const DocTermMatrix& matrix, const std::vector<int>& k_candidates,
                    int folds, const LdaConfig& config_template, double plateau_tol) {
  if (k_candidates.empty()) throw Error("select_k: no candidates");
  if (folds < 2) throw Error("select_k: folds must be >= 2");
  if (matrix.docs.size() < static_cast<std::size_t>(folds)) {
    throw Error("select_k: fewer documents than folds");
  }
  if (plateau_tol < 0.0) throw Error("select_k: plateau_tol must be >= 0");

  std::vector<std::size_t> order(matrix.docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng fold_rng(seed_mix(config_template.seed, 0xf01d5u));
  fold_rng.shuffle(order);

  KSelection out;
  for (int k : k_candidates) {
    double total = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_docs;
      std::vector<std::size_t> held_docs;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (static_cast<int>(i % static_cast<std::size_t>(folds)) == f) {
          held_docs.push_back(order[i]);
        } else {
          train_docs.push_back(order[i]);
        }
      }
      LdaConfig cfg = config_template;
      cfg.k = k;
      cfg.seed = seed_mix(config_template.seed, static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(f));
      const LdaModel model = fit(matrix.subset(train_docs), cfg);
      total += perplexity(model, matrix.subset(held_docs));
    }
    out.curve.emplace_back(k, total / static_cast<double>(folds));
  }

  double min_mean = std::numeric_limits<double>::infinity();
  for (const auto& [k, mean] : out.curve) {
    (void)k;
    min_mean = std::min(min_mean, mean);
  }
  std::vector<std::pair<int, double>> by_k = out.curve;
  std::sort(by_k.begin(), by_k.end());
  for (const auto& [k, mean] : by_k) {
    if (mean <= min_mean * (1.0 + plateau_tol)) {
      out.chosen_k = k;
      break;
    }
  }
  return out;
}

namespace {

using nlohmann::json;

json matrix_to_json(const RowMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RowMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array()) throw Error("lda model: matrix must be an array");
  const std::size_t r = rows.size();
  const std::size_t c = r > 0 ? rows[0].size() : 0;
  RowMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("lda model: ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j].get<double>();
  }
  return m;
}

}  // namespace

void LdaModel::save(const std::string& path) const {
  json obj;
  obj["format"] = "occlang-lda";
  obj["version"] = 1;
  obj["config"] = {{"k", config.k},         {"alpha", config.alpha},
                   {"beta", config.beta},   {"iterations", config.iterations},
                   {"burn_in", config.burn_in}, {"seed", config.seed}};
  obj["terms"] = terms;
  obj["phi"] = matrix_to_json(phi);
  obj["theta"] = matrix_to_json(theta);
  write_file(path, obj.dump());
}

LdaModel LdaModel::load(const std::string& path) {
  json obj;
  try {
    obj = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("lda model " + path + ": invalid JSON: " + e.what());
  }
  if (obj.value("format", "") != "occlang-lda") {
    throw Error("lda model " + path + ": unrecognized format");
  }
  if (obj.value("version", 0) != 1) {
    throw Error("lda model " + path + ": unsupported version");
  }
  LdaModel model;
  const json& cfg = obj.at("config");
  model.config.k = cfg.at("k").get<int>();
  model.config.alpha = cfg.at("alpha").get<double>();
  model.config.beta = cfg.at("beta").get<double>();
  model.config.iterations = cfg.at("iterations").get<int>();
  model.config.burn_in = cfg.at("burn_in").get<int>();
  model.config.seed = cfg.at("seed").get<std::uint64_t>();
  model.terms = obj.at("terms").get<std::vector<std::string>>();
  model.phi = matrix_from_json(obj.at("phi"));
  model.theta = matrix_from_json(obj.at("theta"));
  return model;
}

}  // namespace occlang
