#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "occlang/matrix.hpp"

namespace occlang {

/// Sparse documents over a shared term index.
struct DocTermMatrix {
  std::vector<std::string> terms;  // index -> term
  std::vector<std::vector<std::pair<int, long long>>> docs;
  std::vector<std::string> doc_ids;  // optional, aligned with docs when present

  std::size_t vocab_size() const { return terms.size(); }
  long long doc_total(std::size_t d) const;
  std::string doc_name(std::size_t d) const;
  void validate() const;

  DocTermMatrix subset(const std::vector<std::size_t>& doc_indices) const;
};

struct LdaConfig {
  int k = 10;
  double alpha = 0.0;  // <= 0 selects the 50/k default
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 200;
  std::uint64_t seed = 1;

  double resolved_alpha() const { return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(k); }
  void validate() const;
};

/// Collapsed-Gibbs LDA estimate: row-stochastic topic-term matrix phi (k x V)
/// and document-topic matrix theta (D x k), both smoothed so every entry is
/// positive. Deterministic for a fixed seed.
struct LdaModel {
  LdaConfig config;
  std::vector<std::string> terms;
  RowMatrix phi;
  RowMatrix theta;

  void save(const std::string& path) const;
  static LdaModel load(const std::string& path);
};

LdaModel fit(const DocTermMatrix& matrix, const LdaConfig& config);

/// Fold-in inference with phi fixed; returns topic weights summing to 1.
std::vector<double> infer(const LdaModel& model,
                          const std::vector<std::pair<int, long long>>& doc,
                          std::uint64_t seed, int iterations = -1);

/// exp(-mean held-out token log-likelihood) with per-document fold-in.
double perplexity(const LdaModel& model, const DocTermMatrix& heldout);

struct KSelection {
  int chosen_k = 0;
  std::vector<std::pair<int, double>> curve;  // (k, mean held-out perplexity)
};

/// Cross-validated perplexity for each candidate; picks the smallest k whose
/// mean perplexity is within plateau_tol of the minimum over all candidates.
KSelection select_k(const DocTermMatrix& matrix, const std::vector<int>& k_candidates,
                    int folds, const LdaConfig& config_template, double plateau_tol = 0.02);

}  // namespace occlang
