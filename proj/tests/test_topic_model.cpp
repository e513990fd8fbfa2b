#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "occlang/kernels.hpp"
#include "occlang/topic_model.hpp"
#include "occlang/util.hpp"

using namespace occlang;

namespace {

DocTermMatrix tiny_matrix() {
  DocTermMatrix m;
  m.terms = {"a", "b", "c"};
  m.docs = {{{0, 2}, {1, 1}}, {{1, 3}}, {{0, 1}, {2, 2}}};
  m.doc_ids = {"d0", "d1", "d2"};
  return m;
}

// Docs drawn from known topic-term rows with Dirichlet document mixtures.
struct Planted {
  DocTermMatrix matrix;
  RowMatrix true_phi;
};

Planted planted_corpus(int n_topics, int vocab_per_topic, int n_docs, int doc_len,
                       double doc_alpha, std::uint64_t seed) {
  Planted out;
  const int v = n_topics * vocab_per_topic;
  out.true_phi = RowMatrix(n_topics, v);
  for (int t = 0; t < n_topics; ++t) {
    for (int w = 0; w < vocab_per_topic; ++w) {
      out.true_phi.at(t, t * vocab_per_topic + w) = 1.0 / vocab_per_topic;
    }
  }
  for (int w = 0; w < v; ++w) out.matrix.terms.push_back("w" + std::to_string(w));
  Rng rng(seed);
  const std::vector<double> alpha(n_topics, doc_alpha);
  for (int d = 0; d < n_docs; ++d) {
    const std::vector<double> theta = rng.dirichlet(alpha);
    std::map<int, long long> counts;
    for (int i = 0; i < doc_len; ++i) {
      double u = rng.uniform01();
      int topic = 0;
      double cum = 0.0;
      for (int t = 0; t < n_topics; ++t) {
        cum += theta[t];
        if (u < cum) {
          topic = t;
          break;
        }
        topic = t;
      }
      const int w = topic * vocab_per_topic + static_cast<int>(rng.below(vocab_per_topic));
      ++counts[w];
    }
    out.matrix.docs.emplace_back(counts.begin(), counts.end());
  }
  return out;
}

double cosine(const double* a, const double* b, std::size_t n) {
  const double ab = kernels::scalar::dot(a, b, n);
  const double aa = kernels::scalar::dot(a, a, n);
  const double bb = kernels::scalar::dot(b, b, n);
  return ab / std::sqrt(aa * bb);
}

double greedy_matched_cosine(const RowMatrix& fitted, const RowMatrix& truth) {
  std::vector<bool> used_f(fitted.rows(), false);
  std::vector<bool> used_t(truth.rows(), false);
  double total = 0.0;
  for (std::size_t round = 0; round < truth.rows(); ++round) {
    double best = -2.0;
    std::size_t bf = 0;
    std::size_t bt = 0;
    for (std::size_t f = 0; f < fitted.rows(); ++f) {
      if (used_f[f]) continue;
      for (std::size_t t = 0; t < truth.rows(); ++t) {
        if (used_t[t]) continue;
        const double c = cosine(fitted.row(f), truth.row(t), fitted.cols());
        if (c > best) {
          best = c;
          bf = f;
          bt = t;
        }
      }
    }
    used_f[bf] = true;
    used_t[bt] = true;
    total += best;
  }
  return total / static_cast<double>(truth.rows());
}

LdaConfig quick_config(int k, std::uint64_t seed, int iterations = 200) {
  LdaConfig cfg;
  cfg.k = k;
  cfg.alpha = 0.5;
  cfg.beta = 0.01;
  cfg.iterations = iterations;
  cfg.burn_in = iterations / 4;
  cfg.seed = seed;
  return cfg;
}

void check_row_stochastic(const RowMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      CHECK(m.at(r, c) > 0.0);
      total += m.at(r, c);
    }
    CHECK(std::fabs(total - 1.0) <= 1e-9);
  }
}

}  // namespace

TEST_SUITE("topic_model") {

TEST_CASE("k=1 forces exact theta and corpus phi") {
  const DocTermMatrix m = tiny_matrix();
  const LdaModel model = fit(m, quick_config(1, 3, 10));
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    CHECK(model.theta.at(d, 0) == 1.0);  // exact by construction
  }
  // phi equals the smoothed corpus term distribution: counts a:3 b:4 c:2, N=9
  const double vb = 3 * 0.01;
  CHECK(model.phi.at(0, 0) == doctest::Approx((3 + 0.01) / (9 + vb)).epsilon(1e-12));
  CHECK(model.phi.at(0, 1) == doctest::Approx((4 + 0.01) / (9 + vb)).epsilon(1e-12));
  CHECK(model.phi.at(0, 2) == doctest::Approx((2 + 0.01) / (9 + vb)).epsilon(1e-12));
}

TEST_CASE("rows are stochastic and entries positive") {
  const Planted p = planted_corpus(3, 10, 60, 40, 0.3, 11);
  const LdaModel model = fit(p.matrix, quick_config(3, 5));
  check_row_stochastic(model.phi);
  check_row_stochastic(model.theta);
}

TEST_CASE("two disjoint topics recovered") {
  const Planted p = planted_corpus(2, 12, 80, 50, 0.3, 21);
  const LdaModel model = fit(p.matrix, quick_config(2, 9, 300));
  CHECK(greedy_matched_cosine(model.phi, p.true_phi) >= 0.95);
}

TEST_CASE("seed determinism is bit exact") {
  const Planted p = planted_corpus(3, 8, 40, 30, 0.3, 31);
  const LdaConfig cfg = quick_config(3, 77, 60);
  const LdaModel a = fit(p.matrix, cfg);
  const LdaModel b = fit(p.matrix, cfg);
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);
  LdaConfig other = cfg;
  other.seed = 78;
  const LdaModel c = fit(p.matrix, other);
  CHECK(a.phi != c.phi);
}

TEST_CASE("empty documents and bad input rejected") {
  DocTermMatrix m = tiny_matrix();
  m.docs[1].clear();
  CHECK_THROWS_WITH_AS((void)fit(m, quick_config(2, 1)), doctest::Contains("d1"), Error);
  DocTermMatrix empty;
  empty.terms = {"a"};
  CHECK_THROWS_AS((void)fit(empty, quick_config(2, 1)), Error);
  DocTermMatrix bad = tiny_matrix();
  bad.docs[0][0].first = 99;
  CHECK_THROWS_AS((void)fit(bad, quick_config(2, 1)), Error);
}

TEST_CASE("infer: k=1, training doc closeness, planted exclusivity") {
  const Planted p = planted_corpus(3, 10, 80, 60, 0.2, 41);
  const LdaModel k1 = fit(tiny_matrix(), quick_config(1, 3, 10));
  const auto w1 = infer(k1, tiny_matrix().docs[0], 5);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0] == 1.0);

  const LdaModel model = fit(p.matrix, quick_config(3, 51, 300));
  // fold-in of a training document lands near its training mixture
  const auto folded = infer(model, p.matrix.docs[0], 123);
  double l1 = 0.0;
  for (int j = 0; j < 3; ++j) l1 += std::fabs(folded[j] - model.theta.at(0, j));
  CHECK(l1 <= 0.2);

  // a document of terms exclusive to one planted topic concentrates there
  std::vector<std::pair<int, long long>> pure;
  for (int w = 0; w < 10; ++w) pure.emplace_back(w, 3);  // topic 0 vocabulary
  const auto weights = infer(model, pure, 99);
  // find the fitted topic matching planted topic 0
  std::size_t best_topic = 0;
  double best_cos = -1.0;
  for (std::size_t t = 0; t < 3; ++t) {
    const double c = cosine(model.phi.row(t), p.true_phi.row(0), p.true_phi.cols());
    if (c > best_cos) {
      best_cos = c;
      best_topic = t;
    }
  }
  CHECK(weights[best_topic] > 0.9);

  CHECK_THROWS_AS((void)infer(model, {}, 1), Error);
  CHECK_THROWS_AS((void)infer(model, {{999, 1}}, 1), Error);
}

TEST_CASE("perplexity: uniform model analytic value") {
  const std::size_t v = 7;
  LdaModel model;
  model.config = quick_config(2, 1, 10);
  for (std::size_t w = 0; w < v; ++w) model.terms.push_back("t" + std::to_string(w));
  model.phi = RowMatrix(2, v, 1.0 / static_cast<double>(v));
  model.theta = RowMatrix(1, 2, 0.5);
  DocTermMatrix held;
  held.terms = model.terms;
  held.docs = {{{0, 2}, {3, 1}}, {{5, 4}}};
  CHECK(perplexity(model, held) == doctest::Approx(static_cast<double>(v)).epsilon(1e-9));
}

TEST_CASE("perplexity of fitted model beats uniform on training data") {
  Rng rng(61);
  for (int trial = 0; trial < 3; ++trial) {
    const Planted p = planted_corpus(3, 6, 30, 25, 0.4, 100 + trial);
    const LdaModel model = fit(p.matrix, quick_config(3, 200 + trial, 120));
    const double v = static_cast<double>(p.matrix.vocab_size());
    CHECK(perplexity(model, p.matrix) <= v);
  }
}

TEST_CASE("perplexity: single doc, single term, k=1") {
  DocTermMatrix m;
  m.terms = {"only", "other"};
  m.docs = {{{0, 5}}};
  const LdaModel model = fit(m, quick_config(1, 1, 10));
  const double phi0 = model.phi.at(0, 0);
  CHECK(perplexity(model, m) == doctest::Approx(1.0 / phi0).epsilon(1e-9));
}

TEST_CASE("perplexity invariant under topic permutation") {
  const Planted p = planted_corpus(3, 6, 30, 25, 0.4, 71);
  const LdaModel model = fit(p.matrix, quick_config(3, 7, 100));
  LdaModel permuted = model;
  // rotate topics 0<-1<-2<-0 in phi and theta
  for (std::size_t w = 0; w < model.phi.cols(); ++w) {
    permuted.phi.at(0, w) = model.phi.at(1, w);
    permuted.phi.at(1, w) = model.phi.at(2, w);
    permuted.phi.at(2, w) = model.phi.at(0, w);
  }
  for (std::size_t d = 0; d < model.theta.rows(); ++d) {
    permuted.theta.at(d, 0) = model.theta.at(d, 1);
    permuted.theta.at(d, 1) = model.theta.at(d, 2);
    permuted.theta.at(d, 2) = model.theta.at(d, 0);
  }
  // fold-in re-infers theta, so only phi matters; permutation cannot change it
  const double a = perplexity(model, p.matrix);
  const double b = perplexity(permuted, p.matrix);
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("select_k: single candidate returned") {
  const Planted p = planted_corpus(2, 6, 24, 20, 0.4, 81);
  LdaConfig tmpl = quick_config(2, 3, 60);
  const KSelection sel = select_k(p.matrix, {4}, 3, tmpl);
  CHECK(sel.chosen_k == 4);
  REQUIRE(sel.curve.size() == 1);
}

TEST_CASE("select_k input validation") {
  const Planted p = planted_corpus(2, 6, 10, 20, 0.4, 91);
  LdaConfig tmpl = quick_config(2, 3, 60);
  CHECK_THROWS_AS((void)select_k(p.matrix, {}, 3, tmpl), Error);
  CHECK_THROWS_AS((void)select_k(p.matrix, {2}, 1, tmpl), Error);
  CHECK_THROWS_AS((void)select_k(p.matrix, {2}, 11, tmpl), Error);
}

TEST_CASE("model serialization round-trip is exact") {
  const Planted p = planted_corpus(2, 5, 12, 15, 0.4, 101);
  const LdaModel model = fit(p.matrix, quick_config(2, 13, 40));
  const std::string path = "/tmp/occlang_lda_test.json";
  model.save(path);
  const LdaModel loaded = LdaModel::load(path);
  CHECK(loaded.phi == model.phi);
  CHECK(loaded.theta == model.theta);
  CHECK(loaded.terms == model.terms);
  CHECK(loaded.config.k == model.config.k);
  CHECK(loaded.config.seed == model.config.seed);
}

TEST_CASE("config validation") {
  LdaConfig bad = quick_config(0, 1);
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = quick_config(2, 1);
  bad.iterations = 5;
  bad.burn_in = 10;
  CHECK_THROWS_AS(bad.validate(), Error);
  LdaConfig defaulted;
  defaulted.k = 10;
  CHECK(defaulted.resolved_alpha() == doctest::Approx(5.0));
}

}  // TEST_SUITE
