#include <doctest.h>

#include <cmath>

#include "occlang/analysis.hpp"
#include "occlang/util.hpp"
#include "oracles.hpp"

using namespace occlang;

namespace {

EmojiTable plain_emoji() { return EmojiTable::from_entries({"\U0001F600"}); }

Corpus corpus_from_docs(const std::vector<std::string>& docs) {
  Corpus corpus;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    UserRecord u;
    u.user_id = "u" + std::to_string(i);
    u.tweets.push_back(docs[i]);
    corpus.users.push_back(std::move(u));
  }
  return corpus;
}

Vocabulary vocab_of(const std::vector<Term>& terms) {
  Vocabulary v;
  for (const auto& t : terms) {
    TermStats ts;
    ts.term = t;
    v.terms.push_back(ts);
  }
  return v;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("tfidf: ubiquitous term zeroes out") {
  const Corpus corpus = corpus_from_docs({"alpha beta", "alpha gamma", "alpha delta"});
  const FeatureMatrix fm = tfidf(corpus, plain_emoji(), vocab_of({{"alpha"}}));
  for (std::size_t u = 0; u < 3; ++u) CHECK(fm.values.at(u, 0) == 0.0);
}

TEST_CASE("tfidf hand-computed value") {
  // 4 users, df(beta) = 2, tf in user0 = 3
  const Corpus corpus =
      corpus_from_docs({"beta beta beta", "beta alpha", "alpha alpha", "gamma"});
  const FeatureMatrix fm = tfidf(corpus, plain_emoji(), vocab_of({{"beta"}}));
  CHECK(fm.values.at(0, 0) == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(fm.values.at(2, 0) == 0.0);
}

TEST_CASE("tfidf columns align with user support") {
  const Corpus corpus = corpus_from_docs(
      {"new york city", "new york state", "city limits", "upstate places"});
  const EmojiTable emoji = plain_emoji();
  VocabularyConfig cfg;
  cfg.min_support = 0.25;
  cfg.pmi_factor = -100.0;  // keep all grown phrases
  const Vocabulary vocab = build_vocabulary(corpus, emoji, cfg);
  const FeatureMatrix fm = tfidf(corpus, emoji, vocab);
  const TokenizedCorpus tc = TokenizedCorpus::build(corpus, emoji);
  for (std::size_t c = 0; c < vocab.terms.size(); ++c) {
    const double support = compute_user_support(tc, vocab.terms[c].term);
    std::size_t nonzero = 0;
    for (std::size_t u = 0; u < 4; ++u) nonzero += fm.values.at(u, c) != 0.0;
    if (vocab.terms[c].user_support == 1.0) {
      CHECK(nonzero == 0);  // idf = 0 column
    } else {
      CHECK(static_cast<double>(nonzero) / 4.0 == doctest::Approx(support));
    }
  }
}

TEST_CASE("tfidf rejects terms that never occur") {
  const Corpus corpus = corpus_from_docs({"alpha"});
  CHECK_THROWS_AS((void)tfidf(corpus, plain_emoji(), vocab_of({{"ghost"}})), Error);
}

TEST_CASE("tfidf of empty documents is a zero row") {
  Corpus corpus = corpus_from_docs({"alpha beta", "alpha"});
  UserRecord empty;
  empty.user_id = "empty";
  corpus.users.push_back(empty);
  const FeatureMatrix fm = tfidf(corpus, plain_emoji(), vocab_of({{"beta"}}));
  CHECK(fm.values.at(2, 0) == 0.0);
}

TEST_CASE("pearson exact cases") {
  const std::vector<double> x = {1, 2, 3};
  const auto [r1, p1] = pearson(x, x);
  CHECK(r1 == 1.0);
  CHECK(p1 == 0.0);
  const std::vector<double> y = {3, 2, 1};
  const auto [r2, p2] = pearson(x, y);
  CHECK(r2 == -1.0);
  CHECK(p2 == 0.0);
  const std::vector<double> a = {1, 2, 3, 4};
  const std::vector<double> b = {1, 3, 2, 4};
  const auto [r3, p3] = pearson(a, b);
  CHECK(r3 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(p3 > 0.0);
}

TEST_CASE("pearson errors") {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> constant = {5, 5, 5};
  CHECK_THROWS_WITH_AS((void)pearson(x, constant), doctest::Contains("zero variance"),
                       Error);
  const std::vector<double> two = {1, 2};
  CHECK_THROWS_AS((void)pearson(two, two), Error);
  const std::vector<double> photo = {1, 2, 3, 4};
  CHECK_THROWS_AS((void)pearson(x, photo), Error);
}

TEST_CASE("pearson matches long-double oracle") {
  Rng rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(200);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = 0.3 * x[i] + rng.normal();
    }
    const auto [r, p] = pearson(x, y);
    CHECK(r == doctest::Approx(oracles::pearson_r_oracle(x, y)).epsilon(1e-12));
    const double df = static_cast<double>(n) - 2.0;
    const double t = r * std::sqrt(df / (1.0 - r * r));
    CHECK(p == doctest::Approx(oracles::t_two_tailed_oracle(t, df)).epsilon(1e-6));
  }
}

TEST_CASE("pearson symmetry and scaling invariance") {
  Rng rng(31415);
  std::vector<double> x(50);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < 50; ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal();
  }
  const auto [rxy, pxy] = pearson(x, y);
  const auto [ryx, pyx] = pearson(y, x);
  CHECK(rxy == doctest::Approx(ryx).epsilon(1e-14));
  CHECK(pxy == doctest::Approx(pyx).epsilon(1e-12));
  std::vector<double> scaled = x;
  for (double& v : scaled) v *= 4.5;
  CHECK(pearson(scaled, y).first == doctest::Approx(rxy).epsilon(1e-12));
  for (double& v : scaled) v *= -1.0;
  CHECK(pearson(scaled, y).first == doctest::Approx(-rxy).epsilon(1e-12));
}

TEST_CASE("incomplete beta sanity") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) = x
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  CHECK(incomplete_beta(2.5, 0.5, 0.3) ==
        doctest::Approx(1.0 - incomplete_beta(0.5, 2.5, 0.7)).epsilon(1e-12));
}

TEST_CASE("correlate_matrix: planted term tops the ranking") {
  // job-0 users exclusively use "qzx"
  FeatureMatrix features;
  features.names = {"term:qzx", "term:noise1", "term:noise2"};
  const std::size_t n = 40;
  features.values = RowMatrix(n, 3);
  RowMatrix weights(n, 2);
  Rng rng(77);
  for (std::size_t u = 0; u < n; ++u) {
    const bool job0 = u < n / 2;
    weights.at(u, 0) = job0 ? 0.9 : 0.1;
    weights.at(u, 1) = job0 ? 0.1 : 0.9;
    features.values.at(u, 0) = job0 ? 1.0 + rng.uniform01() : 0.0;
    features.values.at(u, 1) = rng.uniform01();
    features.values.at(u, 2) = rng.uniform01();
  }
  const CorrelationReport report = correlate_matrix(features, {0, 1}, weights, 1.0);
  REQUIRE(!report.results.empty());
  CHECK(report.results.front().feature == "term:qzx");
  CHECK(report.results.front().job == 0);
  CHECK(report.results.front().r > 0.9);
  // results sorted by job then descending r
  for (std::size_t i = 1; i < report.results.size(); ++i) {
    const auto& prev = report.results[i - 1];
    const auto& cur = report.results[i];
    CHECK((prev.job < cur.job || (prev.job == cur.job && prev.r >= cur.r)));
  }
}

TEST_CASE("correlate_matrix skips constant columns and small n") {
  FeatureMatrix features;
  features.names = {"f:constant", "f:varying", "f:sparse"};
  features.values = RowMatrix(10, 3);
  RowMatrix weights(10, 1);
  for (std::size_t u = 0; u < 10; ++u) {
    features.values.at(u, 0) = 3.0;
    features.values.at(u, 1) = static_cast<double>(u);
    features.values.at(u, 2) = std::numeric_limits<double>::quiet_NaN();
    weights.at(u, 0) = static_cast<double>(u) / 10.0;
  }
  features.values.at(0, 2) = 1.0;
  features.values.at(1, 2) = 2.0;  // only 2 non-missing rows
  const CorrelationReport report = correlate_matrix(features, {4}, weights, 1.0);
  CHECK(report.skipped_constant == 1);
  CHECK(report.skipped_small_n == 1);
  REQUIRE(report.results.size() == 1);
  CHECK(report.results[0].feature == "f:varying");
  CHECK(report.results[0].n == 10);
}

TEST_CASE("correlate_matrix: constant job column skips whole job") {
  FeatureMatrix features;
  features.names = {"f:a", "f:b"};
  features.values = RowMatrix(8, 2);
  RowMatrix weights(8, 2);
  for (std::size_t u = 0; u < 8; ++u) {
    features.values.at(u, 0) = static_cast<double>(u);
    features.values.at(u, 1) = static_cast<double>(u * u);
    weights.at(u, 0) = 0.5;  // constant
    weights.at(u, 1) = u < 4 ? 0.9 : 0.1;
  }
  const CorrelationReport report = correlate_matrix(features, {0, 1}, weights, 1.0);
  for (const auto& res : report.results) CHECK(res.job == 1);
  CHECK(report.skipped_constant == 2);
}

TEST_CASE("pairwise exclusion records effective n") {
  Corpus corpus = corpus_from_docs({"a", "b", "c", "d"});
  corpus.users[0].traits = {{{"openness", 0.7}, {"neuroticism", 0.2}}};
  corpus.users[1].traits = {{{"openness", 0.4}}};
  corpus.users[3].traits = {{{"openness", 0.9}}};
  const FeatureMatrix traits = trait_matrix(corpus);
  REQUIRE(traits.names.size() == 2);
  CHECK(traits.names[0] == "trait:neuroticism");
  CHECK(traits.names[1] == "trait:openness");
  RowMatrix weights(4, 1);
  weights.at(0, 0) = 0.9;
  weights.at(1, 0) = 0.5;
  weights.at(2, 0) = 0.3;
  weights.at(3, 0) = 0.8;
  const CorrelationReport report = correlate_matrix(traits, {0}, weights, 1.0);
  // neuroticism has n=1 -> skipped; openness has n=3
  CHECK(report.skipped_small_n == 1);
  REQUIRE(report.results.size() == 1);
  CHECK(report.results[0].feature == "trait:openness");
  CHECK(report.results[0].n == 3);
}

TEST_CASE("null calibration: p < 0.05 fraction near nominal") {
  Rng rng(987654);
  const std::size_t n = 200;
  int hits = 0;
  const int trials = 1000;
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (int t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
    }
    if (pearson(x, y).second < 0.05) ++hits;
  }
  const double fraction = static_cast<double>(hits) / trials;
  CHECK(fraction >= 0.03);
  CHECK(fraction <= 0.07);
}

}  // TEST_SUITE
