#include <doctest.h>

#include <string>

#include "occlang/corpus.hpp"
#include "occlang/phrase_miner.hpp"
#include "occlang/tokenizer.hpp"
#include "occlang/util.hpp"

using namespace occlang;

namespace {

Corpus from_lines(const std::string& text) { return corpus_from_jsonl(text, "test"); }

EmojiTable test_emoji() { return EmojiTable::from_entries({"\U0001F600"}); }

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("three valid lines round-trip") {
  const std::string text =
      R"({"user_id": "u1", "tweets": ["hello world"], "skills": {"Blogging": 12}})"
      "\n"
      R"({"user_id": "u2", "tweets": [], "skills": {}})"
      "\n"
      R"({"user_id": "u3", "tweets": ["a", "b"], "skills": {"Editing": 7}, "traits": {"openness": 0.61}})"
      "\n";
  const Corpus corpus = from_lines(text);
  REQUIRE(corpus.size() == 3);
  CHECK(corpus.users[0].user_id == "u1");
  CHECK(corpus.users[2].traits.has_value());
  CHECK(corpus.users[2].traits->at("openness") == 0.61);

  const Corpus again = from_lines(corpus_to_jsonl(corpus));
  CHECK(again.users == corpus.users);
}

TEST_CASE("empty file gives empty corpus") {
  CHECK(from_lines("").size() == 0);
}

TEST_CASE("missing user_id names the line") {
  const std::string text = R"({"user_id": "u1", "tweets": []})"
                           "\n"
                           R"({"tweets": ["x"]})"
                           "\n";
  CHECK_THROWS_WITH_AS(from_lines(text), doctest::Contains("line 2: missing user_id"), Error);
}

TEST_CASE("duplicate user_id names the id") {
  const std::string text = R"({"user_id": "dup", "tweets": []})"
                           "\n"
                           R"({"user_id": "dup", "tweets": []})"
                           "\n";
  CHECK_THROWS_WITH_AS(from_lines(text), doctest::Contains("dup"), Error);
}

TEST_CASE("malformed json names the line") {
  CHECK_THROWS_WITH_AS(from_lines("{not json}\n"), doctest::Contains("line 1"), Error);
}

TEST_CASE("negative skill count rejected") {
  CHECK_THROWS_AS(from_lines(R"({"user_id": "u", "skills": {"X": -1}})" "\n"), Error);
}

TEST_CASE("filter_users thresholds") {
  Corpus corpus;
  for (int n : {5, 10, 20}) {
    UserRecord u;
    u.user_id = "u" + std::to_string(n);
    for (int i = 0; i < n; ++i) u.tweets.push_back("t");
    if (n != 10) u.skills["Skill"] = 1;
    corpus.users.push_back(u);
  }
  CHECK(filter_users(corpus, 10, false).size() == 2);
  CHECK(filter_users(corpus, 0, false).users == corpus.users);  // identity
  CHECK(filter_users(corpus, 0, true).size() == 2);             // u10 has no skills
  CHECK(filter_users(corpus, 2000, false).size() == 0);         // reference floor
}

TEST_CASE("filter_users is idempotent and monotone") {
  Rng rng(99);
  Corpus corpus;
  for (int i = 0; i < 30; ++i) {
    UserRecord u;
    u.user_id = "u" + std::to_string(i);
    const int n = static_cast<int>(rng.below(15));
    for (int t = 0; t < n; ++t) u.tweets.push_back("x");
    if (rng.uniform01() < 0.7) u.skills["S"] = 1;
    corpus.users.push_back(u);
  }
  std::size_t prev = corpus.size() + 1;
  for (long long min_tweets = 0; min_tweets <= 15; ++min_tweets) {
    const Corpus once = filter_users(corpus, min_tweets, true);
    const Corpus twice = filter_users(once, min_tweets, true);
    CHECK(once.users == twice.users);
    CHECK(once.size() <= prev);
    prev = once.size();
  }
}

TEST_CASE("aggregate_document joins with newlines") {
  UserRecord u;
  u.tweets = {"a", "b"};
  CHECK(aggregate_document(u) == "a\nb");
  u.tweets = {};
  CHECK(aggregate_document(u) == "");
}

TEST_CASE("aggregation preserves token counts") {
  const EmojiTable emoji = test_emoji();
  UserRecord u;
  u.tweets = {"great \U0001F600 day", "b4 :) #fun", "check http://x.co now!"};
  std::size_t per_tweet = 0;
  for (const auto& t : u.tweets) per_tweet += tokenize(t, emoji).size();
  const std::size_t joined = tokenize(aggregate_document(u), emoji).size();
  CHECK(per_tweet == joined);
}

}  // TEST_SUITE
