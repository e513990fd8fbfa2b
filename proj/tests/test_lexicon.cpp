#include <doctest.h>

#include <string>

#include "occlang/lexicon.hpp"
#include "occlang/tokenizer.hpp"
#include "occlang/util.hpp"

using namespace occlang;

namespace {

EmojiTable plain_emoji() { return EmojiTable::from_entries({"\U0001F600"}); }

std::vector<Token> words(const std::string& text) {
  return tokenize(text, plain_emoji());
}

const std::string kSmallDic =
    "%\n"
    "1\tposemo\n"
    "2\tnegemo\n"
    "%\n"
    "happ*\t1\n"
    "sad\t2\n"
    "bittersweet\t1\t2\n";

}  // namespace

TEST_SUITE("lexicon") {

TEST_CASE("fixture parses with expected sizes") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  CHECK(lex.categories().size() == 2);
  CHECK(lex.pattern_count() == 3);
}

TEST_CASE("empty category section rejected") {
  CHECK_THROWS_WITH_AS(Lexicon::parse_text("%\n%\nfoo\t1\n", "fixture"),
                       doctest::Contains("empty category section"), Error);
}

TEST_CASE("unknown category id carries the line number") {
  const std::string text = "%\n1\ta\n%\nword\t9\n";
  CHECK_THROWS_WITH_AS(Lexicon::parse_text(text, "fixture"), doctest::Contains("line 4"),
                       Error);
}

TEST_CASE("bundled demo lexicon parses") {
  const Lexicon lex = Lexicon::parse(std::string(OCCLANG_DATA_DIR) + "/demo.dic");
  CHECK(lex.categories().size() == 15);
  const auto names = lex.feature_names();
  REQUIRE(names.size() == 19);  // 4 structural + 15 categories
  CHECK(names[0] == "WC");
  CHECK(names[4] == "i");
}

TEST_CASE("sixltr percentage") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  const FeatureVector fv = extract_features(words("beautiful cat"), lex);
  CHECK(fv.at("WC") == 2.0);
  CHECK(fv.at("Sixltr") == 50.0);
}

TEST_CASE("wildcard category percentage") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  const FeatureVector fv = extract_features(words("happy happy day"), lex);
  CHECK(fv.at("posemo") == doctest::Approx(100.0 * 2.0 / 3.0));
  CHECK(fv.at("negemo") == 0.0);
}

TEST_CASE("empty input gives all zeros") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  const FeatureVector fv = extract_features({}, lex);
  for (double v : fv.values) CHECK(v == 0.0);
}

TEST_CASE("multi-category pattern counts toward both") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  const FeatureVector fv = extract_features(words("bittersweet"), lex);
  CHECK(fv.at("posemo") == 100.0);
  CHECK(fv.at("negemo") == 100.0);
}

TEST_CASE("longest wildcard prefix wins over shorter") {
  const std::string dic =
      "%\n1\tshort\n2\tlong\n%\n"
      "work*\t1\n"
      "worksho*\t2\n";
  const Lexicon lex = Lexicon::parse_text(dic, "fixture");
  const FeatureVector a = extract_features(words("workshop"), lex);
  CHECK(a.at("long") == 100.0);
  CHECK(a.at("short") == 0.0);
  const FeatureVector b = extract_features(words("working"), lex);
  CHECK(b.at("short") == 100.0);
}

TEST_CASE("exact match beats wildcard") {
  const std::string dic =
      "%\n1\twild\n2\texact\n%\n"
      "cat*\t1\n"
      "cats\t2\n";
  const Lexicon lex = Lexicon::parse_text(dic, "fixture");
  const FeatureVector fv = extract_features(words("cats"), lex);
  CHECK(fv.at("exact") == 100.0);
  CHECK(fv.at("wild") == 0.0);
}

TEST_CASE("hashtag bodies count as words; structural token percentages") {
  const std::string dic = "%\n1\twork\n%\nwork*\t1\n";
  const Lexicon lex = Lexicon::parse_text(dic, "fixture");
  // tokens: #working (hashtag), ! (punct), ( and ) (punct), code (word)
  const FeatureVector fv = extract_features(words("#Working ! (code)"), lex);
  CHECK(fv.at("WC") == 2.0);                       // "working", "code"
  CHECK(fv.at("work") == 50.0);                    // 1 of 2 words
  CHECK(fv.at("Exclam") == doctest::Approx(20.0)); // 1 of 5 tokens
  CHECK(fv.at("Parenth") == doctest::Approx(40.0));
}

TEST_CASE("duplicating tokens keeps percentages, doubles WC") {
  const Lexicon lex = Lexicon::parse_text(kSmallDic, "fixture");
  auto tokens = words("happy sad day ! extra");
  auto doubled = tokens;
  doubled.insert(doubled.end(), tokens.begin(), tokens.end());
  const FeatureVector once = extract_features(tokens, lex);
  const FeatureVector twice = extract_features(doubled, lex);
  CHECK(twice.at("WC") == 2.0 * once.at("WC"));
  for (std::size_t i = 0; i < once.names.size(); ++i) {
    if (once.names[i] == "WC") continue;
    CHECK(twice.values[i] == doctest::Approx(once.values[i]));
  }
  for (double v : once.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 100.0 + 1e-12);
  }
}

}  // TEST_SUITE
