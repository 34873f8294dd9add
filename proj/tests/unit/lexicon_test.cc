#include <sstream>

#include <doctest.h>

#include "paths.h"
#include "sensoryrec/error.h"
#include "sensoryrec/feature.h"
#include "sensoryrec/lexicon.h"

using namespace sensoryrec;

TEST_CASE("feature names and classes") {
  CHECK(monotone_class(Feature::kCrowding) == MonotoneClass::kIncreasing);
  CHECK(monotone_class(Feature::kNoise) == MonotoneClass::kIncreasing);
  CHECK(monotone_class(Feature::kSmell) == MonotoneClass::kIncreasing);
  CHECK(monotone_class(Feature::kBrightness) == MonotoneClass::kVShaped);
  CHECK(monotone_class(Feature::kOpenness) == MonotoneClass::kVShaped);
  for (Feature f : kAllFeatures) CHECK(parse_feature(feature_name(f)) == f);
  CHECK(parse_feature("Noise") == Feature::kNoise);
  CHECK_FALSE(parse_feature("taste").has_value());
}

TEST_CASE("category names round-trip") {
  for (Category c : kAllCategories) CHECK(parse_category(category_name(c)) == c);
  CHECK(parse_category("Pubs and Coffee Shops") == Category::kPubsAndCoffeeShops);
  CHECK_FALSE(parse_category("zoo").has_value());
}

TEST_CASE("sensory lexicon rows") {
  const auto lex = parse_sensory_lexicon(
      "# comment\n"
      "scuro\tbrightness\t2\t-1\n"
      "\n"
      "Chiaro\tbrightness\t4\t1\n");
  REQUIRE(lex.size() == 2);
  const SensoryEntry* s = lex.find("scuro");
  REQUIRE(s != nullptr);
  CHECK(*s == SensoryEntry{"scuro", Feature::kBrightness, 2, -1});
  CHECK(lex.find("chiaro")->direction == 1);
  CHECK(lex.find("Chiaro") == nullptr);  // lookups take lowercase lemmas
  CHECK(lex.find("buio") == nullptr);
}

TEST_CASE("sensory lexicon errors name the line") {
  auto message = [](std::string_view text) {
    try {
      (void)parse_sensory_lexicon(text);
    } catch (const LoadError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("scuro\tbrightness\t6\t-1\n").find("base out of range") !=
        std::string::npos);
  CHECK(message("x\tbrightness\t2\t-1\nscuro\tbrightness\t0.5\t-1\n").find("line 2") !=
        std::string::npos);
  CHECK(message("scuro\tbrightness\t2\t0\n").find("direction") != std::string::npos);
  CHECK(message("scuro\ttaste\t2\t1\n").find("feature") != std::string::npos);
  CHECK(message("scuro\tbrightness\t2\n").find("line 1") != std::string::npos);
  CHECK(message("scuro\tbrightness\t2\t1\nScuro\tbrightness\t3\t1\n").find("duplicate") !=
        std::string::npos);
}

TEST_CASE("modifier lexicon rows and errors") {
  const auto lex = parse_modifier_lexicon("tanto\t1\npoco\t-1\ntroppo\t2\n");
  CHECK(lex.find("tanto")->impact == 1);
  CHECK(lex.find("poco")->impact == -1);
  CHECK_THROWS_WITH_AS(parse_modifier_lexicon("forse\t0\n"),
                       doctest::Contains("impact out of range"), LoadError);
  CHECK_THROWS_AS(parse_modifier_lexicon("forse\t3\n"), LoadError);
  CHECK_THROWS_AS(parse_modifier_lexicon("forse\t1.5\n"), LoadError);
  CHECK_THROWS_AS(parse_modifier_lexicon("tanto\t1\ntanto\t2\n"), LoadError);
}

TEST_CASE("lexicons round-trip through their writers") {
  const auto sensory = load_sensory_lexicon(testing::data_dir() / "lexicon/sensory.tsv");
  const auto modifiers = load_modifier_lexicon(testing::data_dir() / "lexicon/modifier.tsv");
  std::ostringstream s, m;
  write_sensory_lexicon(sensory, s);
  write_modifier_lexicon(modifiers, m);
  CHECK(parse_sensory_lexicon(s.str()) == sensory);
  CHECK(parse_modifier_lexicon(m.str()) == modifiers);
  for (const auto& [word, e] : sensory.entries()) {
    CHECK(e.base >= 1);
    CHECK(e.base <= 5);
    CHECK(e.direction * e.direction == 1);
  }
}

TEST_CASE("a word may not be both sensory and modifier") {
  const auto sensory = parse_sensory_lexicon("tanto\tnoise\t3\t1\n");
  const auto modifiers = parse_modifier_lexicon("tanto\t1\n");
  CHECK_THROWS_AS(check_disjoint(sensory, modifiers), LoadError);
  CHECK_NOTHROW(check_disjoint(sensory, parse_modifier_lexicon("poco\t-1\n")));
}

TEST_CASE("missing lexicon file is an I/O error naming the path") {
  CHECK_THROWS_WITH_AS(load_sensory_lexicon("/nonexistent/lex.tsv"),
                       doctest::Contains("/nonexistent/lex.tsv"), IoError);
}

TEST_CASE("shipped sample lexicons load and are disjoint") {
  const auto root = testing::data_dir().parent_path().parent_path() / "data/lexicon";
  const auto sensory = load_sensory_lexicon(root / "sensory_lexicon.tsv");
  const auto modifiers = load_modifier_lexicon(root / "modifier_lexicon.tsv");
  CHECK_NOTHROW(check_disjoint(sensory, modifiers));
  CHECK(sensory.find("scuro")->base == 2);
  CHECK(modifiers.find("tanto")->impact == 1);
}
