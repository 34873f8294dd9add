#include <algorithm>
#include <cmath>
#include <sstream>

#include <doctest.h>

#include "generators.h"
#include "sensoryrec/error.h"
#include "sensoryrec/profiles.h"
#include "sensoryrec/synthetic.h"

using namespace sensoryrec;

namespace {

std::string neutral_users(const std::string& id) {
  std::string row = id;
  for (std::size_t c = 0; c < kNumCategories; ++c) row += ",3";
  for (int a = 0; a < 7; ++a) row += ",1";
  return users_csv_header() + "\n" + row + "\n";
}

}  // namespace

TEST_CASE("catalog and feature table ingestion") {
  const Catalog catalog = parse_catalog("item_id,category\np1,squares\np2,libraries\n");
  SUBCASE("item without feature rows is all unknown") {
    const auto items = build_items(catalog, {});
    REQUIRE(items.size() == 2);
    for (const auto& e : items[0].features) CHECK(e == FeatureEvidence{});
    CHECK(items[0].category == Category::kSquares);
  }
  SUBCASE("feature row") {
    const auto table = parse_feature_table("item_id,feature,value,count\np1,crowding,4.2,9\n");
    const auto items = build_items(catalog, table);
    CHECK(items[0].features[index(Feature::kCrowding)] == FeatureEvidence{4.2, 9});
  }
  SUBCASE("rows without counts weigh one each") {
    const auto table = parse_feature_table("item_id,feature,value\np1,noise,2.5\n");
    CHECK(table.at("p1")[index(Feature::kNoise)] == FeatureEvidence{2.5, 1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_feature_table("item_id,feature,value,count\np1,noise,5.5,1\n"),
                    LoadError);
    CHECK_THROWS_AS(parse_feature_table("item_id,feature,value,count\np1,noise,3,0\n"),
                    LoadError);
    CHECK_THROWS_AS(parse_feature_table("item_id,feature,value,count\np1,taste,3,1\n"),
                    LoadError);
    CHECK_THROWS_AS(
        parse_feature_table("item_id,feature,value,count\np1,noise,3,1\np1,noise,2,1\n"),
        LoadError);
    CHECK_THROWS_AS(parse_catalog("item_id,category\np1,zoo\n"), LoadError);
    const auto dangling = parse_feature_table("item_id,feature,value\np9,noise,2\n");
    CHECK_THROWS_AS(build_items(catalog, dangling), LoadError);
  }
}

TEST_CASE("users and ratings") {
  const auto users = parse_users(neutral_users("u1"));
  REQUIRE(users.size() == 1);
  CHECK(users[0].preference(Category::kBookshops) == 3);
  CHECK(users[0].aversions == Aversions{});

  const auto items = build_items(parse_catalog("item_id,category\np1,squares\n"), {});
  CHECK(parse_ratings("user_id,item_id,rating\nu1,p1,4\n", users, items).at(0).value == 4);
  CHECK_THROWS_AS(parse_ratings("user_id,item_id,rating\nu1,p1,6\n", users, items), LoadError);
  CHECK_THROWS_AS(parse_ratings("user_id,item_id,rating\nu2,p1,3\n", users, items), LoadError);
  CHECK_THROWS_AS(parse_ratings("user_id,item_id,rating\nu1,p9,3\n", users, items), LoadError);

  std::string header = users_csv_header();
  header = header.substr(0, header.rfind(','));  // drop av_openness_high
  std::string row = "u1";
  for (std::size_t c = 0; c < kNumCategories; ++c) row += ",3";
  for (int a = 0; a < 6; ++a) row += ",1";
  CHECK_THROWS_WITH_AS(parse_users(header + "\n" + row + "\n"),
                       doctest::Contains("av_openness_high"), LoadError);
}

TEST_CASE("writers round-trip") {
  testing::Gen gen(9);
  std::vector<UserProfile> users;
  for (int i = 0; i < 5; ++i) users.push_back(gen.user("u" + std::to_string(i), 0.2));
  std::ostringstream out;
  write_users(users, out);
  CHECK(parse_users(out.str()) == users);

  const auto items = gen.items(6, 0.3);
  std::ostringstream cat, feat;
  write_catalog(items, cat);
  const auto table = to_feature_table(items);
  write_feature_table(table, feat);
  const auto back = build_items(parse_catalog(cat.str()), parse_feature_table(feat.str()));
  REQUIRE(back.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(back[i].category == items[i].category);
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      CHECK(back[i].features[f].count == items[i].features[f].count);
      CHECK(back[i].features[f].value ==
            doctest::Approx(items[i].features[f].value).epsilon(1e-4));
    }
  }
}

TEST_CASE("AUT-sized fixture loads") {
  SynthConfig cfg;
  cfg.n_users = 20;
  cfg.n_items = 50;
  const auto data = generate_synthetic(cfg);
  std::ostringstream u, r, c;
  write_users(data.users, u);
  write_ratings(data.ratings, r);
  write_catalog(data.truth, c);
  const auto users = parse_users(u.str());
  const auto items = build_items(parse_catalog(c.str()), {});
  const auto ratings = parse_ratings(r.str(), users, items);
  CHECK(users.size() == 20);
  const double mean = static_cast<double>(ratings.size()) / users.size();
  CHECK(mean >= 25);
  CHECK(mean <= 40);
}

TEST_CASE("single-feature fusion") {
  CHECK(fuse_feature({4, 3}, {2, 1}) == FeatureEvidence{3.5, 4});
  CHECK(fuse_feature({0, 0}, {2.56, 42}) == FeatureEvidence{2.56, 42});
  CHECK(fuse_feature({0, 0}, {0, 0}) == FeatureEvidence{0, 0});
  CHECK_THROWS_AS(fuse_feature({3, -1}, {2, 1}), ValidationError);
  CHECK_THROWS_AS(fuse_feature({3, 0}, {2, 1}), ValidationError);
}

TEST_CASE("fusion properties on random evidence") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 5000; ++trial) {
    const FeatureEvidence a = gen.evidence(0.3);
    const FeatureEvidence b = gen.evidence(0.3);
    const FeatureEvidence ab = fuse_feature(a, b);
    const FeatureEvidence ba = fuse_feature(b, a);
    CHECK(ab == ba);
    CHECK(fuse_feature(a, {}) == a);
    CHECK(ab.count == a.count + b.count);
    if (a.known() && b.known()) {
      const double direct = (a.count * a.value + b.count * b.value) / (a.count + b.count);
      CHECK(std::abs(ab.value - direct) <= 1e-12);
      CHECK(ab.value >= std::min(a.value, b.value));
      CHECK(ab.value <= std::max(a.value, b.value));
    }
  }
}

TEST_CASE("profile fusion") {
  testing::Gen gen(4);
  const auto items = gen.items(10, 0.4);
  SUBCASE("with itself doubles counts and keeps values") {
    const auto fused = fuse_profiles(items, items);
    REQUIRE(fused.size() == items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t f = 0; f < kNumFeatures; ++f) {
        CHECK(fused[i].features[f].count == 2 * items[i].features[f].count);
        CHECK(fused[i].features[f].value ==
              doctest::Approx(items[i].features[f].value).epsilon(1e-12));
      }
    }
  }
  SUBCASE("compensation") {
    ItemProfile a{"p1", Category::kSquares, {}}, b = a;
    b.features[index(Feature::kSmell)] = {3.25, 4};
    const std::vector<ItemProfile> va{a}, vb{b};
    CHECK(fuse_profiles(va, vb)[0].features[index(Feature::kSmell)] == FeatureEvidence{3.25, 4});
  }
  SUBCASE("category mismatch") {
    ItemProfile a{"p1", Category::kSquares, {}}, b{"p1", Category::kLibraries, {}};
    const std::vector<ItemProfile> va{a}, vb{b};
    CHECK_THROWS_AS(fuse_profiles(va, vb), ValidationError);
  }
  SUBCASE("union and intersection scopes") {
    const std::vector<ItemProfile> first(items.begin(), items.begin() + 7);
    const std::vector<ItemProfile> second(items.begin() + 4, items.end());
    CHECK(fuse_profiles(first, second).size() == 10);
    CHECK(fuse_profiles(first, second, FuseScope::kIntersection).size() == 3);
  }
}

TEST_CASE("synthetic sources overlap like the original pair") {
  const auto data = generate_synthetic({});
  CHECK(data.source_a.size() == 49);
  CHECK(data.source_b.size() == 34);
  CHECK(fuse_tables(data.source_a, data.source_b, FuseScope::kIntersection).size() == 34);
}

TEST_CASE("source comparison") {
  SUBCASE("identical sources") {
    FeatureTable t;
    t["p1"][index(Feature::kNoise)] = {2, 1};
    t["p2"][index(Feature::kNoise)] = {4, 3};
    const auto c = compare_sources(t, t)[index(Feature::kNoise)];
    CHECK(c.n == 2);
    CHECK(c.max_distance == 0);
    CHECK(c.mean_difference == 0);
    REQUIRE(c.correlation.has_value());
    CHECK(*c.correlation == doctest::Approx(1.0));
  }
  SUBCASE("two crossed items") {
    FeatureTable a, b;
    a["p1"][0] = {1, 1};
    a["p2"][0] = {3, 1};
    b["p1"][0] = {3, 1};
    b["p2"][0] = {1, 1};
    const auto c = compare_sources(a, b)[0];
    CHECK(c.mean_distance == 2);
    CHECK(*c.correlation == doctest::Approx(-1.0));
    CHECK(c.mean_difference == 0);
    CHECK_FALSE(compare_sources(a, b)[1].correlation.has_value());
  }
}
