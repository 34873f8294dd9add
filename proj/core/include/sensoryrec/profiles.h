#ifndef SENSORYREC_PROFILES_H_
#define SENSORYREC_PROFILES_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensoryrec/feature.h"

namespace sensoryrec {

struct ItemProfile {
  std::string item_id;
  Category category = Category::kRestaurants;
  FeatureVector features{};

  friend bool operator==(const ItemProfile&, const ItemProfile&) = default;
};

// Declared aversion to the extreme values of each feature, all in [1,5].
// Increasing features only carry the high end; the low end is fixed at 1.
struct Aversions {
  double brightness_low = 1;
  double brightness_high = 1;
  double crowding_high = 1;
  double noise_high = 1;
  double smell_high = 1;
  double openness_low = 1;
  double openness_high = 1;

  friend bool operator==(const Aversions&, const Aversions&) = default;
};

struct UserProfile {
  std::string user_id;
  // Per category, in {0} U [1,5]; 0 means the user stated no preference.
  std::array<double, kNumCategories> preferences{};
  Aversions aversions;

  double preference(Category c) const { return preferences[index(c)]; }

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct Rating {
  std::string user_id;
  std::string item_id;
  int value = 0;  // 1..5

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Feature evidence keyed by item id.
using FeatureTable = std::map<std::string, FeatureVector, std::less<>>;
using Catalog = std::map<std::string, Category, std::less<>>;

// `item_id,category`.
Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::filesystem::path& path);

// `item_id,feature,value[,count]`. Without a count column every row counts
// as one evaluation.
FeatureTable parse_feature_table(std::string_view text);
FeatureTable load_feature_table(const std::filesystem::path& path);

// One profile per catalog entry, sorted by item id. Feature rows for items
// not in the catalog are rejected.
std::vector<ItemProfile> build_items(const Catalog& catalog,
                                     const FeatureTable& features);
std::vector<ItemProfile> load_items(const std::filesystem::path& catalog,
                                    const std::filesystem::path& features);

// Columns are matched by header name; see users_csv_header().
std::vector<UserProfile> parse_users(std::string_view text);
std::vector<UserProfile> load_users(const std::filesystem::path& path);
std::string users_csv_header();

// `user_id,item_id,rating`; rejects unknown users/items and duplicates.
std::vector<Rating> parse_ratings(std::string_view text,
                                  std::span<const UserProfile> users,
                                  std::span<const ItemProfile> items);
std::vector<Rating> load_ratings(const std::filesystem::path& path,
                                 std::span<const UserProfile> users,
                                 std::span<const ItemProfile> items);

void write_catalog(std::span<const ItemProfile> items, std::ostream& out);
void write_feature_table(const FeatureTable& table, std::ostream& out);
void write_users(std::span<const UserProfile> users, std::ostream& out);
void write_ratings(std::span<const Rating> ratings, std::ostream& out);

FeatureTable to_feature_table(std::span<const ItemProfile> items);

// Count-weighted mean of two evidence records. Throws ValidationError on a
// negative count or a value/count pair that breaks value=0 <=> count=0.
FeatureEvidence fuse_feature(FeatureEvidence a, FeatureEvidence b);
FeatureVector fuse_vectors(const FeatureVector& a, const FeatureVector& b);

enum class FuseScope {
  kUnion,         // items in only one source pass through unchanged
  kIntersection,  // only items present in both sources
};

FeatureTable fuse_tables(const FeatureTable& a, const FeatureTable& b,
                         FuseScope scope = FuseScope::kUnion);
// Throws ValidationError when a shared item has different categories.
std::vector<ItemProfile> fuse_profiles(std::span<const ItemProfile> a,
                                       std::span<const ItemProfile> b,
                                       FuseScope scope = FuseScope::kUnion);

// Agreement between two sources on one feature, over the items where both
// values are known.
struct SourceComparison {
  int n = 0;
  double min_distance = 0;
  double max_distance = 0;
  double mean_distance = 0;
  double sd_distance = 0;               // population
  std::optional<double> correlation;    // Pearson; empty when undefined
  double mean_difference = 0;           // mean(a) - mean(b)
};

std::array<SourceComparison, kNumFeatures> compare_sources(
    const FeatureTable& a, const FeatureTable& b);

}  // namespace sensoryrec

#endif  // SENSORYREC_PROFILES_H_
