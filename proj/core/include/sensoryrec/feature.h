#ifndef SENSORYREC_FEATURE_H_
#define SENSORYREC_FEATURE_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace sensoryrec {

// Upper end of the Likert scale every value in the model lives on.
inline constexpr double kVMax = 5.0;
inline constexpr double kVMin = 1.0;

// Marker for "no information" in feature and preference slots.
inline constexpr double kUnknown = 0.0;

enum class Feature : std::size_t {
  kBrightness = 0,
  kCrowding,
  kNoise,
  kSmell,
  kOpenness,
};

inline constexpr std::size_t kNumFeatures = 5;

inline constexpr std::array<Feature, kNumFeatures> kAllFeatures = {
    Feature::kBrightness, Feature::kCrowding, Feature::kNoise,
    Feature::kSmell, Feature::kOpenness};

// Increasing: the higher the value, the more bothersome.
// VShaped: both extremes are bothersome.
enum class MonotoneClass { kIncreasing, kVShaped };

constexpr MonotoneClass monotone_class(Feature f) {
  switch (f) {
    case Feature::kBrightness:
    case Feature::kOpenness:
      return MonotoneClass::kVShaped;
    default:
      return MonotoneClass::kIncreasing;
  }
}

constexpr std::size_t index(Feature f) { return static_cast<std::size_t>(f); }

std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view name);

enum class Category : std::size_t {
  kRestaurants = 0,
  kPubsAndCoffeeShops,
  kIceCreamShops,
  kMuseumsAndExhibitions,
  kCinemasAndTheaters,
  kSquares,
  kRailwayStations,
  kMallsAndMarkets,
  kComicShops,
  kTechShops,
  kClothingStores,
  kLibraries,
  kBookshops,
};

inline constexpr std::size_t kNumCategories = 13;

inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::kRestaurants,         Category::kPubsAndCoffeeShops,
    Category::kIceCreamShops,       Category::kMuseumsAndExhibitions,
    Category::kCinemasAndTheaters,  Category::kSquares,
    Category::kRailwayStations,     Category::kMallsAndMarkets,
    Category::kComicShops,          Category::kTechShops,
    Category::kClothingStores,      Category::kLibraries,
    Category::kBookshops,
};

constexpr std::size_t index(Category c) { return static_cast<std::size_t>(c); }

// Snake-case identifier used in files, e.g. "pubs_and_coffee_shops".
std::string_view category_name(Category c);
// Accepts the snake-case identifier or the spaced form ("pubs and coffee
// shops"), case-insensitively.
std::optional<Category> parse_category(std::string_view name);

// Feature value on {0} U [1,5] plus the number of evaluations behind it.
struct FeatureEvidence {
  double value = kUnknown;
  int count = 0;

  bool known() const { return count > 0; }
  friend bool operator==(const FeatureEvidence&,
                         const FeatureEvidence&) = default;
};

using FeatureVector = std::array<FeatureEvidence, kNumFeatures>;

// Value in {0} U [1, kVMax].
bool is_valid_feature_value(double v);

}  // namespace sensoryrec

#endif  // SENSORYREC_FEATURE_H_
