#include "sensoryrec/feature.h"

#include <algorithm>
#include <string>

#include "text.h"

namespace sensoryrec {
namespace {

constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "brightness", "crowding", "noise", "smell", "openness"};

constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "restaurants",
    "pubs_and_coffee_shops",
    "ice_cream_shops",
    "museums_and_exhibitions",
    "cinemas_and_theaters",
    "squares",
    "railway_stations",
    "malls_and_markets",
    "comic_shops",
    "tech_shops",
    "clothing_stores",
    "libraries",
    "bookshops",
};

}  // namespace

std::string_view feature_name(Feature f) { return kFeatureNames[index(f)]; }

std::optional<Feature> parse_feature(std::string_view name) {
  const std::string lowered = internal::ascii_lower(internal::trim(name));
  for (Feature f : kAllFeatures) {
    if (kFeatureNames[index(f)] == lowered) return f;
  }
  return std::nullopt;
}

std::string_view category_name(Category c) { return kCategoryNames[index(c)]; }

std::optional<Category> parse_category(std::string_view name) {
  std::string key = internal::ascii_lower(internal::trim(name));
  std::replace(key.begin(), key.end(), ' ', '_');
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == key) return static_cast<Category>(i);
  }
  return std::nullopt;
}

bool is_valid_feature_value(double v) {
  return v == kUnknown || (v >= kVMin && v <= kVMax);
}

}  // namespace sensoryrec
