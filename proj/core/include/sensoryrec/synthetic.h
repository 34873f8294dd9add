#ifndef SENSORYREC_SYNTHETIC_H_
#define SENSORYREC_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sensoryrec/profiles.h"

namespace sensoryrec {

struct SynthConfig {
  std::uint64_t seed = 7;
  int n_users = 30;
  int n_items = 50;
  // Items covered by each source. Source "b" covers a subset of source "a".
  // Defaults: all items but one for "a", about 68% of the items for "b".
  std::optional<int> a_items;
  std::optional<int> b_items;
  // Chance that a covered feature is unknown in source "b"; source "a" uses
  // a quarter of it. 0 makes both sources dense.
  double sparsity = 0.3;
};

struct SyntheticData {
  // Catalog with the hidden ground-truth feature values (count 1 each).
  std::vector<ItemProfile> truth;
  std::vector<UserProfile> users;
  std::vector<Rating> ratings;  // sorted by user, then item
  FeatureTable source_a;        // dense, crowdsourced-audit style
  FeatureTable source_b;        // sparser, heavy-tailed evidence counts
};

// Deterministic for a fixed config. Throws std::invalid_argument for
// non-positive sizes, b_items > a_items > n_items, or sparsity outside [0,1].
SyntheticData generate_synthetic(const SynthConfig& config);

// Writes items.csv, users.csv, ratings.csv, features_a.csv, features_b.csv,
// experiment.toml (both sources over every item) and
// experiment_intersection.toml (items covered by both sources, plus their
// fusion).
// Creates `dir` if needed; throws IoError on write failure.
void write_synthetic(const SyntheticData& data,
                     const std::filesystem::path& dir);

}  // namespace sensoryrec

#endif  // SENSORYREC_SYNTHETIC_H_
