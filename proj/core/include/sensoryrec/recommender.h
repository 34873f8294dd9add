#ifndef SENSORYREC_RECOMMENDER_H_
#define SENSORYREC_RECOMMENDER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensoryrec/aggregation.h"
#include "sensoryrec/profiles.h"

namespace sensoryrec {

enum class Family { kInd, kCOnly, kPrefOnly, kMC };

// "Ind", "C-only", "Pref-only", "MC".
std::string_view family_name(Family f);
// Case-insensitive; accepts "c-only"/"conly"/"c_only" and the like.
std::optional<Family> parse_family(std::string_view name);

// A configured rating predictor. C-only and Pref-only are Ind with alpha
// pinned to 1 and 0; MC ignores alpha.
class AlgorithmSpec {
 public:
  static AlgorithmSpec ind(Measure measure, double alpha);
  static AlgorithmSpec c_only(Measure measure);
  static AlgorithmSpec pref_only();
  static AlgorithmSpec mc(Measure measure);

  Family family() const { return family_; }
  Measure measure() const { return measure_; }
  double alpha() const { return alpha_; }

  // Same family and measure with a different alpha. Only valid for Ind.
  AlgorithmSpec with_alpha(double alpha) const;

  // "Ind_Cos", "C-only_Min", "MC_RMSD", "Pref-only".
  std::string name() const;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;

 private:
  AlgorithmSpec(Family family, Measure measure, double alpha);

  Family family_;
  Measure measure_;
  double alpha_;
};

// The 13 configurations: {Ind, C-only, MC} x 4 measures + Pref-only, sorted
// by name. Ind entries carry alpha 0.5 as a placeholder for the fitted value.
std::vector<AlgorithmSpec> standard_battery();

struct Prediction {
  std::string user_id;
  std::string item_id;
  double r_hat = 0;  // [1,5]

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// How well an item's sensory features suit a user. Min/Ave fold the five
// per-feature compatibilities; Cos/RMSD compare the raw feature vector
// (unknowns kept as 0) with the user's ideal item. An item with no known
// feature scores 1 under Cos.
double overall_compatibility(const UserProfile& user, const ItemProfile& item,
                             Measure measure);

// Empty when the user stated no preference for the item's category.
std::optional<Prediction> predict(const AlgorithmSpec& spec,
                                  const UserProfile& user,
                                  const ItemProfile& item);

// Eq. 5 blend, clamped to [1,5].
double blend(double alpha, double overall_comp, double preference);

// Predictions above `threshold`, best first, ties by item id, at most k.
std::vector<Prediction> rank_predictions(std::span<const Prediction> predictions,
                                         int k, double threshold);
std::vector<std::string> recommend_top_k(std::span<const Prediction> predictions,
                                         int k = 5, double threshold = 3.0);

}  // namespace sensoryrec

#endif  // SENSORYREC_RECOMMENDER_H_
