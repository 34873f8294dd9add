#include "sensoryrec/recommender.h"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <fmt/format.h>

#include "sensoryrec/compatibility.h"
#include "text.h"

namespace sensoryrec {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kInd:
      return "Ind";
    case Family::kCOnly:
      return "C-only";
    case Family::kPrefOnly:
      return "Pref-only";
    case Family::kMC:
      return "MC";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  std::string key = internal::ascii_lower(internal::trim(name));
  std::erase_if(key, [](char c) { return c == '-' || c == '_' || c == ' '; });
  if (key == "ind") return Family::kInd;
  if (key == "conly") return Family::kCOnly;
  if (key == "prefonly") return Family::kPrefOnly;
  if (key == "mc") return Family::kMC;
  return std::nullopt;
}

AlgorithmSpec::AlgorithmSpec(Family family, Measure measure, double alpha)
    : family_(family), measure_(measure), alpha_(alpha) {
  if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
    throw std::invalid_argument(fmt::format("alpha {} outside [0,1]", alpha_));
  }
}

AlgorithmSpec AlgorithmSpec::ind(Measure measure, double alpha) {
  return AlgorithmSpec(Family::kInd, measure, alpha);
}

AlgorithmSpec AlgorithmSpec::c_only(Measure measure) {
  return AlgorithmSpec(Family::kCOnly, measure, 1.0);
}

AlgorithmSpec AlgorithmSpec::pref_only() {
  // The measure never matters: with alpha = 0 the compatibility term is
  // multiplied away.
  return AlgorithmSpec(Family::kPrefOnly, Measure::kAve, 0.0);
}

AlgorithmSpec AlgorithmSpec::mc(Measure measure) {
  return AlgorithmSpec(Family::kMC, measure, 0.0);
}

AlgorithmSpec AlgorithmSpec::with_alpha(double alpha) const {
  if (family_ != Family::kInd) {
    throw std::logic_error("alpha can only be set on Ind");
  }
  return ind(measure_, alpha);
}

std::string AlgorithmSpec::name() const {
  if (family_ == Family::kPrefOnly) return std::string(family_name(family_));
  return fmt::format("{}_{}", family_name(family_), measure_name(measure_));
}

std::vector<AlgorithmSpec> standard_battery() {
  std::vector<AlgorithmSpec> out;
  for (Measure m : kAllMeasures) out.push_back(AlgorithmSpec::c_only(m));
  for (Measure m : kAllMeasures) out.push_back(AlgorithmSpec::ind(m, 0.5));
  for (Measure m : kAllMeasures) out.push_back(AlgorithmSpec::mc(m));
  out.push_back(AlgorithmSpec::pref_only());
  return out;
}

namespace {

std::array<double, kNumFeatures> compatibilities(const UserProfile& user,
                                                 const ItemProfile& item) {
  std::array<double, kNumFeatures> comps{};
  for (Feature f : kAllFeatures) {
    comps[index(f)] = feature_compatibility(AversionCurve::for_user(user, f),
                                            item.features[index(f)].value);
  }
  return comps;
}

}  // namespace

double overall_compatibility(const UserProfile& user, const ItemProfile& item,
                             Measure measure) {
  if (measure == Measure::kMin || measure == Measure::kAve) {
    const auto comps = compatibilities(user, item);
    return aggregate(measure, {comps, {}});
  }
  std::array<double, kNumFeatures> values{};
  bool any_known = false;
  for (Feature f : kAllFeatures) {
    values[index(f)] = item.features[index(f)].value;
    any_known = any_known || item.features[index(f)].known();
  }
  // Cosine is undefined for the zero vector; a wholly unknown item gets the
  // same pessimistic score an unknown feature does.
  if (!any_known && measure == Measure::kCos) return kVMin;
  const IdealItem ideal = ideal_item(user);
  return aggregate(measure, {values, ideal});
}

double blend(double alpha, double overall_comp, double preference) {
  const double r = alpha * overall_comp + (1.0 - alpha) * preference;
  return std::clamp(r, kVMin, kVMax);
}

std::optional<Prediction> predict(const AlgorithmSpec& spec,
                                  const UserProfile& user,
                                  const ItemProfile& item) {
  const double pref = user.preference(item.category);
  if (pref == kUnknown) return std::nullopt;

  double r_hat = 0;
  if (spec.family() == Family::kMC) {
    const auto comps = compatibilities(user, item);
    std::array<double, kNumFeatures + 1> omega{};
    std::array<double, kNumFeatures + 1> ideal{};
    omega[0] = pref;
    ideal.fill(kVMax);
    std::copy(comps.begin(), comps.end(), omega.begin() + 1);
    r_hat = std::clamp(aggregate(spec.measure(), {omega, ideal}), kVMin, kVMax);
  } else if (spec.family() == Family::kPrefOnly) {
    r_hat = blend(0.0, kVMin, pref);
  } else {
    r_hat = blend(spec.alpha(),
                  overall_compatibility(user, item, spec.measure()), pref);
  }
  return Prediction{user.user_id, item.item_id, r_hat};
}

std::vector<Prediction> rank_predictions(std::span<const Prediction> predictions,
                                         int k, double threshold) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  std::vector<Prediction> out;
  for (const auto& p : predictions) {
    if (p.r_hat > threshold) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.r_hat != b.r_hat) return a.r_hat > b.r_hat;
    return a.item_id < b.item_id;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(k);
  return out;
}

std::vector<std::string> recommend_top_k(std::span<const Prediction> predictions,
                                         int k, double threshold) {
  std::vector<std::string> ids;
  for (auto& p : rank_predictions(predictions, k, threshold)) {
    ids.push_back(std::move(p.item_id));
  }
  return ids;
}

}  // namespace sensoryrec
