#include "sensoryrec/compatibility.h"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace sensoryrec {
namespace {

constexpr double kMidpoint = (kVMin + kVMax) / 2.0;

void check_endpoint(double a) {
  if (!(a >= kVMin && a <= kVMax)) {
    throw std::out_of_range(fmt::format("aversion {} outside [1,5]", a));
  }
}

}  // namespace

AversionCurve::AversionCurve(MonotoneClass shape, double low, double high)
    : shape_(shape), low_(low), high_(high) {
  check_endpoint(low_);
  check_endpoint(high_);
}

AversionCurve AversionCurve::increasing(double high) {
  return AversionCurve(MonotoneClass::kIncreasing, kVMin, high);
}

AversionCurve AversionCurve::v_shaped(double low, double high) {
  return AversionCurve(MonotoneClass::kVShaped, low, high);
}

AversionCurve AversionCurve::for_user(const UserProfile& user, Feature f) {
  const Aversions& a = user.aversions;
  switch (f) {
    case Feature::kBrightness:
      return v_shaped(a.brightness_low, a.brightness_high);
    case Feature::kCrowding:
      return increasing(a.crowding_high);
    case Feature::kNoise:
      return increasing(a.noise_high);
    case Feature::kSmell:
      return increasing(a.smell_high);
    case Feature::kOpenness:
      return v_shaped(a.openness_low, a.openness_high);
  }
  throw std::logic_error("unhandled feature");
}

double AversionCurve::rising(double x) const {
  return 1.0 + (high_ - 1.0) * (x - 1.0) / (kVMax - 1.0);
}

double AversionCurve::falling(double x) const {
  if (shape_ == MonotoneClass::kIncreasing) return 1.0;
  return 1.0 + (x - kVMax) * (1.0 - low_) / (kVMax - 1.0);
}

double estimated_aversion(const AversionCurve& curve, double x) {
  if (!(x >= kVMin && x <= kVMax)) {
    throw std::out_of_range(fmt::format("feature value {} outside [1,5]", x));
  }
  if (curve.shape() == MonotoneClass::kIncreasing) return curve.rising(x);
  return std::max(curve.rising(x), curve.falling(x));
}

double feature_compatibility(const AversionCurve& curve, double value) {
  if (value == kUnknown) return kVMin;
  return kVMax + 1.0 - estimated_aversion(curve, value);
}

double ideal_value(const AversionCurve& curve) {
  const double up = curve.high() - 1.0;    // rise of the rising line
  const double down = curve.low() - 1.0;   // drop of the falling line
  if (curve.shape() == MonotoneClass::kIncreasing) {
    return up > 0 ? kVMin : kMidpoint;
  }
  if (up + down <= 0) return kMidpoint;
  // With one line flat the other one alone decides.
  if (up <= 0) return kVMax;
  if (down <= 0) return kVMin;
  // Where the two lines cross.
  return std::clamp((kVMax * down + up) / (down + up), kVMin, kVMax);
}

IdealItem ideal_item(const UserProfile& user) {
  IdealItem out{};
  for (Feature f : kAllFeatures) {
    out[index(f)] = ideal_value(AversionCurve::for_user(user, f));
  }
  return out;
}

}  // namespace sensoryrec
