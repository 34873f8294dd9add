#ifndef SENSORYREC_COMPATIBILITY_H_
#define SENSORYREC_COMPATIBILITY_H_

#include <array>

#include "sensoryrec/feature.h"
#include "sensoryrec/profiles.h"

namespace sensoryrec {

// A user's declared aversion to the extreme values of one feature, linearly
// interpolated over the scale.
//
// Increasing features rise from (1, 1) to (5, high). V-shaped features take
// the max of that rising line and a falling line from (1, low) to (5, 1).
class AversionCurve {
 public:
  static AversionCurve increasing(double high);
  static AversionCurve v_shaped(double low, double high);
  // The curve a user profile declares for `f`.
  static AversionCurve for_user(const UserProfile& user, Feature f);

  MonotoneClass shape() const { return shape_; }
  double low() const { return low_; }
  double high() const { return high_; }

  // Rising and falling lines; `falling` is identically 1 for Increasing.
  double rising(double x) const;
  double falling(double x) const;

 private:
  AversionCurve(MonotoneClass shape, double low, double high);

  MonotoneClass shape_;
  double low_;   // aversion at x = 1 (1 for Increasing)
  double high_;  // aversion at x = 5
};

// Estimated aversion at a known feature value x in [1,5]. Throws
// std::out_of_range otherwise.
double estimated_aversion(const AversionCurve& curve, double x);

// kVMax + 1 - estimated_aversion; an unknown value (0) is treated as fully
// incompatible and yields 1.
double feature_compatibility(const AversionCurve& curve, double value);

// The value in [1,5] that minimizes the curve. Flat curves resolve to the
// scale midpoint 3.
double ideal_value(const AversionCurve& curve);

using IdealItem = std::array<double, kNumFeatures>;

IdealItem ideal_item(const UserProfile& user);

}  // namespace sensoryrec

#endif  // SENSORYREC_COMPATIBILITY_H_
