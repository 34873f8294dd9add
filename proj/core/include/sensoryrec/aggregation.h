#ifndef SENSORYREC_AGGREGATION_H_
#define SENSORYREC_AGGREGATION_H_

#include <optional>
#include <span>
#include <string_view>

namespace sensoryrec {

enum class Measure { kMin, kAve, kCos, kRmsd };

inline constexpr Measure kAllMeasures[] = {Measure::kAve, Measure::kCos,
                                           Measure::kMin, Measure::kRmsd};

// "Min", "Ave", "Cos", "RMSD".
std::string_view measure_name(Measure m);
// Case-insensitive.
std::optional<Measure> parse_measure(std::string_view name);

// Evaluation components and the per-component ideal they are compared with.
// Min and Ave ignore `ideal`.
struct ComponentVector {
  std::span<const double> values;
  std::span<const double> ideal;
};

// Folds a set of evaluation components into one score on [1,5]:
//   Min  -> smallest component
//   Ave  -> arithmetic mean
//   Cos  -> 1 + (vmax - 1) * cos(values, ideal)
//   RMSD -> clamp(1 + vmax - rmsd(values, ideal), 1, vmax)
// Throws std::invalid_argument for empty input, mismatched lengths (Cos and
// RMSD), or an all-zero value vector under Cos.
double aggregate(Measure measure, const ComponentVector& cv);

}  // namespace sensoryrec

#endif  // SENSORYREC_AGGREGATION_H_
