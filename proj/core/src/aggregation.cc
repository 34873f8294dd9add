#include "sensoryrec/aggregation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sensoryrec/feature.h"
#include "text.h"

namespace sensoryrec {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kMin:
      return "Min";
    case Measure::kAve:
      return "Ave";
    case Measure::kCos:
      return "Cos";
    case Measure::kRmsd:
      return "RMSD";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
  const std::string key = internal::ascii_lower(internal::trim(name));
  if (key == "min") return Measure::kMin;
  if (key == "ave" || key == "avg" || key == "mean") return Measure::kAve;
  if (key == "cos") return Measure::kCos;
  if (key == "rmsd") return Measure::kRmsd;
  return std::nullopt;
}

double aggregate(Measure measure, const ComponentVector& cv) {
  const auto& w = cv.values;
  if (w.empty()) throw std::invalid_argument("empty component set");

  switch (measure) {
    case Measure::kMin:
      return *std::min_element(w.begin(), w.end());
    case Measure::kAve: {
      double sum = 0;
      for (double x : w) sum += x;
      return sum / static_cast<double>(w.size());
    }
    case Measure::kCos:
    case Measure::kRmsd:
      break;
  }

  const auto& ideal = cv.ideal;
  if (ideal.size() != w.size()) {
    throw std::invalid_argument("component and ideal vectors differ in length");
  }
  if (measure == Measure::kCos) {
    double dot = 0, ww = 0, ii = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      dot += w[k] * ideal[k];
      ww += w[k] * w[k];
      ii += ideal[k] * ideal[k];
    }
    if (ww == 0) throw std::invalid_argument("all-zero component vector");
    if (ii == 0) throw std::invalid_argument("all-zero ideal vector");
    const double cos = std::clamp(dot / (std::sqrt(ww) * std::sqrt(ii)), -1.0, 1.0);
    return kVMin + (kVMax - kVMin) * cos;
  }

  double ss = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    ss += (w[k] - ideal[k]) * (w[k] - ideal[k]);
  }
  const double rmsd = std::sqrt(ss / static_cast<double>(w.size()));
  return std::clamp(1.0 + kVMax - rmsd, kVMin, kVMax);
}

}  // namespace sensoryrec
