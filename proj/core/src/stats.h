#ifndef SENSORYREC_SRC_STATS_H_
#define SENSORYREC_SRC_STATS_H_

#include <cmath>
#include <optional>
#include <span>

namespace sensoryrec::internal {

// Left-to-right sum divided by n; 0 for an empty span.
inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Population standard deviation (divide by n).
inline double population_sd(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

// Pearson correlation; empty when n < 2 or either side has zero variance.
inline std::optional<double> pearson(std::span<const double> a,
                                     std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) return std::nullopt;
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace sensoryrec::internal

#endif  // SENSORYREC_SRC_STATS_H_
