#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "generators.h"
#include "sensoryrec/aggregation.h"

using namespace sensoryrec;

namespace {

double agg(Measure m, const std::vector<double>& values,
           const std::vector<double>& ideal = {}) {
  return aggregate(m, {values, ideal});
}

}  // namespace

TEST_CASE("measure names") {
  for (Measure m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
  CHECK(parse_measure("rmsd") == Measure::kRmsd);
  CHECK_FALSE(parse_measure("median").has_value());
}

TEST_CASE("aggregation examples") {
  CHECK(agg(Measure::kMin, {3, 4, 5}) == 3);
  CHECK(agg(Measure::kAve, {2, 4}) == 3);
  CHECK(agg(Measure::kCos, {1, 2, 3}, {2, 4, 6}) == doctest::Approx(5).epsilon(1e-12));
  CHECK(agg(Measure::kRmsd, {2, 3, 4}, {2, 3, 4}) == 5);
  CHECK(agg(Measure::kRmsd, {1, 1, 1, 1, 1}, {5, 5, 5, 5, 5}) == 2);
}

TEST_CASE("aggregation errors") {
  CHECK_THROWS_AS(agg(Measure::kMin, {}), std::invalid_argument);
  CHECK_THROWS_AS(agg(Measure::kCos, {0, 0}, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(agg(Measure::kRmsd, {1, 2}, {3}), std::invalid_argument);
}

TEST_CASE("aggregation properties on random vectors") {
  testing::Gen gen(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = gen.integer(1, 7);
    std::vector<double> w(n), ideal(n);
    for (auto& v : w) v = gen.coin(0.15) ? 0.0 : gen.scale_value();
    for (auto& v : ideal) v = gen.scale_value();
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0; })) w[0] = 1;

    const double lo = agg(Measure::kMin, w);
    const double ave = agg(Measure::kAve, w);
    CHECK(lo == *std::min_element(w.begin(), w.end()));
    CHECK(lo <= ave + 1e-12);
    CHECK(ave <= *std::max_element(w.begin(), w.end()) + 1e-12);

    const double cos = agg(Measure::kCos, w, ideal);
    const double rmsd = agg(Measure::kRmsd, w, ideal);
    CHECK(cos >= 1 - 1e-12);
    CHECK(cos <= 5 + 1e-12);
    CHECK(rmsd >= 1);
    CHECK(rmsd <= 5);

    // Direct recomputation of both vector forms.
    double dot = 0, nw = 0, ni = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      dot += w[i] * ideal[i];
      nw += w[i] * w[i];
      ni += ideal[i] * ideal[i];
      sq += (w[i] - ideal[i]) * (w[i] - ideal[i]);
    }
    CHECK(cos == doctest::Approx(1 + 4 * dot / std::sqrt(nw * ni)).epsilon(1e-12));
    CHECK(rmsd == doctest::Approx(std::clamp(6 - std::sqrt(sq / n), 1.0, 5.0)).epsilon(1e-12));

    // Scaling the evaluated vector leaves Cos unchanged.
    const double c = gen.real(0.1, 10);
    std::vector<double> scaled = w;
    for (auto& v : scaled) v *= c;
    CHECK(agg(Measure::kCos, scaled, ideal) == doctest::Approx(cos).epsilon(1e-12));

    // Simultaneous permutation.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<double> pw(n), pi(n);
    for (int i = 0; i < n; ++i) {
      pw[i] = w[perm[i]];
      pi[i] = ideal[perm[i]];
    }
    CHECK(agg(Measure::kMin, pw) == lo);
    CHECK(agg(Measure::kAve, pw) == doctest::Approx(ave).epsilon(1e-12));
    CHECK(agg(Measure::kCos, pw, pi) == doctest::Approx(cos).epsilon(1e-12));
    CHECK(agg(Measure::kRmsd, pw, pi) == doctest::Approx(rmsd).epsilon(1e-12));

    // RMSD peaks at the ideal itself.
    CHECK(agg(Measure::kRmsd, ideal, ideal) == 5);
    CHECK(rmsd <= 5);
  }
}
