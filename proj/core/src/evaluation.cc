#include "sensoryrec/evaluation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "stats.h"

namespace sensoryrec {

std::vector<Rating> FoldPlan::training(const std::string& user_id,
                                       int f) const {
  const auto& user_folds = folds.at(user_id);
  std::vector<Rating> out;
  for (int g = 0; g < static_cast<int>(user_folds.size()); ++g) {
    if (g == f) continue;
    out.insert(out.end(), user_folds[g].begin(), user_folds[g].end());
  }
  return out;
}

const std::vector<Rating>& FoldPlan::test(const std::string& user_id,
                                          int f) const {
  return folds.at(user_id).at(f);
}

FoldPlan make_folds(std::span<const Rating> ratings, int n_folds,
                    std::uint64_t seed) {
  if (n_folds < 2) throw std::invalid_argument("n_folds must be at least 2");
  std::map<std::string, std::vector<Rating>> by_user;
  for (const Rating& r : ratings) by_user[r.user_id].push_back(r);

  FoldPlan plan;
  plan.seed = seed;
  plan.n_folds = n_folds;
  std::mt19937_64 rng(seed);
  for (auto& [user, rs] : by_user) {
    if (static_cast<int>(rs.size()) < n_folds) {
      plan.excluded_users.push_back(user);
      continue;
    }
    std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) {
      return a.item_id < b.item_id;
    });
    std::shuffle(rs.begin(), rs.end(), rng);
    const std::size_t n = rs.size();
    const std::size_t base = n / n_folds;
    const std::size_t extra = n % n_folds;
    auto& user_folds = plan.folds[user];
    user_folds.resize(n_folds);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < static_cast<std::size_t>(n_folds); ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      user_folds[f].assign(rs.begin() + pos, rs.begin() + pos + size);
      pos += size;
    }
  }
  return plan;
}

UserMetrics evaluate_user(std::span<const Rating> truth,
                          std::span<const Prediction> predictions, int k,
                          double threshold) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  std::map<std::string, int, std::less<>> rating_of;
  std::set<std::string, std::less<>> relevant;
  for (const Rating& r : truth) {
    rating_of[r.item_id] = r.value;
    if (r.value > threshold) relevant.insert(r.item_id);
  }

  UserMetrics m;
  const std::vector<std::string> recomm =
      recommend_top_k(predictions, k, threshold);
  m.coverage = recomm.empty() ? 0.0 : 1.0;

  int hits = 0;
  double precision_sum = 0;
  for (std::size_t rank = 0; rank < recomm.size(); ++rank) {
    if (!relevant.contains(recomm[rank])) continue;
    ++hits;
    precision_sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    if (hits == 1) m.rr = 1.0 / static_cast<double>(rank + 1);
  }
  if (!recomm.empty()) {
    m.precision = static_cast<double>(hits) / static_cast<double>(recomm.size());
  }
  if (!relevant.empty()) {
    m.recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
  }
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  }

  int relevant_predicted = 0;
  double abs_sum = 0, sq_sum = 0;
  int n_err = 0;
  for (const Prediction& p : predictions) {
    auto it = rating_of.find(p.item_id);
    if (it == rating_of.end()) continue;
    if (relevant.contains(p.item_id)) ++relevant_predicted;
    const double err = p.r_hat - it->second;
    abs_sum += std::abs(err);
    sq_sum += err * err;
    ++n_err;
  }
  const int ap_denominator = std::min(relevant_predicted, k);
  if (ap_denominator > 0) m.ap = precision_sum / ap_denominator;
  if (n_err > 0) {
    m.mae = abs_sum / n_err;
    m.rmse = std::sqrt(sq_sum / n_err);
  }
  return m;
}

MetricsRow average_metrics(std::span<const UserMetrics> users) {
  MetricsRow row;
  row.users = static_cast<int>(users.size());
  if (users.empty()) return row;
  int n_err = 0;
  for (const UserMetrics& u : users) {
    row.precision += u.precision;
    row.recall += u.recall;
    row.f1 += u.f1;
    row.map += u.ap;
    row.mrr += u.rr;
    row.coverage += u.coverage;
    if (u.mae) {
      row.mae += *u.mae;
      row.rmse += *u.rmse;
      ++n_err;
    }
  }
  const double n = static_cast<double>(users.size());
  row.precision /= n;
  row.recall /= n;
  row.f1 /= n;
  row.map /= n;
  row.mrr /= n;
  row.coverage /= n;
  if (n_err > 0) {
    row.mae /= n_err;
    row.rmse /= n_err;
  }
  return row;
}

MetricsRow compute_metrics(std::span<const Rating> test,
                           std::span<const Prediction> predictions, int k,
                           double threshold) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  std::map<std::string, std::vector<Rating>> truth;
  std::map<std::string, std::vector<Prediction>> preds;
  for (const Rating& r : test) truth[r.user_id].push_back(r);
  for (const Prediction& p : predictions) preds[p.user_id].push_back(p);
  std::vector<UserMetrics> per_user;
  per_user.reserve(truth.size());
  for (const auto& [user, rs] : truth) {
    auto it = preds.find(user);
    const std::span<const Prediction> ps =
        it == preds.end() ? std::span<const Prediction>{} : it->second;
    per_user.push_back(evaluate_user(rs, ps, k, threshold));
  }
  return average_metrics(per_user);
}

std::vector<double> alpha_grid(double step) {
  if (!(step > 0 && step <= 1)) {
    throw std::invalid_argument(fmt::format("grid step {} outside (0,1]", step));
  }
  const long long n = std::llround(1.0 / step);
  if (n < 1 || std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) {
    throw std::invalid_argument(
        fmt::format("grid step {} does not divide [0,1] evenly", step));
  }
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (long long i = 0; i <= n; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(n));
  }
  return grid;
}

namespace {

const ItemProfile* find_item(std::span<const ItemProfile> items,
                             const std::string& id) {
  auto it = std::lower_bound(
      items.begin(), items.end(), id,
      [](const ItemProfile& p, const std::string& key) { return p.item_id < key; });
  if (it != items.end() && it->item_id == id) return &*it;
  return nullptr;
}

struct TrainingPair {
  std::string item_id;
  double overall_comp;
  double preference;
};

std::vector<TrainingPair> training_pairs(const UserProfile& user,
                                         std::span<const Rating> train,
                                         std::span<const ItemProfile> items,
                                         Measure measure) {
  std::vector<TrainingPair> pairs;
  for (const Rating& r : train) {
    const ItemProfile* item = find_item(items, r.item_id);
    if (item == nullptr) {
      throw std::invalid_argument("rating references unknown item " + r.item_id);
    }
    const double pref = user.preference(item->category);
    if (pref == kUnknown) continue;
    pairs.push_back(
        {item->item_id, overall_compatibility(user, *item, measure), pref});
  }
  return pairs;
}

double map_at(const UserProfile& user, std::span<const Rating> train,
              const std::vector<TrainingPair>& pairs, double alpha, int k,
              double threshold) {
  std::vector<Prediction> preds;
  preds.reserve(pairs.size());
  for (const auto& p : pairs) {
    preds.push_back(
        {user.user_id, p.item_id, blend(alpha, p.overall_comp, p.preference)});
  }
  return evaluate_user(train, preds, k, threshold).ap;
}

}  // namespace

std::optional<double> training_map(const UserProfile& user,
                                   std::span<const Rating> train,
                                   std::span<const ItemProfile> items,
                                   Measure measure, double alpha, int k,
                                   double threshold) {
  const auto pairs = training_pairs(user, train, items, measure);
  if (pairs.empty()) return std::nullopt;
  return map_at(user, train, pairs, alpha, k, threshold);
}

AlphaChoice grid_search_alpha(const UserProfile& user,
                              std::span<const Rating> train,
                              std::span<const ItemProfile> items,
                              Measure measure, std::span<const double> grid,
                              int k, double threshold) {
  if (grid.empty()) throw std::invalid_argument("empty alpha grid");
  for (double a : grid) {
    if (!(a >= 0 && a <= 1)) {
      throw std::invalid_argument(fmt::format("grid value {} outside [0,1]", a));
    }
  }
  const auto pairs = training_pairs(user, train, items, measure);
  if (pairs.empty()) return AlphaChoice{0.5, 0.0, true};

  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  AlphaChoice best{sorted.front(), -1.0, false};
  for (double a : sorted) {
    const double m = map_at(user, train, pairs, a, k, threshold);
    if (m > best.train_map) {
      best.alpha = a;
      best.train_map = m;
    }
  }
  return best;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double level) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired samples differ in length");
  }
  if (a.size() < 2) throw std::invalid_argument("need at least two pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i];
  const double n = static_cast<double>(d.size());
  const double mean = internal::mean(d);
  double ss = 0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));  // sample sd of the differences

  TTestResult r;
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  if (*lo == *hi) {
    if (*lo == 0) return r;  // t = 0, p = 1
    r.t = *lo > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
    r.p = 0;
    r.significant = true;
    return r;
  }
  r.t = mean / (sd / std::sqrt(n));
  boost::math::students_t dist(n - 1);
  r.p = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.significant = r.p < level;
  return r;
}

}  // namespace sensoryrec
