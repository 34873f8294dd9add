#ifndef SENSORYREC_EVALUATION_H_
#define SENSORYREC_EVALUATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensoryrec/aggregation.h"
#include "sensoryrec/profiles.h"
#include "sensoryrec/recommender.h"

namespace sensoryrec {

// Per-user partition of ratings into near-equal folds.
struct FoldPlan {
  std::uint64_t seed = 0;
  int n_folds = 5;
  // user_id -> folds; each fold is a list of that user's ratings.
  std::map<std::string, std::vector<std::vector<Rating>>> folds;
  // Users with fewer ratings than folds; left out of every algorithm.
  std::vector<std::string> excluded_users;

  // The user's ratings outside fold `f`.
  std::vector<Rating> training(const std::string& user_id, int f) const;
  const std::vector<Rating>& test(const std::string& user_id, int f) const;
};

// Shuffles each user's ratings (seeded, users visited in id order) and deals
// them into contiguous chunks whose sizes differ by at most one, larger chunks
// first. Throws std::invalid_argument for n_folds < 2.
FoldPlan make_folds(std::span<const Rating> ratings, int n_folds,
                    std::uint64_t seed);

// Scores for one user on one test set.
struct UserMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double ap = 0;
  double rr = 0;
  std::optional<double> mae;  // empty when nothing was predicted
  std::optional<double> rmse;
  double coverage = 0;  // 1 when the recommendation list is non-empty
};

struct MetricsRow {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double map = 0;
  double mrr = 0;
  double mae = 0;
  double rmse = 0;
  double coverage = 0;
  int users = 0;
};

// Metrics for one user. `truth` and `predictions` must belong to that user;
// predictions are expected for the predictable test pairs only.
//   Relevant  = items rated > threshold
//   Recomm    = recommend_top_k(predictions, k, threshold)
//   AP        = sum of precision at each hit / min(|Relevant n predicted|, k)
//   RR        = 1 / rank of the first hit
UserMetrics evaluate_user(std::span<const Rating> truth,
                          std::span<const Prediction> predictions, int k,
                          double threshold);

// Macro average over users. MAE and RMSE average only the users for which
// they are defined.
MetricsRow average_metrics(std::span<const UserMetrics> users);

// Groups by user (every user with a test rating counts) and averages.
// Throws std::invalid_argument for k <= 0.
MetricsRow compute_metrics(std::span<const Rating> test,
                           std::span<const Prediction> predictions, int k,
                           double threshold);

// {0, step, 2*step, ..., 1}. Throws std::invalid_argument unless 1/step is a
// positive integer.
std::vector<double> alpha_grid(double step);

struct AlphaChoice {
  double alpha = 0.5;
  double train_map = 0;
  bool flagged = false;  // no predictable training pair; alpha left at 0.5
};

// MAP of Ind(measure, alpha) for one user over their training ratings.
// `items` must be sorted by item_id, as build_items returns them.
// Returns empty when no training pair is predictable.
std::optional<double> training_map(const UserProfile& user,
                                   std::span<const Rating> train,
                                   std::span<const ItemProfile> items,
                                   Measure measure, double alpha, int k,
                                   double threshold);

// Exhaustive search over `grid` for the alpha with the highest training MAP;
// ties go to the smallest alpha.
AlphaChoice grid_search_alpha(const UserProfile& user,
                              std::span<const Rating> train,
                              std::span<const ItemProfile> items,
                              Measure measure, std::span<const double> grid,
                              int k = 5, double threshold = 3.0);

struct TTestResult {
  double t = 0;
  double p = 1;
  bool significant = false;
};

// Two-sided paired t-test with n - 1 degrees of freedom. When every
// difference is equal and nonzero the statistic is infinite and p is 0.
// Throws std::invalid_argument for unequal lengths or n < 2.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double level = 0.05);

}  // namespace sensoryrec

#endif  // SENSORYREC_EVALUATION_H_
