#ifndef SENSORYREC_EXPERIMENT_H_
#define SENSORYREC_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sensoryrec/evaluation.h"
#include "sensoryrec/profiles.h"
#include "sensoryrec/recommender.h"

namespace sensoryrec {

enum class ItemScope {
  kAll,           // every catalog item
  kIntersection,  // only items present in every feature source
};

// Settings shared by every algorithm in one run.
struct ExperimentOptions {
  std::vector<Family> families = {Family::kInd, Family::kCOnly, Family::kMC,
                                  Family::kPrefOnly};
  std::vector<Measure> measures = {Measure::kAve, Measure::kCos, Measure::kMin,
                                   Measure::kRmsd};
  double grid_step = 0.05;
  std::uint64_t seed = 7;
  int folds = 5;
  int k = 5;
  double threshold = 3.0;
  double significance = 0.05;

  // Algorithm configurations in report order (sorted by name).
  std::vector<AlgorithmSpec> algorithms() const;
};

// `experiment.toml`-style key/value file. Paths are resolved against
// `base_dir`. Recognized keys:
//   items, users, ratings     paths
//   algorithms, measures      string lists
//   grid_step, seed, folds, k, threshold, significance
//   item_scope                "all" | "intersection"
//   fuse                      true: add a count-weighted fusion of the first
//                             two sources, named "<a>+<b>"; needs
//                             item_scope = "intersection"
//   [sources] name = path     one or more feature tables
struct ExperimentConfig {
  std::filesystem::path items;
  std::filesystem::path users;
  std::filesystem::path ratings;
  std::vector<std::pair<std::string, std::filesystem::path>> sources;
  bool fuse = false;
  ItemScope item_scope = ItemScope::kAll;
  ExperimentOptions options;
};

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct NamedSource {
  std::string name;
  std::vector<ItemProfile> items;  // sorted by item_id
};

// Everything an experiment reads, already validated.
struct ExperimentData {
  std::vector<UserProfile> users;
  std::vector<Rating> ratings;
  std::vector<NamedSource> sources;
};

// Reads the files a config names, applies fusion and item scope.
ExperimentData load_experiment_data(const ExperimentConfig& config);

inline constexpr std::size_t kNumMetrics = 7;
// Prec., Recall, F1, MAP, MRR, MAE, RMSE.
std::string_view metric_name(std::size_t m);
bool metric_higher_is_better(std::size_t m);

struct AlgorithmResult {
  std::string name;
  AlgorithmSpec spec = AlgorithmSpec::pref_only();
  MetricsRow metrics;
  // user_id -> metrics averaged over that user's folds.
  std::map<std::string, UserMetrics> per_user;
  // Ind only: user_id -> alpha choice per fold.
  std::map<std::string, std::vector<AlphaChoice>> alphas;
  int skipped_pairs = 0;  // test pairs without a stated category preference
  // Per metric: the difference from the best algorithm is significant.
  std::array<bool, kNumMetrics> significant{};
};

struct SourceReport {
  std::string source;
  std::vector<AlgorithmResult> rows;
  std::array<std::string, kNumMetrics> best;  // algorithm name per metric
};

struct EvalReport {
  ExperimentOptions options;
  int users = 0;
  int items = 0;
  int ratings = 0;
  std::vector<std::string> excluded_users;
  std::vector<SourceReport> sources;
};

// Cross-validates every configured algorithm on every source with the same
// folds. Ind's alpha is re-fit per user and per fold on that fold's training
// ratings; the other families need no training.
EvalReport run_experiment(const ExperimentData& data,
                          const ExperimentOptions& options);
EvalReport run_experiment(const ExperimentConfig& config);

struct AlphaSummaryRow {
  std::string source;
  std::string algorithm;
  double mean = 0;
  double sd = 0;  // population
  int n = 0;      // users with at least one unflagged fold
};

// Per Ind configuration: each user's alpha is the mean of its unflagged fold
// selections; reports the mean and standard deviation across users.
std::vector<AlphaSummaryRow> alpha_summary(const EvalReport& report);

// Aligned text: one metrics table per source with '*' on values whose
// difference from the best is significant, then the alpha summary.
std::string format_report_table(const EvalReport& report);
std::string report_to_json(const EvalReport& report);

}  // namespace sensoryrec

#endif  // SENSORYREC_EXPERIMENT_H_
