#include "sensoryrec/experiment.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sensoryrec/error.h"
#include "stats.h"

namespace sensoryrec {

std::vector<AlgorithmSpec> ExperimentOptions::algorithms() const {
  std::vector<AlgorithmSpec> out;
  auto add = [&](const AlgorithmSpec& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (Family f : families) {
    if (f == Family::kPrefOnly) {
      add(AlgorithmSpec::pref_only());
      continue;
    }
    for (Measure m : measures) {
      switch (f) {
        case Family::kInd:
          add(AlgorithmSpec::ind(m, 0.5));
          break;
        case Family::kCOnly:
          add(AlgorithmSpec::c_only(m));
          break;
        case Family::kMC:
          add(AlgorithmSpec::mc(m));
          break;
        case Family::kPrefOnly:
          break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.name() < b.name(); });
  return out;
}

ExperimentData load_experiment_data(const ExperimentConfig& config) {
  const Catalog full_catalog = load_catalog(config.items);

  std::vector<std::pair<std::string, FeatureTable>> tables;
  for (const auto& [name, path] : config.sources) {
    FeatureTable t = load_feature_table(path);
    try {
      (void)build_items(full_catalog, t);  // rejects dangling item ids
    } catch (const LoadError& e) {
      throw LoadError(path.string() + ": " + e.what());
    }
    tables.emplace_back(name, std::move(t));
  }

  Catalog catalog = full_catalog;
  if (config.item_scope == ItemScope::kIntersection) {
    std::erase_if(catalog, [&](const auto& entry) {
      return std::any_of(tables.begin(), tables.end(), [&](const auto& t) {
        return !t.second.contains(entry.first);
      });
    });
  }
  if (config.fuse) {
    tables.emplace_back(tables[0].first + "+" + tables[1].first,
                        fuse_tables(tables[0].second, tables[1].second));
  }

  ExperimentData data;
  data.users = load_users(config.users);
  {
    const std::vector<ItemProfile> all_items = build_items(full_catalog, {});
    data.ratings = load_ratings(config.ratings, data.users, all_items);
  }
  std::erase_if(data.ratings,
                [&](const Rating& r) { return !catalog.contains(r.item_id); });

  for (auto& [name, table] : tables) {
    std::erase_if(table,
                  [&](const auto& entry) { return !catalog.contains(entry.first); });
    data.sources.push_back({name, build_items(catalog, table)});
  }
  return data;
}

std::string_view metric_name(std::size_t m) {
  static constexpr std::array<std::string_view, kNumMetrics> kNames = {
      "Prec.", "Recall", "F1", "MAP", "MRR", "MAE", "RMSE"};
  return kNames.at(m);
}

bool metric_higher_is_better(std::size_t m) { return m < 5; }

namespace {

constexpr std::array<std::string_view, kNumMetrics> kMetricKeys = {
    "precision", "recall", "f1", "map", "mrr", "mae", "rmse"};

double row_metric(const MetricsRow& r, std::size_t m) {
  switch (m) {
    case 0: return r.precision;
    case 1: return r.recall;
    case 2: return r.f1;
    case 3: return r.map;
    case 4: return r.mrr;
    case 5: return r.mae;
    default: return r.rmse;
  }
}

std::optional<double> user_metric(const UserMetrics& u, std::size_t m) {
  switch (m) {
    case 0: return u.precision;
    case 1: return u.recall;
    case 2: return u.f1;
    case 3: return u.ap;
    case 4: return u.rr;
    case 5: return u.mae;
    default: return u.rmse;
  }
}

// Per-user mean over folds.
UserMetrics fold_mean(std::span<const UserMetrics> folds) {
  const MetricsRow avg = average_metrics(folds);
  UserMetrics u;
  u.precision = avg.precision;
  u.recall = avg.recall;
  u.f1 = avg.f1;
  u.ap = avg.map;
  u.rr = avg.mrr;
  u.coverage = avg.coverage;
  if (std::any_of(folds.begin(), folds.end(),
                  [](const auto& f) { return f.mae.has_value(); })) {
    u.mae = avg.mae;
    u.rmse = avg.rmse;
  }
  return u;
}

void annotate_significance(SourceReport& report, double level) {
  for (std::size_t m = 0; m < kNumMetrics; ++m) {
    const bool higher = metric_higher_is_better(m);
    std::size_t best = 0;
    for (std::size_t r = 1; r < report.rows.size(); ++r) {
      const double v = row_metric(report.rows[r].metrics, m);
      const double b = row_metric(report.rows[best].metrics, m);
      if (higher ? v > b : v < b) best = r;
    }
    if (report.rows.empty()) continue;
    report.best[m] = report.rows[best].name;
    const auto& best_users = report.rows[best].per_user;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      if (r == best) continue;
      std::vector<double> a, b;
      for (const auto& [user, um] : report.rows[r].per_user) {
        auto it = best_users.find(user);
        if (it == best_users.end()) continue;
        const auto va = user_metric(it->second, m);
        const auto vb = user_metric(um, m);
        if (!va || !vb) continue;
        a.push_back(*va);
        b.push_back(*vb);
      }
      if (a.size() < 2) continue;
      report.rows[r].significant[m] = paired_t_test(a, b, level).significant;
    }
  }
}

}  // namespace

EvalReport run_experiment(const ExperimentData& data,
                          const ExperimentOptions& options) {
  const std::vector<AlgorithmSpec> algorithms = options.algorithms();
  if (algorithms.empty()) throw ValidationError("empty algorithm list");
  const std::vector<double> grid = alpha_grid(options.grid_step);
  const FoldPlan plan = make_folds(data.ratings, options.folds, options.seed);

  std::map<std::string, const UserProfile*, std::less<>> users;
  for (const auto& u : data.users) users[u.user_id] = &u;

  EvalReport report;
  report.options = options;
  report.users = static_cast<int>(plan.folds.size());
  report.items = data.sources.empty()
                     ? 0
                     : static_cast<int>(data.sources.front().items.size());
  report.excluded_users = plan.excluded_users;
  for (const auto& [user, folds] : plan.folds) {
    for (const auto& f : folds) report.ratings += static_cast<int>(f.size());
  }

  for (const NamedSource& source : data.sources) {
    std::map<std::string, const ItemProfile*, std::less<>> items;
    for (const auto& i : source.items) items[i.item_id] = &i;

    SourceReport sr;
    sr.source = source.name;
    for (const AlgorithmSpec& spec : algorithms) {
      AlgorithmResult result;
      result.name = spec.name();
      result.spec = spec;
      std::vector<UserMetrics> user_rows;
      for (const auto& [user_id, folds] : plan.folds) {
        const UserProfile& user = *users.at(user_id);
        std::vector<UserMetrics> fold_rows;
        for (int f = 0; f < plan.n_folds; ++f) {
          AlgorithmSpec fitted = spec;
          if (spec.family() == Family::kInd) {
            const std::vector<Rating> train = plan.training(user_id, f);
            const AlphaChoice choice =
                grid_search_alpha(user, train, source.items, spec.measure(),
                                  grid, options.k, options.threshold);
            result.alphas[user_id].push_back(choice);
            fitted = spec.with_alpha(choice.alpha);
          }
          const std::vector<Rating>& test = plan.test(user_id, f);
          std::vector<Prediction> preds;
          for (const Rating& r : test) {
            auto p = predict(fitted, user, *items.at(r.item_id));
            if (p) {
              preds.push_back(std::move(*p));
            } else {
              ++result.skipped_pairs;
            }
          }
          fold_rows.push_back(
              evaluate_user(test, preds, options.k, options.threshold));
        }
        const UserMetrics um = fold_mean(fold_rows);
        result.per_user[user_id] = um;
        user_rows.push_back(um);
      }
      result.metrics = average_metrics(user_rows);
      sr.rows.push_back(std::move(result));
    }
    annotate_significance(sr, options.significance);
    report.sources.push_back(std::move(sr));
  }
  return report;
}

EvalReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(load_experiment_data(config), config.options);
}

std::vector<AlphaSummaryRow> alpha_summary(const EvalReport& report) {
  std::vector<AlphaSummaryRow> out;
  for (const auto& source : report.sources) {
    for (const auto& row : source.rows) {
      if (row.spec.family() != Family::kInd) continue;
      std::vector<double> selected;  // one per user: mean over its folds
      for (const auto& [_, choices] : row.alphas) {
        std::vector<double> fitted;
        for (const auto& c : choices) {
          if (!c.flagged) fitted.push_back(c.alpha);
        }
        if (!fitted.empty()) selected.push_back(internal::mean(fitted));
      }
      AlphaSummaryRow s;
      s.source = source.source;
      s.algorithm = row.name;
      s.mean = internal::mean(selected);
      s.sd = internal::population_sd(selected);
      s.n = static_cast<int>(selected.size());
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::string format_report_table(const EvalReport& report) {
  std::string out;
  const auto& o = report.options;
  out += fmt::format(
      "users={} items={} ratings={} folds={} k={} threshold={} seed={} "
      "grid_step={}\n",
      report.users, report.items, report.ratings, o.folds, o.k, o.threshold,
      o.seed, o.grid_step);
  if (!report.excluded_users.empty()) {
    out += fmt::format("excluded users (fewer than {} ratings): {}\n", o.folds,
                       fmt::join(report.excluded_users, ", "));
  }
  for (const auto& source : report.sources) {
    out += fmt::format("\n== {} ==\n", source.source);
    out += fmt::format("{:<14}", "Algorithm");
    for (std::size_t m = 0; m < kNumMetrics; ++m) {
      out += fmt::format(" {:>8}", metric_name(m));
    }
    out += fmt::format(" {:>8}\n", "Coverage");
    for (const auto& row : source.rows) {
      out += fmt::format("{:<14}", row.name);
      for (std::size_t m = 0; m < kNumMetrics; ++m) {
        out += fmt::format(" {}{:>7.4f}", row.significant[m] ? '*' : ' ',
                           row_metric(row.metrics, m));
      }
      out += fmt::format(" {:>8.4f}\n", row.metrics.coverage);
    }
    out += "best:";
    for (std::size_t m = 0; m < kNumMetrics; ++m) {
      out += fmt::format(" {}={}", metric_name(m), source.best[m]);
    }
    out += fmt::format("\n'*' = differs from the best at p < {}\n",
                       o.significance);
  }

  const auto alphas = alpha_summary(report);
  if (!alphas.empty()) {
    std::vector<std::string> sources, configs;
    for (const auto& a : alphas) {
      if (std::find(sources.begin(), sources.end(), a.source) == sources.end()) {
        sources.push_back(a.source);
      }
      if (std::find(configs.begin(), configs.end(), a.algorithm) ==
          configs.end()) {
        configs.push_back(a.algorithm);
      }
    }
    std::size_t width = 14;
    for (const auto& s : sources) width = std::max(width, s.size() + 2);
    out += "\n== alpha weights, mean(sd) ==\n";
    out += fmt::format("{:<14}", "Configuration");
    for (const auto& s : sources) out += fmt::format("{:>{}}", s, width);
    out += '\n';
    for (const auto& c : configs) {
      out += fmt::format("{:<14}", c);
      for (const auto& s : sources) {
        auto it = std::find_if(alphas.begin(), alphas.end(), [&](const auto& a) {
          return a.source == s && a.algorithm == c;
        });
        const std::string cell =
            it == alphas.end() ? "-" : fmt::format("{:.3f}({:.3f})", it->mean, it->sd);
        out += fmt::format("{:>{}}", cell, width);
      }
      out += '\n';
    }
  }
  return out;
}

std::string report_to_json(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  const auto& o = report.options;
  ordered_json algos = ordered_json::array();
  for (const auto& a : o.algorithms()) algos.push_back(a.name());
  j["settings"] = {{"seed", o.seed},           {"folds", o.folds},
                   {"k", o.k},                 {"threshold", o.threshold},
                   {"grid_step", o.grid_step}, {"significance", o.significance},
                   {"algorithms", algos}};
  j["data"] = {{"users", report.users},
               {"items", report.items},
               {"ratings", report.ratings},
               {"excluded_users", report.excluded_users}};

  const auto alphas = alpha_summary(report);
  ordered_json sources = ordered_json::array();
  for (const auto& source : report.sources) {
    ordered_json s;
    s["source"] = source.source;
    ordered_json best = ordered_json::object();
    for (std::size_t m = 0; m < kNumMetrics; ++m) {
      best[std::string(kMetricKeys[m])] = source.best[m];
    }
    s["best"] = best;
    ordered_json rows = ordered_json::array();
    for (const auto& row : source.rows) {
      ordered_json r;
      r["algorithm"] = row.name;
      for (std::size_t m = 0; m < kNumMetrics; ++m) {
        r[std::string(kMetricKeys[m])] = row_metric(row.metrics, m);
      }
      r["coverage"] = row.metrics.coverage;
      r["users"] = row.metrics.users;
      r["skipped_pairs"] = row.skipped_pairs;
      ordered_json sig = ordered_json::object();
      for (std::size_t m = 0; m < kNumMetrics; ++m) {
        sig[std::string(kMetricKeys[m])] = row.significant[m];
      }
      r["significant"] = sig;
      if (row.spec.family() == Family::kInd) {
        auto it = std::find_if(alphas.begin(), alphas.end(), [&](const auto& a) {
          return a.source == source.source && a.algorithm == row.name;
        });
        ordered_json per_user = ordered_json::object();
        int flagged = 0;
        for (const auto& [user, choices] : row.alphas) {
          ordered_json list = ordered_json::array();
          for (const auto& c : choices) {
            list.push_back(c.alpha);
            if (c.flagged) ++flagged;
          }
          per_user[user] = list;
        }
        r["alpha"] = {{"mean", it->mean},
                      {"sd", it->sd},
                      {"n", it->n},
                      {"flagged", flagged},
                      {"per_user", per_user}};
      }
      rows.push_back(r);
    }
    s["rows"] = rows;
    sources.push_back(s);
  }
  j["sources"] = sources;

  ordered_json summary = ordered_json::array();
  for (const auto& a : alphas) {
    summary.push_back({{"source", a.source},
                       {"algorithm", a.algorithm},
                       {"mean", a.mean},
                       {"sd", a.sd},
                       {"n", a.n}});
  }
  j["alpha_summary"] = summary;
  return j.dump(2) + "\n";
}

}  // namespace sensoryrec
