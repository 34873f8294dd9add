// Acceptance checks for the library and CLI. Prints one PASS/FAIL line per
// criterion and exits nonzero if any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "generators.h"
#include "oracles.h"
#include "paths.h"
#include "sensoryrec/compatibility.h"
#include "sensoryrec/evaluation.h"
#include "sensoryrec/experiment.h"
#include "sensoryrec/extraction.h"
#include "sensoryrec/profiles.h"
#include "sensoryrec/recommender.h"
#include "sensoryrec/synthetic.h"

namespace fs = std::filesystem;
using namespace sensoryrec;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failures for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    if (ok()) return fmt::format("{} checks", checks_);
    std::string s = fmt::format("{} of {} checks failed", failed_, checks_);
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<ItemProfile> items_from(const SyntheticData& data, const FeatureTable& table) {
  std::vector<ItemProfile> items = data.truth;
  for (auto& item : items) {
    const auto it = table.find(item.item_id);
    item.features = it == table.end() ? FeatureVector{} : it->second;
  }
  return items;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = fmt::format("'{}' {} >/dev/null 2>&1", SENSORYREC_CLI, args);
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---- 1: compatibility equations ----
Check equations() {
  Check c;
  const auto start = Clock::now();
  testing::Gen gen(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool v = gen.coin();
    const AversionCurve curve = v ? AversionCurve::v_shaped(gen.scale_value(), gen.scale_value())
                                  : AversionCurve::increasing(gen.scale_value());
    const double x = gen.scale_value();
    const double ea = estimated_aversion(curve, x);
    c.expect(std::abs(feature_compatibility(curve, x) + ea - (kVMax + 1)) <= 1e-9,
             fmt::format("complement at x={}", x));
    c.expect(std::abs(ea - oracle::estimated_aversion(curve.shape(), curve.low(), curve.high(), x)) <= 1e-9,
             "aversion differs from the oracle");
    c.expect(estimated_aversion(curve, 1) == (v ? curve.low() : 1.0), "endpoint at 1");
    c.expect(estimated_aversion(curve, 5) == curve.high(), "endpoint at 5");
    const double ideal = ideal_value(curve);
    const double floor = estimated_aversion(curve, ideal);
    double prev = estimated_aversion(curve, 1), prev_x = 1;
    for (int s = 0; s <= 100; ++s) {
      const double xs = 1 + 4.0 * s / 100;
      const double e = estimated_aversion(curve, xs);
      c.expect(e >= floor - 1e-12, "ideal is not a minimizer");
      if (xs <= ideal) c.expect(e <= prev + 1e-12, "rises left of the ideal");
      if (prev_x >= ideal) c.expect(e >= prev - 1e-12, "falls right of the ideal");
      prev = e;
      prev_x = xs;
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, fmt::format("took {:.3f} s", elapsed));
  return c;
}

// ---- 2: extraction ----
Check extraction() {
  Check c;
  const fs::path dir = testing::data_dir();
  const auto sensory = load_sensory_lexicon(dir / "lexicon/sensory.tsv");
  const auto modifiers = load_modifier_lexicon(dir / "lexicon/modifier.tsv");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir / "reviews")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ReviewDoc> docs;
  std::size_t sentences = 0;
  for (const auto& f : files) {
    for (auto& d : load_conllu(f)) {
      sentences += d.sentences.size();
      docs.push_back(std::move(d));
    }
  }
  c.expect(sentences == 30, fmt::format("fixture has {} sentences", sentences));

  std::vector<FeatureMention> got;
  for (const auto& d : docs) {
    const auto ms = extract_mentions(d, sensory, modifiers);
    got.insert(got.end(), ms.begin(), ms.end());
  }
  const auto want = oracle::mentions(docs, sensory, modifiers);
  c.expect(got.size() == want.size(), fmt::format("{} mentions vs {}", got.size(), want.size()));
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
    c.expect(got[i].item_id == want[i].item_id && got[i].feature == want[i].feature &&
                 got[i].value == want[i].value,
             fmt::format("mention {} differs", i));
  }

  auto single = [&](std::vector<std::string> lemmas, std::vector<int> heads) {
    std::vector<DepToken> toks;
    for (std::size_t i = 0; i < lemmas.size(); ++i) {
      DepToken t;
      t.id = static_cast<int>(i) + 1;
      t.form = t.lemma = lemmas[i];
      t.upos = "X";
      t.head = heads[i];
      t.deprel = heads[i] == 0 ? "root" : "advmod";
      toks.push_back(std::move(t));
    }
    const ReviewDoc doc{"p", "r", {DepTree(std::move(toks))}};
    return extract_mentions(doc, sensory, modifiers).at(0).value;
  };
  c.expect(single({"scuro"}, {0}) == 2, "scuro");
  c.expect(single({"tanto", "scuro"}, {2, 0}) == 1, "tanto scuro");
  return c;
}

// ---- 3: algorithm identities ----
Check identities() {
  Check c;
  SynthConfig cfg;
  cfg.n_users = 10;
  cfg.n_items = 50;
  const auto data = generate_synthetic(cfg);
  const auto items_a = items_from(data, data.source_a);
  const auto items_b = items_from(data, data.source_b);
  for (const auto& u : data.users) {
    for (const auto* items : {&items_a, &items_b}) {
      for (const auto& item : *items) {
        for (Measure m : kAllMeasures) {
          const auto ind1 = predict(AlgorithmSpec::ind(m, 1), u, item);
          const auto conly = predict(AlgorithmSpec::c_only(m), u, item);
          const auto ind0 = predict(AlgorithmSpec::ind(m, 0), u, item);
          const auto pref = predict(AlgorithmSpec::pref_only(), u, item);
          c.expect(ind1.has_value() == conly.has_value() && ind0.has_value() == pref.has_value(),
                   "predictability differs");
          if (!ind1) continue;
          c.expect(same_bits(ind1->r_hat, conly->r_hat), "Ind(1) != C-only");
          c.expect(same_bits(ind0->r_hat, pref->r_hat), "Ind(0) != Pref-only");
        }
      }
    }
    for (std::size_t i = 0; i < items_a.size(); ++i) {
      const auto pa = predict(AlgorithmSpec::pref_only(), u, items_a[i]);
      const auto pb = predict(AlgorithmSpec::pref_only(), u, items_b[i]);
      c.expect(pa.has_value() == pb.has_value() && (!pa || same_bits(pa->r_hat, pb->r_hat)),
               "Pref-only depends on the source");
    }
  }
  return c;
}

// ---- 4: fusion ----
Check fusion() {
  Check c;
  testing::Gen gen(1004);
  for (int trial = 0; trial < 10000; ++trial) {
    const FeatureEvidence a = gen.evidence(0.25), b = gen.evidence(0.25);
    const FeatureEvidence f = fuse_feature(a, b);
    c.expect(f == fuse_feature(b, a), "not symmetric");
    c.expect(fuse_feature(a, {}) == a, "pass-through");
    if (a.known() && b.known()) {
      const double direct = (a.count * a.value + b.count * b.value) / (a.count + b.count);
      c.expect(std::abs(f.value - direct) <= 1e-12, "weighted mean");
      c.expect(f.value >= std::min(a.value, b.value) && f.value <= std::max(a.value, b.value),
               "outside the convex hull");
    }
  }
  const auto data = generate_synthetic({});
  c.expect(data.source_a.size() == 49, fmt::format("source a has {} items", data.source_a.size()));
  c.expect(data.source_b.size() == 34, fmt::format("source b has {} items", data.source_b.size()));
  const auto fused = fuse_tables(data.source_a, data.source_b, FuseScope::kIntersection);
  c.expect(fused.size() == 34, fmt::format("{} fused items", fused.size()));
  return c;
}

// ---- 5: metrics ----
Check metrics() {
  Check c;
  testing::Gen gen(1005);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rating> test;
    std::vector<Prediction> preds;
    const int users = gen.integer(1, 4);
    for (int u = 0; u < users; ++u) {
      const int n = gen.integer(1, 10);
      for (int i = 0; i < n; ++i) {
        const std::string uid = fmt::format("u{}", u), iid = fmt::format("i{}", i);
        test.push_back({uid, iid, gen.integer(1, 5)});
        if (!gen.coin(0.2)) preds.push_back({uid, iid, gen.coin(0.3) ? gen.integer(1, 5) : gen.real(1, 5)});
      }
    }
    const MetricsRow got = compute_metrics(test, preds, 5, 3);
    const MetricsRow want = oracle::metrics(test, preds, 5, 3);
    const double diff = std::max({std::abs(got.precision - want.precision),
                                  std::abs(got.recall - want.recall), std::abs(got.f1 - want.f1),
                                  std::abs(got.map - want.map), std::abs(got.mrr - want.mrr),
                                  std::abs(got.mae - want.mae), std::abs(got.rmse - want.rmse)});
    c.expect(diff <= 1e-9, fmt::format("instance {} differs by {}", trial, diff));
    c.expect(got.mae <= got.rmse + 1e-12, "mae > rmse");
  }

  testing::TempDir dir;
  write_synthetic(generate_synthetic({}), dir.path());
  const EvalReport report = run_experiment(load_experiment_config(dir.path() / "experiment.toml"));
  for (const auto& s : report.sources) {
    for (const auto& r : s.rows) {
      c.expect(r.metrics.coverage == 1.0,
               fmt::format("coverage {:.3f} for {} on source {}", r.metrics.coverage, r.name, s.source));
    }
  }
  return c;
}

// ---- 6: grid search ----
Check grid_search() {
  Check c;
  SynthConfig cfg;
  cfg.n_users = 5;
  const auto data = generate_synthetic(cfg);
  const auto items = items_from(data, data.source_a);
  const auto grid = alpha_grid(0.05);
  c.expect(grid.size() == 21, "grid size");
  const FoldPlan plan = make_folds(data.ratings, 5, 7);
  for (const auto& u : data.users) {
    for (int f = 0; f < 5; ++f) {
      const auto train = plan.training(u.user_id, f);
      for (Measure m : kAllMeasures) {
        const AlphaChoice choice = grid_search_alpha(u, train, items, m, grid);
        double best = 0;
        for (double a : grid) best = std::max(best, oracle::training_map(u, train, items, m, a, 5, 3));
        const double at_choice = oracle::training_map(u, train, items, m, choice.alpha, 5, 3);
        c.expect(at_choice == best, fmt::format("{} fold {}: alpha {} is not maximal", u.user_id, f, choice.alpha));
        c.expect(choice.alpha == oracle::best_alpha(u, train, items, m, grid, 5, 3).value_or(-1),
                 "not the smallest maximizer");
      }
    }
  }

  // Nothing relevant in training: every alpha scores 0 and the smallest wins.
  UserProfile u = data.users[0];
  std::vector<Rating> flat;
  for (const auto& item : items) flat.push_back({u.user_id, item.item_id, 1});
  c.expect(grid_search_alpha(u, flat, items, Measure::kAve, grid).alpha == 0, "all-tie instance");
  return c;
}

// ---- 7: end-to-end ----
Check end_to_end() {
  Check c;
  testing::TempDir dir;
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir.path() / fmt::format("run{}", run);
    const auto start = Clock::now();
    c.expect(run_cli(fmt::format("synth --seed 7 --users 30 --items 50 --out '{}'", out.string())) == 0,
             "synth failed");
    c.expect(run_cli(fmt::format("evaluate --config '{}' --table '{}' --json '{}'",
                                 (out / "experiment.toml").string(), (out / "report.txt").string(),
                                 (out / "report.json").string())) == 0,
             "evaluate failed");
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 10.0, fmt::format("run took {:.2f} s", elapsed));
    reports.push_back(slurp(out / "report.txt") + slurp(out / "report.json"));
  }
  c.expect(!reports[0].empty() && reports[0] == reports[1], "reports differ between runs");

  // Layout: per source a header with seven metrics and coverage, then 13 rows.
  std::istringstream in(slurp(dir.path() / "run0/report.txt"));
  std::string line;
  int tables = 0, rows = 0, alpha_rows = 0;
  bool in_alpha = false;
  const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : standard_battery()) n.push_back(s.name());
    return n;
  }();
  while (std::getline(in, line)) {
    if (line.rfind("Algorithm", 0) == 0) {
      ++tables;
      std::istringstream cols(line);
      std::vector<std::string> header;
      for (std::string w; cols >> w;) header.push_back(w);
      c.expect(header == std::vector<std::string>{"Algorithm", "Prec.", "Recall", "F1", "MAP", "MRR",
                                                  "MAE", "RMSE", "Coverage"},
               "metric header");
    } else if (line.find("alpha weights") != std::string::npos) {
      in_alpha = true;
    } else if (in_alpha && line.rfind("Ind_", 0) == 0) {
      ++alpha_rows;
      c.expect(line.find('(') != std::string::npos && line.find(')') != std::string::npos,
               "alpha cell is not mean(sd)");
    } else if (!in_alpha) {
      for (const auto& n : names) {
        if (line.rfind(n + " ", 0) == 0) ++rows;
      }
    }
  }
  c.expect(tables == 2, fmt::format("{} metric tables", tables));
  c.expect(rows == 26, fmt::format("{} algorithm rows", rows));
  c.expect(alpha_rows == 4, fmt::format("{} alpha rows", alpha_rows));
  return c;
}

// ---- 8: Min propagation ----
Check min_propagation() {
  Check c;
  const auto data = generate_synthetic({});
  int cases = 0;
  auto probe = [&](const UserProfile& u, const ItemProfile& item) {
    const bool any_unknown = std::any_of(item.features.begin(), item.features.end(),
                                         [](const FeatureEvidence& e) { return !e.known(); });
    if (!any_unknown) return;
    const auto conly = predict(AlgorithmSpec::c_only(Measure::kMin), u, item);
    const auto mc = predict(AlgorithmSpec::mc(Measure::kMin), u, item);
    if (!conly) return;
    ++cases;
    c.expect(conly->r_hat == 1, fmt::format("C-only_Min {} for {}", conly->r_hat, item.item_id));
    c.expect(mc->r_hat == 1, fmt::format("MC_Min {} for {}", mc->r_hat, item.item_id));
  };
  for (const auto& u : data.users) {
    for (const auto* table : {&data.source_a, &data.source_b}) {
      for (const auto& item : items_from(data, *table)) probe(u, item);
    }
  }
  testing::Gen gen(1008);
  for (int trial = 0; trial < 200; ++trial) {
    const UserProfile u = gen.user("g", 0.1);
    for (const auto& item : gen.items(10, 0.3)) probe(u, item);
  }
  c.expect(cases > 1000, fmt::format("only {} cases", cases));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"compatibility equations", equations},
      {"extraction oracle", extraction},
      {"algorithm identities", identities},
      {"fusion", fusion},
      {"metrics oracle and coverage", metrics},
      {"grid-search exhaustiveness", grid_search},
      {"end-to-end determinism and scale", end_to_end},
      {"Min propagation", min_propagation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    if (!c.ok()) ++failed;
    std::cout << fmt::format("{} criterion {}: {} ({})\n", c.ok() ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, c.summary());
  }
  return failed == 0 ? 0 : 1;
}
