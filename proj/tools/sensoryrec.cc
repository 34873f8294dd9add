// sensoryrec: extract, fuse, recommend and evaluate from the command line.
//
// Exit codes: 0 success, 1 invalid input or arguments, 2 file system error.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sensoryrec/conllu.h"
#include "sensoryrec/error.h"
#include "sensoryrec/experiment.h"
#include "sensoryrec/extraction.h"
#include "sensoryrec/lexicon.h"
#include "sensoryrec/profiles.h"
#include "sensoryrec/recommender.h"
#include "sensoryrec/synthetic.h"

namespace fs = std::filesystem;
using namespace sensoryrec;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

// Runs `body` with a stream for `path`, or stdout when the path is empty.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  body(out);
  out.flush();
  if (!out) throw IoError("error writing file: " + path);
}

std::vector<ItemFeatureStats> as_stats(const FeatureTable& table) {
  std::vector<ItemFeatureStats> out;
  out.reserve(table.size());
  for (const auto& [id, vec] : table) out.push_back({id, vec});
  return out;
}

struct ExtractArgs {
  std::string reviews, sensory, modifiers, out;
};

void run_extract(const ExtractArgs& a) {
  const SensoryLexicon sensory = load_sensory_lexicon(a.sensory);
  const ModifierLexicon modifiers = load_modifier_lexicon(a.modifiers);
  check_disjoint(sensory, modifiers);

  if (!fs::is_directory(a.reviews)) {
    throw IoError("not a directory: " + a.reviews);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.reviews)) {
    if (entry.is_regular_file() && entry.path().extension() == ".conllu") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "warning: no .conllu files in " << a.reviews << '\n';
  }

  std::vector<FeatureMention> mentions;
  for (const auto& file : files) {
    for (const ReviewDoc& doc : load_conllu(file)) {
      auto m = extract_mentions(doc, sensory, modifiers);
      mentions.insert(mentions.end(), std::make_move_iterator(m.begin()),
                      std::make_move_iterator(m.end()));
    }
  }
  const auto stats = aggregate_item_features(mentions);
  with_output(a.out, [&](std::ostream& o) { write_item_features_csv(stats, o); });

  const CorpusStats cs = corpus_stats(stats);
  std::string coverage;
  for (Feature f : kAllFeatures) {
    coverage += fmt::format(" {}={}", feature_name(f), cs[index(f)].coverage);
  }
  std::cerr << fmt::format("items={} mentions={} coverage:{}\n", stats.size(),
                           mentions.size(), coverage);
}

struct StatsArgs {
  std::string a, b;
};

void run_stats(const StatsArgs& args) {
  const FeatureTable a = load_feature_table(args.a);
  std::optional<FeatureTable> b;
  if (!args.b.empty()) b = load_feature_table(args.b);

  std::cout << "source,feature,items,min,max,mean,sd\n";
  auto counts = [](std::string_view name, const FeatureTable& t) {
    const CorpusStats cs = corpus_stats(as_stats(t));
    for (Feature f : kAllFeatures) {
      const auto& s = cs[index(f)];
      std::cout << fmt::format("{},{},{},{:.4f},{:.4f},{:.4f},{:.4f}\n", name,
                               feature_name(f), s.coverage, s.min, s.max,
                               s.mean, s.sd);
    }
  };
  counts("a", a);
  if (!b) return;
  counts("b", *b);

  std::cout << "\nfeature,n,min_distance,max_distance,mean_distance,"
               "sd_distance,correlation,mean_difference\n";
  const auto cmp = compare_sources(a, *b);
  for (Feature f : kAllFeatures) {
    const auto& c = cmp[index(f)];
    const std::string corr =
        c.correlation ? fmt::format("{:.4f}", *c.correlation) : "";
    std::cout << fmt::format("{},{},{:.4f},{:.4f},{:.4f},{:.4f},{},{:.4f}\n",
                             feature_name(f), c.n, c.min_distance,
                             c.max_distance, c.mean_distance, c.sd_distance,
                             corr, c.mean_difference);
  }
}

struct FuseArgs {
  std::string a, b, out;
  bool intersection = false;
};

void run_fuse(const FuseArgs& args) {
  const FeatureTable fused =
      fuse_tables(load_feature_table(args.a), load_feature_table(args.b),
                  args.intersection ? FuseScope::kIntersection : FuseScope::kUnion);
  with_output(args.out, [&](std::ostream& o) { write_feature_table(fused, o); });
}

struct RecommendArgs {
  std::string items, features, users, algorithm = "ind", measure = "Ave", out;
  double alpha = 0.5;
  int k = 5;
  double threshold = 3.0;
};

AlgorithmSpec make_spec(const RecommendArgs& a) {
  const auto family = parse_family(a.algorithm);
  if (!family) throw ValidationError("unknown algorithm: " + a.algorithm);
  if (*family == Family::kPrefOnly) return AlgorithmSpec::pref_only();
  const auto measure = parse_measure(a.measure);
  if (!measure) throw ValidationError("unknown measure: " + a.measure);
  switch (*family) {
    case Family::kInd:
      if (!(a.alpha >= 0 && a.alpha <= 1)) {
        throw ValidationError(fmt::format("alpha {} outside [0,1]", a.alpha));
      }
      return AlgorithmSpec::ind(*measure, a.alpha);
    case Family::kCOnly:
      return AlgorithmSpec::c_only(*measure);
    default:
      return AlgorithmSpec::mc(*measure);
  }
}

void run_recommend(const RecommendArgs& args) {
  const AlgorithmSpec spec = make_spec(args);
  if (args.k < 1) throw ValidationError("--k must be positive");
  const auto items = load_items(args.items, args.features);
  const auto users = load_users(args.users);

  with_output(args.out, [&](std::ostream& o) {
    o << "user_id,rank,item_id,r_hat\n";
    for (const UserProfile& user : users) {
      std::vector<Prediction> preds;
      for (const ItemProfile& item : items) {
        if (auto p = predict(spec, user, item)) preds.push_back(std::move(*p));
      }
      const auto ranked = rank_predictions(preds, args.k, args.threshold);
      for (std::size_t r = 0; r < ranked.size(); ++r) {
        o << fmt::format("{},{},{},{:.4f}\n", user.user_id, r + 1,
                         ranked[r].item_id, ranked[r].r_hat);
      }
    }
  });
}

struct EvaluateArgs {
  std::string config, json, table;
};

void run_evaluate(const EvaluateArgs& args) {
  const EvalReport report = run_experiment(load_experiment_config(args.config));
  if (!args.json.empty()) {
    with_output(args.json, [&](std::ostream& o) { o << report_to_json(report); });
  }
  if (!args.table.empty() || args.json.empty()) {
    with_output(args.table,
                [&](std::ostream& o) { o << format_report_table(report); });
  }
}

struct SynthArgs {
  SynthConfig config;
  std::string out;
};

void run_synth(const SynthArgs& args) {
  write_synthetic(generate_synthetic(args.config), args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensory-feature extraction and place recommendation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sensoryrec 0.1.0");

  ExtractArgs extract;
  auto* ex = app.add_subcommand("extract", "Extract item features from CoNLL-U reviews");
  ex->add_option("--reviews", extract.reviews, "Directory of .conllu files")->required();
  ex->add_option("--sensory-lexicon", extract.sensory, "Sensory word TSV")->required();
  ex->add_option("--modifier-lexicon", extract.modifiers, "Modifier TSV")->required();
  ex->add_option("--out", extract.out, "Output CSV (default: stdout)");

  StatsArgs stats;
  auto* st = app.add_subcommand("stats", "Evidence counts per feature, and agreement between two sources");
  st->add_option("--a", stats.a, "Feature table")->required();
  st->add_option("--b", stats.b, "Second feature table to compare against");

  FuseArgs fuse;
  auto* fu = app.add_subcommand("fuse", "Count-weighted fusion of two feature tables");
  fu->add_option("--a", fuse.a, "First feature table")->required();
  fu->add_option("--b", fuse.b, "Second feature table")->required();
  fu->add_option("--out", fuse.out, "Output CSV (default: stdout)");
  fu->add_flag("--intersection", fuse.intersection, "Keep only items present in both tables");

  RecommendArgs rec;
  auto* re = app.add_subcommand("recommend", "Top-k recommendations for every user");
  re->add_option("--items", rec.items, "Catalog CSV (item_id,category)")->required();
  re->add_option("--features", rec.features, "Feature table CSV")->required();
  re->add_option("--users", rec.users, "User profiles CSV")->required();
  re->add_option("--algorithm", rec.algorithm, "ind | c-only | pref-only | mc")->capture_default_str();
  re->add_option("--measure", rec.measure, "Min | Ave | Cos | RMSD")->capture_default_str();
  re->add_option("--alpha", rec.alpha, "Compatibility weight for ind")->capture_default_str();
  re->add_option("--k", rec.k, "List length")->capture_default_str();
  re->add_option("--threshold", rec.threshold, "Only recommend above this rating")->capture_default_str();
  re->add_option("--out", rec.out, "Output CSV (default: stdout)");

  EvaluateArgs eval;
  auto* ev = app.add_subcommand("evaluate", "Cross-validated comparison of all configured algorithms");
  ev->add_option("--config", eval.config, "experiment.toml")->required();
  ev->add_option("--json", eval.json, "Write the JSON report here");
  ev->add_option("--table", eval.table, "Write the text report here (default: stdout unless --json)");

  SynthArgs synth;
  auto* sy = app.add_subcommand("synth", "Generate a synthetic dataset and experiment config");
  sy->add_option("--seed", synth.config.seed, "Random seed")->capture_default_str();
  sy->add_option("--users", synth.config.n_users, "Number of users")->capture_default_str();
  sy->add_option("--items", synth.config.n_items, "Number of items")->capture_default_str();
  sy->add_option("--a-items", synth.config.a_items, "Items covered by source a");
  sy->add_option("--b-items", synth.config.b_items, "Items covered by source b (a subset of a)");
  sy->add_option("--sparsity", synth.config.sparsity, "Unknown-feature rate of source b")
      ->capture_default_str();
  sy->add_option("--out", synth.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*ex) run_extract(extract);
    if (*st) run_stats(stats);
    if (*fu) run_fuse(fuse);
    if (*re) run_recommend(rec);
    if (*ev) run_evaluate(eval);
    if (*sy) run_synth(synth);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
