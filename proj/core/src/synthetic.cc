#include "sensoryrec/synthetic.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "sensoryrec/compatibility.h"
#include "sensoryrec/error.h"

namespace sensoryrec {
namespace {

// Draws are built directly on the engine output rather than the standard
// distributions, whose algorithms differ between library vendors.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng_() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 rng_;
};

double round4(double x) { return std::round(x * 1e4) / 1e4; }

double clamp_scale(double x) { return std::clamp(x, kVMin, kVMax); }

// Mean of `count` noisy integer observations of a true value.
double observe(Draw& draw, double truth, int count, double spread) {
  double sum = 0;
  for (int i = 0; i < count; ++i) {
    sum += clamp_scale(std::round(truth + draw.uniform(-spread, spread)));
  }
  return round4(sum / count);
}

FeatureVector observe_item(Draw& draw, const ItemProfile& item, double unknown,
                           bool heavy_tail) {
  FeatureVector v{};
  for (Feature f : kAllFeatures) {
    if (draw.chance(unknown)) continue;
    // Review mentions are mostly single, occasionally many.
    const int count = heavy_tail
                          ? static_cast<int>(std::floor(std::exp(3.0 * draw.unit() * draw.unit())))
                          : draw.integer(1, 9);
    const double truth = item.features[index(f)].value;
    v[index(f)] = {observe(draw, truth, count, heavy_tail ? 1.5 : 1.0), count};
  }
  return v;
}

std::string numbered(char prefix, int i, int total) {
  const int width = static_cast<int>(fmt::format("{}", total).size());
  return fmt::format("{}{:0{}}", prefix, i + 1, width);
}

void write_file(const std::filesystem::path& path, auto&& body) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path.string());
  body(out);
  out.flush();
  if (!out) throw IoError("error writing file: " + path.string());
}

std::string experiment_toml(bool intersection) {
  std::string out =
      "items = \"items.csv\"\n"
      "users = \"users.csv\"\n"
      "ratings = \"ratings.csv\"\n"
      "algorithms = [\"Ind\", \"C-only\", \"MC\", \"Pref-only\"]\n"
      "measures = [\"Min\", \"Ave\", \"Cos\", \"RMSD\"]\n"
      "grid_step = 0.05\n"
      "seed = 7\n"
      "folds = 5\n"
      "k = 5\n"
      "threshold = 3\n";
  if (intersection) out += "item_scope = \"intersection\"\nfuse = true\n";
  out +=
      "\n[sources]\n"
      "a = \"features_a.csv\"\n"
      "b = \"features_b.csv\"\n";
  return out;
}

}  // namespace

SyntheticData generate_synthetic(const SynthConfig& config) {
  const int n = config.n_items;
  const int a_items = config.a_items.value_or(std::max(1, n - 1));
  const int b_items = config.b_items.value_or(
      std::max(1, static_cast<int>(std::lround(0.68 * n))));
  if (config.n_users <= 0 || n <= 0) {
    throw std::invalid_argument("synthetic sizes must be positive");
  }
  if (a_items <= 0 || a_items > n || b_items <= 0 || b_items > a_items) {
    throw std::invalid_argument(fmt::format(
        "source sizes must satisfy 0 < b ({}) <= a ({}) <= items ({})",
        b_items, a_items, n));
  }
  if (!(config.sparsity >= 0 && config.sparsity <= 1)) {
    throw std::invalid_argument("sparsity must lie in [0,1]");
  }

  Draw draw(config.seed);
  SyntheticData data;

  for (int i = 0; i < n; ++i) {
    ItemProfile item;
    item.item_id = numbered('i', i, n);
    item.category = kAllCategories[static_cast<std::size_t>(i) % kNumCategories];
    for (Feature f : kAllFeatures) {
      item.features[index(f)] = {std::round(draw.uniform(1, 5) * 2) / 2, 1};
    }
    data.truth.push_back(std::move(item));
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  draw.shuffle(order);
  std::vector<int> in_a(order.begin(), order.begin() + a_items);
  std::sort(in_a.begin(), in_a.end());
  std::vector<int> in_b = in_a;
  draw.shuffle(in_b);
  in_b.resize(b_items);
  std::sort(in_b.begin(), in_b.end());

  for (int i : in_a) {
    data.source_a[data.truth[i].item_id] =
        observe_item(draw, data.truth[i], config.sparsity / 4, false);
  }
  for (int i : in_b) {
    data.source_b[data.truth[i].item_id] =
        observe_item(draw, data.truth[i], config.sparsity, true);
  }
  // An item whose features all came out unknown is simply not covered.
  std::erase_if(data.source_a, [](const auto& e) {
    return std::none_of(e.second.begin(), e.second.end(),
                        [](const auto& x) { return x.known(); });
  });
  std::erase_if(data.source_b, [](const auto& e) {
    return std::none_of(e.second.begin(), e.second.end(),
                        [](const auto& x) { return x.known(); });
  });

  for (int u = 0; u < config.n_users; ++u) {
    UserProfile user;
    user.user_id = numbered('u', u, config.n_users);
    for (double& p : user.preferences) p = draw.integer(1, 5);
    Aversions& a = user.aversions;
    for (double* v : {&a.brightness_low, &a.brightness_high, &a.crowding_high,
                      &a.noise_high, &a.smell_high, &a.openness_low,
                      &a.openness_high}) {
      *v = draw.integer(1, 5);
    }
    // How much this user's ratings follow sensory comfort over category taste.
    const double weight = draw.unit();

    const int lo = std::max(1, static_cast<int>(std::ceil(0.5 * n)));
    const int hi = std::max(lo, static_cast<int>(std::floor(0.8 * n)));
    std::vector<int> rated(n);
    for (int i = 0; i < n; ++i) rated[i] = i;
    draw.shuffle(rated);
    rated.resize(std::min(n, draw.integer(lo, hi)));
    std::sort(rated.begin(), rated.end());

    for (int i : rated) {
      const ItemProfile& item = data.truth[i];
      double comp = 0;
      for (Feature f : kAllFeatures) {
        comp += feature_compatibility(AversionCurve::for_user(user, f),
                                      item.features[index(f)].value);
      }
      comp /= kNumFeatures;
      const double r = weight * comp + (1 - weight) * user.preference(item.category) +
                       draw.uniform(-0.75, 0.75);
      data.ratings.push_back(
          {user.user_id, item.item_id, static_cast<int>(clamp_scale(std::round(r)))});
    }
    data.users.push_back(std::move(user));
  }
  return data;
}

void write_synthetic(const SyntheticData& data,
                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  write_file(dir / "items.csv", [&](std::ostream& o) { write_catalog(data.truth, o); });
  write_file(dir / "users.csv", [&](std::ostream& o) { write_users(data.users, o); });
  write_file(dir / "ratings.csv", [&](std::ostream& o) { write_ratings(data.ratings, o); });
  write_file(dir / "features_a.csv",
             [&](std::ostream& o) { write_feature_table(data.source_a, o); });
  write_file(dir / "features_b.csv",
             [&](std::ostream& o) { write_feature_table(data.source_b, o); });
  write_file(dir / "experiment.toml",
             [](std::ostream& o) { o << experiment_toml(false); });
  write_file(dir / "experiment_intersection.toml",
             [](std::ostream& o) { o << experiment_toml(true); });
}

}  // namespace sensoryrec
