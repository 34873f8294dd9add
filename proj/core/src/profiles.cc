#include "sensoryrec/profiles.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "sensoryrec/error.h"
#include "stats.h"
#include "text.h"

namespace sensoryrec {
namespace {

struct CsvRow {
  std::size_t line_no;
  std::vector<std::string> fields;
};

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    auto c = column(name);
    if (!c) throw LoadError(fmt::format("missing column '{}'", name));
    return *c;
  }
};

CsvDocument parse_csv(std::string_view text) {
  CsvDocument doc;
  const auto rows = internal::lines(text);
  bool have_header = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (internal::trim(rows[i]).empty()) continue;
    auto fields = internal::split_csv_row(rows[i]);
    for (auto& f : fields) f = std::string(internal::trim(f));
    if (!have_header) {
      doc.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size()) {
      throw LoadError(fmt::format("line {}: expected {} columns, got {}", i + 1,
                                  doc.header.size(), fields.size()));
    }
    doc.rows.push_back({i + 1, std::move(fields)});
  }
  if (!have_header) throw LoadError("empty file: missing header row");
  return doc;
}

double number(const CsvRow& row, std::size_t col, std::string_view what) {
  const auto v = internal::parse_double(row.fields[col]);
  if (!v || !std::isfinite(*v)) {
    throw LoadError(fmt::format("line {}: {} '{}' is not a number", row.line_no,
                                what, row.fields[col]));
  }
  return *v;
}

long long integer(const CsvRow& row, std::size_t col, std::string_view what) {
  const auto v = internal::parse_int(row.fields[col]);
  if (!v) {
    throw LoadError(fmt::format("line {}: {} '{}' is not an integer",
                                row.line_no, what, row.fields[col]));
  }
  return *v;
}

const std::string& nonempty(const CsvRow& row, std::size_t col,
                            std::string_view what) {
  if (row.fields[col].empty()) {
    throw LoadError(fmt::format("line {}: empty {}", row.line_no, what));
  }
  return row.fields[col];
}

template <typename F>
auto with_path(const std::filesystem::path& path, F&& parse) {
  const std::string text = internal::read_file(path);
  try {
    return parse(text);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

constexpr std::array<std::string_view, 7> kAversionColumns = {
    "av_brightness_low", "av_brightness_high", "av_crowding_high",
    "av_noise_high",     "av_smell_high",      "av_openness_low",
    "av_openness_high"};

std::array<double*, 7> aversion_slots(Aversions& a) {
  return {&a.brightness_low, &a.brightness_high, &a.crowding_high,
          &a.noise_high,     &a.smell_high,      &a.openness_low,
          &a.openness_high};
}

std::array<double, 7> aversion_values(const Aversions& a) {
  return {a.brightness_low, a.brightness_high, a.crowding_high, a.noise_high,
          a.smell_high,     a.openness_low,    a.openness_high};
}

void check_evidence(FeatureEvidence e) {
  if (e.count < 0) throw ValidationError("negative evaluation count");
  if (!is_valid_feature_value(e.value)) {
    throw ValidationError(fmt::format("feature value {} outside {{0}} U [1,5]",
                                      e.value));
  }
  if ((e.count == 0) != (e.value == kUnknown)) {
    throw ValidationError(fmt::format(
        "feature value {} inconsistent with count {}", e.value, e.count));
  }
}

}  // namespace

Catalog parse_catalog(std::string_view text) {
  const CsvDocument doc = parse_csv(text);
  const std::size_t id_col = doc.require("item_id");
  const std::size_t cat_col = doc.require("category");
  Catalog out;
  for (const CsvRow& row : doc.rows) {
    const std::string& id = nonempty(row, id_col, "item_id");
    const auto cat = parse_category(row.fields[cat_col]);
    if (!cat) {
      throw LoadError(fmt::format("line {}: unknown category '{}'", row.line_no,
                                  row.fields[cat_col]));
    }
    if (!out.emplace(id, *cat).second) {
      throw LoadError(
          fmt::format("line {}: duplicate item_id '{}'", row.line_no, id));
    }
  }
  return out;
}

Catalog load_catalog(const std::filesystem::path& path) {
  return with_path(path, [](std::string_view t) { return parse_catalog(t); });
}

FeatureTable parse_feature_table(std::string_view text) {
  const CsvDocument doc = parse_csv(text);
  const std::size_t id_col = doc.require("item_id");
  const std::size_t feat_col = doc.require("feature");
  const std::size_t val_col = doc.require("value");
  const auto count_col = doc.column("count");
  FeatureTable out;
  for (const CsvRow& row : doc.rows) {
    const std::string& id = nonempty(row, id_col, "item_id");
    const auto feature = parse_feature(row.fields[feat_col]);
    if (!feature) {
      throw LoadError(fmt::format("line {}: unknown feature '{}'", row.line_no,
                                  row.fields[feat_col]));
    }
    const double value = number(row, val_col, "value");
    if (!(value >= kVMin && value <= kVMax)) {
      throw LoadError(fmt::format("line {}: value {} out of range [1,5]",
                                  row.line_no, row.fields[val_col]));
    }
    long long count = 1;
    if (count_col) {
      count = integer(row, *count_col, "count");
      if (count < 1) {
        throw LoadError(
            fmt::format("line {}: count must be >= 1, got {}", row.line_no, count));
      }
    }
    FeatureEvidence& slot = out[id][index(*feature)];
    if (slot.known()) {
      throw LoadError(fmt::format("line {}: duplicate row for ({}, {})",
                                  row.line_no, id, feature_name(*feature)));
    }
    slot = {value, static_cast<int>(count)};
  }
  return out;
}

FeatureTable load_feature_table(const std::filesystem::path& path) {
  return with_path(path,
                   [](std::string_view t) { return parse_feature_table(t); });
}

std::vector<ItemProfile> build_items(const Catalog& catalog,
                                     const FeatureTable& features) {
  for (const auto& [id, _] : features) {
    if (!catalog.contains(id)) {
      throw LoadError("feature rows reference item '" + id +
                      "' which is not in the catalog");
    }
  }
  std::vector<ItemProfile> out;
  out.reserve(catalog.size());
  for (const auto& [id, cat] : catalog) {
    ItemProfile p;
    p.item_id = id;
    p.category = cat;
    if (auto it = features.find(id); it != features.end()) {
      p.features = it->second;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ItemProfile> load_items(const std::filesystem::path& catalog,
                                    const std::filesystem::path& features) {
  const Catalog cat = load_catalog(catalog);
  const FeatureTable table = load_feature_table(features);
  try {
    return build_items(cat, table);
  } catch (const LoadError& e) {
    throw LoadError(features.string() + ": " + e.what());
  }
}

std::string users_csv_header() {
  std::string h = "user_id";
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    h += ",pref_";
    h += category_name(static_cast<Category>(c));
  }
  for (auto col : kAversionColumns) {
    h += ',';
    h += col;
  }
  return h;
}

std::vector<UserProfile> parse_users(std::string_view text) {
  const CsvDocument doc = parse_csv(text);
  const std::size_t id_col = doc.require("user_id");
  std::array<std::size_t, kNumCategories> pref_cols{};
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    pref_cols[c] = doc.require(
        "pref_" + std::string(category_name(static_cast<Category>(c))));
  }
  std::array<std::size_t, 7> av_cols{};
  for (std::size_t a = 0; a < kAversionColumns.size(); ++a) {
    av_cols[a] = doc.require(kAversionColumns[a]);
  }

  std::vector<UserProfile> out;
  std::set<std::string, std::less<>> seen;
  for (const CsvRow& row : doc.rows) {
    UserProfile u;
    u.user_id = nonempty(row, id_col, "user_id");
    if (!seen.insert(u.user_id).second) {
      throw LoadError(fmt::format("line {}: duplicate user_id '{}'",
                                  row.line_no, u.user_id));
    }
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      const double p = number(row, pref_cols[c], doc.header[pref_cols[c]]);
      if (!is_valid_feature_value(p)) {
        throw LoadError(fmt::format("line {}: {} = {} outside {{0}} U [1,5]",
                                    row.line_no, doc.header[pref_cols[c]], p));
      }
      u.preferences[c] = p;
    }
    auto slots = aversion_slots(u.aversions);
    for (std::size_t a = 0; a < slots.size(); ++a) {
      const double v = number(row, av_cols[a], kAversionColumns[a]);
      if (!(v >= kVMin && v <= kVMax)) {
        throw LoadError(fmt::format("line {}: {} = {} outside [1,5]",
                                    row.line_no, kAversionColumns[a], v));
      }
      *slots[a] = v;
    }
    out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.user_id < b.user_id; });
  return out;
}

std::vector<UserProfile> load_users(const std::filesystem::path& path) {
  return with_path(path, [](std::string_view t) { return parse_users(t); });
}

std::vector<Rating> parse_ratings(std::string_view text,
                                  std::span<const UserProfile> users,
                                  std::span<const ItemProfile> items) {
  const CsvDocument doc = parse_csv(text);
  const std::size_t u_col = doc.require("user_id");
  const std::size_t i_col = doc.require("item_id");
  const std::size_t r_col = doc.require("rating");
  std::set<std::string, std::less<>> user_ids, item_ids;
  for (const auto& u : users) user_ids.insert(u.user_id);
  for (const auto& i : items) item_ids.insert(i.item_id);

  std::vector<Rating> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const CsvRow& row : doc.rows) {
    Rating r;
    r.user_id = nonempty(row, u_col, "user_id");
    r.item_id = nonempty(row, i_col, "item_id");
    const long long v = integer(row, r_col, "rating");
    if (v < 1 || v > 5) {
      throw LoadError(
          fmt::format("line {}: rating {} outside 1..5", row.line_no, v));
    }
    r.value = static_cast<int>(v);
    if (!user_ids.contains(r.user_id)) {
      throw LoadError(fmt::format("line {}: unknown user '{}'", row.line_no,
                                  r.user_id));
    }
    if (!item_ids.contains(r.item_id)) {
      throw LoadError(fmt::format("line {}: unknown item '{}'", row.line_no,
                                  r.item_id));
    }
    if (!seen.emplace(r.user_id, r.item_id).second) {
      throw LoadError(fmt::format("line {}: duplicate rating ({}, {})",
                                  row.line_no, r.user_id, r.item_id));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rating> load_ratings(const std::filesystem::path& path,
                                 std::span<const UserProfile> users,
                                 std::span<const ItemProfile> items) {
  return with_path(path, [&](std::string_view t) {
    return parse_ratings(t, users, items);
  });
}

void write_catalog(std::span<const ItemProfile> items, std::ostream& out) {
  out << "item_id,category\n";
  for (const auto& i : items) {
    out << internal::csv_field(i.item_id) << ',' << category_name(i.category)
        << '\n';
  }
}

void write_feature_table(const FeatureTable& table, std::ostream& out) {
  out << "item_id,feature,value,count\n";
  for (const auto& [id, vec] : table) {
    for (Feature f : kAllFeatures) {
      const FeatureEvidence& e = vec[index(f)];
      if (!e.known()) continue;
      out << fmt::format("{},{},{:.4f},{}\n", internal::csv_field(id),
                         feature_name(f), e.value, e.count);
    }
  }
}

void write_users(std::span<const UserProfile> users, std::ostream& out) {
  out << users_csv_header() << '\n';
  for (const auto& u : users) {
    out << internal::csv_field(u.user_id);
    for (double p : u.preferences) out << fmt::format(",{}", p);
    for (double a : aversion_values(u.aversions)) out << fmt::format(",{}", a);
    out << '\n';
  }
}

void write_ratings(std::span<const Rating> ratings, std::ostream& out) {
  out << "user_id,item_id,rating\n";
  for (const auto& r : ratings) {
    out << internal::csv_field(r.user_id) << ','
        << internal::csv_field(r.item_id) << ',' << r.value << '\n';
  }
}

FeatureTable to_feature_table(std::span<const ItemProfile> items) {
  FeatureTable t;
  for (const auto& i : items) {
    const bool any = std::any_of(i.features.begin(), i.features.end(),
                                 [](const auto& e) { return e.known(); });
    if (any) t[i.item_id] = i.features;
  }
  return t;
}

FeatureEvidence fuse_feature(FeatureEvidence a, FeatureEvidence b) {
  check_evidence(a);
  check_evidence(b);
  const int n = a.count + b.count;
  if (n == 0) return {};
  // A single known source passes through untouched.
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  const double v = (a.count * a.value + b.count * b.value) / n;
  return {v, n};
}

FeatureVector fuse_vectors(const FeatureVector& a, const FeatureVector& b) {
  FeatureVector out{};
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    out[f] = fuse_feature(a[f], b[f]);
  }
  return out;
}

FeatureTable fuse_tables(const FeatureTable& a, const FeatureTable& b,
                         FuseScope scope) {
  FeatureTable out;
  for (const auto& [id, va] : a) {
    auto it = b.find(id);
    if (it != b.end()) {
      out[id] = fuse_vectors(va, it->second);
    } else if (scope == FuseScope::kUnion) {
      out[id] = va;
    }
  }
  if (scope == FuseScope::kUnion) {
    for (const auto& [id, vb] : b) {
      if (!a.contains(id)) out[id] = vb;
    }
  }
  return out;
}

std::vector<ItemProfile> fuse_profiles(std::span<const ItemProfile> a,
                                       std::span<const ItemProfile> b,
                                       FuseScope scope) {
  std::map<std::string, const ItemProfile*, std::less<>> by_id_b;
  for (const auto& p : b) by_id_b[p.item_id] = &p;
  std::map<std::string, ItemProfile, std::less<>> out;
  for (const auto& pa : a) {
    auto it = by_id_b.find(pa.item_id);
    if (it == by_id_b.end()) {
      if (scope == FuseScope::kUnion) out[pa.item_id] = pa;
      continue;
    }
    const ItemProfile& pb = *it->second;
    if (pa.category != pb.category) {
      throw ValidationError(fmt::format(
          "item '{}' has category {} in one source and {} in the other",
          pa.item_id, category_name(pa.category), category_name(pb.category)));
    }
    ItemProfile fused = pa;
    fused.features = fuse_vectors(pa.features, pb.features);
    out[pa.item_id] = std::move(fused);
  }
  if (scope == FuseScope::kUnion) {
    for (const auto& pb : b) {
      if (!out.contains(pb.item_id)) out[pb.item_id] = pb;
    }
  }
  std::vector<ItemProfile> result;
  result.reserve(out.size());
  for (auto& [_, p] : out) result.push_back(std::move(p));
  return result;
}

std::array<SourceComparison, kNumFeatures> compare_sources(
    const FeatureTable& a, const FeatureTable& b) {
  std::array<SourceComparison, kNumFeatures> out{};
  for (Feature f : kAllFeatures) {
    std::vector<double> va, vb, dist;
    for (const auto& [id, vec_a] : a) {
      auto it = b.find(id);
      if (it == b.end()) continue;
      const FeatureEvidence& ea = vec_a[index(f)];
      const FeatureEvidence& eb = it->second[index(f)];
      if (!ea.known() || !eb.known()) continue;
      va.push_back(ea.value);
      vb.push_back(eb.value);
      dist.push_back(std::abs(ea.value - eb.value));
    }
    SourceComparison& c = out[index(f)];
    c.n = static_cast<int>(dist.size());
    if (dist.empty()) continue;
    const auto [lo, hi] = std::minmax_element(dist.begin(), dist.end());
    c.min_distance = *lo;
    c.max_distance = *hi;
    c.mean_distance = internal::mean(dist);
    c.sd_distance = internal::population_sd(dist);
    c.correlation = internal::pearson(va, vb);
    c.mean_difference = internal::mean(va) - internal::mean(vb);
  }
  return out;
}

}  // namespace sensoryrec
