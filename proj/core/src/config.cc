// Parser for the experiment key/value file (a small TOML subset: strings,
// numbers, booleans, single-line string arrays, one [sources] table).
#include <algorithm>
#include <cmath>
#include <set>
#include <variant>

#include <fmt/format.h>

#include "sensoryrec/error.h"
#include "sensoryrec/experiment.h"
#include "text.h"

namespace sensoryrec {
namespace {

using Value = std::variant<std::string, double, bool, std::vector<std::string>>;

[[noreturn]] void fail(std::size_t line_no, std::string_view what) {
  throw ParseError(fmt::format("line {}: {}", line_no, what));
}

// Removes a trailing '#' comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

// Parses a double-quoted string starting at s[pos]; advances pos past it.
std::string parse_string(std::string_view s, std::size_t& pos,
                         std::size_t line_no) {
  if (pos >= s.size() || s[pos] != '"') fail(line_no, "expected '\"'");
  std::string out;
  for (++pos; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\\' && pos + 1 < s.size()) {
      const char e = s[++pos];
      out.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
    } else {
      out.push_back(c);
    }
  }
  fail(line_no, "unterminated string");
}

Value parse_value(std::string_view s, std::size_t line_no) {
  s = internal::trim(s);
  if (s.empty()) fail(line_no, "missing value");
  if (s.front() == '"') {
    std::size_t pos = 0;
    std::string str = parse_string(s, pos, line_no);
    if (!internal::trim(s.substr(pos)).empty()) {
      fail(line_no, "unexpected text after string");
    }
    return str;
  }
  if (s.front() == '[') {
    if (s.back() != ']') fail(line_no, "arrays must close on the same line");
    std::vector<std::string> items;
    std::string_view body = internal::trim(s.substr(1, s.size() - 2));
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size()) break;
      items.push_back(parse_string(body, pos, line_no));
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos < body.size()) {
        if (body[pos] != ',') fail(line_no, "expected ',' between array items");
        ++pos;
      }
    }
    return items;
  }
  if (s == "true") return true;
  if (s == "false") return false;
  if (auto d = internal::parse_double(s)) return *d;
  fail(line_no, fmt::format("cannot parse value '{}'", s));
}

const std::string& as_string(const Value& v, std::string_view key,
                             std::size_t line_no) {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  fail(line_no, fmt::format("'{}' must be a string", key));
}

double as_number(const Value& v, std::string_view key, std::size_t line_no) {
  if (auto* d = std::get_if<double>(&v)) return *d;
  fail(line_no, fmt::format("'{}' must be a number", key));
}

long long as_integer(const Value& v, std::string_view key,
                     std::size_t line_no) {
  const double d = as_number(v, key, line_no);
  if (d != std::floor(d)) fail(line_no, fmt::format("'{}' must be an integer", key));
  return static_cast<long long>(d);
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::string section;
  std::set<std::string> seen_keys;
  bool have_items = false, have_users = false, have_ratings = false;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  const auto rows = internal::lines(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = internal::trim(strip_comment(rows[i]));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(internal::trim(line.substr(1, line.size() - 2)));
      if (section != "sources") {
        fail(line_no, fmt::format("unknown section [{}]", section));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(internal::trim(line.substr(0, eq)));
    if (key.empty()) fail(line_no, "empty key");
    const Value value = parse_value(line.substr(eq + 1), line_no);

    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!seen_keys.insert(qualified).second) {
      fail(line_no, fmt::format("duplicate key '{}'", qualified));
    }

    if (section == "sources") {
      cfg.sources.emplace_back(key, resolve(as_string(value, key, line_no)));
      continue;
    }

    ExperimentOptions& opt = cfg.options;
    if (key == "items") {
      cfg.items = resolve(as_string(value, key, line_no));
      have_items = true;
    } else if (key == "users") {
      cfg.users = resolve(as_string(value, key, line_no));
      have_users = true;
    } else if (key == "ratings") {
      cfg.ratings = resolve(as_string(value, key, line_no));
      have_ratings = true;
    } else if (key == "algorithms") {
      const auto* list = std::get_if<std::vector<std::string>>(&value);
      if (list == nullptr) fail(line_no, "'algorithms' must be a string array");
      opt.families.clear();
      for (const auto& name : *list) {
        const auto f = parse_family(name);
        if (!f) fail(line_no, fmt::format("unknown algorithm '{}'", name));
        opt.families.push_back(*f);
      }
    } else if (key == "measures") {
      const auto* list = std::get_if<std::vector<std::string>>(&value);
      if (list == nullptr) fail(line_no, "'measures' must be a string array");
      opt.measures.clear();
      for (const auto& name : *list) {
        const auto m = parse_measure(name);
        if (!m) fail(line_no, fmt::format("unknown measure '{}'", name));
        opt.measures.push_back(*m);
      }
    } else if (key == "grid_step") {
      opt.grid_step = as_number(value, key, line_no);
    } else if (key == "seed") {
      const long long s = as_integer(value, key, line_no);
      if (s < 0) fail(line_no, "'seed' must be non-negative");
      opt.seed = static_cast<std::uint64_t>(s);
    } else if (key == "folds") {
      opt.folds = static_cast<int>(as_integer(value, key, line_no));
    } else if (key == "k") {
      opt.k = static_cast<int>(as_integer(value, key, line_no));
    } else if (key == "threshold") {
      opt.threshold = as_number(value, key, line_no);
    } else if (key == "significance") {
      opt.significance = as_number(value, key, line_no);
    } else if (key == "item_scope") {
      const std::string& s = as_string(value, key, line_no);
      if (s == "all") {
        cfg.item_scope = ItemScope::kAll;
      } else if (s == "intersection") {
        cfg.item_scope = ItemScope::kIntersection;
      } else {
        fail(line_no, fmt::format("unknown item_scope '{}'", s));
      }
    } else if (key == "fuse") {
      const auto* b = std::get_if<bool>(&value);
      if (b == nullptr) fail(line_no, "'fuse' must be true or false");
      cfg.fuse = *b;
    } else {
      fail(line_no, fmt::format("unknown key '{}'", key));
    }
  }

  if (!have_items) throw ParseError("missing key 'items'");
  if (!have_users) throw ParseError("missing key 'users'");
  if (!have_ratings) throw ParseError("missing key 'ratings'");
  if (cfg.sources.empty()) throw ParseError("no feature table under [sources]");
  if (cfg.options.families.empty()) throw ParseError("empty algorithm list");
  if (cfg.options.measures.empty()) {
    const bool needs_measure =
        std::any_of(cfg.options.families.begin(), cfg.options.families.end(),
                    [](Family f) { return f != Family::kPrefOnly; });
    if (needs_measure) throw ParseError("empty measure list");
  }
  if (cfg.fuse && cfg.sources.size() < 2) {
    throw ParseError("'fuse = true' needs at least two sources");
  }
  if (cfg.fuse && cfg.item_scope != ItemScope::kIntersection) {
    throw ParseError("'fuse = true' requires item_scope = \"intersection\"");
  }
  if (cfg.options.folds < 2) throw ParseError("'folds' must be at least 2");
  if (cfg.options.k < 1) throw ParseError("'k' must be positive");
  try {
    (void)alpha_grid(cfg.options.grid_step);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  const std::string text = internal::read_file(path);
  try {
    return parse_experiment_config(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace sensoryrec
