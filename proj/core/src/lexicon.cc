#include "sensoryrec/lexicon.h"

#include <ostream>

#include <fmt/format.h>

#include "sensoryrec/error.h"
#include "text.h"

namespace sensoryrec {
namespace {

bool skippable(std::string_view line) {
  const std::string_view t = internal::trim(line);
  return t.empty() || t.front() == '#';
}

[[noreturn]] void fail(std::size_t line_no, std::string_view what) {
  throw LoadError(fmt::format("line {}: {}", line_no, what));
}

bool valid_impact(long long v) { return v == -2 || v == -1 || v == 1 || v == 2; }

}  // namespace

void SensoryLexicon::add(SensoryEntry entry) {
  entry.word = internal::ascii_lower(internal::trim(entry.word));
  if (entry.word.empty()) throw LoadError("empty word");
  if (!(entry.base >= kVMin && entry.base <= kVMax)) {
    throw LoadError("base out of range [1,5] for '" + entry.word + "'");
  }
  if (entry.direction != 1 && entry.direction != -1) {
    throw LoadError("direction must be -1 or 1 for '" + entry.word + "'");
  }
  std::string key = entry.word;
  if (!entries_.emplace(key, std::move(entry)).second) {
    throw LoadError("duplicate word '" + key + "'");
  }
}

const SensoryEntry* SensoryLexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

void ModifierLexicon::add(ModifierEntry entry) {
  entry.word = internal::ascii_lower(internal::trim(entry.word));
  if (entry.word.empty()) throw LoadError("empty word");
  if (!valid_impact(entry.impact)) {
    throw LoadError("impact out of range {-2,-1,1,2} for '" + entry.word +
                    "'");
  }
  std::string key = entry.word;
  if (!entries_.emplace(key, std::move(entry)).second) {
    throw LoadError("duplicate word '" + key + "'");
  }
}

const ModifierEntry* ModifierLexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

SensoryLexicon parse_sensory_lexicon(std::string_view text) {
  SensoryLexicon lex;
  const auto rows = internal::lines(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (skippable(rows[i])) continue;
    const auto cols = internal::split(rows[i], '\t');
    if (cols.size() != 4) {
      fail(line_no, fmt::format("expected 4 tab-separated columns, got {}",
                                cols.size()));
    }
    SensoryEntry e;
    e.word = internal::ascii_lower(internal::trim(cols[0]));
    if (e.word.empty()) fail(line_no, "empty word");
    const auto feature = parse_feature(cols[1]);
    if (!feature) {
      fail(line_no, fmt::format("unknown feature '{}'", internal::trim(cols[1])));
    }
    e.feature = *feature;
    const auto base = internal::parse_double(cols[2]);
    if (!base) fail(line_no, "base is not a number");
    if (!(*base >= kVMin && *base <= kVMax)) fail(line_no, "base out of range");
    e.base = *base;
    const auto dir = internal::parse_int(cols[3]);
    if (!dir || (*dir != 1 && *dir != -1)) {
      fail(line_no, "direction must be -1 or 1");
    }
    e.direction = static_cast<int>(*dir);
    if (lex.find(e.word) != nullptr) {
      fail(line_no, fmt::format("duplicate word '{}'", e.word));
    }
    lex.add(std::move(e));
  }
  return lex;
}

SensoryLexicon load_sensory_lexicon(const std::filesystem::path& path) {
  const std::string text = internal::read_file(path);
  try {
    return parse_sensory_lexicon(text);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

ModifierLexicon parse_modifier_lexicon(std::string_view text) {
  ModifierLexicon lex;
  const auto rows = internal::lines(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (skippable(rows[i])) continue;
    const auto cols = internal::split(rows[i], '\t');
    if (cols.size() != 2) {
      fail(line_no, fmt::format("expected 2 tab-separated columns, got {}",
                                cols.size()));
    }
    ModifierEntry e;
    e.word = internal::ascii_lower(internal::trim(cols[0]));
    if (e.word.empty()) fail(line_no, "empty word");
    const auto impact = internal::parse_int(cols[1]);
    if (!impact) fail(line_no, "impact is not an integer");
    if (!valid_impact(*impact)) fail(line_no, "impact out of range");
    e.impact = static_cast<int>(*impact);
    if (lex.find(e.word) != nullptr) {
      fail(line_no, fmt::format("duplicate word '{}'", e.word));
    }
    lex.add(std::move(e));
  }
  return lex;
}

ModifierLexicon load_modifier_lexicon(const std::filesystem::path& path) {
  const std::string text = internal::read_file(path);
  try {
    return parse_modifier_lexicon(text);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void write_sensory_lexicon(const SensoryLexicon& lex, std::ostream& out) {
  out << "# word\tfeature\tbase\tdirection\n";
  for (const auto& [word, e] : lex.entries()) {
    out << fmt::format("{}\t{}\t{}\t{}\n", word, feature_name(e.feature),
                       e.base, e.direction);
  }
}

void write_modifier_lexicon(const ModifierLexicon& lex, std::ostream& out) {
  out << "# word\timpact\n";
  for (const auto& [word, e] : lex.entries()) {
    out << fmt::format("{}\t{}\n", word, e.impact);
  }
}

void check_disjoint(const SensoryLexicon& sensory,
                    const ModifierLexicon& modifiers) {
  for (const auto& [word, _] : modifiers.entries()) {
    if (sensory.find(word) != nullptr) {
      throw LoadError("word '" + word +
                      "' appears in both the sensory and modifier lexicons");
    }
  }
}

}  // namespace sensoryrec
