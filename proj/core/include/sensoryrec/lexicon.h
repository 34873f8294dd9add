#ifndef SENSORYREC_LEXICON_H_
#define SENSORYREC_LEXICON_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "sensoryrec/feature.h"

namespace sensoryrec {

// A word that names a sensory feature, its default position on the scale and
// the direction a grade modifier pushes it.
struct SensoryEntry {
  std::string word;  // lowercase lemma
  Feature feature = Feature::kBrightness;
  double base = 3.0;   // [1,5]
  int direction = 1;   // -1 or +1

  friend bool operator==(const SensoryEntry&, const SensoryEntry&) = default;
};

// A grade modifier ("tanto", "poco") and its signed strength.
struct ModifierEntry {
  std::string word;  // lowercase lemma
  int impact = 1;    // one of -2, -1, 1, 2

  friend bool operator==(const ModifierEntry&, const ModifierEntry&) = default;
};

// Immutable after load. Lookups are exact on the lowercase lemma.
class SensoryLexicon {
 public:
  SensoryLexicon() = default;

  // Throws LoadError on an invalid or duplicate entry.
  void add(SensoryEntry entry);

  const SensoryEntry* find(std::string_view lemma) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, SensoryEntry, std::less<>>& entries() const {
    return entries_;
  }

  friend bool operator==(const SensoryLexicon&,
                         const SensoryLexicon&) = default;

 private:
  std::map<std::string, SensoryEntry, std::less<>> entries_;
};

class ModifierLexicon {
 public:
  ModifierLexicon() = default;

  void add(ModifierEntry entry);

  const ModifierEntry* find(std::string_view lemma) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, ModifierEntry, std::less<>>& entries() const {
    return entries_;
  }

  friend bool operator==(const ModifierLexicon&,
                         const ModifierLexicon&) = default;

 private:
  std::map<std::string, ModifierEntry, std::less<>> entries_;
};

// TSV `word<TAB>feature<TAB>base<TAB>direction`; blank lines and lines
// starting with '#' are ignored. Errors carry the 1-based line number.
SensoryLexicon parse_sensory_lexicon(std::string_view text);
SensoryLexicon load_sensory_lexicon(const std::filesystem::path& path);

// TSV `word<TAB>impact`.
ModifierLexicon parse_modifier_lexicon(std::string_view text);
ModifierLexicon load_modifier_lexicon(const std::filesystem::path& path);

void write_sensory_lexicon(const SensoryLexicon& lex, std::ostream& out);
void write_modifier_lexicon(const ModifierLexicon& lex, std::ostream& out);

// Throws LoadError if a word appears in both dictionaries.
void check_disjoint(const SensoryLexicon& sensory,
                    const ModifierLexicon& modifiers);

}  // namespace sensoryrec

#endif  // SENSORYREC_LEXICON_H_
