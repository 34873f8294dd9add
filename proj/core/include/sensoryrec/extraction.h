#ifndef SENSORYREC_EXTRACTION_H_
#define SENSORYREC_EXTRACTION_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensoryrec/conllu.h"
#include "sensoryrec/feature.h"
#include "sensoryrec/lexicon.h"

namespace sensoryrec {

// One reference to a sensory feature found in a review sentence.
struct FeatureMention {
  Feature feature = Feature::kBrightness;
  double value = 0;  // [1,5]
  std::string item_id;
  std::string review_id;
  std::string word;
  std::optional<std::string> modifier;

  friend bool operator==(const FeatureMention&,
                         const FeatureMention&) = default;
};

// Per-item evidence: value is the mean of the mention values and count the
// number of mentions; (0, 0) when a feature was never mentioned.
struct ItemFeatureStats {
  std::string item_id;
  FeatureVector features{};

  friend bool operator==(const ItemFeatureStats&,
                         const ItemFeatureStats&) = default;
};

// Lemma used for lexicon lookups: the lowercase lemma, or the lowercase form
// when the lemma column is "_".
std::string lookup_key(const DepToken& token);

// The modifier in the proper subtree of `node` closest to it in tree
// distance; ties go to the smallest token id.
std::optional<ModifierEntry> select_modifier(const DepTree& tree, int node,
                                             const ModifierLexicon& modifiers);

// clamp(base + impact * direction, 1, 5), or base when there is no modifier.
double mention_value(const SensoryEntry& entry,
                     const ModifierEntry* modifier);

std::vector<FeatureMention> extract_mentions(const ReviewDoc& doc,
                                             const SensoryLexicon& sensory,
                                             const ModifierLexicon& modifiers);

// Groups mentions by item; result is sorted by item_id. The per-feature mean
// does not depend on the order of `mentions`.
std::vector<ItemFeatureStats> aggregate_item_features(
    std::span<const FeatureMention> mentions);

struct FeatureCountStats {
  double min = 0;
  double max = 0;
  double mean = 0;
  double sd = 0;  // population
  int coverage = 0;  // items with count > 0
};

using CorpusStats = std::array<FeatureCountStats, kNumFeatures>;

// Descriptive statistics of per-item evidence counts.
CorpusStats corpus_stats(std::span<const ItemFeatureStats> stats);

// `item_id,feature,value,count`, value with 4 decimals, only rows with
// count > 0, items in the given order and features in enum order.
void write_item_features_csv(std::span<const ItemFeatureStats> stats,
                             std::ostream& out);

}  // namespace sensoryrec

#endif  // SENSORYREC_EXTRACTION_H_
