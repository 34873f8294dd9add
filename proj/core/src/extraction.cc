#include "sensoryrec/extraction.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "stats.h"
#include "text.h"

namespace sensoryrec {

std::string lookup_key(const DepToken& token) {
  if (token.lemma.empty() || token.lemma == "_") {
    return internal::ascii_lower(token.form);
  }
  return internal::ascii_lower(token.lemma);
}

std::optional<ModifierEntry> select_modifier(const DepTree& tree, int node,
                                             const ModifierLexicon& modifiers) {
  // Breadth-first from the node, one depth level at a time; within a level
  // the smallest token id wins.
  std::vector<int> level = tree.children(node);
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    for (int id : level) {
      if (const ModifierEntry* m = modifiers.find(lookup_key(tree.token(id)))) {
        return *m;
      }
    }
    std::vector<int> next;
    for (int id : level) {
      const auto& ch = tree.children(id);
      next.insert(next.end(), ch.begin(), ch.end());
    }
    level = std::move(next);
  }
  return std::nullopt;
}

double mention_value(const SensoryEntry& entry,
                     const ModifierEntry* modifier) {
  if (modifier == nullptr) return entry.base;
  const double delta = static_cast<double>(modifier->impact * entry.direction);
  return std::clamp(entry.base + delta, kVMin, kVMax);
}

std::vector<FeatureMention> extract_mentions(const ReviewDoc& doc,
                                             const SensoryLexicon& sensory,
                                             const ModifierLexicon& modifiers) {
  std::vector<FeatureMention> out;
  for (const DepTree& tree : doc.sentences) {
    for (const DepToken& tok : tree.tokens()) {
      const SensoryEntry* entry = sensory.find(lookup_key(tok));
      if (entry == nullptr) continue;
      const auto mod = select_modifier(tree, tok.id, modifiers);
      FeatureMention m;
      m.feature = entry->feature;
      m.value = mention_value(*entry, mod ? &*mod : nullptr);
      m.item_id = doc.item_id;
      m.review_id = doc.review_id;
      m.word = entry->word;
      if (mod) m.modifier = mod->word;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<ItemFeatureStats> aggregate_item_features(
    std::span<const FeatureMention> mentions) {
  std::map<std::string, std::array<std::vector<double>, kNumFeatures>> grouped;
  for (const FeatureMention& m : mentions) {
    grouped[m.item_id][index(m.feature)].push_back(m.value);
  }
  std::vector<ItemFeatureStats> out;
  out.reserve(grouped.size());
  for (auto& [item, per_feature] : grouped) {
    ItemFeatureStats s;
    s.item_id = item;
    for (Feature f : kAllFeatures) {
      auto& values = per_feature[index(f)];
      if (values.empty()) continue;
      // Sorting fixes the summation order, so the mean is bit-identical under
      // any permutation of the input.
      std::sort(values.begin(), values.end());
      s.features[index(f)] = {internal::mean(values),
                              static_cast<int>(values.size())};
    }
    out.push_back(std::move(s));
  }
  return out;
}

CorpusStats corpus_stats(std::span<const ItemFeatureStats> stats) {
  CorpusStats out{};
  if (stats.empty()) return out;
  for (Feature f : kAllFeatures) {
    std::vector<double> counts;
    counts.reserve(stats.size());
    int coverage = 0;
    for (const auto& s : stats) {
      const int c = s.features[index(f)].count;
      counts.push_back(static_cast<double>(c));
      if (c > 0) ++coverage;
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    FeatureCountStats& r = out[index(f)];
    r.min = *lo;
    r.max = *hi;
    r.mean = internal::mean(counts);
    r.sd = internal::population_sd(counts);
    r.coverage = coverage;
  }
  return out;
}

void write_item_features_csv(std::span<const ItemFeatureStats> stats,
                             std::ostream& out) {
  out << "item_id,feature,value,count\n";
  for (const auto& s : stats) {
    for (Feature f : kAllFeatures) {
      const FeatureEvidence& e = s.features[index(f)];
      if (e.count <= 0) continue;
      out << fmt::format("{},{},{:.4f},{}\n", internal::csv_field(s.item_id),
                         feature_name(f), e.value, e.count);
    }
  }
}

}  // namespace sensoryrec
