#include "aliento/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aliento {

namespace {

/// Mean Jaccard over the languages present in both maps, optionally
/// restricted to interrogation languages. nullopt when none is shared.
std::optional<double> mean_jaccard(const std::map<std::string, std::set<std::string>>& a,
                                   const std::map<std::string, std::set<std::string>>& b,
                                   bool interrogation_only) {
  double sum = 0.0;
  std::size_t shared = 0;
  for (const auto& [lang, set_a] : a) {
    if (interrogation_only) {
      auto code = LanguageCode::from_tag(lang);
      if (!code || !code->interrogation()) continue;
    }
    auto it = b.find(lang);
    if (it == b.end()) continue;
    sum += jaccard(set_a, it->second);
    ++shared;
  }
  if (shared == 0) return std::nullopt;
  return sum / static_cast<double>(shared);
}

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

void validate(const SimilarityWeights& weights) {
  for (double w : {weights.keyword, weights.lesson, weights.lemma, weights.structure}) {
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidWeightsError("weights must be finite and non-negative");
  }
  if (weights.keyword == 0.0 && weights.lesson == 0.0 && weights.lemma == 0.0 &&
      weights.structure == 0.0)
    throw InvalidWeightsError("at least one weight must be positive");
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const std::string& item : a)
    if (b.find(item) != b.end()) ++intersection;
  std::size_t unions = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

UnitProfile UnitProfile::of(const UnitContainer& container, const StoplistRegistry& stoplists,
                            const StructureLabelTable& labels) {
  UnitProfile profile;
  for (const Entity& entity : container.entities()) {
    if (!entity.lang()) continue;
    const std::string& tag = entity.lang()->tag();
    switch (entity.root()) {
    case EntityRoot::Keywords:
      profile.keywords[tag] = keyword_set(entity.body());
      break;
    case EntityRoot::Lesson:
      if (entity.lang()->interrogation())
        profile.lessons[tag] = lesson_tokens(entity.body(), *entity.lang(), stoplists);
      break;
    case EntityRoot::Lemmas: {
      std::vector<std::string> tokens = tokenize(entity.body(), *entity.lang());
      profile.lemmas[tag] = std::set<std::string>(tokens.begin(), tokens.end());
      break;
    }
    default:
      break;
    }
  }
  profile.features = structure_features(container, labels);
  return profile;
}

std::optional<double> keyword_similarity(const UnitProfile& a, const UnitProfile& b) {
  return mean_jaccard(a.keywords, b.keywords, /*interrogation_only=*/true);
}

std::optional<double> lesson_similarity(const UnitProfile& a, const UnitProfile& b) {
  return mean_jaccard(a.lessons, b.lessons, /*interrogation_only=*/true);
}

std::optional<double> lemma_similarity(const UnitProfile& a, const UnitProfile& b) {
  return mean_jaccard(a.lemmas, b.lemmas, /*interrogation_only=*/false);
}

std::optional<double> structure_similarity(const UnitProfile& a, const UnitProfile& b) {
  if (a.features.empty() || b.features.empty()) return std::nullopt;
  return jaccard(a.features, b.features);
}

std::optional<double> keyword_similarity(const UnitContainer& a, const UnitContainer& b) {
  return keyword_similarity(UnitProfile::of(a), UnitProfile::of(b));
}

std::optional<double> lesson_similarity(const UnitContainer& a, const UnitContainer& b) {
  return lesson_similarity(UnitProfile::of(a), UnitProfile::of(b));
}

std::optional<double> lemma_similarity(const UnitContainer& a, const UnitContainer& b) {
  return lemma_similarity(UnitProfile::of(a), UnitProfile::of(b));
}

std::optional<double> structure_similarity(const UnitContainer& a, const UnitContainer& b) {
  return structure_similarity(UnitProfile::of(a), UnitProfile::of(b));
}

SimilarityScore aggregate_similarity(const UnitProfile& a, const UnitProfile& b,
                                     const SimilarityWeights& weights) {
  validate(weights);

  SimilarityScore score;
  score.keyword = keyword_similarity(a, b);
  score.lesson = lesson_similarity(a, b);
  score.lemma = lemma_similarity(a, b);
  score.structure = structure_similarity(a, b);

  struct Component {
    const char* name;
    const std::optional<double>& value;
    double weight;
  };
  const Component components[] = {
      {"keyword", score.keyword, weights.keyword},
      {"lesson", score.lesson, weights.lesson},
      {"lemma", score.lemma, weights.lemma},
      {"structure", score.structure, weights.structure},
  };

  double weight_sum = 0.0;
  double weighted = 0.0;
  for (const Component& c : components) {
    if (!c.value || c.weight <= 0.0) continue;
    weight_sum += c.weight;
    weighted += c.weight * *c.value;
  }
  if (weight_sum == 0.0) return score; // aggregate 0, weights_used empty

  score.aggregate = weighted / weight_sum;
  for (const Component& c : components)
    if (c.value && c.weight > 0.0) score.weights_used[c.name] = c.weight / weight_sum;
  return score;
}

SimilarityScore aggregate_similarity(const UnitContainer& a, const UnitContainer& b,
                                     const SimilarityWeights& weights) {
  return aggregate_similarity(UnitProfile::of(a), UnitProfile::of(b), weights);
}

std::vector<std::vector<std::string>> cluster(std::span<const ProfiledUnit> units,
                                              double threshold,
                                              const SimilarityWeights& weights) {
  validate(weights);
  const std::size_t n = units.size();
  UnionFind components(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (aggregate_similarity(units[i].profile, units[j].profile, weights).aggregate >=
          threshold)
        components.unite(i, j);

  std::map<std::size_t, std::vector<std::string>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[components.find(i)].push_back(units[i].id);

  std::vector<std::vector<std::string>> clusters;
  clusters.reserve(by_root.size());
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

std::vector<ProfiledUnit> profile_units(std::span<const UnitContainer> units,
                                        const StoplistRegistry& stoplists,
                                        const StructureLabelTable& labels) {
  std::vector<ProfiledUnit> out;
  out.reserve(units.size());
  for (const UnitContainer& unit : units)
    out.push_back({unit.id(), unit.work_ref().value_or(""),
                   UnitProfile::of(unit, stoplists, labels)});
  return out;
}

std::vector<std::vector<std::string>> cluster(std::span<const UnitContainer> units,
                                              double threshold,
                                              const SimilarityWeights& weights) {
  std::vector<ProfiledUnit> profiled = profile_units(units);
  return cluster(profiled, threshold, weights);
}

} // namespace aliento
