#include "aliento/posterity.hpp"

#include <algorithm>
#include <set>

namespace aliento {

void validate(const WorkMetadata& work) {
  if (work.work_id.empty()) throw Error("work metadata without work_id");
  if (work.dating.from > work.dating.to)
    throw Error("work \"" + work.work_id + "\": dating interval [" +
                std::to_string(work.dating.from) + ", " + std::to_string(work.dating.to) +
                "] is reversed");
}

std::vector<std::string> plausibility_warnings(const WorkMetadata& work) {
  std::vector<std::string> warnings;
  if (work.dating.from < 600)
    warnings.push_back("work \"" + work.work_id + "\" starts before 600 CE (" +
                       std::to_string(work.dating.from) + ")");
  if (work.dating.to > 1700)
    warnings.push_back("work \"" + work.work_id + "\" ends after 1700 CE (" +
                       std::to_string(work.dating.to) + ")");
  return warnings;
}

std::optional<Strictness> strictness_from_name(std::string_view name) {
  if (name == "strict") return Strictness::Strict;
  if (name == "overlap-ok") return Strictness::OverlapOk;
  return std::nullopt;
}

std::string_view strictness_name(Strictness strictness) {
  return strictness == Strictness::Strict ? "strict" : "overlap-ok";
}

bool precedes(const WorkMetadata& w1, const WorkMetadata& w2, Strictness strictness) {
  if (strictness == Strictness::Strict) return w1.dating.to < w2.dating.from;
  return w1.dating.from < w2.dating.from;
}

std::vector<PosterityEdge> posterity_edges(std::span<const ProfiledUnit> units,
                                           const std::map<std::string, WorkMetadata>& metadata,
                                           double threshold, Strictness strictness,
                                           const SimilarityWeights& weights) {
  validate(weights);

  std::vector<const WorkMetadata*> works(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto it = metadata.find(units[i].work);
    if (units[i].work.empty() || it == metadata.end())
      throw MissingMetadataError(units[i].id);
    works[i] = &it->second;
  }

  std::vector<PosterityEdge> edges;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      bool i_first = precedes(*works[i], *works[j], strictness);
      bool j_first = precedes(*works[j], *works[i], strictness);
      if (!i_first && !j_first) continue;
      SimilarityScore score = aggregate_similarity(units[i].profile, units[j].profile, weights);
      if (score.aggregate < threshold) continue;
      std::size_t from = i_first ? i : j;
      std::size_t to = i_first ? j : i;
      int gap = works[to]->dating.from - works[from]->dating.to;
      edges.push_back({units[from].id, units[to].id, std::move(score), std::max(0, gap)});
    }
  }

  std::sort(edges.begin(), edges.end(), [](const PosterityEdge& a, const PosterityEdge& b) {
    if (a.from_id != b.from_id) return a.from_id < b.from_id;
    return a.to_id < b.to_id;
  });
  return edges;
}

std::vector<PosterityEdge> posterity_edges(std::span<const UnitContainer> units,
                                           const std::map<std::string, WorkMetadata>& metadata,
                                           double threshold, Strictness strictness,
                                           const SimilarityWeights& weights) {
  std::vector<ProfiledUnit> profiled = profile_units(units);
  return posterity_edges(profiled, metadata, threshold, strictness, weights);
}

std::vector<std::vector<std::string>> transmission_chains(
    std::span<const PosterityEdge> edges, std::string_view seed, std::size_t max_depth,
    std::optional<std::span<const std::string>> universe) {
  std::map<std::string, std::set<std::string>> adjacency;
  std::set<std::string> nodes;
  for (const PosterityEdge& edge : edges) {
    adjacency[edge.from_id].insert(edge.to_id);
    nodes.insert(edge.from_id);
    nodes.insert(edge.to_id);
  }

  std::string start(seed);
  if (universe) {
    if (std::find(universe->begin(), universe->end(), start) == universe->end())
      throw UnknownSeedError(start);
  } else if (nodes.find(start) == nodes.end()) {
    throw UnknownSeedError(start);
  }

  std::vector<std::vector<std::string>> paths;
  std::vector<std::string> path{start};
  std::set<std::string> on_path{start};

  // Sorted adjacency plus prefix-first recording yields lexicographic
  // output without a final sort.
  auto walk = [&](auto&& self) -> void {
    if (path.size() > max_depth) return;
    auto it = adjacency.find(path.back());
    if (it == adjacency.end()) return;
    for (const std::string& next : it->second) {
      if (on_path.count(next)) continue;
      path.push_back(next);
      on_path.insert(next);
      paths.push_back(path);
      self(self);
      on_path.erase(next);
      path.pop_back();
    }
  };
  walk(walk);
  return paths;
}

} // namespace aliento
