#ifndef ALIENTO_SIMILARITY_HPP
#define ALIENTO_SIMILARITY_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aliento/annotation.hpp"
#include "aliento/normalize.hpp"
#include "aliento/structure.hpp"

namespace aliento {

class InvalidWeightsError : public Error {
public:
  using Error::Error;
};

/// Component weights for the aggregate score. Must be non-negative with
/// at least one positive.
struct SimilarityWeights {
  double keyword = 0.4;
  double lesson = 0.3;
  double lemma = 0.2;
  double structure = 0.1;

  bool operator==(const SimilarityWeights&) const = default;
};

/// Throws InvalidWeightsError on negative, non-finite or all-zero
/// weights.
void validate(const SimilarityWeights& weights);

/// |a ∩ b| / |a ∪ b|; two empty sets compare equal (1.0).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct SimilarityScore {
  std::optional<double> keyword;
  std::optional<double> lesson;
  std::optional<double> lemma;
  std::optional<double> structure;
  double aggregate = 0.0;
  /// Renormalized weight actually applied per available component
  /// (sums to 1); empty when no component was available.
  std::map<std::string, double> weights_used;
};

/// The comparable token sets derived from one container: keyword /
/// lesson / lemma sets per language tag, plus structure features.
struct UnitProfile {
  std::map<std::string, std::set<std::string>> keywords;
  std::map<std::string, std::set<std::string>> lessons;
  std::map<std::string, std::set<std::string>> lemmas;
  std::set<std::string> features;

  static UnitProfile of(const UnitContainer& container,
                        const StoplistRegistry& stoplists = builtin_stoplists(),
                        const StructureLabelTable& labels = builtin_structure_labels());
};

/// Component scores. Keyword and lesson pivot through the interrogation
/// languages carried by both profiles; lemma compares shared lemma
/// languages; structure compares feature sets. Each is absent when the
/// inputs share no comparable material.
std::optional<double> keyword_similarity(const UnitProfile& a, const UnitProfile& b);
std::optional<double> lesson_similarity(const UnitProfile& a, const UnitProfile& b);
std::optional<double> lemma_similarity(const UnitProfile& a, const UnitProfile& b);
std::optional<double> structure_similarity(const UnitProfile& a, const UnitProfile& b);

std::optional<double> keyword_similarity(const UnitContainer& a, const UnitContainer& b);
std::optional<double> lesson_similarity(const UnitContainer& a, const UnitContainer& b);
std::optional<double> lemma_similarity(const UnitContainer& a, const UnitContainer& b);
std::optional<double> structure_similarity(const UnitContainer& a, const UnitContainer& b);

/// Weighted mean over the available components with positive weight,
/// renormalized so their weights sum to 1. No available component gives
/// aggregate 0 with empty weights_used.
SimilarityScore aggregate_similarity(const UnitProfile& a, const UnitProfile& b,
                                     const SimilarityWeights& weights = {});
SimilarityScore aggregate_similarity(const UnitContainer& a, const UnitContainer& b,
                                     const SimilarityWeights& weights = {});

/// A unit reduced to what clustering and posterity need.
struct ProfiledUnit {
  std::string id;
  std::string work;
  UnitProfile profile;
};

/// Single-linkage clusters of the thresholded aggregate-similarity
/// graph: two units share a cluster iff a chain of pairwise scores
/// ≥ threshold connects them. Members sort by id, clusters by smallest
/// member id.
std::vector<std::vector<std::string>> cluster(std::span<const ProfiledUnit> units,
                                              double threshold,
                                              const SimilarityWeights& weights = {});
std::vector<std::vector<std::string>> cluster(std::span<const UnitContainer> units,
                                              double threshold,
                                              const SimilarityWeights& weights = {});

/// Containers to profiled units, using each container's id.
std::vector<ProfiledUnit> profile_units(std::span<const UnitContainer> units,
                                        const StoplistRegistry& stoplists = builtin_stoplists(),
                                        const StructureLabelTable& labels =
                                            builtin_structure_labels());

} // namespace aliento

#endif
