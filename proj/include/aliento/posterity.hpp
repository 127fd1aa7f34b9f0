#ifndef ALIENTO_POSTERITY_HPP
#define ALIENTO_POSTERITY_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aliento/similarity.hpp"

namespace aliento {

class MissingMetadataError : public Error {
public:
  explicit MissingMetadataError(std::string unit_id)
      : Error("no work metadata for unit \"" + unit_id + "\""), unit_id_(std::move(unit_id)) {}
  const std::string& unit_id() const { return unit_id_; }

private:
  std::string unit_id_;
};

class UnknownSeedError : public Error {
public:
  explicit UnknownSeedError(std::string seed)
      : Error("unknown seed unit \"" + seed + "\""), seed_(std::move(seed)) {}
  const std::string& seed() const { return seed_; }

private:
  std::string seed_;
};

/// CE year interval, from ≤ to. Century datings ingest as full spans
/// ([1200, 1299] for the XIIIth century).
struct YearInterval {
  int from = 0;
  int to = 0;

  bool operator==(const YearInterval&) const = default;
};

/// Provenance relative to the Iberian Peninsula.
struct Area {
  static Area iberian_peninsula() { return Area{true, ""}; }
  static Area outside(std::string label) { return Area{false, std::move(label)}; }

  bool iberian = true;
  std::string label; // set for outside()

  bool operator==(const Area&) const = default;
};

struct WorkMetadata {
  std::string work_id;
  std::string title;
  LanguageCode language = LanguageCode::es();
  YearInterval dating;
  Area area = Area::iberian_peninsula();
  std::optional<std::string> author;
  std::optional<std::string> translator;
  std::optional<std::string> compiler;
};

/// Throws Error when year_from > year_to or work_id is empty.
void validate(const WorkMetadata& work);

/// Non-fatal notes: datings outside [600, 1700] are suspicious for this
/// corpus but not impossible.
std::vector<std::string> plausibility_warnings(const WorkMetadata& work);

enum class Strictness { Strict, OverlapOk };
std::optional<Strictness> strictness_from_name(std::string_view name);
std::string_view strictness_name(Strictness strictness);

/// Strict: w1 ends before w2 begins. OverlapOk: w1 begins first; equal
/// starts never precede.
bool precedes(const WorkMetadata& w1, const WorkMetadata& w2, Strictness strictness);

struct PosterityEdge {
  std::string from_id;
  std::string to_id;
  SimilarityScore score;
  /// Years between the source work's end and the target work's start;
  /// clamped to 0 for overlapping datings in overlap-ok mode.
  int gap_years = 0;
};

/// All ordered unit pairs whose works are in precedence and whose
/// aggregate similarity reaches the threshold, sorted by (from, to).
/// Every unit's work must resolve in metadata.
std::vector<PosterityEdge> posterity_edges(std::span<const ProfiledUnit> units,
                                           const std::map<std::string, WorkMetadata>& metadata,
                                           double threshold, Strictness strictness,
                                           const SimilarityWeights& weights = {});
std::vector<PosterityEdge> posterity_edges(std::span<const UnitContainer> units,
                                           const std::map<std::string, WorkMetadata>& metadata,
                                           double threshold, Strictness strictness,
                                           const SimilarityWeights& weights = {});

/// All simple directed paths from seed with 1..max_depth edges, in
/// lexicographic order. The seed must be a known unit when `universe`
/// is given, otherwise an endpoint of some edge.
std::vector<std::vector<std::string>> transmission_chains(
    std::span<const PosterityEdge> edges, std::string_view seed, std::size_t max_depth,
    std::optional<std::span<const std::string>> universe = std::nullopt);

} // namespace aliento

#endif
