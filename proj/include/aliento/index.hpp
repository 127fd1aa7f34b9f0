#ifndef ALIENTO_INDEX_HPP
#define ALIENTO_INDEX_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aliento/parser.hpp"
#include "aliento/posterity.hpp"
#include "aliento/similarity.hpp"

namespace aliento {

class UnknownFilterFieldError : public Error {
public:
  explicit UnknownFilterFieldError(std::string field)
      : Error("unknown filter field \"" + field + "\""), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

class UniquenessViolationError : public Error {
public:
  explicit UniquenessViolationError(DuplicateReport report);
  const DuplicateReport& report() const { return report_; }

private:
  DuplicateReport report_;
};

/// Parse failures over a whole corpus build, one message per file.
class IndexBuildError : public Error {
public:
  explicit IndexBuildError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
};

/// Plain `key = value` configuration. Recognized keys: threshold,
/// weight.keyword, weight.lesson, weight.lemma, weight.structure,
/// stoplist.<lang>, dictionary.<lang>, romanization.hebrew,
/// romanization.arabic, labels. Path values resolve relative to the
/// config file's directory.
struct CorpusConfig {
  SimilarityWeights weights;
  double threshold = 0.5;
  std::map<std::string, std::string> entries;

  /// Throws FormatError on malformed lines, unknown keys or bad values.
  static CorpusConfig parse_text(std::string_view content);
  static CorpusConfig from_entries(std::map<std::string, std::string> entries);
  static CorpusConfig load_file(const std::filesystem::path& path);

  /// Sorted `key = value` lines, the fingerprint's config component.
  std::string canonical_text() const;
};

/// Stoplists, label table, lemma dictionaries and romanization tables in
/// effect for a build: builtins overlaid with config-file overrides.
struct ResourceSet {
  StoplistRegistry stoplists;
  StructureLabelTable labels;
  std::map<std::string, LemmaDictionary> dictionaries;
  RomanizationTable hebrew{Script::Hebrew};
  RomanizationTable arabic{Script::Arabic};
  /// Resource source texts, canonically framed; hashed into the config
  /// fingerprint so table edits invalidate the index.
  std::string fingerprint_material;

  static ResourceSet builtins();
  static ResourceSet resolve(const CorpusConfig& config,
                             const std::filesystem::path& base_dir);

  const LemmaDictionary* dictionary(const LanguageCode& lang) const;
};

/// FNV-1a 64 over the canonical config text and resource material,
/// formatted as 16 hex digits.
std::string config_fingerprint(const CorpusConfig& config, const ResourceSet& resources);

/// One indexed unit: the container, its canonical markup, and every
/// derived artifact queries and similarity need.
struct UnitRecord {
  UnitContainer unit;
  std::string markup;
  UnitProfile profile;
  std::set<std::string> search_lemmas;
  std::string romanized;
};

struct BuildOptions {
  ParseMode mode = ParseMode::Lenient;
  bool allow_duplicates = false;
  /// Worker count for parsing/derivation; 0 picks hardware concurrency,
  /// 1 builds sequentially. Output bytes do not depend on this.
  unsigned jobs = 1;
  /// Base directory for relative resource paths in the config.
  std::filesystem::path config_base_dir = ".";
};

class CorpusIndex {
public:
  static constexpr std::string_view version = "1";

  std::map<std::string, std::string> config_entries;
  std::string fingerprint;
  std::map<std::string, WorkMetadata> works;
  std::vector<UnitRecord> units;
  /// Duplicate groups accepted under allow_duplicates; saved as a side
  /// artifact, not part of the index document.
  DuplicateReport duplicates;
  /// Build diagnostics (dating plausibility, works without metadata).
  /// Not persisted.
  std::vector<std::string> warnings;

  CorpusConfig config() const { return CorpusConfig::from_entries(config_entries); }
  const UnitRecord* find_unit(std::string_view id) const;

  /// Deterministic UTF-8 JSON document: identical content gives
  /// identical bytes.
  std::string to_json() const;
  static CorpusIndex from_json(std::string_view json_text);

  /// Atomic write (temp file + rename). A non-empty duplicate report
  /// lands next to the index as <path>.duplicates.json.
  void save(const std::filesystem::path& path) const;
  static CorpusIndex load(const std::filesystem::path& path);
};

/// Work metadata document: {"works": [{work_id, title, language,
/// year_from, year_to, area, author?, translator?, compiler?}]}.
/// area is "iberian-peninsula" or "outside:<label>".
std::map<std::string, WorkMetadata> parse_work_metadata(std::string_view json_text);
std::map<std::string, WorkMetadata> load_work_metadata(const std::filesystem::path& path);

/// Parse (mode per options), assign <file-stem>:<ordinal> unit ids,
/// check corpus uniqueness, derive per-unit artifacts. Sources are
/// processed in sorted path order regardless of the order given;
/// parallelism never changes the result.
CorpusIndex build_index(std::vector<std::filesystem::path> sources,
                        const std::filesystem::path& metadata_file, const CorpusConfig& config,
                        const BuildOptions& options = {});

/// Conjunctive filters over {keyword, lang, degree, work, from, to}.
/// keyword matches the unit's keyword sets and search lemmas; from/to
/// select units whose work dating intersects the range. Returns ids in
/// index order. Unknown fields throw UnknownFilterFieldError.
std::vector<std::string> query(const CorpusIndex& index,
                               const std::map<std::string, std::string>& filters);

} // namespace aliento

#endif
