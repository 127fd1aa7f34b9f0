#ifndef ALIENTO_STRUCTURE_HPP
#define ALIENTO_STRUCTURE_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aliento/annotation.hpp"

namespace aliento {

class PoeticFormatError : public Error {
public:
  using Error::Error;
};

/// Parsed str.poet descriptor ("8 / 8 ass a/o"): syllable counts per
/// hemistich plus an optional assonance marker. raw always keeps the
/// original text.
struct PoeticStructure {
  std::vector<int> syllable_counts;
  std::optional<std::string> assonance;
  std::string raw;

  bool operator==(const PoeticStructure&) const = default;
};

enum class FormalKind {
  BinaryParallelism,
  Dialogue,
  Imperative,
  Conditional,
  Comparative,
  Other,
};

std::string_view formal_kind_slug(FormalKind kind);
std::optional<FormalKind> formal_kind_from_slug(std::string_view slug);

/// Parsed str.form descriptor. oppositions only populate for binary
/// parallelism; other_label keeps the annotator's label when the kind is
/// not in the table.
struct FormalStructure {
  FormalKind kind = FormalKind::Other;
  std::string other_label;
  std::vector<std::pair<std::string, std::string>> oppositions;
  std::string raw;

  bool operator==(const FormalStructure&) const = default;
};

/// One constituent symbol of a str.ling pattern. opposition holds the
/// target number of an "opp à N" marker.
struct LinguisticSymbol {
  std::string name;
  std::optional<int> opposition;

  bool operator==(const LinguisticSymbol&) const = default;
};

struct LinguisticStructure {
  std::vector<std::vector<LinguisticSymbol>> hemistichs;
  std::string raw;

  std::size_t symbol_count() const;
  std::size_t opposition_count() const;

  bool operator==(const LinguisticStructure&) const = default;
};

/// Annotator label -> formal kind, looked up on the canonicalized label.
class StructureLabelTable {
public:
  void add(std::string_view label, FormalKind kind);
  std::optional<FormalKind> find(std::string_view label) const;
  std::size_t size() const { return labels_.size(); }

  /// TSV: label<TAB>kind-slug; '#' lines and blank lines ignored.
  static StructureLabelTable parse(std::string_view content);
  static StructureLabelTable load(std::istream& source);

private:
  std::map<std::string, FormalKind> labels_;
};

const StructureLabelTable& builtin_structure_labels();

/// Counts split on "/"; an "ass" token introduces the assonance marker.
/// Strict mode throws PoeticFormatError when no leading count is found
/// or a count is < 1; lenient mode falls back to raw-only.
PoeticStructure parse_poetic(std::string_view text, ParseMode mode = ParseMode::Strict);

/// Label before the first ':' looked up in the table (with prefix rules
/// for "si…" conditionals and "quanto/cuanto…" comparatives); "a/b"
/// pairs after the colon become oppositions for binary parallelism.
/// Unrecognized labels come back as Other with the label preserved.
FormalStructure parse_formal(std::string_view text,
                             const StructureLabelTable& labels = builtin_structure_labels());

/// Hemistichs split on "/", symbols on whitespace, "opp à N" markers
/// attached to the preceding symbol. Uninterpretable tokens stay opaque.
LinguisticStructure parse_linguistic(std::string_view text);

/// Flat comparable features from a container's structure descriptors:
/// form:<kind>, hemistichs:<n>, syllables:<c1-c2-...>, assonance:<a>,
/// opp-count:<n>. Poetic counts win over linguistic hemistich counts;
/// formal oppositions win over linguistic opposition links. Absent
/// descriptors contribute nothing.
std::set<std::string> structure_features(
    const UnitContainer& container,
    const StructureLabelTable& labels = builtin_structure_labels());

} // namespace aliento

#endif
