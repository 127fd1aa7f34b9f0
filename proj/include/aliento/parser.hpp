#ifndef ALIENTO_PARSER_HPP
#define ALIENTO_PARSER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aliento/annotation.hpp"

namespace aliento {

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, std::string expected);

  /// 1-based position of the offending byte in the source.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

/// Untagged text between elements. Kept so that a document's segments
/// cover the whole source.
struct PlainSegment {
  std::string text;
};

/// Narrative material set aside by a segmentation tag.
struct NarrativeSegment {
  SegmentationKind kind;
  std::string text;
};

/// Lenient-mode element with a tag outside the schema; body kept verbatim.
struct OpaqueSegment {
  std::string tag;
  std::string text;
};

struct UnitSegment {
  UnitContainer unit;
};

/// One document slice. `raw` is the exact source span the segment was
/// read from; concatenating raw over a document reproduces the input.
struct Segment {
  std::variant<PlainSegment, NarrativeSegment, OpaqueSegment, UnitSegment> value;
  std::string raw;
};

class AnnotatedDocument {
public:
  explicit AnnotatedDocument(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  std::span<const Segment> segments() const { return segments_; }
  std::span<Segment> segments() { return segments_; }

  /// Unit containers in document order.
  std::vector<const UnitContainer*> units() const;
  std::vector<UnitContainer*> units();

private:
  std::vector<Segment> segments_;
};

/// Parse a whole source document. Strict mode accepts the canonical
/// grammar only; lenient mode additionally accepts legacy proverbiality
/// elements (<pr?>, <pr.est>) and keeps elements with unknown tags as
/// opaque segments (or extension entities inside containers).
AnnotatedDocument parse_document(std::string_view markup, ParseMode mode = ParseMode::Lenient);

/// Parse a standalone <pr.all> element.
UnitContainer parse_container(std::string_view fragment, ParseMode mode = ParseMode::Lenient);

/// Canonical form: open tag, one entity per line (two-space indent, text
/// escaped, degree attribute on pr when not candidate), close tag.
/// parse_container(serialize_container(c)) == c, and serializing again is
/// byte-identical.
std::string serialize_container(const UnitContainer& container);

struct DuplicateGroup {
  std::string key;                   // canonicalized unit text
  std::vector<std::string> unit_ids; // ≥ 2, sorted
  bool operator==(const DuplicateGroup&) const = default;
};

/// Empty report certifies uniqueness of every unit text in the corpus.
struct DuplicateReport {
  std::vector<DuplicateGroup> groups;
  bool clean() const { return groups.empty(); }
};

/// Groups units whose unit_text collides after NFC, lowercasing and
/// whitespace collapse. Units without an id are reported as "#<index>".
DuplicateReport validate_corpus_uniqueness(std::span<const UnitContainer> units);
DuplicateReport validate_corpus_uniqueness(std::span<const UnitContainer* const> units);

} // namespace aliento

#endif
