#include "aliento/parser.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace aliento {

namespace {

/// Decode the three supported entity references. Anything else after '&'
/// is kept literally; escaping is only mandatory for markup delimiters.
std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    if (raw[i] == '&') {
      if (raw.substr(i, 4) == "&lt;") {
        out += '<';
        i += 4;
        continue;
      }
      if (raw.substr(i, 4) == "&gt;") {
        out += '>';
        i += 4;
        continue;
      }
      if (raw.substr(i, 5) == "&amp;") {
        out += '&';
        i += 5;
        continue;
      }
    }
    out += raw[i];
    ++i;
  }
  return out;
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    default: out += c;
    }
  }
  return out;
}

bool tag_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '?';
}

bool ascii_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

struct OpenTag {
  std::string name;
  std::optional<ProverbialityDegree> degree; // from the degree attribute
  std::size_t start = 0;                     // offset of '<'
  std::size_t end = 0;                       // offset just past '>'
};

class Parser {
public:
  Parser(std::string_view src, ParseMode mode) : src_(src), mode_(mode) {}

  AnnotatedDocument document() {
    std::vector<Segment> segments;
    while (pos_ < src_.size()) {
      if (src_[pos_] != '<') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '<') ++pos_;
        std::string_view raw = src_.substr(start, pos_ - start);
        segments.push_back({PlainSegment{decode_entities(raw)}, std::string(raw)});
        continue;
      }
      if (src_.substr(pos_, 2) == "</") fail(pos_, "element start, not a close tag");
      segments.push_back(element());
    }
    return AnnotatedDocument(std::move(segments));
  }

  UnitContainer fragment_container() {
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != '<') fail(pos_, "<pr.all>");
    OpenTag tag = open_tag(/*allow_degree=*/false);
    if (!std::holds_alternative<ContainerOpenTag>(classify(tag)))
      fail(tag.start, "<pr.all>");
    UnitContainer unit = container_body();
    skip_space();
    if (pos_ != src_.size()) fail(pos_, "end of fragment after </pr.all>");
    return unit;
  }

private:
  [[noreturn]] void fail(std::size_t at, std::string expected) const {
    std::size_t line = 1, last_nl = 0;
    bool seen_nl = false;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        last_nl = i;
        seen_nl = true;
      }
    }
    std::size_t column = (seen_nl ? at - last_nl : at + 1);
    throw ParseError(line, column, std::move(expected));
  }

  TagKind classify(const OpenTag& tag) const {
    try {
      return classify_tag(tag.name, mode_);
    } catch (const UnknownTagError&) {
      // Re-raise with the tag's position; strict mode only, lenient
      // classification never throws.
      fail(tag.start, "known tag, got <" + tag.name + ">");
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && ascii_space(src_[pos_])) ++pos_;
  }

  /// Parse "<name>" or "<pr degree=\"...\">" starting at pos_ == '<'.
  OpenTag open_tag(bool allow_degree) {
    OpenTag tag;
    tag.start = pos_;
    ++pos_; // '<'
    std::size_t name_start = pos_;
    while (pos_ < src_.size() && tag_name_char(src_[pos_])) ++pos_;
    if (pos_ == name_start) fail(pos_, "tag name");
    tag.name = std::string(src_.substr(name_start, pos_ - name_start));

    while (pos_ < src_.size() && ascii_space(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] != '>') {
      if (!allow_degree || tag.name != "pr")
        fail(pos_, "'>' after tag name");
      if (src_.substr(pos_, 8) != "degree=\"")
        fail(pos_, "degree=\"...\" attribute");
      pos_ += 8;
      std::size_t value_start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') ++pos_;
      if (pos_ >= src_.size()) fail(pos_, "closing '\"' of degree value");
      std::string_view value = src_.substr(value_start, pos_ - value_start);
      auto degree = degree_from_attribute(value);
      if (!degree) fail(value_start, "degree value: potential, candidate or established");
      tag.degree = *degree;
      ++pos_; // '"'
      while (pos_ < src_.size() && ascii_space(src_[pos_])) ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != '>') fail(pos_, "'>'");
    ++pos_;
    tag.end = pos_;
    return tag;
  }

  /// Scan for the literal close tag, returning the body between the tags.
  /// pos_ ends just past the close tag.
  std::string_view scan_close(const std::string& name) {
    std::string close = "</" + name + ">";
    std::size_t body_start = pos_;
    std::size_t at = src_.find(close, pos_);
    if (at == std::string_view::npos) fail(src_.size(), close);
    pos_ = at + close.size();
    return src_.substr(body_start, at - body_start);
  }

  Segment element() {
    std::size_t start = pos_;
    OpenTag tag = open_tag(/*allow_degree=*/true);
    TagKind kind = classify(tag);

    if (auto* seg = std::get_if<SegmentationTag>(&kind)) {
      std::string_view body = scan_close(tag.name);
      return {NarrativeSegment{seg->kind, decode_entities(body)}, raw_from(start)};
    }
    if (auto* legacy = std::get_if<ProverbialityTag>(&kind)) {
      if (mode_ == ParseMode::Strict)
        fail(tag.start, "canonical tag (<" + tag.name + "> is a legacy form)");
      std::string_view body = scan_close(tag.name);
      return {UnitSegment{minimal_unit(body, legacy->degree, tag.start)}, raw_from(start)};
    }
    if (auto* entity = std::get_if<EntityTag>(&kind)) {
      if (entity->root != EntityRoot::UnitText)
        fail(tag.start, "narrative tag, <pr> or <pr.all> (entity tags belong inside containers)");
      std::string_view body = scan_close("pr");
      ProverbialityDegree degree = tag.degree.value_or(ProverbialityDegree::Candidate);
      return {UnitSegment{minimal_unit(body, degree, tag.start)}, raw_from(start)};
    }
    if (std::holds_alternative<ContainerOpenTag>(kind)) {
      return {UnitSegment{container_body()}, raw_from(start)};
    }
    auto& unknown = std::get<UnknownTagKind>(kind);
    std::string_view body = scan_close(unknown.name);
    return {OpaqueSegment{unknown.name, std::string(body)}, raw_from(start)};
  }

  std::string raw_from(std::size_t start) const {
    return std::string(src_.substr(start, pos_ - start));
  }

  UnitContainer minimal_unit(std::string_view body, ProverbialityDegree degree,
                             std::size_t at) const {
    std::string decoded = decode_entities(body);
    if (text::trim(decoded).empty()) fail(at, "non-empty unit text");
    std::vector<Entity> entities;
    entities.emplace_back(EntityRoot::UnitText, std::nullopt, decoded);
    return UnitContainer(std::move(entities), degree);
  }

  /// Parses entity elements up to and including </pr.all>. pos_ starts
  /// just past the container open tag.
  UnitContainer container_body() {
    std::vector<Entity> entities;
    ProverbialityDegree degree = ProverbialityDegree::Candidate;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) fail(pos_, "</pr.all>");
      if (src_[pos_] != '<') fail(pos_, "entity element or </pr.all>");
      if (src_.substr(pos_, 2) == "</") {
        constexpr std::string_view close = "</pr.all>";
        if (src_.substr(pos_, close.size()) != close) fail(pos_, "</pr.all>");
        pos_ += close.size();
        break;
      }
      OpenTag tag = open_tag(/*allow_degree=*/true);
      TagKind kind = classify(tag);

      if (auto* entity = std::get_if<EntityTag>(&kind)) {
        std::string body = element_body(tag.name);
        if (entity->root == EntityRoot::UnitText && tag.degree) degree = *tag.degree;
        entities.emplace_back(entity->root, entity->lang, body);
        continue;
      }
      if (auto* legacy = std::get_if<ProverbialityTag>(&kind)) {
        if (mode_ == ParseMode::Strict)
          fail(tag.start, "canonical <pr> entity (<" + tag.name + "> is a legacy form)");
        std::string body = element_body(tag.name);
        degree = legacy->degree;
        entities.emplace_back(EntityRoot::UnitText, std::nullopt, body);
        continue;
      }
      if (std::holds_alternative<ContainerOpenTag>(kind))
        fail(tag.start, "entity element (containers do not nest)");
      if (auto* seg = std::get_if<SegmentationTag>(&kind)) {
        if (mode_ == ParseMode::Strict)
          fail(tag.start, "entity element, not a narrative tag");
        std::string body = element_body(tag.name);
        entities.push_back(Entity::extension(std::string(segmentation_tag(seg->kind)), body));
        continue;
      }
      auto& unknown = std::get<UnknownTagKind>(kind);
      std::string body = element_body(tag.name);
      entities.push_back(Entity::extension(unknown.name, body));
    }
    return UnitContainer(std::move(entities), degree);
  }

  /// Body of an entity element: text up to the matching close tag, with
  /// no nested elements allowed.
  std::string element_body(const std::string& name) {
    std::size_t body_start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '<') ++pos_;
    if (pos_ >= src_.size()) fail(pos_, "</" + name + ">");
    std::string close = "</" + name + ">";
    if (src_.substr(pos_, close.size()) != close) fail(pos_, close);
    std::string_view body = src_.substr(body_start, pos_ - body_start);
    pos_ += close.size();
    std::string decoded = decode_entities(body);
    if (text::trim(decoded).empty()) fail(body_start, "non-empty element text");
    return decoded;
  }

  std::string_view src_;
  ParseMode mode_;
  std::size_t pos_ = 0;
};

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": expected " + expected),
      line_(line), column_(column), expected_(std::move(expected)) {}

std::vector<const UnitContainer*> AnnotatedDocument::units() const {
  std::vector<const UnitContainer*> out;
  for (const Segment& seg : segments_)
    if (const auto* unit = std::get_if<UnitSegment>(&seg.value)) out.push_back(&unit->unit);
  return out;
}

std::vector<UnitContainer*> AnnotatedDocument::units() {
  std::vector<UnitContainer*> out;
  for (Segment& seg : segments_)
    if (auto* unit = std::get_if<UnitSegment>(&seg.value)) out.push_back(&unit->unit);
  return out;
}

AnnotatedDocument parse_document(std::string_view markup, ParseMode mode) {
  return Parser(markup, mode).document();
}

UnitContainer parse_container(std::string_view fragment, ParseMode mode) {
  return Parser(fragment, mode).fragment_container();
}

std::string serialize_container(const UnitContainer& container) {
  // Canonical layout: one entity per line, flush left, no trailing
  // newline after the close tag.
  std::string out = "<pr.all>\n";
  for (const Entity& e : container.entities()) {
    out += "<";
    if (e.root() == EntityRoot::UnitText &&
        container.degree() != ProverbialityDegree::Candidate) {
      out += "pr degree=\"";
      out += degree_attribute(container.degree());
      out += '"';
    } else {
      out += e.tag_name();
    }
    out += '>';
    out += escape_text(e.body());
    out += "</";
    out += e.tag_name();
    out += ">\n";
  }
  out += "</pr.all>";
  return out;
}

namespace {

template <typename GetUnit>
DuplicateReport report_duplicates(std::size_t count, GetUnit get) {
  std::map<std::string, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < count; ++i) {
    const UnitContainer& unit = get(i);
    std::string id = unit.id().empty() ? "#" + std::to_string(i) : unit.id();
    groups[text::canonical_key(unit.unit_text())].push_back(std::move(id));
  }
  DuplicateReport report;
  for (auto& [key, ids] : groups) {
    if (ids.size() < 2) continue;
    std::sort(ids.begin(), ids.end());
    report.groups.push_back({key, std::move(ids)});
  }
  return report;
}

} // namespace

DuplicateReport validate_corpus_uniqueness(std::span<const UnitContainer> units) {
  return report_duplicates(units.size(),
                           [&](std::size_t i) -> const UnitContainer& { return units[i]; });
}

DuplicateReport validate_corpus_uniqueness(std::span<const UnitContainer* const> units) {
  return report_duplicates(units.size(),
                           [&](std::size_t i) -> const UnitContainer& { return *units[i]; });
}

} // namespace aliento
