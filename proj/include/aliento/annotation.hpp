#ifndef ALIENTO_ANNOTATION_HPP
#define ALIENTO_ANNOTATION_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aliento/text.hpp"

namespace aliento {

/// Language of a corpus entity. Seven codes are first-class (es, fr, en,
/// la, ar, he, el); anything else rides through the other() escape so new
/// source languages never require a schema change.
class LanguageCode {
public:
  static LanguageCode es() { return LanguageCode("es", true); }
  static LanguageCode fr() { return LanguageCode("fr", true); }
  static LanguageCode en() { return LanguageCode("en", true); }
  static LanguageCode la() { return LanguageCode("la", true); }
  static LanguageCode ar() { return LanguageCode("ar", true); }
  static LanguageCode he() { return LanguageCode("he", true); }
  static LanguageCode el() { return LanguageCode("el", true); }
  static LanguageCode other(std::string tag);

  /// Parse a lowercase tag token. Returns nullopt if the token is not a
  /// plausible language tag ([a-z]+).
  static std::optional<LanguageCode> from_tag(std::string_view tag);

  const std::string& tag() const { return tag_; }
  bool known() const { return known_; }
  /// True exactly for the three interrogation languages of the corpus.
  bool interrogation() const { return tag_ == "es" || tag_ == "fr" || tag_ == "en"; }

  friend bool operator==(const LanguageCode& a, const LanguageCode& b) { return a.tag_ == b.tag_; }
  friend std::strong_ordering operator<=>(const LanguageCode& a, const LanguageCode& b) {
    return a.tag_ <=> b.tag_;
  }

private:
  LanguageCode(std::string tag, bool known) : tag_(std::move(tag)), known_(known) {}
  std::string tag_;
  bool known_ = false;
};

/// The three interrogation languages in deterministic order (en, es, fr).
std::span<const LanguageCode> interrogation_languages();

/// Narrative material set aside during segmentation.
enum class SegmentationKind {
  DeletedText,       // text.del
  Exemplum,          // exemplum
  Simile,            // simil
  EdifyingDiscourse, // de
};

std::string_view segmentation_tag(SegmentationKind kind);

/// How far a unit has travelled towards being a fixed proverb.
enum class ProverbialityDegree { Potential, Candidate, Established };

/// Canonical attribute value ("potential", "candidate", "established").
std::string_view degree_attribute(ProverbialityDegree degree);
std::optional<ProverbialityDegree> degree_from_attribute(std::string_view value);

/// Information kinds attachable to a unit. Extension is the lenient-mode
/// escape for tags outside the schema; such entities keep their literal
/// tag name and round-trip untouched.
enum class EntityRoot {
  UnitText,            // pr
  ProverbType,         // pr.type
  LiteralSense,        // sl
  FigurativeSense,     // sf
  Lesson,              // lec
  Keywords,            // key
  Lemmas,              // lem
  LinguisticStructure, // str.ling
  FormalStructure,     // str.form
  PoeticStructure,     // str.poet
  Extension,
};

std::string_view root_tag(EntityRoot root);
bool root_requires_language(EntityRoot root);
bool root_allows_language(EntityRoot root);

class UnknownTagError : public Error {
public:
  explicit UnknownTagError(std::string_view name)
      : Error("unknown tag <" + std::string(name) + ">"), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class InvalidEntityError : public Error {
public:
  using Error::Error;
};

/// One tagged information item: root, optional language, NFC text.
class Entity {
public:
  /// Validates the language rule for the root and that the text is
  /// non-empty after trimming. Text is NFC-normalized and trimmed.
  Entity(EntityRoot root, std::optional<LanguageCode> lang, std::string_view body);

  /// Lenient-mode entity for a tag outside the schema.
  static Entity extension(std::string tag_name, std::string_view body);

  EntityRoot root() const { return root_; }
  const std::optional<LanguageCode>& lang() const { return lang_; }
  const std::string& body() const { return body_; }
  /// Tag token as written between angle brackets ("key.en", "str.poet").
  std::string tag_name() const;

  bool operator==(const Entity&) const = default;

private:
  Entity() = default;
  EntityRoot root_ = EntityRoot::Extension;
  std::optional<LanguageCode> lang_;
  std::string body_;
  std::string extension_tag_;
};

class MissingUnitTextError : public Error {
public:
  MissingUnitTextError() : Error("container has no pr entity") {}
};

class DuplicateEntityError : public Error {
public:
  explicit DuplicateEntityError(std::string tag)
      : Error("duplicate entity <" + tag + "> in container"), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

private:
  std::string tag_;
};

/// The knowledge container for one brief sapiential unit: the unit text
/// plus every attached entity, in source order. Immutable after
/// construction apart from the ingestion identifiers.
class UnitContainer {
public:
  /// Validates: exactly one pr entity, at most one entity per tag. When
  /// source_lang is not given it is inferred from the first lem entity.
  explicit UnitContainer(std::vector<Entity> entities,
                         ProverbialityDegree degree = ProverbialityDegree::Candidate,
                         std::optional<LanguageCode> source_lang = std::nullopt);

  const std::string& unit_text() const { return unit_text_; }
  ProverbialityDegree degree() const { return degree_; }
  const std::optional<LanguageCode>& source_lang() const { return source_lang_; }
  std::span<const Entity> entities() const { return entities_; }

  /// Corpus-unique id, assigned at ingestion as <work-id>:<ordinal>.
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }
  const std::optional<std::string>& work_ref() const { return work_ref_; }
  void set_work_ref(std::string work_id) { work_ref_ = std::move(work_id); }

  /// Text of the unique entity matching (root, lang), if present.
  std::optional<std::string_view> entity_text(EntityRoot root,
                                              std::optional<LanguageCode> lang = std::nullopt) const;

  bool operator==(const UnitContainer&) const = default;

private:
  std::vector<Entity> entities_;
  std::string unit_text_;
  ProverbialityDegree degree_ = ProverbialityDegree::Candidate;
  std::optional<LanguageCode> source_lang_;
  std::string id_;
  std::optional<std::string> work_ref_;
};

struct SegmentationTag {
  SegmentationKind kind;
  bool operator==(const SegmentationTag&) const = default;
};
struct ProverbialityTag {
  ProverbialityDegree degree;
  bool operator==(const ProverbialityTag&) const = default;
};
struct ContainerOpenTag {
  bool operator==(const ContainerOpenTag&) const = default;
};
struct EntityTag {
  EntityRoot root;
  std::optional<LanguageCode> lang;
  bool operator==(const EntityTag&) const = default;
};
struct UnknownTagKind {
  std::string name;
  bool operator==(const UnknownTagKind&) const = default;
};

using TagKind =
    std::variant<SegmentationTag, ProverbialityTag, ContainerOpenTag, EntityTag, UnknownTagKind>;

enum class ParseMode { Strict, Lenient };

/// Classify a tag token as it appears between angle brackets. Total over
/// the corpus tag inventory, legacy surfaces included ("pr?" maps to the
/// potential degree). Names outside the inventory throw UnknownTagError
/// in strict mode and come back as UnknownTagKind in lenient mode.
TagKind classify_tag(std::string_view name, ParseMode mode = ParseMode::Strict);

/// A (root, lang) slot a completeness profile may require. lang is empty
/// for the source-lemma requirement when the container's language is
/// undetermined.
struct RequiredEntity {
  EntityRoot root;
  std::optional<LanguageCode> lang;
  bool operator==(const RequiredEntity&) const = default;
};

/// Which entities a finished container must carry. The default profile
/// requires sl/sf/lec/key in the three interrogation languages plus lem
/// in the unit's source language.
struct CompletenessProfile {
  std::vector<RequiredEntity> required;
  bool require_source_lemmas = false;

  static CompletenessProfile default_profile();
};

/// Required entities absent from the container, ordered by (root, lang).
std::vector<RequiredEntity> missing_required(const UnitContainer& container,
                                             const CompletenessProfile& profile);

} // namespace aliento

#endif
