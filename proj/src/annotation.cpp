#include "aliento/annotation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace aliento {

namespace {

constexpr std::array<std::string_view, 7> kKnownLanguages = {"es", "fr", "en", "la",
                                                             "ar", "he", "el"};

bool plausible_lang_tag(std::string_view tag) {
  if (tag.empty() || tag.size() > 16) return false;
  return std::all_of(tag.begin(), tag.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

int root_order(EntityRoot root) { return static_cast<int>(root); }

} // namespace

LanguageCode LanguageCode::other(std::string tag) {
  if (!plausible_lang_tag(tag))
    throw InvalidEntityError("not a language tag: \"" + tag + "\"");
  bool known = std::find(kKnownLanguages.begin(), kKnownLanguages.end(), tag) !=
               kKnownLanguages.end();
  return LanguageCode(std::move(tag), known);
}

std::optional<LanguageCode> LanguageCode::from_tag(std::string_view tag) {
  if (!plausible_lang_tag(tag)) return std::nullopt;
  return LanguageCode::other(std::string(tag));
}

std::span<const LanguageCode> interrogation_languages() {
  static const std::array<LanguageCode, 3> langs = {LanguageCode::en(), LanguageCode::es(),
                                                    LanguageCode::fr()};
  return langs;
}

std::string_view segmentation_tag(SegmentationKind kind) {
  switch (kind) {
  case SegmentationKind::DeletedText: return "text.del";
  case SegmentationKind::Exemplum: return "exemplum";
  case SegmentationKind::Simile: return "simil";
  case SegmentationKind::EdifyingDiscourse: return "de";
  }
  return "";
}

std::string_view degree_attribute(ProverbialityDegree degree) {
  switch (degree) {
  case ProverbialityDegree::Potential: return "potential";
  case ProverbialityDegree::Candidate: return "candidate";
  case ProverbialityDegree::Established: return "established";
  }
  return "";
}

std::optional<ProverbialityDegree> degree_from_attribute(std::string_view value) {
  if (value == "potential") return ProverbialityDegree::Potential;
  if (value == "candidate") return ProverbialityDegree::Candidate;
  if (value == "established") return ProverbialityDegree::Established;
  return std::nullopt;
}

std::string_view root_tag(EntityRoot root) {
  switch (root) {
  case EntityRoot::UnitText: return "pr";
  case EntityRoot::ProverbType: return "pr.type";
  case EntityRoot::LiteralSense: return "sl";
  case EntityRoot::FigurativeSense: return "sf";
  case EntityRoot::Lesson: return "lec";
  case EntityRoot::Keywords: return "key";
  case EntityRoot::Lemmas: return "lem";
  case EntityRoot::LinguisticStructure: return "str.ling";
  case EntityRoot::FormalStructure: return "str.form";
  case EntityRoot::PoeticStructure: return "str.poet";
  case EntityRoot::Extension: return "";
  }
  return "";
}

bool root_requires_language(EntityRoot root) {
  switch (root) {
  case EntityRoot::ProverbType:
  case EntityRoot::LiteralSense:
  case EntityRoot::FigurativeSense:
  case EntityRoot::Lesson:
  case EntityRoot::Keywords:
  case EntityRoot::Lemmas:
    return true;
  default:
    return false;
  }
}

bool root_allows_language(EntityRoot root) { return root_requires_language(root); }

Entity::Entity(EntityRoot root, std::optional<LanguageCode> lang, std::string_view body)
    : root_(root), lang_(std::move(lang)) {
  if (root == EntityRoot::Extension)
    throw InvalidEntityError("extension entities are built via Entity::extension()");
  if (root_requires_language(root) && !lang_)
    throw InvalidEntityError("entity <" + std::string(root_tag(root)) +
                             "> requires a language suffix");
  if (!root_allows_language(root) && lang_)
    throw InvalidEntityError("entity <" + std::string(root_tag(root)) +
                             "> does not take a language suffix");
  // NFC only: surrounding whitespace is kept so round-trips are
  // byte-faithful. Emptiness means no visible text at all.
  body_ = text::nfc(body);
  if (text::trim(body_).empty())
    throw InvalidEntityError("entity <" + tag_name() + "> has empty text");
}

Entity Entity::extension(std::string tag_name, std::string_view body) {
  Entity e;
  e.root_ = EntityRoot::Extension;
  e.extension_tag_ = std::move(tag_name);
  if (e.extension_tag_.empty())
    throw InvalidEntityError("extension entity needs a tag name");
  e.body_ = text::nfc(body);
  if (text::trim(e.body_).empty())
    throw InvalidEntityError("entity <" + e.extension_tag_ + "> has empty text");
  return e;
}

std::string Entity::tag_name() const {
  if (root_ == EntityRoot::Extension) return extension_tag_;
  std::string name(root_tag(root_));
  if (lang_) {
    name += '.';
    name += lang_->tag();
  }
  return name;
}

UnitContainer::UnitContainer(std::vector<Entity> entities, ProverbialityDegree degree,
                             std::optional<LanguageCode> source_lang)
    : entities_(std::move(entities)), degree_(degree), source_lang_(std::move(source_lang)) {
  const Entity* pr = nullptr;
  std::set<std::string> seen;
  for (const Entity& e : entities_) {
    if (!seen.insert(e.tag_name()).second) throw DuplicateEntityError(e.tag_name());
    if (e.root() == EntityRoot::UnitText) pr = &e;
    if (!source_lang_ && e.root() == EntityRoot::Lemmas) source_lang_ = e.lang();
  }
  if (!pr) throw MissingUnitTextError();
  unit_text_ = pr->body();
}

std::optional<std::string_view> UnitContainer::entity_text(
    EntityRoot root, std::optional<LanguageCode> lang) const {
  for (const Entity& e : entities_)
    if (e.root() == root && e.lang() == lang) return e.body();
  return std::nullopt;
}

TagKind classify_tag(std::string_view name, ParseMode mode) {
  // Exact names first; the dotted entity roots (pr.type, str.*) would
  // otherwise be misread as language suffixes.
  if (name == "text.del") return SegmentationTag{SegmentationKind::DeletedText};
  if (name == "exemplum") return SegmentationTag{SegmentationKind::Exemplum};
  if (name == "simil") return SegmentationTag{SegmentationKind::Simile};
  if (name == "de") return SegmentationTag{SegmentationKind::EdifyingDiscourse};
  if (name == "pr?") return ProverbialityTag{ProverbialityDegree::Potential};
  if (name == "pr.est") return ProverbialityTag{ProverbialityDegree::Established};
  if (name == "pr.all") return ContainerOpenTag{};
  if (name == "pr") return EntityTag{EntityRoot::UnitText, std::nullopt};
  if (name == "str.ling") return EntityTag{EntityRoot::LinguisticStructure, std::nullopt};
  if (name == "str.form") return EntityTag{EntityRoot::FormalStructure, std::nullopt};
  if (name == "str.poet") return EntityTag{EntityRoot::PoeticStructure, std::nullopt};

  // Suffixed roots: <root>.<lang>.
  static const std::array<std::pair<std::string_view, EntityRoot>, 6> suffixed = {{
      {"pr.type", EntityRoot::ProverbType},
      {"sl", EntityRoot::LiteralSense},
      {"sf", EntityRoot::FigurativeSense},
      {"lec", EntityRoot::Lesson},
      {"key", EntityRoot::Keywords},
      {"lem", EntityRoot::Lemmas},
  }};
  for (const auto& [prefix, root] : suffixed) {
    if (name.size() > prefix.size() + 1 && name.substr(0, prefix.size()) == prefix &&
        name[prefix.size()] == '.') {
      auto lang = LanguageCode::from_tag(name.substr(prefix.size() + 1));
      if (lang) return EntityTag{root, std::move(lang)};
    }
  }

  if (mode == ParseMode::Strict) throw UnknownTagError(name);
  return UnknownTagKind{std::string(name)};
}

CompletenessProfile CompletenessProfile::default_profile() {
  CompletenessProfile profile;
  for (EntityRoot root : {EntityRoot::LiteralSense, EntityRoot::FigurativeSense,
                          EntityRoot::Lesson, EntityRoot::Keywords})
    for (const LanguageCode& lang : interrogation_languages())
      profile.required.push_back({root, lang});
  profile.require_source_lemmas = true;
  return profile;
}

std::vector<RequiredEntity> missing_required(const UnitContainer& container,
                                             const CompletenessProfile& profile) {
  std::vector<RequiredEntity> wanted = profile.required;
  if (profile.require_source_lemmas)
    wanted.push_back({EntityRoot::Lemmas, container.source_lang()});

  std::vector<RequiredEntity> missing;
  for (const RequiredEntity& req : wanted) {
    bool found = false;
    for (const Entity& e : container.entities()) {
      if (e.root() != req.root) continue;
      // An unresolved source-lemma slot is satisfied by any lem entity.
      if (!req.lang || e.lang() == req.lang) {
        found = true;
        break;
      }
    }
    if (!found) missing.push_back(req);
  }

  std::sort(missing.begin(), missing.end(), [](const RequiredEntity& a, const RequiredEntity& b) {
    if (root_order(a.root) != root_order(b.root)) return root_order(a.root) < root_order(b.root);
    std::string_view ta = a.lang ? a.lang->tag() : std::string_view();
    std::string_view tb = b.lang ? b.lang->tag() : std::string_view();
    return ta < tb;
  });
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  return missing;
}

} // namespace aliento
