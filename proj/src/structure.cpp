#include "aliento/structure.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>

#include "aliento/builtin_resources.hpp"
#include "aliento/normalize.hpp"

namespace aliento {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::optional<int> parse_int(std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool is_opp_preposition(std::string_view token) {
  // "à" as written, plus plain "a" for unaccented annotations.
  return token == "à" || token == "a";
}

std::string read_all(std::istream& source) {
  return std::string(std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>());
}

} // namespace

std::string_view formal_kind_slug(FormalKind kind) {
  switch (kind) {
  case FormalKind::BinaryParallelism: return "binary-parallelism";
  case FormalKind::Dialogue: return "dialogue";
  case FormalKind::Imperative: return "imperative";
  case FormalKind::Conditional: return "conditional";
  case FormalKind::Comparative: return "comparative";
  case FormalKind::Other: return "other";
  }
  return "other";
}

std::optional<FormalKind> formal_kind_from_slug(std::string_view slug) {
  for (FormalKind kind : {FormalKind::BinaryParallelism, FormalKind::Dialogue,
                          FormalKind::Imperative, FormalKind::Conditional,
                          FormalKind::Comparative, FormalKind::Other})
    if (slug == formal_kind_slug(kind)) return kind;
  return std::nullopt;
}

std::size_t LinguisticStructure::symbol_count() const {
  std::size_t n = 0;
  for (const auto& hemistich : hemistichs) n += hemistich.size();
  return n;
}

std::size_t LinguisticStructure::opposition_count() const {
  std::size_t n = 0;
  for (const auto& hemistich : hemistichs)
    for (const LinguisticSymbol& symbol : hemistich)
      if (symbol.opposition) ++n;
  return n;
}

void StructureLabelTable::add(std::string_view label, FormalKind kind) {
  std::string key = text::canonical_key(label);
  auto [it, inserted] = labels_.emplace(key, kind);
  if (!inserted && it->second != kind)
    throw ConflictError(key, std::string(formal_kind_slug(it->second)),
                        std::string(formal_kind_slug(kind)));
}

std::optional<FormalKind> StructureLabelTable::find(std::string_view label) const {
  auto it = labels_.find(text::canonical_key(label));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

StructureLabelTable StructureLabelTable::parse(std::string_view content) {
  StructureLabelTable table;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::string_view line =
        content.substr(pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) throw FormatError(lineno, "expected label<TAB>kind");
      auto kind = formal_kind_from_slug(text::trim(line.substr(tab + 1)));
      if (!kind) throw FormatError(lineno, "unknown structure kind slug");
      table.add(line.substr(0, tab), *kind);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return table;
}

StructureLabelTable StructureLabelTable::load(std::istream& source) {
  return parse(read_all(source));
}

const StructureLabelTable& builtin_structure_labels() {
  static const StructureLabelTable table =
      StructureLabelTable::parse(builtin::resource("structure_labels.tsv"));
  return table;
}

PoeticStructure parse_poetic(std::string_view text, ParseMode mode) {
  PoeticStructure out;
  out.raw = text::trim(text::nfc(text));

  // Everything before the "ass" token is syllable counts, "/"-separated;
  // the separator may butt against the digits ("7/7").
  std::vector<std::string> tokens = split_ws(out.raw);
  std::size_t ass = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "ass") {
      ass = i;
      break;
    }
  }
  std::string count_section;
  for (std::size_t i = 0; i < ass; ++i) {
    if (!count_section.empty()) count_section += ' ';
    count_section += tokens[i];
  }

  std::vector<int> counts;
  bool well_formed = !count_section.empty();
  std::size_t pos = 0;
  while (well_formed) {
    std::size_t slash = count_section.find('/', pos);
    std::size_t end = slash == std::string::npos ? count_section.size() : slash;
    auto count = parse_int(text::trim(count_section.substr(pos, end - pos)));
    if (!count || *count < 1) {
      well_formed = false;
      break;
    }
    counts.push_back(*count);
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }

  if (!well_formed) {
    if (mode == ParseMode::Strict)
      throw PoeticFormatError("no syllable count in str.poet \"" + out.raw + "\"");
    return out; // raw-only fallback
  }

  out.syllable_counts = std::move(counts);
  if (ass < tokens.size()) {
    std::string marker;
    for (std::size_t k = ass + 1; k < tokens.size(); ++k) {
      if (!marker.empty()) marker += ' ';
      marker += tokens[k];
    }
    if (!marker.empty()) out.assonance = std::move(marker);
  }
  return out;
}

FormalStructure parse_formal(std::string_view text, const StructureLabelTable& labels) {
  FormalStructure out;
  out.raw = text::trim(text::nfc(text));

  std::size_t colon = out.raw.find(':');
  std::string label =
      text::trim(colon == std::string::npos ? std::string_view(out.raw)
                                            : std::string_view(out.raw).substr(0, colon));
  std::string rest =
      colon == std::string::npos ? std::string() : std::string(out.raw.substr(colon + 1));

  std::string canonical = text::canonical_key(label);
  if (auto kind = labels.find(canonical)) {
    out.kind = *kind;
  } else if (canonical == "si" || canonical.rfind("si ", 0) == 0 ||
             canonical.rfind("si.", 0) == 0 || canonical.rfind("si…", 0) == 0) {
    out.kind = FormalKind::Conditional;
  } else if (canonical.rfind("quanto", 0) == 0 || canonical.rfind("cuanto", 0) == 0) {
    out.kind = FormalKind::Comparative;
  } else {
    out.kind = FormalKind::Other;
    out.other_label = label;
  }

  if (out.kind == FormalKind::BinaryParallelism) {
    for (const std::string& token : split_ws(rest)) {
      std::size_t slash = token.find('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 >= token.size()) continue;
      out.oppositions.emplace_back(token.substr(0, slash), token.substr(slash + 1));
    }
  }
  return out;
}

LinguisticStructure parse_linguistic(std::string_view text) {
  LinguisticStructure out;
  out.raw = text::trim(text::nfc(text));

  std::size_t pos = 0;
  while (pos <= out.raw.size()) {
    std::size_t slash = out.raw.find('/', pos);
    std::string_view part(out.raw);
    part = part.substr(pos, slash == std::string::npos ? out.raw.size() - pos : slash - pos);

    std::vector<LinguisticSymbol> symbols;
    std::vector<std::string> tokens = split_ws(part);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] == "opp" && !symbols.empty()) {
        std::size_t j = i + 1;
        if (j < tokens.size() && is_opp_preposition(tokens[j])) ++j;
        if (j < tokens.size()) {
          if (auto target = parse_int(tokens[j])) {
            symbols.back().opposition = *target;
            i = j;
            continue;
          }
        }
      }
      symbols.push_back({tokens[i], std::nullopt});
    }
    if (!symbols.empty()) out.hemistichs.push_back(std::move(symbols));

    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  return out;
}

std::set<std::string> structure_features(const UnitContainer& container,
                                         const StructureLabelTable& labels) {
  std::set<std::string> features;

  std::optional<PoeticStructure> poet;
  if (auto text = container.entity_text(EntityRoot::PoeticStructure))
    poet = parse_poetic(*text, ParseMode::Lenient);

  std::optional<FormalStructure> form;
  if (auto text = container.entity_text(EntityRoot::FormalStructure))
    form = parse_formal(*text, labels);

  std::optional<LinguisticStructure> ling;
  if (auto text = container.entity_text(EntityRoot::LinguisticStructure))
    ling = parse_linguistic(*text);

  if (form) {
    if (form->kind == FormalKind::Other) {
      std::string label = text::canonical_key(form->other_label);
      if (!label.empty()) features.insert("form:" + label);
    } else {
      features.insert("form:" + std::string(formal_kind_slug(form->kind)));
    }
  }

  if (poet && !poet->syllable_counts.empty()) {
    features.insert("hemistichs:" + std::to_string(poet->syllable_counts.size()));
    std::string syllables;
    for (int count : poet->syllable_counts) {
      if (!syllables.empty()) syllables += '-';
      syllables += std::to_string(count);
    }
    features.insert("syllables:" + syllables);
    if (poet->assonance) features.insert("assonance:" + *poet->assonance);
  } else if (ling && !ling->hemistichs.empty()) {
    features.insert("hemistichs:" + std::to_string(ling->hemistichs.size()));
  }

  std::size_t oppositions = 0;
  if (form && !form->oppositions.empty())
    oppositions = form->oppositions.size();
  else if (ling)
    oppositions = ling->opposition_count();
  if (oppositions > 0) features.insert("opp-count:" + std::to_string(oppositions));

  return features;
}

} // namespace aliento
