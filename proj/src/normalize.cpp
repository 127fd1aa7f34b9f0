#include "aliento/normalize.hpp"

#include <algorithm>
#include <iterator>
#include <istream>

#include "aliento/builtin_resources.hpp"

namespace aliento {

namespace {

constexpr char32_t kApostrophe = U'\'';
constexpr char32_t kCurlyApostrophe = U'’';

bool ascii_replacement_char(char c) {
  return (c >= 'a' && c <= 'z') || c == '\'' || c == ' ';
}

std::size_t utf8_length(char32_t cp) {
  if (cp < 0x80) return 1;
  if (cp < 0x800) return 2;
  if (cp < 0x10000) return 3;
  return 4;
}

/// Iterate content line by line, skipping blank lines and '#' comments.
/// fn(line_number, line) gets 1-based numbers and lines without \r\n.
template <typename Fn>
void for_each_data_line(std::string_view content, Fn fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::string_view line = content.substr(pos, nl == std::string_view::npos ? content.size() - pos
                                                                             : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') fn(lineno, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::string read_all(std::istream& source) {
  return std::string(std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>());
}

std::size_t count_words(std::string_view surface) {
  std::size_t words = surface.empty() ? 0 : 1;
  for (char c : surface)
    if (c == ' ') ++words;
  return words;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text, const LanguageCode&) {
  std::u32string cps = text::decode_utf8(text::lowercase(text::nfc(text)));
  std::vector<std::string> tokens;
  std::u32string current;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (text::is_word_char(cp)) {
      current += cp;
      continue;
    }
    bool apostrophe = (cp == kApostrophe || cp == kCurlyApostrophe);
    if (apostrophe && !current.empty() && i + 1 < cps.size() && text::is_word_char(cps[i + 1])) {
      current += kApostrophe;
      continue;
    }
    if (!current.empty()) {
      tokens.push_back(text::encode_utf8(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(text::encode_utf8(current));
  return tokens;
}

void LemmaDictionary::add(std::string_view surface, std::string_view lemma) {
  std::string key = text::canonical_key(surface);
  std::string value = text::canonical_key(lemma);
  auto [it, inserted] = entries_.emplace(key, value);
  if (!inserted && it->second != value) throw ConflictError(key, it->second, value);
  max_surface_tokens_ = std::max(max_surface_tokens_, count_words(key));
}

std::optional<std::string_view> LemmaDictionary::lookup(std::string_view surface) const {
  auto it = entries_.find(text::canonical_key(surface));
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::string LemmaResult::joined() const {
  std::string out;
  for (const std::string& lemma : lemmas) {
    if (lemma.empty()) continue;
    if (!out.empty()) out += ' ';
    out += lemma;
  }
  return out;
}

LemmaResult lemmatize(std::span<const std::string> tokens, const LemmaDictionary& dict) {
  LemmaResult result;
  result.lemmas.resize(tokens.size());
  const std::size_t n = tokens.size();
  const std::size_t max_span = std::max<std::size_t>(std::size_t{1}, dict.max_surface_tokens());
  std::size_t i = 0;
  while (i < n) {
    std::size_t matched = 0;
    std::optional<std::string_view> lemma;
    for (std::size_t len = std::min(max_span, n - i); len >= 1 && !lemma; --len) {
      std::string key;
      for (std::size_t k = 0; k < len; ++k) {
        if (k) key += ' ';
        key += tokens[i + k];
      }
      lemma = dict.lookup(key);
      if (lemma) matched = len;
    }
    if (lemma) {
      result.lemmas[i] = std::string(*lemma);
      i += matched; // continuation slots stay ""
    } else {
      result.lemmas[i] = tokens[i];
      result.unknown.insert(i);
      ++i;
    }
  }
  return result;
}

LemmaDictionary parse_lemma_dictionary(std::string_view content, LanguageCode lang) {
  LemmaDictionary dict(std::move(lang));
  for_each_data_line(content, [&](std::size_t lineno, std::string_view line) {
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw FormatError(lineno, "expected surface<TAB>lemma");
    std::string_view surface = line.substr(0, tab);
    std::string_view lemma = line.substr(tab + 1);
    if (text::trim(surface).empty() || text::trim(lemma).empty())
      throw FormatError(lineno, "empty surface or lemma");
    dict.add(surface, lemma);
  });
  return dict;
}

LemmaDictionary load_lemma_dictionary(std::istream& source, LanguageCode lang) {
  return parse_lemma_dictionary(read_all(source), std::move(lang));
}

UnmappableCharacterError::UnmappableCharacterError(char32_t codepoint, std::size_t offset)
    : Error("unmappable character U+" +
            [](char32_t cp) {
              static const char* digits = "0123456789ABCDEF";
              std::string hex;
              for (int shift = 20; shift >= 0; shift -= 4)
                hex += digits[(cp >> shift) & 0xF];
              std::size_t keep = hex.find_first_not_of('0');
              hex = hex.substr(std::min(keep, hex.size() - 4));
              return hex;
            }(codepoint) +
            " at byte offset " + std::to_string(offset)),
      codepoint_(codepoint), offset_(offset) {}

void RomanizationTable::add(std::u32string source, std::string replacement) {
  if (source.empty()) throw FormatError(0, "empty romanization source grapheme");
  if (!std::all_of(replacement.begin(), replacement.end(), ascii_replacement_char))
    throw FormatError(0, "romanization replacement outside [a-z' ]");
  auto [it, inserted] = rules_.emplace(std::move(source), replacement);
  if (!inserted && it->second != replacement)
    throw ConflictError(text::encode_utf8(it->first), it->second, replacement);
  max_source_length_ = std::max(max_source_length_, it->first.size());
}

const std::string* RomanizationTable::match(std::u32string_view rest,
                                            std::size_t& matched_length) const {
  for (std::size_t len = std::min(max_source_length_, rest.size()); len >= 1; --len) {
    auto it = rules_.find(std::u32string(rest.substr(0, len)));
    if (it != rules_.end()) {
      matched_length = len;
      return &it->second;
    }
  }
  return nullptr;
}

RomanizationTable parse_romanization_table(std::string_view content, Script script) {
  RomanizationTable table(script);
  for_each_data_line(content, [&](std::size_t lineno, std::string_view line) {
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw FormatError(lineno, "expected grapheme<TAB>ascii");
    std::u32string source = text::decode_utf8(text::nfc(line.substr(0, tab)));
    std::string replacement(line.substr(tab + 1));
    if (replacement == "-")
      replacement.clear();
    else if (replacement == "_")
      replacement = " ";
    if (source.empty()) throw FormatError(lineno, "empty grapheme");
    if (!std::all_of(replacement.begin(), replacement.end(), ascii_replacement_char))
      throw FormatError(lineno, "replacement outside [a-z' ] (use '-' to drop, '_' for space)");
    table.add(std::move(source), std::move(replacement));
  });
  return table;
}

RomanizationTable load_romanization_table(std::istream& source, Script script) {
  return parse_romanization_table(read_all(source), script);
}

std::string romanize(std::string_view input, const RomanizationTable& table) {
  std::u32string cps = text::decode_utf8(text::nfc(input));
  std::string raw;
  raw.reserve(cps.size());
  std::size_t byte_offset = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t matched = 0;
    if (const std::string* rep = table.match({cps.data() + i, cps.size() - i}, matched)) {
      raw += *rep;
      for (std::size_t k = 0; k < matched; ++k) byte_offset += utf8_length(cps[i + k]);
      i += matched;
      continue;
    }
    char32_t cp = cps[i];
    if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z')
        raw += static_cast<char>(c - 'A' + 'a');
      else if ((c >= 'a' && c <= 'z') || c == '\'')
        raw += c;
      else
        raw += ' ';
      ++byte_offset;
      ++i;
      continue;
    }
    throw UnmappableCharacterError(cp, byte_offset);
  }

  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out += c;
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool Stoplist::contains(std::string_view word) const {
  return words_.find(text::canonical_key(word)) != words_.end();
}

Stoplist Stoplist::parse(std::string_view content) {
  std::set<std::string> words;
  for_each_data_line(content, [&](std::size_t, std::string_view line) {
    std::string word = text::canonical_key(line);
    if (!word.empty()) words.insert(std::move(word));
  });
  return Stoplist(std::move(words));
}

Stoplist Stoplist::load(std::istream& source) { return parse(read_all(source)); }

void StoplistRegistry::set(const LanguageCode& lang, Stoplist list) {
  lists_[lang.tag()] = std::move(list);
}

const Stoplist* StoplistRegistry::find(const LanguageCode& lang) const {
  auto it = lists_.find(lang.tag());
  return it == lists_.end() ? nullptr : &it->second;
}

const StoplistRegistry& builtin_stoplists() {
  static const StoplistRegistry registry = [] {
    StoplistRegistry r;
    r.set(LanguageCode::en(), Stoplist::parse(builtin::resource("stopwords_en.txt")));
    r.set(LanguageCode::es(), Stoplist::parse(builtin::resource("stopwords_es.txt")));
    r.set(LanguageCode::fr(), Stoplist::parse(builtin::resource("stopwords_fr.txt")));
    return r;
  }();
  return registry;
}

const RomanizationTable& builtin_romanization(Script script) {
  static const RomanizationTable hebrew =
      parse_romanization_table(builtin::resource("romanization_he.tsv"), Script::Hebrew);
  static const RomanizationTable arabic =
      parse_romanization_table(builtin::resource("romanization_ar.tsv"), Script::Arabic);
  return script == Script::Hebrew ? hebrew : arabic;
}

const LemmaDictionary* builtin_lemma_dictionary(const LanguageCode& lang) {
  if (lang.tag() == "es") {
    static const LemmaDictionary spanish =
        parse_lemma_dictionary(builtin::resource("lemmas_es.tsv"), LanguageCode::es());
    return &spanish;
  }
  return nullptr;
}

std::set<std::string> keyword_set(std::string_view entity_text) {
  std::vector<std::string> tokens = tokenize(entity_text, LanguageCode::en());
  return std::set<std::string>(tokens.begin(), tokens.end());
}

std::set<std::string> lesson_tokens(std::string_view entity_text, const LanguageCode& lang,
                                    const StoplistRegistry& stoplists) {
  const Stoplist* stoplist = stoplists.find(lang);
  if (!stoplist) throw MissingStoplistError(lang);
  std::set<std::string> out;
  for (std::string& token : tokenize(entity_text, lang))
    if (!stoplist->contains(token)) out.insert(std::move(token));
  return out;
}

} // namespace aliento
