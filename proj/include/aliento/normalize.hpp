#ifndef ALIENTO_NORMALIZE_HPP
#define ALIENTO_NORMALIZE_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aliento/annotation.hpp"

namespace aliento {

class FormatError : public Error {
public:
  FormatError(std::size_t line, std::string detail)
      : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class ConflictError : public Error {
public:
  ConflictError(std::string surface, std::string lemma1, std::string lemma2)
      : Error("surface \"" + surface + "\" maps to both \"" + lemma1 + "\" and \"" + lemma2 +
              "\""),
        surface_(std::move(surface)), lemma1_(std::move(lemma1)), lemma2_(std::move(lemma2)) {}
  const std::string& surface() const { return surface_; }
  const std::string& lemma1() const { return lemma1_; }
  const std::string& lemma2() const { return lemma2_; }

private:
  std::string surface_, lemma1_, lemma2_;
};

class UnmappableCharacterError : public Error {
public:
  UnmappableCharacterError(char32_t codepoint, std::size_t offset);
  char32_t codepoint() const { return codepoint_; }
  /// Byte offset of the character in the input.
  std::size_t offset() const { return offset_; }

private:
  char32_t codepoint_;
  std::size_t offset_;
};

class MissingStoplistError : public Error {
public:
  explicit MissingStoplistError(const LanguageCode& lang)
      : Error("no stoplist for language \"" + lang.tag() + "\""), lang_(lang.tag()) {}
  const std::string& lang_tag() const { return lang_; }

private:
  std::string lang_;
};

/// NFC, lowercase, split on anything that is not a word character.
/// Apostrophes (' and the curly U+2019, normalized to ') stay inside a
/// token when flanked by word characters on both sides.
std::vector<std::string> tokenize(std::string_view text, const LanguageCode& lang);

/// Surface form to lemma map for one language. Surfaces and lemmas are
/// stored NFC + lowercase; iteration is alphabetical by surface. A
/// surface may span several words ("e agora"); lookup is then applied
/// longest-match over the token stream.
class LemmaDictionary {
public:
  explicit LemmaDictionary(LanguageCode lang) : lang_(std::move(lang)) {}

  const LanguageCode& lang() const { return lang_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_surface_tokens() const { return max_surface_tokens_; }

  /// Throws ConflictError when the surface is already mapped to a
  /// different lemma; identical re-insertion is a no-op.
  void add(std::string_view surface, std::string_view lemma);

  std::optional<std::string_view> lookup(std::string_view surface) const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

private:
  LanguageCode lang_;
  std::map<std::string, std::string> entries_;
  std::size_t max_surface_tokens_ = 0;
};

/// Lemmatization output. lemmas has exactly one slot per input token;
/// when a multi-word surface matches, its lemma sits in the first slot
/// and the consumed continuation slots hold "". unknown are positions of
/// tokens passed through unchanged.
struct LemmaResult {
  std::vector<std::string> lemmas;
  std::set<std::size_t> unknown;

  /// Space-joined lemmas, skipping empty continuation slots.
  std::string joined() const;
};

LemmaResult lemmatize(std::span<const std::string> tokens, const LemmaDictionary& dict);

/// TSV: surface<TAB>lemma per line; '#' lines and blank lines ignored.
LemmaDictionary load_lemma_dictionary(std::istream& source, LanguageCode lang);
LemmaDictionary parse_lemma_dictionary(std::string_view content, LanguageCode lang);

enum class Script { Hebrew, Arabic };

/// Grapheme-cluster to ASCII rules, applied left to right with the
/// longest matching source cluster winning. Replacements are drawn from
/// [a-z' ] only.
class RomanizationTable {
public:
  explicit RomanizationTable(Script script) : script_(script) {}

  Script script() const { return script_; }
  std::size_t size() const { return rules_.size(); }

  /// Throws ConflictError on contradictory duplicates, FormatError(0) on
  /// a replacement outside [a-z' ].
  void add(std::u32string source, std::string replacement);

  /// Longest rule matching a prefix of `rest`; returns nullptr if none.
  const std::string* match(std::u32string_view rest, std::size_t& matched_length) const;

private:
  Script script_;
  std::map<std::u32string, std::string> rules_;
  std::size_t max_source_length_ = 0;
};

/// TSV: grapheme<TAB>ascii per line; '#' lines and blank lines ignored.
/// An omitted second column means the grapheme is dropped (vowel points).
RomanizationTable load_romanization_table(std::istream& source, Script script);
RomanizationTable parse_romanization_table(std::string_view content, Script script);

/// Deterministic simplified transliteration. Table rules first; ASCII
/// letters pass through lowercased, other ASCII becomes a space; runs of
/// spaces collapse and the ends are trimmed. Output matches [a-z' ]*.
/// Non-ASCII input not covered by the table throws UnmappableCharacter.
std::string romanize(std::string_view input, const RomanizationTable& table);

class Stoplist {
public:
  Stoplist() = default;
  explicit Stoplist(std::set<std::string> words) : words_(std::move(words)) {}

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

  /// One word per line; '#' lines and blank lines ignored.
  static Stoplist load(std::istream& source);
  static Stoplist parse(std::string_view content);

private:
  std::set<std::string> words_; // NFC, lowercase
};

class StoplistRegistry {
public:
  void set(const LanguageCode& lang, Stoplist list);
  const Stoplist* find(const LanguageCode& lang) const;

private:
  std::map<std::string, Stoplist> lists_;
};

/// Shipped resources, embedded at build time.
const StoplistRegistry& builtin_stoplists();
const RomanizationTable& builtin_romanization(Script script);
/// nullptr when no dictionary is shipped for the language.
const LemmaDictionary* builtin_lemma_dictionary(const LanguageCode& lang);

/// Tokenized, deduplicated keyword entity body. No stoplist: keyword
/// lists are curated by annotators.
std::set<std::string> keyword_set(std::string_view entity_text);

/// Tokenized lesson body minus the language's stopwords. Throws
/// MissingStoplist when the registry has no list for the language.
std::set<std::string> lesson_tokens(std::string_view entity_text, const LanguageCode& lang,
                                    const StoplistRegistry& stoplists = builtin_stoplists());

} // namespace aliento

#endif
