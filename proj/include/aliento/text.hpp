#ifndef ALIENTO_TEXT_HPP
#define ALIENTO_TEXT_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace aliento {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// UTF-8 text utilities. Every string entering the corpus model passes
/// through nfc() exactly once; comparisons downstream are byte-exact.
namespace text {

/// Canonical composition (NFC). Throws Error on malformed UTF-8.
std::string nfc(std::string_view utf8);

/// Locale-independent full lowercase. Identity on caseless scripts.
std::string lowercase(std::string_view utf8);

std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view codepoints);
std::string encode_utf8(char32_t codepoint);

bool is_whitespace(char32_t cp);
/// Letters, combining marks and decimal digits count as word characters.
bool is_word_char(char32_t cp);

/// Strip leading/trailing whitespace (Unicode-aware).
std::string trim(std::string_view utf8);

/// Trim plus inner whitespace runs collapsed to a single space.
std::string collapse_whitespace(std::string_view utf8);

/// Corpus-wide uniqueness key: NFC, lowercase, collapsed whitespace.
/// Lowercasing is a no-op for scripts without case.
std::string canonical_key(std::string_view utf8);

} // namespace text
} // namespace aliento

#endif
