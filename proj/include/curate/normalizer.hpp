#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curate/thai_text.hpp"

namespace curate {

enum class NumericPolicy { Quantity, Digits, Auto };
enum class SymbolSense { Range, Minus, Separator };
enum class FlagKind { NumericReading, SymbolSense, UnknownForeignWord, OrphanRepetitionMark };

std::string_view to_string(NumericPolicy p);
std::string_view to_string(SymbolSense s);
std::string_view to_string(FlagKind k);
std::optional<NumericPolicy> parse_numeric_policy(std::string_view s);
std::optional<SymbolSense> parse_symbol_sense(std::string_view s);
std::optional<FlagKind> parse_flag_kind(std::string_view s);

/// Half-open byte range.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct AmbiguityFlag {
  FlagKind kind;
  Span span;           // into NormalizedText::text
  std::string source;  // the input text that raised the flag
  std::string note;
};

/// One rewrite. `offset`/`length` address the text as it stands after all
/// earlier steps, so replaying the steps in order on the raw input yields
/// the normalized text.
struct TraceStep {
  std::string rule;
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string input;
  std::string output;
};

struct NormalizedText {
  std::string text;
  std::vector<TraceStep> trace;
  std::vector<AmbiguityFlag> flags;

  bool clean() const noexcept { return flags.empty(); }
};

/// Latin token -> Thai transliteration. Keys are matched ASCII
/// case-insensitively.
class TranslitDict {
 public:
  TranslitDict() = default;
  /// Throws Error("TranslitError") when a value contains anything other
  /// than Thai letters or a key is not a Latin-letter token.
  explicit TranslitDict(std::map<std::string, std::string> entries);

  /// Tab-separated "latin_token<TAB>thai_word" lines; '#' comments and blank
  /// lines are skipped.
  static TranslitDict parse(std::istream& in);
  static TranslitDict load(const std::filesystem::path& path);

  const std::string* lookup(std::string_view token) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::string> entries_;
};

struct NormConfig {
  NumericPolicy numeric_policy = NumericPolicy::Auto;
  std::shared_ptr<const Lexicon> lexicon = std::make_shared<Lexicon>();
  std::shared_ptr<const TranslitDict> translit = std::make_shared<TranslitDict>();
  SymbolSense symbol_default = SymbolSense::Range;
  /// Punctuation allowed to survive into canonical text. Space is always
  /// allowed (it is whitespace, not punctuation).
  std::u32string whitelist;

  /// Bundled lexicon and transliteration dictionary.
  static NormConfig bundled();
};

const Lexicon& bundled_lexicon();
const TranslitDict& bundled_translit();
std::shared_ptr<const Lexicon> bundled_lexicon_ptr();
std::shared_ptr<const TranslitDict> bundled_translit_ptr();

/// Runs the canonical pipeline in order: whitespace and punctuation
/// canonicalization, symbol resolution, numeric conversion, mai yamok
/// expansion, transliteration. Ambiguities never throw; they become flags
/// with the default reading applied.
NormalizedText normalize(std::string_view raw, const NormConfig& config);

struct RewriteResult {
  std::string text;
  std::vector<AmbiguityFlag> flags;
};

/// Replaces each ๆ with a space and a copy of the word before it (the
/// longest lexicon word ending there). Repetition output is space
/// separated on both sides.
RewriteResult expand_mai_yamok(std::string_view text, const Lexicon& lexicon);

/// "6-7" -> หกถึงเจ็ด / หกลบเจ็ด / หกขีดเจ็ด. Accepts a chain of operands
/// ("02-555-1234") and optional spaces around the dash. Range and Minus
/// read multi-digit operands as quantities unless they have a leading zero
/// or seven or more digits; Separator reads every operand digit by digit.
/// Throws SymbolError("UnsupportedSymbol") for other connectors and
/// SymbolError("MalformedSpan") when `span` is not digits-symbol-digits.
std::string resolve_symbol(std::string_view span, SymbolSense sense);

/// Replaces every Latin-letter run found in the dictionary; misses stay in
/// place and raise UnknownForeignWord.
RewriteResult transliterate(std::string_view text, const TranslitDict& dict);

enum class ComplexityKind { ArabicDigit, ThaiDigit, Punctuation };
std::string_view to_string(ComplexityKind k);

struct ComplexityReason {
  ComplexityKind kind;
  Span span;
  std::string text;
};

struct ComplexityReport {
  bool complex = false;
  std::vector<ComplexityReason> reasons;
};

/// True iff `text` holds an Arabic or Thai digit, or punctuation outside
/// `whitelist`. Each maximal run of one kind is one reason.
ComplexityReport is_complex(std::string_view text, std::u32string_view whitelist = {});

}  // namespace curate
