#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace curate {

enum class CharClass {
  ThaiConsonant,
  ThaiVowel,
  ThaiToneMark,
  ThaiDigit,
  ArabicDigit,
  RepetitionMark,
  ThaiOtherSign,
  LatinLetter,
  Whitespace,
  Punctuation,
  Other,
};

std::string_view to_string(CharClass c);

inline constexpr char32_t kMaiYamok = 0x0E46;

/// Total over all scalar values. Ranges follow the Unicode Thai block;
/// U+0E4F, U+0E5A and U+0E5B (Po in Unicode) classify as Punctuation.
CharClass classify_char(char32_t cp);

/// Above/below vowels, tone marks and the other Thai combining signs.
/// These never start a segment.
bool is_thai_combining(char32_t cp);

/// Letters that may appear inside a lexicon word: consonants, vowels,
/// tone marks and the combining signs.
bool is_thai_letter(char32_t cp);

inline bool is_digit(char32_t cp) {
  return (cp >= U'0' && cp <= U'9') || (cp >= 0x0E50 && cp <= 0x0E59);
}

/// 0-9 for Arabic or Thai digits, -1 otherwise.
inline int digit_value(char32_t cp) {
  if (cp >= U'0' && cp <= U'9') return static_cast<int>(cp - U'0');
  if (cp >= 0x0E50 && cp <= 0x0E59) return static_cast<int>(cp - 0x0E50);
  return -1;
}

struct LexiconInfo {
  std::string name = "unnamed";
  std::string version = "0";
};

/// Immutable word list stored as a codepoint trie for prefix lookup.
/// Safe to share between threads once constructed.
class Lexicon {
 public:
  Lexicon() = default;

  /// Throws LexiconError (line = 1-based index into `words`) for an empty
  /// entry or one containing anything other than Thai letters.
  explicit Lexicon(const std::vector<std::string>& words, LexiconInfo info = {});

  /// Word-per-line format: '#' comments, blank lines ignored. The optional
  /// comment headers "# name: ..." and "# version: ..." fill LexiconInfo.
  static Lexicon parse(std::istream& in, std::string default_name = "unnamed");
  static Lexicon load(const std::filesystem::path& path);

  bool contains(std::u32string_view word) const;
  bool contains(std::string_view word) const;

  /// Lengths (in scalars) of every entry that is a prefix of `text`,
  /// ascending.
  std::vector<std::size_t> prefix_lengths(std::u32string_view text) const;

  std::size_t size() const noexcept { return size_; }
  const LexiconInfo& info() const noexcept { return info_; }

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> next;  // sorted by codepoint
    bool terminal = false;
  };

  std::uint32_t child(std::uint32_t node, char32_t cp) const;
  void insert(std::u32string_view word);

  std::vector<Node> nodes_{Node{}};
  std::size_t size_ = 0;
  LexiconInfo info_;
};

enum class SegmentKind { Known, Unknown };

struct Segment {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source, half-open
  std::size_t end = 0;
  SegmentKind kind = SegmentKind::Unknown;

  bool operator==(const Segment&) const = default;
};

/// Greedy longest-match segmentation. A lexicon match only counts if it ends
/// on a cluster boundary (the next scalar is not a combining mark). Text that
/// begins no lexicon word is grouped into maximal Unknown runs.
std::vector<Segment> segment(std::string_view text, const Lexicon& lexicon);

}  // namespace curate
