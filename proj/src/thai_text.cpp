#include "curate/thai_text.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "curate/errors.hpp"
#include "curate/utf8.hpp"

namespace curate {

std::string_view to_string(CharClass c) {
  switch (c) {
    case CharClass::ThaiConsonant: return "ThaiConsonant";
    case CharClass::ThaiVowel: return "ThaiVowel";
    case CharClass::ThaiToneMark: return "ThaiToneMark";
    case CharClass::ThaiDigit: return "ThaiDigit";
    case CharClass::ArabicDigit: return "ArabicDigit";
    case CharClass::RepetitionMark: return "RepetitionMark";
    case CharClass::ThaiOtherSign: return "ThaiOtherSign";
    case CharClass::LatinLetter: return "LatinLetter";
    case CharClass::Whitespace: return "Whitespace";
    case CharClass::Punctuation: return "Punctuation";
    case CharClass::Other: return "Other";
  }
  return "Other";
}

namespace {

CharClass classify_thai_block(char32_t cp) {
  if (cp >= 0x0E01 && cp <= 0x0E2E) return CharClass::ThaiConsonant;
  if (cp == 0x0E2F || cp == 0x0E3F) return CharClass::ThaiOtherSign;  // paiyannoi, baht
  if (cp >= 0x0E30 && cp <= 0x0E3A) return CharClass::ThaiVowel;
  if (cp >= 0x0E40 && cp <= 0x0E45) return CharClass::ThaiVowel;
  if (cp == kMaiYamok) return CharClass::RepetitionMark;
  if (cp == 0x0E47) return CharClass::ThaiVowel;  // maitaikhu
  if (cp >= 0x0E48 && cp <= 0x0E4B) return CharClass::ThaiToneMark;
  if (cp >= 0x0E4C && cp <= 0x0E4E) return CharClass::ThaiOtherSign;  // thanthakhat, nikhahit, yamakkan
  if (cp == 0x0E4F || cp == 0x0E5A || cp == 0x0E5B) return CharClass::Punctuation;
  if (cp >= 0x0E50 && cp <= 0x0E59) return CharClass::ThaiDigit;
  return CharClass::Other;  // unassigned
}

bool is_whitespace(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205E) || cp == 0x2212 || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65);
}

}  // namespace

CharClass classify_char(char32_t cp) {
  if (cp >= 0x0E00 && cp <= 0x0E7F) return classify_thai_block(cp);
  if (cp >= U'0' && cp <= U'9') return CharClass::ArabicDigit;
  if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return CharClass::LatinLetter;
  if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return CharClass::LatinLetter;
  if (is_whitespace(cp)) return CharClass::Whitespace;
  if (is_punctuation(cp)) return CharClass::Punctuation;
  return CharClass::Other;
}

bool is_thai_combining(char32_t cp) {
  return cp == 0x0E31 || (cp >= 0x0E34 && cp <= 0x0E3A) || (cp >= 0x0E47 && cp <= 0x0E4E);
}

bool is_thai_letter(char32_t cp) {
  switch (classify_char(cp)) {
    case CharClass::ThaiConsonant:
    case CharClass::ThaiVowel:
    case CharClass::ThaiToneMark:
      return true;
    case CharClass::ThaiOtherSign:
      return cp >= 0x0E4C && cp <= 0x0E4E;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon(const std::vector<std::string>& words, LexiconInfo info) : info_(std::move(info)) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.empty()) throw LexiconError(i + 1, "empty entry");
    if (!utf8::is_valid(w)) throw LexiconError(i + 1, "invalid UTF-8");
    const std::u32string cps = utf8::to_u32(w);
    for (char32_t cp : cps) {
      if (!is_thai_letter(cp)) throw LexiconError(i + 1, "entry '" + w + "' contains a non-Thai-letter");
    }
    insert(cps);
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Lexicon Lexicon::parse(std::istream& in, std::string default_name) {
  LexiconInfo info{std::move(default_name), "0"};
  std::vector<std::string> words;
  std::vector<std::size_t> line_of;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (line_no == 1 && s.starts_with("\xEF\xBB\xBF")) s.remove_prefix(3);
    if (s.empty()) continue;
    if (s.front() == '#') {
      std::string_view body = trim(s.substr(1));
      if (body.starts_with("name:")) info.name = std::string(trim(body.substr(5)));
      if (body.starts_with("version:")) info.version = std::string(trim(body.substr(8)));
      continue;
    }
    words.emplace_back(s);
    line_of.push_back(line_no);
  }
  try {
    return Lexicon(words, std::move(info));
  } catch (const LexiconError& e) {
    // Re-anchor the error on the file line instead of the word index.
    const std::string what = e.what();
    throw LexiconError(line_of[e.line() - 1], what.substr(what.find(": ") + 2));
  }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open lexicon " + path.string());
  return parse(in, path.stem().string());
}

std::uint32_t Lexicon::child(std::uint32_t node, char32_t cp) const {
  const auto& next = nodes_[node].next;
  auto it = std::lower_bound(next.begin(), next.end(), cp,
                             [](const auto& edge, char32_t c) { return edge.first < c; });
  if (it == next.end() || it->first != cp) return 0;
  return it->second;
}

void Lexicon::insert(std::u32string_view word) {
  std::uint32_t node = 0;
  for (char32_t cp : word) {
    std::uint32_t nxt = child(node, cp);
    if (nxt == 0) {
      nxt = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      auto& edges = nodes_[node].next;
      auto it = std::lower_bound(edges.begin(), edges.end(), cp,
                                 [](const auto& edge, char32_t c) { return edge.first < c; });
      edges.insert(it, {cp, nxt});
    }
    node = nxt;
  }
  if (!nodes_[node].terminal) ++size_;
  nodes_[node].terminal = true;
}

bool Lexicon::contains(std::u32string_view word) const {
  if (word.empty()) return false;
  std::uint32_t node = 0;
  for (char32_t cp : word) {
    node = child(node, cp);
    if (node == 0) return false;
  }
  return nodes_[node].terminal;
}

bool Lexicon::contains(std::string_view word) const { return contains(utf8::to_u32(word)); }

std::vector<std::size_t> Lexicon::prefix_lengths(std::u32string_view text) const {
  std::vector<std::size_t> out;
  std::uint32_t node = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    node = child(node, text[i]);
    if (node == 0) break;
    if (nodes_[node].terminal) out.push_back(i + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Segmentation

namespace {

// Longest lexicon word at `pos` that ends on a cluster boundary; 0 if none.
std::size_t match_at(const std::u32string& cps, std::size_t pos, const Lexicon& lexicon) {
  if (is_thai_combining(cps[pos])) return 0;
  const auto lengths = lexicon.prefix_lengths(std::u32string_view(cps).substr(pos));
  for (auto it = lengths.rbegin(); it != lengths.rend(); ++it) {
    const std::size_t end = pos + *it;
    if (end == cps.size() || !is_thai_combining(cps[end])) return *it;
  }
  return 0;
}

}  // namespace

std::vector<Segment> segment(std::string_view text, const Lexicon& lexicon) {
  const auto scalars = utf8::decode(text);
  std::u32string cps;
  cps.reserve(scalars.size());
  for (const auto& s : scalars) cps.push_back(s.cp);

  auto byte_at = [&](std::size_t i) { return i < scalars.size() ? scalars[i].offset : text.size(); };

  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (const std::size_t len = match_at(cps, i, lexicon); len > 0) {
      const std::size_t b = byte_at(i), e = byte_at(i + len);
      out.push_back({std::string(text.substr(b, e - b)), b, e, SegmentKind::Known});
      i += len;
      continue;
    }
    std::size_t j = i + 1;
    while (j < cps.size() && match_at(cps, j, lexicon) == 0) ++j;
    const std::size_t b = byte_at(i), e = byte_at(j);
    out.push_back({std::string(text.substr(b, e - b)), b, e, SegmentKind::Unknown});
    i = j;
  }
  return out;
}

}  // namespace curate
