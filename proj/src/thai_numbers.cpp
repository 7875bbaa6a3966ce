#include "curate/thai_numbers.hpp"

#include <array>
#include <limits>
#include <vector>

#include "curate/errors.hpp"
#include "curate/thai_text.hpp"
#include "curate/utf8.hpp"

namespace curate {

namespace {

constexpr std::array<std::string_view, 10> kDigitWords = {
    "ศูนย์", "หนึ่ง", "สอง", "สาม", "สี่", "ห้า", "หก", "เจ็ด", "แปด", "เก้า",
};

// Place words for 10^1 .. 10^5 within a six-digit group.
constexpr std::array<std::string_view, 6> kPlaceWords = {"", "สิบ", "ร้อย", "พัน", "หมื่น", "แสน"};

constexpr std::string_view kEt = "เอ็ด";
constexpr std::string_view kYi = "ยี่";
constexpr std::string_view kMillion = "ล้าน";
constexpr std::string_view kPoint = "จุด";

constexpr std::uint64_t kGroup = 1'000'000;

// Reads 0 < group < 10^6. `standalone` is true when the whole number is this
// group alone, in which case a lone unit 1 reads หนึ่ง rather than เอ็ด.
void read_group(std::string& out, std::uint64_t group, bool standalone) {
  std::array<int, 6> d{};
  for (int i = 0; i < 6; ++i) {
    d[i] = static_cast<int>(group % 10);
    group /= 10;
  }
  const bool higher_digits = d[1] || d[2] || d[3] || d[4] || d[5];
  for (int place = 5; place >= 2; --place) {
    if (d[place] == 0) continue;
    out += kDigitWords[d[place]];
    out += kPlaceWords[place];
  }
  if (d[1] == 1) {
    out += kPlaceWords[1];
  } else if (d[1] == 2) {
    out += kYi;
    out += kPlaceWords[1];
  } else if (d[1] > 2) {
    out += kDigitWords[d[1]];
    out += kPlaceWords[1];
  }
  if (d[0] == 1 && (higher_digits || !standalone)) {
    out += kEt;
  } else if (d[0] > 0) {
    out += kDigitWords[d[0]];
  }
}

void read_nonzero(std::string& out, std::uint64_t n, bool standalone) {
  if (n >= kGroup) {
    read_nonzero(out, n / kGroup, true);
    out += kMillion;
    if (const std::uint64_t low = n % kGroup; low != 0) read_group(out, low, false);
    return;
  }
  read_group(out, n, standalone);
}

[[noreturn]] void unparseable(std::string_view words, std::string_view why) {
  throw NumberError("UnparseableWords", "cannot parse '" + std::string(words) + "': " + std::string(why));
}

enum class Tok { Digit, Et, Yi, Place, Million };

struct Token {
  Tok kind;
  int value;  // digit value, or place exponent 1..5
};

std::vector<Token> tokenize(std::string_view words) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < words.size()) {
    const std::string_view rest = words.substr(pos);
    bool matched = false;
    auto take = [&](std::string_view w, Token t) {
      if (!matched && rest.starts_with(w)) {
        out.push_back(t);
        pos += w.size();
        matched = true;
      }
    };
    for (int dgt = 0; dgt < 10; ++dgt) take(kDigitWords[dgt], {Tok::Digit, dgt});
    for (int p = 1; p < 6; ++p) take(kPlaceWords[p], {Tok::Place, p});
    take(kEt, {Tok::Et, 1});
    take(kYi, {Tok::Yi, 2});
    take(kMillion, {Tok::Million, 0});
    if (!matched) unparseable(words, "unknown word at byte " + std::to_string(pos));
  }
  return out;
}

// Parses one six-digit group from tokens [begin, end). `standalone` mirrors
// read_group. Returns 0 for an empty range.
std::uint64_t parse_group(std::string_view words, const std::vector<Token>& toks, std::size_t begin,
                          std::size_t end, bool standalone) {
  std::uint64_t value = 0;
  int last_place = 6;
  std::size_t i = begin;
  bool any = false;
  bool higher_digits = false;

  // Places 5..2: digit (1..9) followed by the place word, strictly descending.
  while (i + 1 < end && toks[i].kind == Tok::Digit && toks[i + 1].kind == Tok::Place &&
         toks[i + 1].value >= 2) {
    const int place = toks[i + 1].value;
    if (toks[i].value == 0) unparseable(words, "zero digit before a place word");
    if (place >= last_place) unparseable(words, "place words out of order");
    std::uint64_t scale = 1;
    for (int k = 0; k < place; ++k) scale *= 10;
    value += static_cast<std::uint64_t>(toks[i].value) * scale;
    last_place = place;
    any = higher_digits = true;
    i += 2;
  }

  // Tens: สิบ | ยี่สิบ | d สิบ (d in 3..9).
  if (i < end && toks[i].kind == Tok::Place && toks[i].value == 1) {
    value += 10;
    any = higher_digits = true;
    i += 1;
  } else if (i + 1 < end && toks[i].kind == Tok::Yi && toks[i + 1].kind == Tok::Place &&
             toks[i + 1].value == 1) {
    value += 20;
    any = higher_digits = true;
    i += 2;
  } else if (i + 1 < end && toks[i].kind == Tok::Digit && toks[i + 1].kind == Tok::Place &&
             toks[i + 1].value == 1) {
    if (toks[i].value < 3) unparseable(words, "tens digit must be written ยี่สิบ or สิบ");
    value += static_cast<std::uint64_t>(toks[i].value) * 10;
    any = higher_digits = true;
    i += 2;
  }

  // Unit.
  if (i < end) {
    const bool et_required = higher_digits || !standalone;
    if (toks[i].kind == Tok::Et) {
      if (!et_required) unparseable(words, "เอ็ด needs a preceding digit");
      value += 1;
    } else if (toks[i].kind == Tok::Digit && toks[i].value >= 1) {
      if (toks[i].value == 1 && et_required) unparseable(words, "unit one must read เอ็ด here");
      value += static_cast<std::uint64_t>(toks[i].value);
    } else {
      unparseable(words, "unexpected word");
    }
    any = true;
    i += 1;
  }
  if (i != end) unparseable(words, "trailing words");
  if (begin != end && !any) unparseable(words, "empty group");
  return value;
}

}  // namespace

std::string_view digit_word(int d) {
  if (d < 0 || d > 9) throw NumberError("NonDigitInput", "digit out of range");
  return kDigitWords[static_cast<std::size_t>(d)];
}

std::string read_quantity(std::uint64_t n) {
  if (n == 0) return std::string(kDigitWords[0]);
  std::string out;
  read_nonzero(out, n, true);
  return out;
}

std::string read_digits(std::string_view digits) {
  if (digits.empty()) throw NumberError("NonDigitInput", "empty digit string");
  std::string out;
  std::size_t pos = 0;
  while (pos < digits.size()) {
    std::size_t len = 0;
    const int d = digit_value(utf8::decode_at(digits, pos, len));
    if (d < 0) throw NumberError("NonDigitInput", "non-digit in '" + std::string(digits) + "'");
    out += kDigitWords[static_cast<std::size_t>(d)];
    pos += len;
  }
  return out;
}

bool digits_to_u64(std::string_view digits, std::uint64_t& out) {
  std::uint64_t v = 0;
  std::size_t pos = 0;
  if (digits.empty()) return false;
  while (pos < digits.size()) {
    std::size_t len = 0;
    const int d = digit_value(utf8::decode_at(digits, pos, len));
    if (d < 0) return false;
    if (v > (std::numeric_limits<std::uint64_t>::max() - static_cast<std::uint64_t>(d)) / 10) return false;
    v = v * 10 + static_cast<std::uint64_t>(d);
    pos += len;
  }
  out = v;
  return true;
}

std::string read_decimal(std::string_view number) {
  const auto dot = number.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == number.size()) {
    throw NumberError("NonDigitInput", "not a decimal: '" + std::string(number) + "'");
  }
  std::uint64_t whole = 0;
  if (!digits_to_u64(number.substr(0, dot), whole)) {
    throw NumberError("NonDigitInput", "bad integer part in '" + std::string(number) + "'");
  }
  std::string out = read_quantity(whole);
  out += kPoint;
  out += read_digits(number.substr(dot + 1));
  return out;
}

std::uint64_t parse_quantity(std::string_view words) {
  if (words.empty()) unparseable(words, "empty input");
  if (words == kDigitWords[0]) return 0;
  const auto toks = tokenize(words);

  // Split on ล้าน: the first group must be non-empty, later groups may be.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind == Tok::Million) {
      groups.emplace_back(start, i);
      start = i + 1;
    }
  }
  groups.emplace_back(start, toks.size());
  if (groups.front().first == groups.front().second) unparseable(words, "leading ล้าน");

  unsigned __int128 value = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto [b, e] = groups[g];
    const std::uint64_t part = parse_group(words, toks, b, e, g == 0);
    value = value * kGroup + part;
    if (value > std::numeric_limits<std::uint64_t>::max()) unparseable(words, "value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

std::string_view to_string(NumericClass c) {
  switch (c) {
    case NumericClass::ForceDigits: return "ForceDigits";
    case NumericClass::ForceQuantity: return "ForceQuantity";
    case NumericClass::Ambiguous: return "Ambiguous";
  }
  return "Ambiguous";
}

NumericClass classify_numeric_span(std::string_view digits, std::string_view before, std::string_view after) {
  auto code_sep = [](char32_t c) { return c == U'-' || c == U'/' || c == U':'; };
  const char32_t prev = utf8::last_before(before, before.size());
  std::size_t len = 0;
  const char32_t next = after.empty() ? 0 : utf8::decode_at(after, 0, len);
  const bool code_like = code_sep(prev) || code_sep(next);

  const std::size_t n = utf8::length(digits);
  std::size_t first_len = 0;
  const bool leading_zero = n >= 2 && digit_value(utf8::decode_at(digits, 0, first_len)) == 0;

  if (leading_zero || n >= 7 || code_like) return NumericClass::ForceDigits;
  if (n <= 2) return NumericClass::ForceQuantity;
  return NumericClass::Ambiguous;
}

}  // namespace curate
