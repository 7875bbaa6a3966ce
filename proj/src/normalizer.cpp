#include "curate/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "curate/errors.hpp"
#include "curate/thai_numbers.hpp"
#include "curate/utf8.hpp"

namespace curate {

std::string_view to_string(NumericPolicy p) {
  switch (p) {
    case NumericPolicy::Quantity: return "quantity";
    case NumericPolicy::Digits: return "digits";
    case NumericPolicy::Auto: return "auto";
  }
  return "auto";
}

std::string_view to_string(SymbolSense s) {
  switch (s) {
    case SymbolSense::Range: return "range";
    case SymbolSense::Minus: return "minus";
    case SymbolSense::Separator: return "separator";
  }
  return "range";
}

std::string_view to_string(FlagKind k) {
  switch (k) {
    case FlagKind::NumericReading: return "NumericReading";
    case FlagKind::SymbolSense: return "SymbolSense";
    case FlagKind::UnknownForeignWord: return "UnknownForeignWord";
    case FlagKind::OrphanRepetitionMark: return "OrphanRepetitionMark";
  }
  return "NumericReading";
}

std::string_view to_string(ComplexityKind k) {
  switch (k) {
    case ComplexityKind::ArabicDigit: return "ArabicDigit";
    case ComplexityKind::ThaiDigit: return "ThaiDigit";
    case ComplexityKind::Punctuation: return "Punctuation";
  }
  return "Punctuation";
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::optional<NumericPolicy> parse_numeric_policy(std::string_view s) {
  for (auto p : {NumericPolicy::Quantity, NumericPolicy::Digits, NumericPolicy::Auto}) {
    if (iequals(to_string(p), s)) return p;
  }
  return std::nullopt;
}

std::optional<SymbolSense> parse_symbol_sense(std::string_view s) {
  for (auto x : {SymbolSense::Range, SymbolSense::Minus, SymbolSense::Separator}) {
    if (iequals(to_string(x), s)) return x;
  }
  return std::nullopt;
}

std::optional<FlagKind> parse_flag_kind(std::string_view s) {
  for (auto k : {FlagKind::NumericReading, FlagKind::SymbolSense, FlagKind::UnknownForeignWord,
                 FlagKind::OrphanRepetitionMark}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Transliteration dictionary

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool all_of_scalars(std::string_view s, bool (*pred)(char32_t)) {
  if (s.empty() || !utf8::is_valid(s)) return false;
  for (char32_t cp : utf8::to_u32(s)) {
    if (!pred(cp)) return false;
  }
  return true;
}

bool is_latin(char32_t cp) { return classify_char(cp) == CharClass::LatinLetter; }

}  // namespace

TranslitDict::TranslitDict(std::map<std::string, std::string> entries) {
  for (auto& [key, value] : entries) {
    if (!all_of_scalars(key, is_latin)) throw Error("TranslitError", "key '" + key + "' is not a Latin token");
    if (!all_of_scalars(value, is_thai_letter)) {
      throw Error("TranslitError", "value for '" + key + "' must contain only Thai letters");
    }
    entries_[ascii_lower(key)] = value;
  }
}

TranslitDict TranslitDict::parse(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error("TranslitError", "line " + std::to_string(line_no) + ": expected latin<TAB>thai");
    }
    entries[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return TranslitDict(std::move(entries));
}

TranslitDict TranslitDict::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open transliteration dictionary " + path.string());
  return parse(in);
}

const std::string* TranslitDict::lookup(std::string_view token) const {
  auto it = entries_.find(ascii_lower(token));
  return it == entries_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Rewriter: builds one stage's output while recording trace steps and an
// input->output boundary map used to carry earlier flags forward.

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

class Rewriter {
 public:
  Rewriter(std::string_view input, std::string rule, std::vector<TraceStep>* trace)
      : in_(input),
        rule_(std::move(rule)),
        trace_(trace),
        smap_(input.size() + 1, kUnset),
        emap_(input.size() + 1, kUnset) {}

  std::size_t pos() const { return pos_; }
  const std::string& out() const { return out_; }

  void copy_to(std::size_t end) {
    for (std::size_t b = pos_; b < end; ++b) smap_[b] = emap_[b] = out_.size() + (b - pos_);
    out_.append(in_.substr(pos_, end - pos_));
    pos_ = end;
  }

  // Replaces the last `reclaim` output bytes and the next `consume` input
  // bytes with `repl`. Returns the output span of `repl`.
  Span replace(std::size_t consume, std::string_view repl, std::size_t reclaim = 0,
               std::string_view rule = {}) {
    const std::size_t os = out_.size() - reclaim;
    const std::size_t oe = os + repl.size();

    TraceStep step{rule.empty() ? rule_ : std::string(rule), os, reclaim + consume,
                   out_.substr(os) + std::string(in_.substr(pos_, consume)), std::string(repl)};

    std::size_t b_start = pos_;
    if (reclaim > 0) {
      while (b_start > 0 && smap_[b_start - 1] != kUnset && smap_[b_start - 1] >= os) --b_start;
    }
    for (std::size_t b = b_start; b < pos_ + consume; ++b) {
      smap_[b] = os;
      emap_[b] = (b == b_start) ? os : oe;
    }
    for (auto& f : pending_) {
      if (f.span.end > os) {
        f.span.begin = std::min(f.span.begin, os);
        f.span.end = oe;
      }
    }

    out_.resize(os);
    out_ += repl;
    pos_ += consume;
    if (trace_ && step.input != step.output) trace_->push_back(std::move(step));
    return {os, oe};
  }

  void flag(FlagKind kind, Span span, std::string source, std::string note) {
    pending_.push_back({kind, span, std::move(source), std::move(note)});
  }

  // Copies the remaining input, carries `flags` into output coordinates and
  // appends this stage's own flags.
  std::string finish(std::vector<AmbiguityFlag>& flags) {
    copy_to(in_.size());
    smap_[in_.size()] = emap_[in_.size()] = out_.size();
    for (auto& f : flags) {
      const std::size_t b = smap_[std::min(f.span.begin, in_.size())];
      const std::size_t e =
          f.span.end == f.span.begin ? b : emap_[std::min(f.span.end, in_.size())];
      f.span = {b, std::max(b, e)};
    }
    for (auto& f : pending_) flags.push_back(std::move(f));
    pending_.clear();
    return std::move(out_);
  }

 private:
  std::string_view in_;
  std::string rule_;
  std::vector<TraceStep>* trace_;
  std::vector<std::size_t> smap_;
  std::vector<std::size_t> emap_;
  std::vector<AmbiguityFlag> pending_;
  std::string out_;
  std::size_t pos_ = 0;
};

using Scalars = std::vector<utf8::Scalar>;

std::size_t byte_at(const Scalars& sc, std::size_t i, std::size_t total) {
  return i < sc.size() ? sc[i].offset : total;
}

char32_t cp_at(const Scalars& sc, std::size_t i) { return i < sc.size() ? sc[i].cp : 0; }

bool is_digit_at(const Scalars& sc, std::size_t i) { return i < sc.size() && is_digit(sc[i].cp); }

std::size_t digit_run_end(const Scalars& sc, std::size_t i) {
  while (i < sc.size() && is_digit(sc[i].cp)) ++i;
  return i;
}

std::string ascii_digits(const Scalars& sc, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (const int d = digit_value(sc[i].cp); d >= 0) out.push_back(static_cast<char>('0' + d));
  }
  return out;
}

// Spoken-form output of a numeric or symbol span joins directly onto Thai
// letters: a single space between the span and a Thai letter is absorbed.
struct Absorb {
  std::size_t reclaim = 0;
  std::size_t extra_consume = 0;
};

Absorb absorb_spaces(const Scalars& sc, std::size_t first, std::size_t last, const std::string& out) {
  Absorb a;
  if (first >= 2 && sc[first - 1].cp == U' ' && is_thai_letter(sc[first - 2].cp) && !out.empty() &&
      out.back() == ' ') {
    a.reclaim = 1;
  }
  if (last + 1 < sc.size() && sc[last].cp == U' ' && is_thai_letter(sc[last + 1].cp)) a.extra_consume = 1;
  return a;
}

// ---------------------------------------------------------------------------
// Stage 1: whitespace and punctuation canonicalization

char32_t canonical_variant(char32_t cp) {
  switch (cp) {
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2212: case 0xFE63: case 0xFF0D:
      return U'-';
    case 0xFF1A: return U':';
    case 0xFF0F: return U'/';
    case 0xFF0E: return U'.';
    case 0xFF0C: return U',';
    case 0xFF05: return U'%';
    default: return cp;
  }
}

bool keeps_next_to_digit(char32_t cp) {
  switch (cp) {
    case U'%': case U'+': case U'=': case U'*': case U'$': case U'#': case U'@': case U'&':
    case U'<': case U'>': case U'^': case U'~': case 0xB0: case 0xD7: case 0xF7:
      return true;
    default:
      return false;
  }
}

std::string canonicalize(std::string_view in, const NormConfig& cfg, std::vector<TraceStep>& trace,
                         std::vector<AmbiguityFlag>& flags) {
  const Scalars sc = utf8::decode(in);
  const std::size_t n = sc.size();
  std::vector<char32_t> mapped(n);
  for (std::size_t i = 0; i < n; ++i) mapped[i] = canonical_variant(sc[i].cp);

  auto digit = [&](std::size_t i) { return i < n && is_digit(mapped[i]); };
  auto spaced_digit = [&](std::size_t i, int dir) {
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) + dir; k >= 0 && k < static_cast<std::ptrdiff_t>(n);
         k += dir) {
      const auto cls = classify_char(mapped[static_cast<std::size_t>(k)]);
      if (cls == CharClass::Whitespace) continue;
      return is_digit(mapped[static_cast<std::size_t>(k)]);
    }
    return false;
  };

  std::vector<bool> spacey(n, false);
  std::vector<bool> is_punct(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const char32_t cp = mapped[i];
    const CharClass cls = classify_char(cp);
    if (cls == CharClass::Whitespace || cp < 0x20 || cp == 0x7F) {
      spacey[i] = true;
      continue;
    }
    if (cls != CharClass::Punctuation || cfg.whitelist.find(cp) != std::u32string::npos) continue;
    const bool prev = i > 0 && digit(i - 1);
    const bool next = digit(i + 1);
    bool keep = false;
    if (cp == U'-') {
      keep = prev || next || (spaced_digit(i, -1) && spaced_digit(i, +1));
    } else if (cp == U'.' || cp == U',' || cp == U'/' || cp == U':') {
      keep = prev && next;
    } else if (keeps_next_to_digit(cp)) {
      keep = prev || next;
    }
    if (!keep) spacey[i] = is_punct[i] = true;
  }

  Rewriter rw(in, "whitespace", &trace);
  std::size_t i = 0;
  while (i < n) {
    if (spacey[i]) {
      std::size_t j = i;
      bool any_punct = false;
      while (j < n && spacey[j]) any_punct |= is_punct[j++];
      rw.copy_to(sc[i].offset);
      const std::size_t bytes = byte_at(sc, j, in.size()) - sc[i].offset;
      const char* rule = any_punct ? "punctuation" : "whitespace";
      if (i == 0 || j == n) {
        rw.replace(bytes, "", 0, rule);
      } else if (!(j == i + 1 && sc[i].cp == U' ')) {
        rw.replace(bytes, " ", 0, rule);
      }
      i = j;
      continue;
    }
    if (mapped[i] != sc[i].cp) {
      rw.copy_to(sc[i].offset);
      std::string repl;
      utf8::append(repl, mapped[i]);
      rw.replace(sc[i].length, repl, 0, "punctuation");
    }
    ++i;
  }
  return rw.finish(flags);
}

// ---------------------------------------------------------------------------
// Stage 2: digit-dash-digit symbols

bool blocks_symbol(char32_t cp) { return cp == U'.' || cp == U',' || cp == U'/' || cp == U':'; }

// Scans a digit-run (spaces '-' spaces digit-run)+ chain starting at `i`.
// Returns the scalar index one past the last digit, or `i` if no chain.
std::size_t symbol_chain_end(const Scalars& sc, std::size_t i) {
  std::size_t end = digit_run_end(sc, i);
  std::size_t best = i;
  for (;;) {
    std::size_t k = end;
    while (cp_at(sc, k) == U' ') ++k;
    if (cp_at(sc, k) != U'-') break;
    ++k;
    while (cp_at(sc, k) == U' ') ++k;
    if (!is_digit_at(sc, k)) break;
    end = digit_run_end(sc, k);
    best = end;
  }
  return best;
}

std::string alternatives_note(std::string_view span, SymbolSense used) {
  std::string note = "read as " + std::string(to_string(used)) + ";";
  for (auto s : {SymbolSense::Range, SymbolSense::Minus, SymbolSense::Separator}) {
    if (s == used) continue;
    note += " " + std::string(to_string(s)) + "=" + resolve_symbol(span, s);
  }
  return note;
}

std::string resolve_symbols(std::string_view in, const NormConfig& cfg, std::vector<TraceStep>& trace,
                            std::vector<AmbiguityFlag>& flags) {
  const Scalars sc = utf8::decode(in);
  Rewriter rw(in, "symbol", &trace);
  std::size_t i = 0;
  while (i < sc.size()) {
    const bool run_start = is_digit(sc[i].cp) && (i == 0 || !is_digit(sc[i - 1].cp));
    if (!run_start) {
      ++i;
      continue;
    }
    const std::size_t end = symbol_chain_end(sc, i);
    if (end == i || (i > 0 && blocks_symbol(sc[i - 1].cp)) || blocks_symbol(cp_at(sc, end))) {
      i = digit_run_end(sc, i);
      continue;
    }
    const std::size_t b = sc[i].offset;
    const std::size_t e = byte_at(sc, end, in.size());
    const std::string_view span = in.substr(b, e - b);
    const std::string words = resolve_symbol(span, cfg.symbol_default);

    rw.copy_to(b);
    const Absorb a = absorb_spaces(sc, i, end, rw.out());
    const Span out_span = rw.replace(e - b + a.extra_consume, words, a.reclaim);
    rw.flag(FlagKind::SymbolSense, out_span, std::string(span), alternatives_note(span, cfg.symbol_default));
    i = end + a.extra_consume;
  }
  return rw.finish(flags);
}

// ---------------------------------------------------------------------------
// Stage 3: numbers

struct NumberToken {
  std::size_t end = 0;       // scalar index past the token
  std::string int_digits;    // ASCII
  std::string frac_digits;   // ASCII, decimal only
  bool grouped = false;      // 1,234,567
  bool decimal = false;
};

NumberToken scan_number(const Scalars& sc, std::size_t i) {
  NumberToken t;
  std::size_t a = digit_run_end(sc, i);
  t.int_digits = ascii_digits(sc, i, a);
  t.end = a;

  if (a - i <= 3) {
    std::size_t k = a;
    std::string grouped = t.int_digits;
    bool any = false;
    while (cp_at(sc, k) == U',' && digit_run_end(sc, k + 1) == k + 4) {
      grouped += ascii_digits(sc, k + 1, k + 4);
      k += 4;
      any = true;
    }
    if (any) {
      t.grouped = true;
      t.int_digits = std::move(grouped);
      t.end = k;
    }
  }

  if (cp_at(sc, t.end) == U'.' && is_digit_at(sc, t.end + 1)) {
    const std::size_t f0 = t.end + 1;
    const std::size_t f1 = digit_run_end(sc, f0);
    const bool dotted_chain = cp_at(sc, f1) == U'.' && is_digit_at(sc, f1 + 1);
    if (!dotted_chain) {
      t.decimal = true;
      t.frac_digits = ascii_digits(sc, f0, f1);
      t.end = f1;
    }
  }
  return t;
}

std::string convert_numbers(std::string_view in, const NormConfig& cfg, std::vector<TraceStep>& trace,
                            std::vector<AmbiguityFlag>& flags) {
  const Scalars sc = utf8::decode(in);
  Rewriter rw(in, "number", &trace);
  std::size_t i = 0;
  while (i < sc.size()) {
    const bool run_start = is_digit(sc[i].cp) && (i == 0 || !is_digit(sc[i - 1].cp));
    if (!run_start) {
      ++i;
      continue;
    }
    const NumberToken tok = scan_number(sc, i);
    const std::size_t b = sc[i].offset;
    const std::size_t e = byte_at(sc, tok.end, in.size());
    const std::string source(in.substr(b, e - b));

    std::string words;
    std::optional<std::string> note;
    std::uint64_t value = 0;
    const bool fits = digits_to_u64(tok.int_digits, value);

    if (tok.decimal) {
      if (fits) {
        words = read_decimal(tok.int_digits + "." + tok.frac_digits);
      } else {
        words = read_digits(tok.int_digits) + "จุด" + read_digits(tok.frac_digits);
        note = "integer part too long for a quantity reading; read digit by digit";
      }
    } else if (tok.grouped) {
      if (fits) {
        words = read_quantity(value);
      } else {
        words = read_digits(tok.int_digits);
        note = "too long for a quantity reading; read digit by digit";
      }
    } else {
      const std::string_view digits = in.substr(b, e - b);
      NumericPolicy policy = cfg.numeric_policy;
      if (policy == NumericPolicy::Auto) {
        const auto cls = classify_numeric_span(digits, in.substr(0, b), in.substr(e));
        if (cls == NumericClass::ForceQuantity) {
          policy = NumericPolicy::Quantity;
        } else {
          policy = NumericPolicy::Digits;
          if (cls == NumericClass::Ambiguous) {
            note = "ambiguous between quantity (" + read_quantity(value) + ") and digit reading";
          }
        }
      }
      if (policy == NumericPolicy::Quantity && fits) {
        words = read_quantity(value);
      } else {
        words = read_digits(digits);
        if (policy == NumericPolicy::Quantity) note = "too long for a quantity reading; read digit by digit";
      }
    }

    rw.copy_to(b);
    const Absorb a = absorb_spaces(sc, i, tok.end, rw.out());
    const Span out_span = rw.replace(e - b + a.extra_consume, words, a.reclaim);
    if (note) rw.flag(FlagKind::NumericReading, out_span, source, *note);
    i = tok.end + a.extra_consume;
  }
  return rw.finish(flags);
}

// ---------------------------------------------------------------------------
// Stage 4: mai yamok

std::string expand_repetition(std::string_view in, const Lexicon& lexicon, std::vector<TraceStep>* trace,
                              std::vector<AmbiguityFlag>& flags) {
  Rewriter rw(in, "repetition", trace);
  std::size_t pos = 0;
  while (pos < in.size()) {
    std::size_t len = 0;
    const char32_t cp = utf8::decode_at(in, pos, len);
    if (cp != kMaiYamok) {
      pos += len;
      continue;
    }
    rw.copy_to(pos);
    std::size_t consume = len;
    while (pos + consume < in.size() && in[pos + consume] == ' ') ++consume;
    const bool more = pos + consume < in.size();

    const std::string& out = rw.out();
    std::size_t trimmed = out.size();
    while (trimmed > 0 && out[trimmed - 1] == ' ') --trimmed;
    std::size_t run_start = trimmed;
    while (run_start > 0) {
      std::size_t s = 0;
      const char32_t prev = utf8::last_before(out, run_start, &s);
      if (!is_thai_letter(prev)) break;
      run_start = s;
    }

    if (run_start == trimmed) {
      const std::string repl = (trimmed > 0 && more) ? " " : "";
      const Span span = rw.replace(consume, repl, out.size() - trimmed);
      rw.flag(FlagKind::OrphanRepetitionMark, {span.begin, span.begin}, "ๆ",
              "no preceding Thai word to repeat; mark dropped");
      pos += consume;
      continue;
    }

    const std::string run = out.substr(run_start, trimmed - run_start);
    const std::u32string cps = utf8::to_u32(run);
    std::size_t unit_byte = std::string::npos;
    std::size_t byte = 0;
    for (std::size_t k = 0; k < cps.size(); ++k) {
      if (!is_thai_combining(cps[k]) && lexicon.contains(std::u32string_view(cps).substr(k))) {
        unit_byte = byte;
        break;
      }
      std::string tmp;
      utf8::append(tmp, cps[k]);
      byte += tmp.size();
    }
    const bool known = unit_byte != std::string::npos;
    if (!known) unit_byte = 0;

    const std::size_t unit_start = run_start + unit_byte;
    const std::string unit = out.substr(unit_start, trimmed - unit_start);
    std::string repl;
    if (unit_start > 0 && out[unit_start - 1] != ' ') repl += ' ';
    repl += unit;
    repl += ' ';
    repl += unit;
    if (more) repl += ' ';
    const std::size_t reclaim = out.size() - unit_start;
    const Span span = rw.replace(consume, repl, reclaim);
    if (!known) {
      rw.flag(FlagKind::OrphanRepetitionMark, span, unit + "ๆ",
              "no lexicon word ends before the mark; repeated the preceding Thai run");
    }
    pos += consume;
  }
  return rw.finish(flags);
}

// ---------------------------------------------------------------------------
// Stage 5: foreign words

std::string transliterate_stage(std::string_view in, const TranslitDict& dict, std::vector<TraceStep>* trace,
                                std::vector<AmbiguityFlag>& flags) {
  const Scalars sc = utf8::decode(in);
  Rewriter rw(in, "foreign_word", trace);
  std::size_t i = 0;
  while (i < sc.size()) {
    if (classify_char(sc[i].cp) != CharClass::LatinLetter) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < sc.size() && classify_char(sc[j].cp) == CharClass::LatinLetter) ++j;
    const std::size_t b = sc[i].offset;
    const std::size_t e = byte_at(sc, j, in.size());
    const std::string token(in.substr(b, e - b));
    rw.copy_to(b);
    if (const std::string* thai = dict.lookup(token)) {
      rw.replace(e - b, *thai);
    } else {
      const std::size_t os = rw.out().size();
      rw.copy_to(e);
      rw.flag(FlagKind::UnknownForeignWord, {os, os + token.size()}, token,
              "no transliteration in dictionary");
    }
    i = j;
  }
  return rw.finish(flags);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations

NormalizedText normalize(std::string_view raw, const NormConfig& config) {
  NormalizedText result;
  auto& trace = result.trace;
  auto& flags = result.flags;

  std::string text = canonicalize(raw, config, trace, flags);
  text = resolve_symbols(text, config, trace, flags);
  text = convert_numbers(text, config, trace, flags);
  text = expand_repetition(text, *config.lexicon, &trace, flags);
  text = transliterate_stage(text, *config.translit, &trace, flags);

  for (const auto& reason : is_complex(text, config.whitelist).reasons) {
    if (reason.kind == ComplexityKind::Punctuation) {
      flags.push_back({FlagKind::SymbolSense, reason.span, reason.text, "unresolved punctuation"});
    } else {
      flags.push_back({FlagKind::NumericReading, reason.span, reason.text, "unconverted digits"});
    }
  }
  std::stable_sort(flags.begin(), flags.end(),
                   [](const AmbiguityFlag& a, const AmbiguityFlag& b) { return a.span.begin < b.span.begin; });
  result.text = std::move(text);
  return result;
}

RewriteResult expand_mai_yamok(std::string_view text, const Lexicon& lexicon) {
  RewriteResult r;
  r.text = expand_repetition(text, lexicon, nullptr, r.flags);
  return r;
}

RewriteResult transliterate(std::string_view text, const TranslitDict& dict) {
  RewriteResult r;
  r.text = transliterate_stage(text, dict, nullptr, r.flags);
  return r;
}

std::string resolve_symbol(std::string_view span, SymbolSense sense) {
  const Scalars sc = utf8::decode(span);
  std::vector<std::string_view> operands;
  std::size_t i = 0;
  auto skip_spaces = [&] {
    while (i < sc.size() && sc[i].cp == U' ') ++i;
  };
  auto take_operand = [&] {
    const std::size_t b = i;
    i = digit_run_end(sc, i);
    if (i == b) throw SymbolError("MalformedSpan", "expected digits in '" + std::string(span) + "'");
    operands.push_back(span.substr(sc[b].offset, byte_at(sc, i, span.size()) - sc[b].offset));
  };

  skip_spaces();
  take_operand();
  while (true) {
    skip_spaces();
    if (i == sc.size()) break;
    const char32_t sym = canonical_variant(sc[i].cp);
    if (sym != U'-') {
      std::string s;
      utf8::append(s, sc[i].cp);
      throw SymbolError("UnsupportedSymbol", "unsupported connector '" + s + "' in '" + std::string(span) + "'");
    }
    ++i;
    skip_spaces();
    take_operand();
  }
  if (operands.size() < 2) {
    throw SymbolError("MalformedSpan", "expected digits-symbol-digits in '" + std::string(span) + "'");
  }

  std::string_view connector;
  switch (sense) {
    case SymbolSense::Range: connector = "ถึง"; break;
    case SymbolSense::Minus: connector = "ลบ"; break;
    case SymbolSense::Separator: connector = "ขีด"; break;
  }

  std::string out;
  for (std::size_t k = 0; k < operands.size(); ++k) {
    if (k) out += connector;
    const std::string_view op = operands[k];
    std::uint64_t value = 0;
    const bool quantity = sense != SymbolSense::Separator &&
                          classify_numeric_span(op) != NumericClass::ForceDigits && digits_to_u64(op, value);
    out += quantity ? read_quantity(value) : read_digits(op);
  }
  return out;
}

ComplexityReport is_complex(std::string_view text, std::u32string_view whitelist) {
  ComplexityReport report;
  std::optional<ComplexityReason> open;
  auto close = [&] {
    if (open) report.reasons.push_back(std::move(*open));
    open.reset();
  };
  for (const auto& s : utf8::decode(text)) {
    std::optional<ComplexityKind> kind;
    switch (classify_char(s.cp)) {
      case CharClass::ArabicDigit: kind = ComplexityKind::ArabicDigit; break;
      case CharClass::ThaiDigit: kind = ComplexityKind::ThaiDigit; break;
      case CharClass::Punctuation:
        if (whitelist.find(s.cp) == std::u32string_view::npos) kind = ComplexityKind::Punctuation;
        break;
      default: break;
    }
    if (!kind || (open && (open->kind != *kind || open->span.end != s.offset))) close();
    if (!kind) continue;
    if (!open) open = ComplexityReason{*kind, {s.offset, s.offset}, {}};
    open->span.end = s.offset + s.length;
    open->text.append(text.substr(s.offset, s.length));
  }
  close();
  report.complex = !report.reasons.empty();
  return report;
}

}  // namespace curate
