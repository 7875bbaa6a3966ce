#include "curate/utf8.hpp"

namespace curate::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool is_cont(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

char32_t decode_at(std::string_view text, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  const std::size_t left = text.size() - pos;
  len = 1;
  if (b0 < 0x80) return b0;

  std::size_t need = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return kReplacement;
  }
  if (left < need) return kReplacement;
  for (std::size_t i = 1; i < need; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if (!is_cont(b)) return kReplacement;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return kReplacement;
  len = need;
  return cp;
}

std::vector<Scalar> decode(std::string_view text) {
  std::vector<Scalar> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    const char32_t cp = decode_at(text, pos, len);
    out.push_back({cp, pos, len});
    pos += len;
  }
  return out;
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    out.push_back(decode_at(text, pos, len));
    pos += len;
  }
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) append(out, cp);
  return out;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    decode_at(text, pos, len);
    pos += len;
    ++n;
  }
  return n;
}

bool is_valid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    const char32_t cp = decode_at(text, pos, len);
    if (cp == kReplacement && !(len == 3 && text.substr(pos, 3) == "\xEF\xBF\xBD")) return false;
    pos += len;
  }
  return true;
}

char32_t last_before(std::string_view text, std::size_t end, std::size_t* start) {
  if (end == 0) {
    if (start) *start = 0;
    return 0;
  }
  std::size_t pos = end - 1;
  while (pos > 0 && end - pos < 4 && is_cont(static_cast<unsigned char>(text[pos]))) --pos;
  std::size_t len = 0;
  char32_t cp = decode_at(text, pos, len);
  if (pos + len != end) {
    // Stray continuation byte; it decodes on its own.
    pos = end - 1;
    cp = decode_at(text, pos, len);
  }
  if (start) *start = pos;
  return cp;
}

}  // namespace curate::utf8
