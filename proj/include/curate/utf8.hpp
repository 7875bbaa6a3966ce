#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace curate::utf8 {

/// One decoded scalar and the byte range it occupies in the source.
struct Scalar {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

/// Decodes `text`. Malformed bytes decode as U+FFFD, one byte each, so the
/// byte ranges always tile the input.
std::vector<Scalar> decode(std::string_view text);

std::u32string to_u32(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view text);

/// Number of scalar values in `text`.
std::size_t length(std::string_view text);

bool is_valid(std::string_view text);

/// Decodes the scalar starting at byte `pos`; `len` receives its byte length.
char32_t decode_at(std::string_view text, std::size_t pos, std::size_t& len);

/// Scalar that ends at byte `end` (exclusive), or 0 when `end` is 0.
char32_t last_before(std::string_view text, std::size_t end, std::size_t* start = nullptr);

}  // namespace curate::utf8
