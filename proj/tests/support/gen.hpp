#pragma once

// Hand-rolled generators for property tests. Every generator takes the
// engine explicitly so a failing case can be replayed from its seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curate/utf8.hpp"

namespace curate::test {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

/// Random string of `len` scalars drawn from `alphabet`.
inline std::u32string random_from(Rng& rng, std::u32string_view alphabet, std::size_t len) {
  std::u32string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[pick(rng, alphabet.size())]);
  return s;
}

/// Thai scalars only: consonants, vowels, tone marks.
inline std::u32string random_thai(Rng& rng, std::size_t max_len) {
  static const std::u32string kThai = U"กขคงจฉชซญดตถทนบปผพฟมยรลวศสหอฮะัาำิีึืุูเแโใไ่้๊๋็์";
  return random_from(rng, kThai, pick(rng, max_len + 1));
}

/// Mixed text of the kind transcripts contain: Thai words, digits, a few
/// symbols, Latin words, repetition marks and whitespace.
inline std::string random_transcript(Rng& rng) {
  static const std::vector<std::string> kPieces = {
      "เก่ง", "เป็น", "อย่าง", "ๆ", "ไป", "กิน", "ข้าว", "บ้าน", "ที่", "วัน", "นาที", "บาท", "ตี", "ฟอง",
      "เบอร์", " ", " ", "  ", "-", "/", ":", ".", ",", "%", "!", "?", "(", ")", "\"", "\t",
      "website", "email", "blockchain", "OK", "app", "๑", "๒๕", "๐", "ฯ", "–", "…", "+", "×", "°",
  };
  std::string s;
  const std::size_t parts = 1 + pick(rng, 8);
  for (std::size_t i = 0; i < parts; ++i) {
    if (pick(rng, 3) == 0) {
      const std::size_t digits = 1 + pick(rng, 8);
      for (std::size_t d = 0; d < digits; ++d) s.push_back(static_cast<char>('0' + pick(rng, 10)));
    } else {
      s += kPieces[pick(rng, kPieces.size())];
    }
  }
  return s;
}

}  // namespace curate::test
