#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace curate {

/// Thai cardinal reading, e.g. 10150 -> หนึ่งหมื่นหนึ่งร้อยห้าสิบ.
/// Zero groups are omitted, a unit 1 in a multi-digit number reads เอ็ด,
/// tens 2 reads ยี่ and tens 1 is a bare สิบ. Groups of six digits above
/// the first are joined with ล้าน. No spaces in the output.
std::string read_quantity(std::uint64_t n);

/// Digit-by-digit reading of Arabic or Thai digits, concatenated.
/// Throws NumberError("NonDigitInput") if `digits` is empty or contains
/// anything else.
std::string read_digits(std::string_view digits);

/// Integer part as a quantity, จุด, then fractional digits one by one.
/// Expects "<digits>.<digits>"; throws NumberError otherwise.
std::string read_decimal(std::string_view number);

/// Strict inverse of read_quantity. Throws NumberError("UnparseableWords")
/// for any string outside the image of read_quantity, including values that
/// overflow 64 bits.
std::uint64_t parse_quantity(std::string_view words);

/// Word for a single digit 0-9.
std::string_view digit_word(int d);

enum class NumericClass { ForceDigits, ForceQuantity, Ambiguous };

std::string_view to_string(NumericClass c);

/// Decides how a bare run of digits should be read from the characters
/// around it. `before`/`after` are the neighbouring text (only the adjacent
/// character is inspected). Leading zero, length >= 7 or an adjacent
/// '-', '/' or ':' force a digit reading; otherwise up to two digits reads
/// as a quantity and everything else is ambiguous.
NumericClass classify_numeric_span(std::string_view digits, std::string_view before = {},
                                   std::string_view after = {});

/// Numeric value of a digit run (Arabic or Thai), if it fits in 64 bits.
bool digits_to_u64(std::string_view digits, std::uint64_t& out);

}  // namespace curate
