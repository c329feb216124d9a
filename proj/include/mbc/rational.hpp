#ifndef MBC_RATIONAL_HPP
#define MBC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mbc {

/// Exact rational amount. All solver state (estates, claims, awards) is kept
/// exact; floating point appears only in sampled-mode dispersion reporting.
using Rat = mpq_class;

/// Builds a canonical rational from an integer numerator/denominator pair.
Rat make_rat(long num, long den = 1);

/// Parses "3", "-2", "3.25" or "13/4". Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rat parse_rational(std::string_view text);

/// Lowest-terms rendering: "13/4", or plain "3" when the denominator is 1.
std::string format_rational(const Rat& value);

/// Fixed-point rendering with `digits` fractional digits, rounded half away
/// from zero.
std::string format_decimal(const Rat& value, int digits);

double rat_to_double(const Rat& value);

/// Largest integer <= value.
Rat rat_floor(const Rat& value);

}  // namespace mbc

#endif  // MBC_RATIONAL_HPP
