#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace curenet {

/// Exact rational number. All cut sizes and fairness tests use it.
using Rational = mpq_class;

/// Parses "0.25", "-3", "1e-2", "3/4" into an exact rational.
/// Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

/// Shortest exact decimal rendering when the denominator divides a power of
/// ten, otherwise "p/q".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion of a finite double.
Rational from_double(double value);

/// floor(value * denominator) / denominator and the ceiling counterpart.
Rational round_down(double value, std::int64_t denominator);
Rational round_up(double value, std::int64_t denominator);

/// Returns the value as (numerator, denominator) when both fit in int64.
std::optional<std::pair<std::int64_t, std::int64_t>> to_int64_pair(
    const Rational& value);

/// True iff the reduced denominator is at most `limit`.
bool denominator_at_most(const Rational& value, std::uint64_t limit);

}  // namespace curenet
