#pragma once

#include <gmpxx.h>

#include <string>

namespace priorglue {

// Exact rational in lowest terms. All masses and probabilities use this type.
using Rational = mpq_class;

/// Builds num/den in canonical form. den must be nonzero.
Rational make_rational(long num, long den = 1);

/// "3/5", "1", "0".
std::string to_fraction_string(const Rational& q);

/// Human-readable percentage, approximate (e.g. 3/8 -> 37.5).
double approx_percent(const Rational& q);

}  // namespace priorglue
