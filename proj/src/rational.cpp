#include "priorglue/rational.hpp"

#include <stdexcept>

namespace priorglue {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) { return q.get_str(); }

double approx_percent(const Rational& q) {
  const Rational scaled = q * 100;
  return scaled.get_d();
}

}  // namespace priorglue
