#include "qsym/rational.hpp"

#include "qsym/errors.hpp"

#include <cmath>

namespace qsym {

Rational rational_from_string(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw ConfigError("not a rational number: '" + text + "'");
  }
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw PreconditionError("rationalize: non-finite input");
  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    const double inv = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - std::floor(inv);
  }
  return Rational(h) / Rational(k);
}

}  // namespace qsym
