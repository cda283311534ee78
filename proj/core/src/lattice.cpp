#include "lpp/lattice.hpp"

#include <cmath>

#include "lpp/errors.hpp"

namespace lpp {

double n_two_thirds(std::int64_t n) {
  const double c = std::cbrt(static_cast<double>(n));
  return c * c;
}

double scaled_length(std::int64_t n, double c) {
  const double v = c * n_two_thirds(n);
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return r;
  return v;
}

std::int64_t scaled_width(std::int64_t n, double c) {
  return static_cast<std::int64_t>(std::floor(scaled_length(n, c)));
}

StripSpec strip_for(std::int64_t n, double delta) {
  if (n < 1) throw InvalidParams("strip_for: n must be >= 1");
  if (!(delta > 0.0)) throw InvalidParams("strip_for: delta must be > 0");
  const std::int64_t w = scaled_width(n, delta);
  return StripSpec{-w, w, 0, 2 * n};
}

}  // namespace lpp
