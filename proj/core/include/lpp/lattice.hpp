#pragma once

#include <compare>
#include <cstdint>

namespace lpp {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  constexpr LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y}; }
  constexpr LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y}; }
};

// Anti-diagonal coordinates: phi = x + y is "time", psi = x - y is "space".
// phi and psi always share parity.
struct DiagCoord {
  std::int64_t phi = 0;
  std::int64_t psi = 0;

  friend constexpr bool operator==(const DiagCoord&, const DiagCoord&) = default;
};

constexpr DiagCoord to_diag(LatticePoint p) { return {p.x + p.y, p.x - p.y}; }

// Requires phi and psi of equal parity.
constexpr LatticePoint from_diag(DiagCoord d) {
  return {(d.phi + d.psi) / 2, (d.phi - d.psi) / 2};
}

// Coordinatewise partial order.
constexpr bool leq(LatticePoint u, LatticePoint v) { return u.x <= v.x && u.y <= v.y; }

// Axis-aligned region in (phi, psi), all bounds inclusive. Serves as the
// strip around the diagonal, its blocks, and any sub-rectangle of them.
struct StripSpec {
  std::int64_t psi_min = 0;
  std::int64_t psi_max = 0;
  std::int64_t phi_min = 0;
  std::int64_t phi_max = 0;

  friend constexpr bool operator==(const StripSpec&, const StripSpec&) = default;

  constexpr bool contains(DiagCoord d) const {
    return d.phi >= phi_min && d.phi <= phi_max && d.psi >= psi_min && d.psi <= psi_max;
  }
  constexpr bool contains(LatticePoint p) const { return contains(to_diag(p)); }

  // Set-inclusion of the integer boxes.
  constexpr bool within(const StripSpec& outer) const {
    return psi_min >= outer.psi_min && psi_max <= outer.psi_max && phi_min >= outer.phi_min &&
           phi_max <= outer.phi_max;
  }
};

// n^{2/3} computed as cbrt(n)^2 so perfect cubes come out exact.
double n_two_thirds(std::int64_t n);

// c * n^{2/3}, snapped to the nearest integer when within 1e-9 relative of it.
// Keeps 0.5 * 1000^{2/3} from landing on 49.999...
double scaled_length(std::int64_t n, double c);

// floor(c * n^{2/3}) with the snapping of scaled_length.
std::int64_t scaled_width(std::int64_t n, double c);

// The strip |psi| <= delta n^{2/3}, 0 <= phi <= 2n. Non-integer widths are
// floored; the effective half-width is psi_max.
// Throws InvalidParams if n < 1 or delta <= 0.
StripSpec strip_for(std::int64_t n, double delta);

}  // namespace lpp
