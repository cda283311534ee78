#pragma once

#include <cstdint>
#include <vector>

#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"

namespace lpp {

// Up-right path from vertices.front() (a source) to vertices.back().
struct Geodesic {
  std::vector<LatticePoint> vertices;
  // Exact ties met while backtracking; zero almost surely for continuous weights.
  std::uint64_t ties = 0;
};

// Transversal position of a path, one psi per anti-diagonal:
// psis[t - phi0] is psi of the path's unique point on the line phi = t.
struct Profile {
  std::int64_t phi0 = 0;
  std::vector<std::int64_t> psis;

  std::int64_t phi_last() const { return phi0 + static_cast<std::int64_t>(psis.size()) - 1; }
};

// Follows predecessor bits from target back to a source. Throws NoPath.
Geodesic backtrack(const DpTable& table, LatticePoint target);

// Sum of weights over the path under `conv`, recomputed from the table's field.
double path_weight(const DpTable& table, const Geodesic& g, PassageConvention conv);

Profile profile(const Geodesic& g);

// Profile straight from the table without materialising the vertex list.
Profile profile(const DpTable& table, LatticePoint target);

std::int64_t sup_abs(const Profile& p);

// n^{-2/3} times the linear interpolation of psis at 2ns.
// Requires a profile from 0 to (n, n); throws DomainError for s outside [0, 1].
double pi_eval(const Profile& p, std::int64_t n, double s);

// Profile value at time t. Throws DomainError outside the profile's range.
std::int64_t one_point(const Profile& p, std::int64_t t);

bool in_strip(const Profile& p, const StripSpec& strip);

// Geodesic from 0 to (n, n) in `field`, returned as a profile.
Profile point_to_point_profile(const FieldSpec& field, std::int64_t n);

}  // namespace lpp
