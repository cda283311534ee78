#include "lpp/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

// Walks predecessors from target back to diagonal phi_begin(), calling
// visit(point) for each vertex in reverse order. Returns the tie count.
template <class Visit>
std::uint64_t walk_back(const DpTable& table, LatticePoint target, Visit&& visit) {
  if (!table.reachable(target)) throw NoPath("backtrack: target unreachable");
  std::uint64_t ties = 0;
  LatticePoint cur = target;
  visit(cur);
  while (cur.x + cur.y > table.phi_begin()) {
    const LatticePoint left{cur.x - 1, cur.y};
    const LatticePoint below{cur.x, cur.y - 1};
    const bool left_feeds = table.feeds_successors(left);
    const bool below_feeds = table.feeds_successors(below);
    if (left_feeds && below_feeds && table.accumulated(left) == table.accumulated(below)) ++ties;
    cur = table.came_from_left(cur) ? left : below;
    visit(cur);
  }
  return ties;
}

}  // namespace

Geodesic backtrack(const DpTable& table, LatticePoint target) {
  Geodesic g;
  g.vertices.reserve(static_cast<std::size_t>(target.x + target.y - table.phi_begin() + 1));
  g.ties = walk_back(table, target, [&](LatticePoint p) { g.vertices.push_back(p); });
  std::reverse(g.vertices.begin(), g.vertices.end());
  return g;
}

double path_weight(const DpTable& table, const Geodesic& g, PassageConvention conv) {
  if (g.vertices.empty()) return 0.0;
  const std::size_t n = g.vertices.size();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) sum += table.weight_at(g.vertices[i]);
  const double ws = table.weight_at(g.vertices.front());
  const double wt = table.weight_at(g.vertices.back());
  switch (conv) {
    case PassageConvention::ExcludeBoth:
      return sum;
    case PassageConvention::ExcludeLast:
      return sum + ws;
    case PassageConvention::IncludeBoth:
      return sum + ws + wt;
  }
  return sum;
}

Profile profile(const Geodesic& g) {
  Profile p;
  if (g.vertices.empty()) return p;
  p.phi0 = g.vertices.front().x + g.vertices.front().y;
  p.psis.reserve(g.vertices.size());
  for (const auto& v : g.vertices) p.psis.push_back(v.x - v.y);
  return p;
}

Profile profile(const DpTable& table, LatticePoint target) {
  Profile p;
  p.psis.resize(static_cast<std::size_t>(target.x + target.y - table.phi_begin() + 1));
  std::size_t i = p.psis.size();
  walk_back(table, target, [&](LatticePoint v) { p.psis[--i] = v.x - v.y; });
  p.phi0 = table.phi_begin();
  return p;
}

std::int64_t sup_abs(const Profile& p) {
  std::int64_t m = 0;
  for (auto v : p.psis) m = std::max(m, std::abs(v));
  return m;
}

double pi_eval(const Profile& p, std::int64_t n, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("pi_eval: s must lie in [0, 1]");
  if (n < 1 || p.phi0 != 0 || static_cast<std::int64_t>(p.psis.size()) != 2 * n + 1) {
    throw DomainError("pi_eval: profile is not a 0 -> (n, n) profile");
  }
  const double pos = 2.0 * static_cast<double>(n) * s;
  auto i = static_cast<std::int64_t>(std::floor(pos));
  i = std::min(i, 2 * n);
  const double frac = pos - static_cast<double>(i);
  double v = static_cast<double>(p.psis[static_cast<std::size_t>(i)]);
  if (frac > 0.0 && i < 2 * n) {
    v += frac * static_cast<double>(p.psis[static_cast<std::size_t>(i + 1)] -
                                    p.psis[static_cast<std::size_t>(i)]);
  }
  return v / n_two_thirds(n);
}

std::int64_t one_point(const Profile& p, std::int64_t t) {
  if (t < p.phi0 || t > p.phi_last()) throw DomainError("one_point: t outside profile");
  return p.psis[static_cast<std::size_t>(t - p.phi0)];
}

bool in_strip(const Profile& p, const StripSpec& strip) {
  for (std::size_t i = 0; i < p.psis.size(); ++i) {
    const DiagCoord d{p.phi0 + static_cast<std::int64_t>(i), p.psis[i]};
    if (!strip.contains(d)) return false;
  }
  return true;
}

Profile point_to_point_profile(const FieldSpec& field, std::int64_t n) {
  const LatticePoint target{n, n};
  return profile(build_table(field, {0, 0}, target), target);
}

}  // namespace lpp
