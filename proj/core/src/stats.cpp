#include "lpp/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"

namespace lpp {

std::pair<double, double> wilson(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials < 1) throw InvalidParams("wilson: trials must be >= 1");
  if (hits > trials) throw InvalidParams("wilson: hits must be <= trials");
  if (!(z > 0.0)) throw InvalidParams("wilson: z must be > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lo = hits == 0 ? 0.0 : std::max(0.0, centre - half);
  double hi = hits == trials ? 1.0 : std::min(1.0, centre + half);
  // Rounding can push a bound past p_hat when the interval is very tight.
  lo = std::min(lo, p);
  hi = std::max(hi, p);
  return {lo, hi};
}

Estimate make_estimate(std::uint64_t hits, std::uint64_t trials, double z) {
  const auto [lo, hi] = wilson(hits, trials, z);
  Estimate e;
  e.hits = hits;
  e.trials = trials;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  e.ci_lo = lo;
  e.ci_hi = hi;
  e.z = z;
  return e;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InsufficientData("quantile of empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

StatSummary summarize(std::span<const double> samples) {
  if (samples.empty()) throw InsufficientData("summarize: empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  StatSummary out;
  out.count = s.size();
  double sum = 0.0;
  for (double v : samples) sum += v;
  out.mean = sum / static_cast<double>(s.size());
  if (s.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    out.variance = ss / static_cast<double>(s.size() - 1);
  }
  out.min = s.front();
  out.max = s.back();
  out.q05 = quantile_sorted(s, 0.05);
  out.q25 = quantile_sorted(s, 0.25);
  out.q50 = quantile_sorted(s, 0.50);
  out.q75 = quantile_sorted(s, 0.75);
  out.q95 = quantile_sorted(s, 0.95);
  return out;
}

const char* to_string(FitModel m) {
  return m == FitModel::StretchedExp ? "STRETCHED_EXP" : "POWER";
}

FitModel fit_model_from_string(const std::string& s) {
  if (s == "STRETCHED_EXP") return FitModel::StretchedExp;
  if (s == "POWER") return FitModel::Power;
  throw InvalidParams("unknown fit model: " + s);
}

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidParams("ordinary_least_squares: size mismatch");
  if (x.size() < 2) throw InsufficientData("ordinary_least_squares: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InsufficientData("ordinary_least_squares: no spread in x");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

FitResult fit_exponent(std::span<const std::pair<double, Estimate>> points, FitModel model) {
  FitResult out;
  out.model = model;
  std::vector<double> xs, ys;
  for (const auto& [delta, est] : points) {
    const double p = est.p_hat;
    if (!(delta > 0.0) || p <= 0.0 || p >= 1.0) {
      out.excluded.push_back(delta);
      continue;
    }
    xs.push_back(std::log(delta));
    ys.push_back(model == FitModel::StretchedExp ? std::log(-std::log(p)) : std::log(p));
  }
  if (xs.size() < 2) throw InsufficientData("fit_exponent: fewer than two usable points");
  const LinearFit lf = ordinary_least_squares(xs, ys);
  out.slope = lf.slope;
  out.intercept = lf.intercept;
  out.r_squared = lf.r_squared;
  out.n_points = xs.size();
  return out;
}

}  // namespace lpp
