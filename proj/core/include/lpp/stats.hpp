#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lpp {

inline constexpr double kDefaultZ = 1.96;

// Bernoulli estimate with a Wilson score interval at level z.
struct Estimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double z = kDefaultZ;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

// Throws InvalidParams unless 0 <= hits <= trials, trials >= 1, z > 0.
std::pair<double, double> wilson(std::uint64_t hits, std::uint64_t trials, double z = kDefaultZ);

Estimate make_estimate(std::uint64_t hits, std::uint64_t trials, double z = kDefaultZ);

struct StatSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a single sample
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;

  friend bool operator==(const StatSummary&, const StatSummary&) = default;
};

// Quantiles by linear interpolation between order statistics.
// Throws InsufficientData on an empty sample.
StatSummary summarize(std::span<const double> samples);

double quantile_sorted(std::span<const double> sorted, double q);

enum class FitModel { StretchedExp, Power };

const char* to_string(FitModel m);
FitModel fit_model_from_string(const std::string& s);

struct FitResult {
  FitModel model = FitModel::Power;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  std::vector<double> excluded;  // abscissae dropped for p_hat at 0 or 1
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Throws InsufficientData
// with fewer than two points or no spread in x.
LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

// StretchedExp regresses log(-log p) on log delta, Power regresses log p on
// log delta. Points with p_hat in {0, 1} are excluded and listed.
FitResult fit_exponent(std::span<const std::pair<double, Estimate>> points, FitModel model);

}  // namespace lpp
