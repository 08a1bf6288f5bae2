#pragma once

#include <span>
#include <string_view>

#include "qci/random.hpp"
#include "qci/sample.hpp"

namespace qci {

enum class Estimator {
    SampleQuantile,
    Interpolated,
    TailExtrapolated,
    BootstrapMedian,
};

std::string_view to_string(Estimator e) noexcept;

struct PointEstimate {
    double value;
    Estimator estimator;
    QuantileLevel level;
};

namespace detail {

// 1-based order-statistic index i with u in ((i-1)/n, i/n], i.e. ceil(n*u)
// with an exact-integer guard against floating-point misclassification at
// the step boundaries.
std::size_t sample_quantile_index(std::size_t n, double u) noexcept;

double sample_quantile_value(std::span<const double> sorted, double u) noexcept;

// Linear interpolation of order statistics at plotting positions n+1;
// defined only for u in the open interval (1/(n+1), n/(n+1)).
double interpolated_value(std::span<const double> sorted, double u);

// Same interpolation rule but with the interpolation position saturated
// into [1, n], so levels beyond the open domain resolve to X_(1) / X_(n).
double interpolated_value_saturating(std::span<const double> sorted,
                                     double u) noexcept;

// Tail-extrapolating quantile-function estimate: logarithmic extrapolation
// beyond the extreme order statistics, interpolation inside.
double tail_extrapolated_value(std::span<const double> sorted, double u);

}  // namespace detail

// Step-function sample quantile X_(ceil(n*u)).
PointEstimate sample_quantile(const Sample& s, QuantileLevel u);

// Linearly interpolated quantile estimator; throws
// LevelOutsideInterpolableRangeError outside its open validity interval.
PointEstimate interpolated_quantile(const Sample& s, QuantileLevel u);

// Piecewise estimator matching the interpolated one on the interior and
// extrapolating logarithmically into both tails; requires n >= 2.
PointEstimate tail_extrapolated_quantile(const Sample& s, QuantileLevel u);

// Median of the semiparametric bootstrap distribution of the sample
// quantile; deterministic given (seed, stream). Requires bootstrap_samples
// >= 100.
PointEstimate bootstrap_median_estimate(const Sample& s, QuantileLevel u,
                                        std::size_t bootstrap_samples,
                                        const RandomSource& src);

}  // namespace qci
