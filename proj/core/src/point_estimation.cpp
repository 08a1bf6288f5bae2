#include "qci/point_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "qci/ci_estimation.hpp"

namespace qci {

std::string_view to_string(Estimator e) noexcept {
    switch (e) {
        case Estimator::SampleQuantile: return "sample-quantile";
        case Estimator::Interpolated: return "interpolated";
        case Estimator::TailExtrapolated: return "tail-extrapolated";
        case Estimator::BootstrapMedian: return "bootstrap-median";
    }
    return "unknown";
}

namespace detail {

std::size_t sample_quantile_index(std::size_t n, double u) noexcept {
    const double x = static_cast<double>(n) * u;
    const double nearest = std::nearbyint(x);
    std::size_t i;
    if (nearest >= 1.0 &&
        std::fabs(x - nearest) <= 1e-12 * std::max(1.0, std::fabs(x))) {
        i = static_cast<std::size_t>(nearest);
    } else {
        i = static_cast<std::size_t>(std::ceil(x));
    }
    if (i < 1) i = 1;
    if (i > n) i = n;
    return i;
}

double sample_quantile_value(std::span<const double> sorted,
                             double u) noexcept {
    return sorted[sample_quantile_index(sorted.size(), u) - 1];
}

double interpolated_value(std::span<const double> sorted, double u) {
    const std::size_t n = sorted.size();
    const double np = static_cast<double>(n) + 1.0;
    if (!(u > 1.0 / np && u < static_cast<double>(n) / np))
        throw LevelOutsideInterpolableRangeError(u, 1.0 / np,
                                                 static_cast<double>(n) / np);
    const double pos = np * u;
    const std::size_t j = static_cast<std::size_t>(std::floor(pos));
    const double eps = pos - std::floor(pos);
    if (j >= n) return sorted[n - 1];
    return (1.0 - eps) * sorted[j - 1] + eps * sorted[j];
}

double interpolated_value_saturating(std::span<const double> sorted,
                                     double u) noexcept {
    const std::size_t n = sorted.size();
    const double pos = (static_cast<double>(n) + 1.0) * u;
    if (pos <= 1.0) return sorted[0];
    if (pos >= static_cast<double>(n)) return sorted[n - 1];
    const std::size_t j = static_cast<std::size_t>(std::floor(pos));
    const double eps = pos - std::floor(pos);
    return (1.0 - eps) * sorted[j - 1] + eps * sorted[j];
}

double tail_extrapolated_value(std::span<const double> sorted, double u) {
    const std::size_t n = sorted.size();
    if (n < 2) throw SampleTooSmallError(2, n);
    const double np = static_cast<double>(n) + 1.0;
    if (u <= 1.0 / np)
        return sorted[0] + (sorted[1] - sorted[0]) * std::log(np * u);
    if (u >= static_cast<double>(n) / np)
        return sorted[n - 1] -
               (sorted[n - 1] - sorted[n - 2]) * std::log(np * (1.0 - u));
    return interpolated_value(sorted, u);
}

}  // namespace detail

PointEstimate sample_quantile(const Sample& s, QuantileLevel u) {
    return PointEstimate{
        detail::sample_quantile_value(s.sorted(), u.value()),
        Estimator::SampleQuantile, u};
}

PointEstimate interpolated_quantile(const Sample& s, QuantileLevel u) {
    return PointEstimate{detail::interpolated_value(s.sorted(), u.value()),
                         Estimator::Interpolated, u};
}

PointEstimate tail_extrapolated_quantile(const Sample& s, QuantileLevel u) {
    return PointEstimate{
        detail::tail_extrapolated_value(s.sorted(), u.value()),
        Estimator::TailExtrapolated, u};
}

PointEstimate bootstrap_median_estimate(const Sample& s, QuantileLevel u,
                                        std::size_t bootstrap_samples,
                                        const RandomSource& src) {
    std::vector<double> boot =
        bootstrap_distribution(s, u, bootstrap_samples, src);
    const std::size_t i =
        detail::sample_quantile_index(boot.size(), 0.5);
    std::nth_element(boot.begin(), boot.begin() + (i - 1), boot.end());
    return PointEstimate{boot[i - 1], Estimator::BootstrapMedian, u};
}

}  // namespace qci
