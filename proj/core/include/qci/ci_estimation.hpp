#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qci/random.hpp"
#include "qci/sample.hpp"

namespace qci {

enum class CiMethod {
    ExactRandomized,
    ExactEqualTailed,
    Asymptotic,
    Bootstrap,
    TMean,
};

std::string_view to_string(CiMethod m) noexcept;
std::optional<CiMethod> ci_method_from_string(std::string_view name) noexcept;

enum class ExactCiMode { EqualTailed, RandomizedOptimal };

// Natural limits of the metric (e.g. [0,1] for accuracy); used to clamp
// bootstrap extrapolation.
struct MetricBounds {
    std::optional<double> lower;
    std::optional<double> upper;

    bool has_any() const noexcept {
        return lower.has_value() || upper.has_value();
    }
    void validate() const;
};

// 1-based order-statistic index pair (k, l), k < l.
struct IndexPair {
    std::size_t k = 0;
    std::size_t l = 0;

    std::size_t width() const noexcept { return l - k; }
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// Audit record of the randomized construction: the two candidate pairs,
// the mixture weight lambda = P(emit pair_a), and which pair the
// seed-controlled draw selected.
struct RandomizationRecord {
    IndexPair pair_a;      // coverage >= nominal
    IndexPair pair_b;      // coverage <= nominal
    double lambda = 1.0;
    char chosen = 'a';
    std::string note;      // nonempty when the optimal mixture fell back
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double nominal_level = 0.0;
    CiMethod method = CiMethod::ExactRandomized;
    // Exact methods only: coverage r(k,l,n,u) of the emitted pair.
    std::optional<double> achieved_coverage;
    std::optional<RandomizationRecord> randomization;
    bool clipped = false;
};

// Coverage probability r(k,l,n,u) = sum_{s=k}^{l-1} C(n,s) u^s (1-u)^(n-s)
// of the order-statistic interval [X_(k), X_(l)]; distribution-free.
double exact_coverage(std::size_t k, std::size_t l, std::size_t n,
                      QuantileLevel u);

// Existence condition for a two-sided distribution-free interval:
// u^n + (1-u)^n <= alpha.
bool exact_ci_feasible(std::size_t n, QuantileLevel u, double level);

// Smallest n for which exact_ci_feasible holds; symmetric in u <-> 1-u.
std::size_t exact_ci_min_n(QuantileLevel u, double level);

// Distribution-free interval from order statistics. EqualTailed splits the
// miss probability alpha/2 per tail (extending one side when a boundary
// tail mass exceeds its half-budget, so achieved coverage never drops below
// the nominal level). RandomizedOptimal mixes two candidate pairs so the
// mixture coverage equals the nominal level exactly, minimizing the
// distribution-free expected-width proxy (l-k)/(n+1); the emitted pair is
// picked by one Bernoulli(lambda) draw from src.
ConfidenceInterval exact_ci(const Sample& s, QuantileLevel u, double level,
                            ExactCiMode mode, const RandomSource& src);

// Large-sample interval with fractional order-statistic indices
// k,l = n(u -+ z*sqrt(u(1-u)/n)) resolved through the interpolating
// estimator at levels k/n and l/n.
ConfidenceInterval asymptotic_ci(const Sample& s, QuantileLevel u,
                                 double level);

// Smallest n with valid fractional indices 1 <= k < l <= n.
std::size_t asymptotic_ci_min_n(QuantileLevel u, double level);

// Semiparametric bootstrap: per replicate, n uniform levels are mapped
// through the tail-extrapolating quantile-function estimate of s and the
// replicate's sample quantile at u is recorded. Replicate b draws from
// src.substream(b). Returns all B replicate values.
std::vector<double> bootstrap_distribution(const Sample& s, QuantileLevel u,
                                           std::size_t bootstrap_samples,
                                           const RandomSource& src);

// Percentile interval [Q(alpha/2), Q(1-alpha/2)] of the bootstrap
// distribution, clamped into `bounds` (clipped flag set when clamping
// fired).
ConfidenceInterval bootstrap_ci(const Sample& s, QuantileLevel u, double level,
                                std::size_t bootstrap_samples,
                                const MetricBounds& bounds,
                                const RandomSource& src);

// Classic interval for the mean: mean -+ t_{n-1,1-alpha/2} * S / sqrt(n).
ConfidenceInterval t_interval(const Sample& s, double level);

namespace detail {

// Throws DomainError unless 0 < level < 1.
void validate_confidence_level(double level);

}  // namespace detail

}  // namespace qci
