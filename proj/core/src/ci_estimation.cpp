#include "qci/ci_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qci/kernels.hpp"
#include "qci/point_estimation.hpp"

namespace qci {

std::string_view to_string(CiMethod m) noexcept {
    switch (m) {
        case CiMethod::ExactRandomized: return "exact";
        case CiMethod::ExactEqualTailed: return "exact-equal-tailed";
        case CiMethod::Asymptotic: return "asymptotic";
        case CiMethod::Bootstrap: return "bootstrap";
        case CiMethod::TMean: return "t-mean";
    }
    return "unknown";
}

std::optional<CiMethod> ci_method_from_string(std::string_view name) noexcept {
    if (name == "exact" || name == "exact-randomized")
        return CiMethod::ExactRandomized;
    if (name == "exact-equal-tailed" || name == "exact-equal")
        return CiMethod::ExactEqualTailed;
    if (name == "asymptotic") return CiMethod::Asymptotic;
    if (name == "bootstrap") return CiMethod::Bootstrap;
    if (name == "t-mean" || name == "tmean") return CiMethod::TMean;
    return std::nullopt;
}

void MetricBounds::validate() const {
    if (lower && upper && !(*lower < *upper))
        throw InvalidBoundsError("metric bounds must satisfy lower < upper");
}

namespace detail {

void validate_confidence_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw DomainError(
            "confidence level must lie strictly inside (0,1)");
}

}  // namespace detail

namespace {

// cdf[s] = P(X <= s) for X ~ Binomial(n, u), s = 0..n.
std::vector<double> binomial_cdf_table(std::size_t n, double u) {
    std::vector<double> cdf(n + 1);
    double acc = 0.0;
    for (std::size_t s = 0; s <= n; ++s) {
        acc += binomial_pmf(s, n, u);
        cdf[s] = acc;
    }
    return cdf;
}

double coverage_from_table(const std::vector<double>& cdf, std::size_t k,
                           std::size_t l) {
    return cdf[l - 1] - cdf[k - 1];
}

struct CandidatePair {
    IndexPair pair;
    double coverage = 0.0;
};

// Among all pairs of a given width, prefer maximal coverage; break coverage
// ties toward balanced tails, then the smaller k (deterministic).
bool better_candidate(const std::vector<double>& cdf,
                      const CandidatePair& cand, const CandidatePair& best) {
    if (cand.coverage != best.coverage) return cand.coverage > best.coverage;
    auto imbalance = [&](const IndexPair& p) {
        const double lo_tail = cdf[p.k - 1];
        const double hi_tail = 1.0 - cdf[p.l - 1];
        return std::fabs(lo_tail - hi_tail);
    };
    const double ci = imbalance(cand.pair);
    const double bi = imbalance(best.pair);
    if (ci != bi) return ci < bi;
    return cand.pair.k < best.pair.k;
}

// Equal-tailed index pair. When one boundary tail mass already exceeds
// alpha/2 the corresponding index saturates at the boundary and the other
// side is extended until the achieved coverage reaches the nominal level
// (always reachable for feasible configurations, where r(1,n) >= level).
IndexPair equal_tailed_pair(const std::vector<double>& cdf, std::size_t n,
                            double level) {
    const double half_alpha = 0.5 * (1.0 - level);
    std::size_t k = 1;
    for (std::size_t cand = n; cand >= 1; --cand) {
        if (cdf[cand - 1] <= half_alpha) {
            k = cand;
            break;
        }
        if (cand == 1) break;
    }
    std::size_t l = n;
    for (std::size_t cand = 1; cand <= n; ++cand) {
        if (1.0 - cdf[cand - 1] <= half_alpha) {
            l = cand;
            break;
        }
    }
    // Both half-budgets can saturate toward the same side for extreme u at
    // low levels; restore k < l before extending.
    if (l <= k) {
        if (l >= 2)
            k = l - 1;
        else
            l = k + 1;
    }
    while (coverage_from_table(cdf, k, l) < level && (k > 1 || l < n)) {
        const double lo_tail = cdf[k - 1];
        const double hi_tail = 1.0 - cdf[l - 1];
        if (l < n && (k == 1 || hi_tail >= lo_tail))
            ++l;
        else
            --k;
    }
    return IndexPair{k, l};
}

struct MixturePlan {
    CandidatePair pair_a;  // coverage >= level
    CandidatePair pair_b;  // coverage <= level
    double lambda = 1.0;   // weight on pair_a
    bool exact_hit = false;
    bool found = false;
};

// Two-pair mixture with coverage exactly `level`, minimizing the expected
// width proxy E[X_(l) - X_(k)] under the uniform distribution, which is
// (l-k)/(n+1). Candidates per width: the maximal-coverage pair (upper side)
// and the maximal coverage not exceeding `level` (lower side).
MixturePlan optimal_mixture(const std::vector<double>& cdf, std::size_t n,
                            double level) {
    constexpr double tie_eps = 1e-12;
    std::vector<std::optional<CandidatePair>> best_any(n);
    std::vector<std::optional<CandidatePair>> best_below(n);
    for (std::size_t w = 1; w <= n - 1; ++w) {
        for (std::size_t k = 1; k + w <= n; ++k) {
            CandidatePair cand{IndexPair{k, k + w},
                               coverage_from_table(cdf, k, k + w)};
            if (!best_any[w - 1] ||
                better_candidate(cdf, cand, *best_any[w - 1]))
                best_any[w - 1] = cand;
            if (cand.coverage <= level + tie_eps &&
                (!best_below[w - 1] ||
                 better_candidate(cdf, cand, *best_below[w - 1])))
                best_below[w - 1] = cand;
        }
    }

    MixturePlan plan;

    // A single pair whose coverage already equals the level exactly.
    for (std::size_t w = 1; w <= n - 1; ++w) {
        if (best_any[w - 1] &&
            std::fabs(best_any[w - 1]->coverage - level) <= tie_eps) {
            plan.pair_a = *best_any[w - 1];
            plan.pair_b = *best_any[w - 1];
            plan.lambda = 1.0;
            plan.exact_hit = true;
            plan.found = true;
            return plan;
        }
    }

    double best_width = std::numeric_limits<double>::infinity();
    for (std::size_t wb = 1; wb <= n - 1; ++wb) {
        if (!best_below[wb - 1]) continue;
        const CandidatePair& below = *best_below[wb - 1];
        if (below.coverage >= level) continue;
        for (std::size_t wa = wb; wa <= n - 1; ++wa) {
            if (!best_any[wa - 1]) continue;
            const CandidatePair& above = *best_any[wa - 1];
            if (above.coverage <= level) continue;
            const double lambda = (level - below.coverage) /
                                  (above.coverage - below.coverage);
            const double width = lambda * static_cast<double>(wa) +
                                 (1.0 - lambda) * static_cast<double>(wb);
            if (width < best_width - tie_eps) {
                best_width = width;
                plan.pair_a = above;
                plan.pair_b = below;
                plan.lambda = lambda;
                plan.found = true;
            }
        }
    }
    return plan;
}

ConfidenceInterval make_exact_interval(const Sample& s, double level,
                                       const IndexPair& pair,
                                       double coverage) {
    ConfidenceInterval ci;
    ci.lower = s.order_statistic(pair.k);
    ci.upper = s.order_statistic(pair.l);
    ci.nominal_level = level;
    ci.achieved_coverage = coverage;
    return ci;
}

}  // namespace

double exact_coverage(std::size_t k, std::size_t l, std::size_t n,
                      QuantileLevel u) {
    if (k < 1 || k >= l || l > n) throw IndexOutOfRangeError(k >= l ? l : k, 1, n);
    double sum = 0.0;
    for (std::size_t s = k; s <= l - 1; ++s)
        sum += binomial_pmf(s, n, u.value());
    return sum;
}

bool exact_ci_feasible(std::size_t n, QuantileLevel u, double level) {
    detail::validate_confidence_level(level);
    if (n < 2) return false;
    const double alpha = 1.0 - level;
    const double nn = static_cast<double>(n);
    return std::pow(u.value(), nn) + std::pow(1.0 - u.value(), nn) <= alpha;
}

std::size_t exact_ci_min_n(QuantileLevel u, double level) {
    detail::validate_confidence_level(level);
    for (std::size_t n = 2; n < 100000000; ++n) {
        if (exact_ci_feasible(n, u, level)) return n;
    }
    throw Error("exact_ci_min_n: search did not terminate");
}

ConfidenceInterval exact_ci(const Sample& s, QuantileLevel u, double level,
                            ExactCiMode mode, const RandomSource& src) {
    detail::validate_confidence_level(level);
    const std::size_t n = s.size();
    if (!exact_ci_feasible(n, u, level))
        throw InfeasibleSampleSizeError("exact", exact_ci_min_n(u, level), n);

    const std::vector<double> cdf = binomial_cdf_table(n, u.value());

    if (mode == ExactCiMode::EqualTailed) {
        const IndexPair pair = equal_tailed_pair(cdf, n, level);
        ConfidenceInterval ci = make_exact_interval(
            s, level, pair, coverage_from_table(cdf, pair.k, pair.l));
        ci.method = CiMethod::ExactEqualTailed;
        return ci;
    }

    const MixturePlan plan = optimal_mixture(cdf, n, level);
    RandomizationRecord record;
    IndexPair emitted;
    if (!plan.found) {
        // No two-pair mixture attains the level exactly; fall back.
        const IndexPair pair = equal_tailed_pair(cdf, n, level);
        record.pair_a = pair;
        record.pair_b = pair;
        record.lambda = 1.0;
        record.chosen = 'a';
        record.note = "no exact mixture attains the nominal level; "
                      "equal-tailed fallback";
        emitted = pair;
    } else if (plan.exact_hit) {
        record.pair_a = plan.pair_a.pair;
        record.pair_b = plan.pair_b.pair;
        record.lambda = 1.0;
        record.chosen = 'a';
        emitted = plan.pair_a.pair;
    } else {
        record.pair_a = plan.pair_a.pair;
        record.pair_b = plan.pair_b.pair;
        record.lambda = plan.lambda;
        RandomEngine engine(src);
        const bool pick_a = engine.bernoulli(plan.lambda);
        record.chosen = pick_a ? 'a' : 'b';
        emitted = pick_a ? plan.pair_a.pair : plan.pair_b.pair;
    }
    ConfidenceInterval ci = make_exact_interval(
        s, level, emitted, coverage_from_table(cdf, emitted.k, emitted.l));
    ci.method = CiMethod::ExactRandomized;
    ci.randomization = std::move(record);
    return ci;
}

namespace {

// Fractional indices of the large-sample construction; valid when
// 1 <= k < l <= n.
struct FractionalIndices {
    double k = 0.0;
    double l = 0.0;
    bool valid(std::size_t n) const noexcept {
        return k >= 1.0 && l <= static_cast<double>(n) && k < l;
    }
};

FractionalIndices asymptotic_indices(std::size_t n, double u, double level) {
    const double z = normal_quantile(0.5 * (1.0 + level));
    const double nn = static_cast<double>(n);
    const double spread = z * std::sqrt(u * (1.0 - u) / nn);
    return FractionalIndices{nn * (u - spread), nn * (u + spread)};
}

}  // namespace

ConfidenceInterval asymptotic_ci(const Sample& s, QuantileLevel u,
                                 double level) {
    detail::validate_confidence_level(level);
    const std::size_t n = s.size();
    const FractionalIndices idx = asymptotic_indices(n, u.value(), level);
    if (!idx.valid(n))
        throw InfeasibleSampleSizeError("asymptotic",
                                        asymptotic_ci_min_n(u, level), n);
    const double nn = static_cast<double>(n);
    // Levels k/n and l/n can land outside the interpolation estimator's
    // open domain when u is near the boundary (l/n up to 1); the saturating
    // evaluation resolves those to the extreme order statistics.
    ConfidenceInterval ci;
    ci.lower = detail::interpolated_value_saturating(s.sorted(), idx.k / nn);
    ci.upper = detail::interpolated_value_saturating(s.sorted(), idx.l / nn);
    ci.nominal_level = level;
    ci.method = CiMethod::Asymptotic;
    return ci;
}

std::size_t asymptotic_ci_min_n(QuantileLevel u, double level) {
    detail::validate_confidence_level(level);
    for (std::size_t n = 2; n < 100000000; ++n) {
        if (asymptotic_indices(n, u.value(), level).valid(n)) return n;
    }
    throw Error("asymptotic_ci_min_n: search did not terminate");
}

std::vector<double> bootstrap_distribution(const Sample& s, QuantileLevel u,
                                           std::size_t bootstrap_samples,
                                           const RandomSource& src) {
    const std::size_t n = s.size();
    if (n < 2) throw SampleTooSmallError(2, n);
    if (bootstrap_samples < 100)
        throw DomainError("bootstrap replicate count must be at least 100");
    const std::span<const double> sorted(s.sorted());
    const std::size_t pick = detail::sample_quantile_index(n, u.value());
    std::vector<double> out(bootstrap_samples);
    std::vector<double> replicate(n);
    for (std::size_t b = 0; b < bootstrap_samples; ++b) {
        RandomEngine engine(src.substream(b));
        for (std::size_t j = 0; j < n; ++j)
            replicate[j] =
                detail::tail_extrapolated_value(sorted, engine.next_open_unit());
        std::nth_element(replicate.begin(), replicate.begin() + (pick - 1),
                         replicate.end());
        out[b] = replicate[pick - 1];
    }
    return out;
}

ConfidenceInterval bootstrap_ci(const Sample& s, QuantileLevel u, double level,
                                std::size_t bootstrap_samples,
                                const MetricBounds& bounds,
                                const RandomSource& src) {
    detail::validate_confidence_level(level);
    bounds.validate();
    std::vector<double> boot =
        bootstrap_distribution(s, u, bootstrap_samples, src);
    const double alpha = 1.0 - level;
    const std::size_t ilo =
        detail::sample_quantile_index(boot.size(), 0.5 * alpha);
    const std::size_t ihi =
        detail::sample_quantile_index(boot.size(), 1.0 - 0.5 * alpha);
    std::nth_element(boot.begin(), boot.begin() + (ilo - 1), boot.end());
    const double raw_lower = boot[ilo - 1];
    std::nth_element(boot.begin(), boot.begin() + (ihi - 1), boot.end());
    const double raw_upper = boot[ihi - 1];

    ConfidenceInterval ci;
    ci.lower = raw_lower;
    ci.upper = raw_upper;
    ci.nominal_level = level;
    ci.method = CiMethod::Bootstrap;
    if (bounds.lower && ci.lower < *bounds.lower) {
        ci.lower = *bounds.lower;
        ci.clipped = true;
    }
    if (bounds.upper && ci.upper > *bounds.upper) {
        ci.upper = *bounds.upper;
        ci.clipped = true;
    }
    // A clamp can only pull an endpoint inward, never reorder the interval
    // past the other endpoint's clamp.
    if (ci.lower > ci.upper) ci.upper = ci.lower;
    return ci;
}

ConfidenceInterval t_interval(const Sample& s, double level) {
    detail::validate_confidence_level(level);
    const std::size_t n = s.size();
    if (n < 2) throw SampleTooSmallError(2, n);
    const double mean = s.mean();
    const double sd = s.stddev();
    const double quantile = t_quantile(0.5 * (1.0 + level), n - 1);
    const double margin = quantile * sd / std::sqrt(static_cast<double>(n));
    ConfidenceInterval ci;
    ci.lower = mean - margin;
    ci.upper = mean + margin;
    ci.nominal_level = level;
    ci.method = CiMethod::TMean;
    return ci;
}

}  // namespace qci
