#include "qci/distributions.hpp"

#include <cmath>
#include <numeric>

#include "qci/errors.hpp"
#include "qci/kernels.hpp"

namespace qci {

namespace {

// Monotone inversion: bisection with Newton acceleration where a density is
// available. The bracket [lo, hi] must satisfy cdf(lo) <= target <= cdf(hi).
template <typename Cdf, typename Pdf>
double invert_cdf(Cdf cdf, Pdf pdf, double target, double lo, double hi) {
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double err = cdf(x) - target;
        if (std::fabs(err) <= 1e-12) break;
        if (err < 0.0)
            lo = x;
        else
            hi = x;
        double next = x;
        const double dens = pdf(x);
        if (dens > 0.0) next = x - err / dens;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

double beta_pdf(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b);
    return std::exp(log_norm + (a - 1.0) * std::log(x) +
                    (b - 1.0) * std::log1p(-x));
}

double beta_quantile(double a, double b, double u) {
    return invert_cdf(
        [=](double x) { return regularized_incomplete_beta(x, a, b); },
        [=](double x) { return beta_pdf(x, a, b); }, u, 0.0, 1.0);
}

void validate_kind(const ScenarioDistribution::Kind& kind) {
    if (const auto* beta = std::get_if<BetaDist>(&kind)) {
        if (!(beta->a > 0.0) || !(beta->b > 0.0))
            throw DomainError("beta shape parameters must be positive");
    } else if (const auto* uni = std::get_if<UniformDist>(&kind)) {
        if (!(uni->lo < uni->hi))
            throw DomainError("uniform bounds must satisfy lo < hi");
    } else if (const auto* norm = std::get_if<NormalDist>(&kind)) {
        if (!(norm->sigma > 0.0))
            throw DomainError("normal sigma must be positive");
    } else if (const auto* mix = std::get_if<NormalMixtureDist>(&kind)) {
        const std::size_t m = mix->weights.size();
        if (m == 0 || mix->means.size() != m || mix->sigmas.size() != m)
            throw DomainError(
                "mixture weights/means/sigmas must be nonempty and equally "
                "sized");
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(mix->weights[i] > 0.0))
                throw DomainError("mixture weights must be positive");
            if (!(mix->sigmas[i] > 0.0))
                throw DomainError("mixture sigmas must be positive");
            total += mix->weights[i];
        }
        if (std::fabs(total - 1.0) > 1e-12)
            throw DomainError("mixture weights must sum to 1");
    }
}

}  // namespace

ScenarioDistribution::ScenarioDistribution(std::string name, Kind kind)
    : name_(std::move(name)), kind_(std::move(kind)) {
    validate_kind(kind_);
}

double ScenarioDistribution::cdf(double x) const {
    return std::visit(
        [x](const auto& dist) -> double {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, BetaDist>) {
                if (x <= 0.0) return 0.0;
                if (x >= 1.0) return 1.0;
                return regularized_incomplete_beta(x, dist.a, dist.b);
            } else if constexpr (std::is_same_v<T, UniformDist>) {
                if (x <= dist.lo) return 0.0;
                if (x >= dist.hi) return 1.0;
                return (x - dist.lo) / (dist.hi - dist.lo);
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                return normal_cdf((x - dist.mu) / dist.sigma);
            } else {
                double acc = 0.0;
                for (std::size_t i = 0; i < dist.weights.size(); ++i)
                    acc += dist.weights[i] *
                           normal_cdf((x - dist.means[i]) / dist.sigmas[i]);
                return acc;
            }
        },
        kind_);
}

double ScenarioDistribution::mean() const {
    return std::visit(
        [](const auto& dist) -> double {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, BetaDist>) {
                return dist.a / (dist.a + dist.b);
            } else if constexpr (std::is_same_v<T, UniformDist>) {
                return 0.5 * (dist.lo + dist.hi);
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                return dist.mu;
            } else {
                return std::inner_product(dist.weights.begin(),
                                          dist.weights.end(),
                                          dist.means.begin(), 0.0);
            }
        },
        kind_);
}

Sample ScenarioDistribution::draw(std::size_t n,
                                  const RandomSource& src) const {
    if (n < 1) throw DomainError("draw: n must be at least 1");
    RandomEngine engine(src);
    std::vector<double> values(n);
    std::visit(
        [&](const auto& dist) {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, BetaDist>) {
                for (auto& v : values)
                    v = beta_quantile(dist.a, dist.b, engine.next_open_unit());
            } else if constexpr (std::is_same_v<T, UniformDist>) {
                for (auto& v : values)
                    v = dist.lo +
                        engine.next_open_unit() * (dist.hi - dist.lo);
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                for (auto& v : values)
                    v = dist.mu +
                        dist.sigma * normal_quantile(engine.next_open_unit());
            } else {
                for (auto& v : values) {
                    double pick = engine.next_open_unit();
                    std::size_t comp = 0;
                    double acc = 0.0;
                    for (std::size_t i = 0; i < dist.weights.size(); ++i) {
                        acc += dist.weights[i];
                        if (pick <= acc) {
                            comp = i;
                            break;
                        }
                        comp = i;
                    }
                    v = dist.means[comp] +
                        dist.sigmas[comp] *
                            normal_quantile(engine.next_open_unit());
                }
            }
        },
        kind_);
    return Sample(std::move(values));
}

double ScenarioDistribution::true_quantile(QuantileLevel u) const {
    const double level = u.value();
    return std::visit(
        [&](const auto& dist) -> double {
            using T = std::decay_t<decltype(dist)>;
            if constexpr (std::is_same_v<T, BetaDist>) {
                return beta_quantile(dist.a, dist.b, level);
            } else if constexpr (std::is_same_v<T, UniformDist>) {
                return dist.lo + level * (dist.hi - dist.lo);
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                return dist.mu + dist.sigma * normal_quantile(level);
            } else {
                const double z = normal_quantile(level);
                double lo = dist.means[0] + dist.sigmas[0] * z;
                double hi = lo;
                for (std::size_t i = 1; i < dist.means.size(); ++i) {
                    lo = std::min(lo, dist.means[i] + dist.sigmas[i] * z);
                    hi = std::max(hi, dist.means[i] + dist.sigmas[i] * z);
                }
                if (lo == hi) return lo;
                auto cdf_fn = [this](double x) { return cdf(x); };
                auto pdf_fn = [&dist](double x) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < dist.weights.size(); ++i) {
                        const double zz =
                            (x - dist.means[i]) / dist.sigmas[i];
                        acc += dist.weights[i] *
                               std::exp(-0.5 * zz * zz) /
                               (dist.sigmas[i] * 2.5066282746310002);
                    }
                    return acc;
                };
                return invert_cdf(cdf_fn, pdf_fn, level, lo, hi);
            }
        },
        kind_);
}

double ScenarioDistribution::interdecile_range() const {
    return true_quantile(QuantileLevel(0.9)) -
           true_quantile(QuantileLevel(0.1));
}

}  // namespace qci
