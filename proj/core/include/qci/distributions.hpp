#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qci/random.hpp"
#include "qci/sample.hpp"

namespace qci {

struct BetaDist {
    double a;
    double b;
};

struct UniformDist {
    double lo;
    double hi;
};

struct NormalDist {
    double mu;
    double sigma;
};

struct NormalMixtureDist {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> sigmas;
};

// Simulation scenario with exact sampling and exact quantile evaluation;
// serves as ground truth for the Monte Carlo studies.
class ScenarioDistribution {
public:
    using Kind = std::variant<BetaDist, UniformDist, NormalDist,
                              NormalMixtureDist>;

    ScenarioDistribution(std::string name, Kind kind);

    const std::string& name() const noexcept { return name_; }
    const Kind& kind() const noexcept { return kind_; }

    double cdf(double x) const;
    double mean() const;

    // n i.i.d. draws, inverse-CDF sampling (one uniform per draw; the
    // mixture consumes a second uniform for component selection).
    Sample draw(std::size_t n, const RandomSource& src) const;

    // Exact inverse CDF; |cdf(result) - u| <= 1e-10.
    double true_quantile(QuantileLevel u) const;

    // true_quantile(0.9) - true_quantile(0.1); strictly positive.
    double interdecile_range() const;

private:
    std::string name_;
    Kind kind_;
};

inline Sample draw(const ScenarioDistribution& dist, std::size_t n,
                   const RandomSource& src) {
    return dist.draw(n, src);
}

inline double true_quantile(const ScenarioDistribution& dist,
                            QuantileLevel u) {
    return dist.true_quantile(u);
}

inline double interdecile_range(const ScenarioDistribution& dist) {
    return dist.interdecile_range();
}

}  // namespace qci
