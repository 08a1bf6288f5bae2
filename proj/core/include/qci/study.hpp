#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qci/ci_estimation.hpp"
#include "qci/distributions.hpp"
#include "qci/point_estimation.hpp"

namespace qci {

// A simulation scenario together with the natural limits of the metric it
// models (used to clamp bootstrap extrapolation; empty = unbounded).
struct Scenario {
    ScenarioDistribution dist;
    MetricBounds bounds;
};

struct StudyConfig {
    std::vector<Scenario> scenarios;
    std::vector<std::size_t> sample_sizes{10, 15, 25, 50};
    std::vector<double> quantile_levels{0.05, 0.10, 0.25, 0.50,
                                        0.75, 0.90, 0.95};
    std::vector<double> confidence_levels{0.90, 0.95};
    std::vector<CiMethod> methods{CiMethod::ExactRandomized,
                                  CiMethod::ExactEqualTailed,
                                  CiMethod::Asymptotic, CiMethod::Bootstrap,
                                  CiMethod::TMean};
    std::size_t runs = 2000;
    std::size_t bootstrap_samples = 2000;
    std::uint64_t master_seed = 42;
};

// One aggregated coverage/length cell. Skipped (infeasible) cells carry a
// reason instead of numbers; for every emitted cell valid_runs equals the
// configured run count, since feasibility depends only on (n, u, level).
struct StudyResult {
    std::string scenario;
    CiMethod method;
    std::optional<double> quantile_level;  // empty = statistic "mean"
    double confidence_level = 0.0;
    std::size_t n = 0;
    std::optional<double> empirical_confidence_level;
    std::optional<double> avg_length_normalized;
    std::size_t valid_runs = 0;
    std::size_t clipped_runs = 0;
    std::optional<std::string> skipped_reason;
};

// One aggregated bias/RMSE cell, normalized to the true quantile value.
struct BiasResult {
    std::string scenario;
    Estimator estimator = Estimator::SampleQuantile;
    double quantile_level = 0.0;
    std::size_t n = 0;
    std::optional<double> relative_modulus_bias;
    std::optional<double> relative_rmse;
    std::optional<std::string> skipped_reason;
};

// Throws ConfigError (with a field path) on invalid configuration.
void validate_study_config(const StudyConfig& cfg);

// Empirical confidence level and normalized average interval length per
// (scenario, n, statistic, confidence level, method) cell. Output is
// byte-identical for a fixed master_seed regardless of `jobs`; substreams
// are keyed by cell coordinates, never by execution order.
std::vector<StudyResult> coverage_study(const StudyConfig& cfg,
                                        unsigned jobs = 1);

// Relative modulus bias and relative RMSE of the three point estimators
// (sample quantile, interpolated, bootstrap median) per
// (scenario, n, quantile level) cell. Same determinism contract.
std::vector<BiasResult> bias_study(const StudyConfig& cfg, unsigned jobs = 1);

// Paper-style default scenario set: three Beta shapes and a uniform on the
// unit interval (clamped to [0,1]), plus a normal and a bimodal normal
// mixture concentrated inside it.
std::vector<Scenario> default_scenarios();

}  // namespace qci
