#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qci/ci_estimation.hpp"
#include "qci/point_estimation.hpp"

namespace qci {

// One quantile to analyze: level, confidence level, which interval methods
// to run, and optional natural limits of the metric.
struct QuantileRequest {
    double quantile_level = 0.5;
    double confidence_level = 0.90;
    std::vector<CiMethod> methods{CiMethod::ExactRandomized,
                                  CiMethod::Asymptotic, CiMethod::Bootstrap,
                                  CiMethod::TMean};
    MetricBounds bounds;
};

struct EstimateOutcome {
    Estimator estimator = Estimator::SampleQuantile;
    std::optional<double> value;
    std::optional<std::string> error;
};

struct IntervalOutcome {
    CiMethod method = CiMethod::ExactRandomized;
    std::optional<ConfidenceInterval> interval;
    std::optional<std::string> error;
    std::optional<std::size_t> required_min_n;
};

struct RequestReport {
    double quantile_level = 0.5;
    double confidence_level = 0.90;
    std::vector<EstimateOutcome> point_estimates;
    std::vector<IntervalOutcome> intervals;
};

struct AnalysisReport {
    std::size_t n = 0;
    double sample_mean = 0.0;
    std::uint64_t master_seed = 0;
    std::size_t bootstrap_samples = 0;
    std::vector<RequestReport> requests;
};

// Point estimates from every applicable estimator plus one interval per
// requested method (or its failure reason with the minimum feasible n).
// Per-request failures are embedded; they never abort the whole report.
// Request randomness is keyed by the request's (quantile, confidence)
// values, so reordering requests does not change any individual result.
AnalysisReport analyze_sample(const Sample& s,
                              const std::vector<QuantileRequest>& requests,
                              std::size_t bootstrap_samples,
                              const RandomSource& src);

}  // namespace qci
