#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qci/analysis.hpp"
#include "qci/io/csv.hpp"

namespace qci::io {

// Config echo embedded in every report document so a run can be reproduced
// byte-for-byte from the document alone.
struct EstimateEcho {
    std::string input_path;
    std::string column;
    std::vector<double> quantiles;
    std::vector<double> levels;
    std::vector<CiMethod> methods;
    std::size_t bootstrap_samples = 2000;
    std::uint64_t seed = 42;
    MetricBounds bounds;
};

// Canonical machine-readable report: every point estimate, every interval
// with its randomization audit record, feasibility notes, config echo.
std::string report_to_json(const AnalysisReport& report,
                           const EstimateEcho& echo);

// Flat projection of the report; drops the randomization audit record.
CsvTable report_to_csv(const AnalysisReport& report);

}  // namespace qci::io
