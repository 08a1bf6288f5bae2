#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qci::io {

// Implementations behind the CLI subcommands; the CLI binary only parses
// flags into these option structs. All return a process exit code: 0 iff
// no command-level error (per-request estimator failures are embedded in
// the report and do not change the exit code).

struct EstimateOptions {
    std::string input;
    std::string column = "value";
    std::vector<double> quantiles{0.5};
    std::vector<double> levels{0.90};
    std::vector<std::string> methods{"exact", "asymptotic", "bootstrap",
                                     "t-mean"};
    std::size_t bootstrap_samples = 2000;
    std::uint64_t seed = 42;
    std::optional<std::pair<double, double>> bounds;
    std::string format = "json";  // json | csv
    std::string output;           // empty = stdout
};

int run_estimate(const EstimateOptions& options, std::ostream& out,
                 std::ostream& err);

struct MinNOptions {
    std::string method = "exact";  // exact | asymptotic
    std::optional<double> quantile;
    std::optional<double> level;
    bool grid = false;
};

int run_min_n(const MinNOptions& options, std::ostream& out,
              std::ostream& err);

struct SimulateOptions {
    std::string config_path;  // empty = built-in default configuration
    std::string out_dir = ".";
    unsigned jobs = 1;
};

int run_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace qci::io
