// qci: quantile point estimates, confidence intervals and Monte Carlo
// studies for repeated, seed-controlled measurements of ML performance
// metrics.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qci/io/commands.hpp"

namespace {

std::pair<double, double> parse_bounds_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--bounds", "expected LO,HI");
    try {
        const double lo = std::stod(text.substr(0, comma));
        const double hi = std::stod(text.substr(comma + 1));
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--bounds", "expected LO,HI as numbers");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Quantile and confidence-interval analysis for small samples of "
        "repeated, seed-controlled performance measurements"};
    app.require_subcommand(1);

    // estimate
    qci::io::EstimateOptions estimate;
    std::string bounds_flag;
    CLI::App* cmd_estimate = app.add_subcommand(
        "estimate",
        "Analyze a CSV of measurements: quantile point estimates and "
        "confidence intervals");
    cmd_estimate->add_option("--input", estimate.input, "Input CSV file")
        ->required();
    cmd_estimate->add_option("--column", estimate.column,
                             "Name of the numeric metric column")
        ->capture_default_str();
    cmd_estimate
        ->add_option("--quantiles", estimate.quantiles,
                     "Quantile levels in (0,1)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_estimate
        ->add_option("--levels", estimate.levels,
                     "Confidence levels in (0,1)")
        ->delimiter(',')
        ->capture_default_str();
    cmd_estimate
        ->add_option("--methods", estimate.methods,
                     "Interval methods: exact, exact-equal-tailed, "
                     "asymptotic, bootstrap, t-mean")
        ->delimiter(',')
        ->capture_default_str();
    cmd_estimate
        ->add_option("--bootstrap-samples", estimate.bootstrap_samples,
                     "Bootstrap replicate count")
        ->capture_default_str();
    cmd_estimate
        ->add_option("--seed", estimate.seed,
                     "Master seed (fixed default keeps runs reproducible)")
        ->capture_default_str();
    cmd_estimate->add_option("--bounds", bounds_flag,
                             "Natural metric limits LO,HI for clamping");
    cmd_estimate
        ->add_option("--format", estimate.format, "Output format: json|csv")
        ->capture_default_str();
    cmd_estimate->add_option("--output", estimate.output,
                             "Output path (default: stdout)");

    // min-n
    qci::io::MinNOptions min_n;
    CLI::App* cmd_min_n = app.add_subcommand(
        "min-n",
        "Minimum sample size for a feasible confidence interval");
    cmd_min_n
        ->add_option("--method", min_n.method, "exact or asymptotic")
        ->capture_default_str();
    double quantile_flag = 0.0;
    double level_flag = 0.0;
    CLI::Option* q_opt =
        cmd_min_n->add_option("--quantile", quantile_flag, "Quantile level");
    CLI::Option* l_opt =
        cmd_min_n->add_option("--level", level_flag, "Confidence level");
    cmd_min_n->add_flag("--grid", min_n.grid,
                        "Print the full reference grid instead");

    // simulate
    qci::io::SimulateOptions simulate;
    CLI::App* cmd_simulate = app.add_subcommand(
        "simulate",
        "Monte Carlo coverage/length/bias study; writes CSV tables and a "
        "manifest");
    cmd_simulate->add_option(
        "--config", simulate.config_path,
        "Study configuration (JSON); omit for the built-in defaults");
    cmd_simulate->add_option("--out", simulate.out_dir, "Output directory")
        ->required();
    cmd_simulate
        ->add_option("--jobs", simulate.jobs,
                     "Worker threads (0 = all cores); results do not depend "
                     "on this")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (cmd_estimate->parsed()) {
        if (!bounds_flag.empty()) {
            try {
                estimate.bounds = parse_bounds_flag(bounds_flag);
            } catch (const CLI::ValidationError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
        return qci::io::run_estimate(estimate, std::cout, std::cerr);
    }
    if (cmd_min_n->parsed()) {
        if (*q_opt) min_n.quantile = quantile_flag;
        if (*l_opt) min_n.level = level_flag;
        return qci::io::run_min_n(min_n, std::cout, std::cerr);
    }
    if (cmd_simulate->parsed())
        return qci::io::run_simulate(simulate, std::cout, std::cerr);
    return 1;
}
