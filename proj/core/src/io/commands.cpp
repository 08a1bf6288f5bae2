#include "qci/io/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "qci/analysis.hpp"
#include "qci/io/config.hpp"
#include "qci/io/csv.hpp"
#include "qci/io/report.hpp"
#include "qci/study.hpp"
#include "json_util.hpp"

namespace qci::io {

namespace {

using nlohmann::ordered_json;

void write_output(const std::string& path, const std::string& content,
                  std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write to " + path);
    file << content;
}

std::vector<CiMethod> parse_methods(const std::vector<std::string>& names) {
    std::vector<CiMethod> methods;
    for (const std::string& name : names) {
        const auto method = ci_method_from_string(name);
        if (!method)
            throw Error("unknown method '" + name +
                        "' (expected exact, exact-equal-tailed, asymptotic, "
                        "bootstrap or t-mean)");
        methods.push_back(*method);
    }
    return methods;
}

// Reference grids matching the minimum-sample-size tables.
const std::vector<double> kExactGridLevels = {0.90, 0.95, 0.99};
const std::vector<double> kExactGridQuantiles = {0.01, 0.025, 0.05,
                                                 0.1,  0.25,  0.5};
const std::vector<double> kAsymptoticGridQuantiles = {
    0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};

CsvTable study_coverage_csv(const std::vector<StudyResult>& results) {
    CsvTable table;
    table.header = {"scenario",      "n",
                    "statistic",     "confidence_level",
                    "method",        "empirical_confidence_level",
                    "valid_runs",    "clipped_runs",
                    "skipped_reason"};
    for (const StudyResult& row : results) {
        std::vector<std::string> cells(table.header.size());
        cells[0] = row.scenario;
        cells[1] = std::to_string(row.n);
        cells[2] = row.quantile_level ? format_double(*row.quantile_level)
                                      : "mean";
        cells[3] = format_double(row.confidence_level);
        cells[4] = std::string(to_string(row.method));
        if (row.empirical_confidence_level)
            cells[5] = format_double(*row.empirical_confidence_level);
        cells[6] = std::to_string(row.valid_runs);
        cells[7] = std::to_string(row.clipped_runs);
        if (row.skipped_reason) cells[8] = *row.skipped_reason;
        table.rows.push_back(std::move(cells));
    }
    return table;
}

CsvTable study_length_csv(const std::vector<StudyResult>& results) {
    CsvTable table;
    table.header = {"scenario",   "n",
                    "statistic",  "confidence_level",
                    "method",     "avg_length_normalized",
                    "valid_runs", "skipped_reason"};
    for (const StudyResult& row : results) {
        std::vector<std::string> cells(table.header.size());
        cells[0] = row.scenario;
        cells[1] = std::to_string(row.n);
        cells[2] = row.quantile_level ? format_double(*row.quantile_level)
                                      : "mean";
        cells[3] = format_double(row.confidence_level);
        cells[4] = std::string(to_string(row.method));
        if (row.avg_length_normalized)
            cells[5] = format_double(*row.avg_length_normalized);
        cells[6] = std::to_string(row.valid_runs);
        if (row.skipped_reason) cells[7] = *row.skipped_reason;
        table.rows.push_back(std::move(cells));
    }
    return table;
}

CsvTable study_bias_csv(const std::vector<BiasResult>& results) {
    CsvTable table;
    table.header = {"scenario",         "n",
                    "quantile_level",   "estimator",
                    "relative_modulus_bias", "relative_rmse",
                    "skipped_reason"};
    for (const BiasResult& row : results) {
        std::vector<std::string> cells(table.header.size());
        cells[0] = row.scenario;
        cells[1] = std::to_string(row.n);
        cells[2] = format_double(row.quantile_level);
        cells[3] = std::string(to_string(row.estimator));
        if (row.relative_modulus_bias)
            cells[4] = format_double(*row.relative_modulus_bias);
        if (row.relative_rmse) cells[5] = format_double(*row.relative_rmse);
        if (row.skipped_reason) cells[6] = *row.skipped_reason;
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace

int run_estimate(const EstimateOptions& options, std::ostream& out,
                 std::ostream& err) {
    try {
        if (options.input.empty()) throw Error("--input is required");
        if (options.format != "json" && options.format != "csv")
            throw Error("--format must be json or csv");
        const std::vector<CiMethod> methods = parse_methods(options.methods);
        if (options.bootstrap_samples < 1000)
            err << "warning: fewer than 1000 bootstrap samples can give "
                   "unstable intervals\n";

        MetricBounds bounds;
        if (options.bounds) {
            bounds.lower = options.bounds->first;
            bounds.upper = options.bounds->second;
            bounds.validate();
        }

        const Sample sample = load_sample_csv(options.input, options.column);

        std::vector<QuantileRequest> requests;
        for (double u : options.quantiles) {
            for (double level : options.levels) {
                QuantileRequest request;
                request.quantile_level = u;
                request.confidence_level = level;
                request.methods = methods;
                request.bounds = bounds;
                requests.push_back(std::move(request));
            }
        }

        const RandomSource src{options.seed, 0};
        const AnalysisReport report = analyze_sample(
            sample, requests, options.bootstrap_samples, src);

        EstimateEcho echo;
        echo.input_path = options.input;
        echo.column = options.column;
        echo.quantiles = options.quantiles;
        echo.levels = options.levels;
        echo.methods = methods;
        echo.bootstrap_samples = options.bootstrap_samples;
        echo.seed = options.seed;
        echo.bounds = bounds;

        const std::string content =
            options.format == "json"
                ? report_to_json(report, echo)
                : to_csv_string(report_to_csv(report));
        write_output(options.output, content, out);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_min_n(const MinNOptions& options, std::ostream& out,
              std::ostream& err) {
    try {
        if (options.method != "exact" && options.method != "asymptotic")
            throw Error("--method must be exact or asymptotic");
        const bool exact = options.method == "exact";
        auto min_n = [&](double u, double level) {
            return exact ? exact_ci_min_n(QuantileLevel(u), level)
                         : asymptotic_ci_min_n(QuantileLevel(u), level);
        };

        if (options.grid) {
            const auto& quantiles =
                exact ? kExactGridQuantiles : kAsymptoticGridQuantiles;
            CsvTable table;
            table.header.push_back("confidence_level");
            for (double u : quantiles)
                table.header.push_back(format_double(u));
            for (double level : kExactGridLevels) {
                std::vector<std::string> row;
                row.push_back(format_double(level));
                for (double u : quantiles)
                    row.push_back(std::to_string(min_n(u, level)));
                table.rows.push_back(std::move(row));
            }
            write_csv(out, table);
            return 0;
        }

        if (!options.quantile || !options.level)
            throw Error(
                "--quantile and --level are required unless --grid is set");
        out << min_n(*options.quantile, *options.level) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err) {
    try {
        const StudyConfig cfg = options.config_path.empty()
                                    ? default_study_config()
                                    : load_study_config_file(
                                          options.config_path);
        validate_study_config(cfg);

        const auto start = std::chrono::steady_clock::now();
        const std::vector<StudyResult> coverage =
            coverage_study(cfg, options.jobs);
        const std::vector<BiasResult> bias = bias_study(cfg, options.jobs);
        const auto elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();

        const std::filesystem::path dir(options.out_dir);
        std::filesystem::create_directories(dir);
        auto write_file = [&](const char* name, const std::string& content) {
            const std::filesystem::path path = dir / name;
            std::ofstream file(path, std::ios::binary);
            if (!file) throw Error("cannot write to " + path.string());
            file << content;
        };
        write_file("coverage.csv", to_csv_string(study_coverage_csv(coverage)));
        write_file("length.csv", to_csv_string(study_length_csv(coverage)));
        write_file("bias.csv", to_csv_string(study_bias_csv(bias)));

        ordered_json manifest;
        manifest["config"] =
            ordered_json::parse(study_config_to_json(cfg));
        manifest["master_seed"] = cfg.master_seed;
        manifest["jobs"] = options.jobs;
        manifest["wall_time_seconds"] = elapsed;
        manifest["outputs"] = {"coverage.csv", "length.csv", "bias.csv"};
        write_file("manifest.json", detail::dump_json(manifest));

        out << "wrote coverage.csv, length.csv, bias.csv, manifest.json to "
            << dir.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qci::io
