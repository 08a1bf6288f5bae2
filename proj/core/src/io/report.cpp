#include "qci/io/report.hpp"

#include <cmath>

#include "json_util.hpp"

namespace qci::io {

namespace detail {

namespace {

using nlohmann::ordered_json;

void dump_value(const ordered_json& value, std::string& out, int indent,
                int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1),
                             ' ');
    switch (value.type()) {
        case ordered_json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& item : value.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += ordered_json(item.key()).dump();
                out += ": ";
                dump_value(item.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : value) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(item, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case ordered_json::value_t::number_float: {
            const double v = value.get<double>();
            if (std::isfinite(v))
                out += format_double(v);
            else
                out += "null";
            return;
        }
        default:
            out += value.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const ordered_json& value, int indent) {
    std::string out;
    dump_value(value, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace detail

namespace {

using nlohmann::ordered_json;

ordered_json interval_to_json(const IntervalOutcome& outcome) {
    ordered_json obj;
    obj["method"] = std::string(to_string(outcome.method));
    if (outcome.interval) {
        const ConfidenceInterval& ci = *outcome.interval;
        obj["lower"] = ci.lower;
        obj["upper"] = ci.upper;
        obj["nominal_level"] = ci.nominal_level;
        if (ci.achieved_coverage)
            obj["achieved_coverage"] = *ci.achieved_coverage;
        obj["clipped"] = ci.clipped;
        if (ci.randomization) {
            const RandomizationRecord& rec = *ci.randomization;
            ordered_json rand;
            rand["pair_a"] = {rec.pair_a.k, rec.pair_a.l};
            rand["pair_b"] = {rec.pair_b.k, rec.pair_b.l};
            rand["lambda"] = rec.lambda;
            rand["chosen"] = std::string(1, rec.chosen);
            if (!rec.note.empty()) rand["note"] = rec.note;
            obj["randomization"] = rand;
        }
    }
    if (outcome.error) obj["error"] = *outcome.error;
    if (outcome.required_min_n) obj["required_min_n"] = *outcome.required_min_n;
    return obj;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report,
                           const EstimateEcho& echo) {
    ordered_json root;
    root["tool"] = "qci";
    ordered_json config;
    config["input"] = echo.input_path;
    config["column"] = echo.column;
    config["quantiles"] = echo.quantiles;
    config["levels"] = echo.levels;
    ordered_json methods = ordered_json::array();
    for (CiMethod m : echo.methods)
        methods.push_back(std::string(to_string(m)));
    config["methods"] = methods;
    config["bootstrap_samples"] = echo.bootstrap_samples;
    config["master_seed"] = echo.seed;
    if (echo.bounds.has_any()) {
        ordered_json bounds = ordered_json::array();
        bounds.push_back(echo.bounds.lower ? ordered_json(*echo.bounds.lower)
                                           : ordered_json(nullptr));
        bounds.push_back(echo.bounds.upper ? ordered_json(*echo.bounds.upper)
                                           : ordered_json(nullptr));
        config["bounds"] = bounds;
    }
    root["config"] = config;

    ordered_json sample;
    sample["n"] = report.n;
    sample["mean"] = report.sample_mean;
    root["sample"] = sample;

    ordered_json requests = ordered_json::array();
    for (const RequestReport& rr : report.requests) {
        ordered_json req;
        req["quantile_level"] = rr.quantile_level;
        req["confidence_level"] = rr.confidence_level;
        ordered_json points = ordered_json::array();
        for (const EstimateOutcome& est : rr.point_estimates) {
            ordered_json p;
            p["estimator"] = std::string(to_string(est.estimator));
            if (est.value) p["value"] = *est.value;
            if (est.error) p["error"] = *est.error;
            points.push_back(p);
        }
        req["point_estimates"] = points;
        ordered_json intervals = ordered_json::array();
        for (const IntervalOutcome& outcome : rr.intervals)
            intervals.push_back(interval_to_json(outcome));
        req["intervals"] = intervals;
        requests.push_back(req);
    }
    root["requests"] = requests;
    return detail::dump_json(root);
}

CsvTable report_to_csv(const AnalysisReport& report) {
    CsvTable table;
    table.header = {"quantile_level", "confidence_level", "kind",
                    "name",           "value",            "lower",
                    "upper",          "nominal_level",    "achieved_coverage",
                    "clipped",        "error",            "required_min_n"};
    for (const RequestReport& rr : report.requests) {
        const std::string q = format_double(rr.quantile_level);
        const std::string level = format_double(rr.confidence_level);
        for (const EstimateOutcome& est : rr.point_estimates) {
            std::vector<std::string> row(table.header.size());
            row[0] = q;
            row[1] = level;
            row[2] = "point";
            row[3] = std::string(to_string(est.estimator));
            if (est.value) row[4] = format_double(*est.value);
            if (est.error) row[10] = *est.error;
            table.rows.push_back(std::move(row));
        }
        for (const IntervalOutcome& outcome : rr.intervals) {
            std::vector<std::string> row(table.header.size());
            row[0] = q;
            row[1] = level;
            row[2] = "interval";
            row[3] = std::string(to_string(outcome.method));
            if (outcome.interval) {
                row[5] = format_double(outcome.interval->lower);
                row[6] = format_double(outcome.interval->upper);
                row[7] = format_double(outcome.interval->nominal_level);
                if (outcome.interval->achieved_coverage)
                    row[8] = format_double(
                        *outcome.interval->achieved_coverage);
                row[9] = outcome.interval->clipped ? "true" : "false";
            }
            if (outcome.error) row[10] = *outcome.error;
            if (outcome.required_min_n)
                row[11] = std::to_string(*outcome.required_min_n);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace qci::io
