#include "qci/io/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qci/errors.hpp"
#include "json_util.hpp"

namespace qci::io {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path, message);
}

void expect_keys(const ordered_json& obj, const std::string& path,
                 const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            fail(path.empty() ? item.key() : path + "." + item.key(),
                 "unknown field");
    }
}

double get_number(const ordered_json& obj, const std::string& path) {
    if (!obj.is_number()) fail(path, "expected a number");
    return obj.get<double>();
}

std::vector<double> get_number_list(const ordered_json& obj,
                                    const std::string& path) {
    if (!obj.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < obj.size(); ++i)
        out.push_back(
            get_number(obj[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

MetricBounds parse_bounds(const ordered_json& obj, const std::string& path) {
    if (!obj.is_array() || obj.size() != 2)
        fail(path, "expected [lower, upper]");
    MetricBounds bounds;
    if (!obj[0].is_null()) bounds.lower = get_number(obj[0], path + "[0]");
    if (!obj[1].is_null()) bounds.upper = get_number(obj[1], path + "[1]");
    try {
        bounds.validate();
    } catch (const InvalidBoundsError& e) {
        fail(path, e.what());
    }
    return bounds;
}

Scenario parse_scenario(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    if (!obj.contains("name") || !obj["name"].is_string())
        fail(path + ".name", "scenario name (string) required");
    if (!obj.contains("kind") || !obj["kind"].is_string())
        fail(path + ".kind", "scenario kind (string) required");
    const std::string name = obj["name"].get<std::string>();
    const std::string kind = obj["kind"].get<std::string>();

    MetricBounds bounds;
    if (obj.contains("bounds")) bounds = parse_bounds(obj["bounds"], path + ".bounds");

    auto require = [&](const char* key) -> const ordered_json& {
        if (!obj.contains(key)) fail(path + "." + key, "field required");
        return obj[key];
    };

    try {
        if (kind == "beta") {
            expect_keys(obj, path, {"name", "kind", "a", "b", "bounds"});
            return Scenario{
                ScenarioDistribution(
                    name, BetaDist{get_number(require("a"), path + ".a"),
                                   get_number(require("b"), path + ".b")}),
                bounds};
        }
        if (kind == "uniform") {
            expect_keys(obj, path, {"name", "kind", "lo", "hi", "bounds"});
            return Scenario{
                ScenarioDistribution(
                    name, UniformDist{get_number(require("lo"), path + ".lo"),
                                      get_number(require("hi"), path + ".hi")}),
                bounds};
        }
        if (kind == "normal") {
            expect_keys(obj, path, {"name", "kind", "mu", "sigma", "bounds"});
            return Scenario{
                ScenarioDistribution(
                    name,
                    NormalDist{get_number(require("mu"), path + ".mu"),
                               get_number(require("sigma"), path + ".sigma")}),
                bounds};
        }
        if (kind == "normal_mixture") {
            expect_keys(obj, path,
                        {"name", "kind", "weights", "means", "sigmas",
                         "bounds"});
            return Scenario{
                ScenarioDistribution(
                    name,
                    NormalMixtureDist{
                        get_number_list(require("weights"), path + ".weights"),
                        get_number_list(require("means"), path + ".means"),
                        get_number_list(require("sigmas"), path + ".sigmas")}),
                bounds};
        }
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(path + ".kind",
         "unknown kind '" + kind +
             "' (expected beta, uniform, normal or normal_mixture)");
}

}  // namespace

StudyConfig default_study_config() {
    StudyConfig cfg;
    cfg.scenarios = default_scenarios();
    return cfg;
}

StudyConfig parse_study_config(const std::string& json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "expected a JSON object");
    expect_keys(root, "",
                {"master_seed", "runs", "bootstrap_samples", "sample_sizes",
                 "quantile_levels", "confidence_levels", "methods",
                 "scenarios"});

    StudyConfig cfg = default_study_config();

    if (root.contains("master_seed")) {
        const auto& seed = root["master_seed"];
        if (!seed.is_number_unsigned())
            fail("master_seed", "expected an unsigned integer");
        cfg.master_seed = seed.get<std::uint64_t>();
    }
    auto get_count = [&](const char* key, std::size_t& out) {
        if (!root.contains(key)) return;
        if (!root[key].is_number_unsigned())
            fail(key, "expected an unsigned integer");
        out = root[key].get<std::size_t>();
    };
    get_count("runs", cfg.runs);
    get_count("bootstrap_samples", cfg.bootstrap_samples);

    if (root.contains("sample_sizes")) {
        const auto& arr = root["sample_sizes"];
        if (!arr.is_array()) fail("sample_sizes", "expected an array");
        cfg.sample_sizes.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number_unsigned())
                fail("sample_sizes[" + std::to_string(i) + "]",
                     "expected an unsigned integer");
            cfg.sample_sizes.push_back(arr[i].get<std::size_t>());
        }
    }
    if (root.contains("quantile_levels"))
        cfg.quantile_levels =
            get_number_list(root["quantile_levels"], "quantile_levels");
    if (root.contains("confidence_levels"))
        cfg.confidence_levels =
            get_number_list(root["confidence_levels"], "confidence_levels");

    if (root.contains("methods")) {
        const auto& arr = root["methods"];
        if (!arr.is_array()) fail("methods", "expected an array of strings");
        cfg.methods.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "methods[" + std::to_string(i) + "]";
            if (!arr[i].is_string()) fail(path, "expected a string");
            const auto method =
                ci_method_from_string(arr[i].get<std::string>());
            if (!method)
                fail(path, "unknown method '" + arr[i].get<std::string>() +
                               "' (expected exact, exact-equal-tailed, "
                               "asymptotic, bootstrap or t-mean)");
            cfg.methods.push_back(*method);
        }
    }

    if (root.contains("scenarios")) {
        const auto& arr = root["scenarios"];
        if (!arr.is_array()) fail("scenarios", "expected an array");
        cfg.scenarios.clear();
        for (std::size_t i = 0; i < arr.size(); ++i)
            cfg.scenarios.push_back(parse_scenario(
                arr[i], "scenarios[" + std::to_string(i) + "]"));
    }

    try {
        validate_study_config(cfg);
    } catch (const ConfigError&) {
        throw;
    }
    return cfg;
}

StudyConfig load_study_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_study_config(buffer.str());
}

std::string study_config_to_json(const StudyConfig& cfg) {
    ordered_json root;
    root["master_seed"] = cfg.master_seed;
    root["runs"] = cfg.runs;
    root["bootstrap_samples"] = cfg.bootstrap_samples;
    root["sample_sizes"] = cfg.sample_sizes;
    root["quantile_levels"] = cfg.quantile_levels;
    root["confidence_levels"] = cfg.confidence_levels;
    ordered_json methods = ordered_json::array();
    for (CiMethod m : cfg.methods) methods.push_back(std::string(to_string(m)));
    root["methods"] = methods;

    ordered_json scenarios = ordered_json::array();
    for (const Scenario& sc : cfg.scenarios) {
        ordered_json obj;
        obj["name"] = sc.dist.name();
        if (const auto* beta = std::get_if<BetaDist>(&sc.dist.kind())) {
            obj["kind"] = "beta";
            obj["a"] = beta->a;
            obj["b"] = beta->b;
        } else if (const auto* uni =
                       std::get_if<UniformDist>(&sc.dist.kind())) {
            obj["kind"] = "uniform";
            obj["lo"] = uni->lo;
            obj["hi"] = uni->hi;
        } else if (const auto* norm =
                       std::get_if<NormalDist>(&sc.dist.kind())) {
            obj["kind"] = "normal";
            obj["mu"] = norm->mu;
            obj["sigma"] = norm->sigma;
        } else if (const auto* mix =
                       std::get_if<NormalMixtureDist>(&sc.dist.kind())) {
            obj["kind"] = "normal_mixture";
            obj["weights"] = mix->weights;
            obj["means"] = mix->means;
            obj["sigmas"] = mix->sigmas;
        }
        if (sc.bounds.has_any()) {
            ordered_json bounds = ordered_json::array();
            bounds.push_back(sc.bounds.lower ? ordered_json(*sc.bounds.lower)
                                             : ordered_json(nullptr));
            bounds.push_back(sc.bounds.upper ? ordered_json(*sc.bounds.upper)
                                             : ordered_json(nullptr));
            obj["bounds"] = bounds;
        }
        scenarios.push_back(obj);
    }
    root["scenarios"] = scenarios;
    return detail::dump_json(root);
}

}  // namespace qci::io
