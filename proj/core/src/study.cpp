#include "qci/study.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace qci {

namespace {

constexpr std::uint64_t kTagSample = 0x53414d504c453031ull;
constexpr std::uint64_t kTagMethod = 0x4d4554484f443031ull;
constexpr std::uint64_t kTagBootMedian = 0x424f4f544d454431ull;
constexpr std::uint64_t kStatMean = 0x4d45414e4d45414eull;

std::uint64_t name_hash(const std::string& s) {
    return fnv1a64(s.data(), s.size());
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

template <typename... Rest>
std::uint64_t chain(std::uint64_t first, Rest... rest) {
    std::uint64_t h = avalanche64(first + 0x9E3779B97F4A7C15ull);
    ((h = mix64(h, static_cast<std::uint64_t>(rest))), ...);
    return h;
}

// Runs per_run(r) for r in [0, runs). Work is pulled in fixed-size chunks
// from an atomic counter; which stream a run uses never depends on
// scheduling, and all accumulation happens afterwards in run order.
void parallel_runs(std::size_t runs, unsigned jobs,
                   const std::function<void(std::size_t)>& per_run) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    constexpr std::size_t kChunk = 16;
    if (jobs <= 1 || runs <= kChunk) {
        for (std::size_t r = 0; r < runs; ++r) per_run(r);
        return;
    }
    std::atomic<std::size_t> next_chunk{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t chunk = next_chunk.fetch_add(1);
            const std::size_t begin = chunk * kChunk;
            if (begin >= runs) return;
            const std::size_t end = std::min(runs, begin + kChunk);
            try {
                for (std::size_t r = begin; r < end; ++r) per_run(r);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(jobs, (runs + kChunk - 1) / kChunk));
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool is_quantile_method(CiMethod m) { return m != CiMethod::TMean; }

std::string infeasible_reason(std::size_t min_n, std::size_t n) {
    return "infeasible: minimum sample size " + std::to_string(min_n) +
           " (n = " + std::to_string(n) + ")";
}

struct CoverageCell {
    std::optional<double> u;  // empty = statistic "mean"
    double level = 0.0;
    CiMethod method = CiMethod::ExactRandomized;
    double truth = 0.0;
    bool feasible = false;
    std::string skip_reason;
    std::vector<unsigned char> hits;
    std::vector<double> lengths;
    std::vector<unsigned char> clipped;
};

}  // namespace

void validate_study_config(const StudyConfig& cfg) {
    if (cfg.scenarios.empty())
        throw ConfigError("scenarios", "at least one scenario required");
    if (cfg.sample_sizes.empty())
        throw ConfigError("sample_sizes", "at least one sample size required");
    for (std::size_t i = 0; i < cfg.sample_sizes.size(); ++i) {
        if (cfg.sample_sizes[i] < 2)
            throw ConfigError("sample_sizes[" + std::to_string(i) + "]",
                              "sample size must be at least 2");
    }
    if (cfg.quantile_levels.empty())
        throw ConfigError("quantile_levels",
                          "at least one quantile level required");
    for (std::size_t i = 0; i < cfg.quantile_levels.size(); ++i) {
        const double u = cfg.quantile_levels[i];
        if (!(u > 0.0 && u < 1.0))
            throw ConfigError("quantile_levels[" + std::to_string(i) + "]",
                              "quantile level must lie strictly inside (0,1)");
    }
    if (cfg.confidence_levels.empty())
        throw ConfigError("confidence_levels",
                          "at least one confidence level required");
    for (std::size_t i = 0; i < cfg.confidence_levels.size(); ++i) {
        const double level = cfg.confidence_levels[i];
        if (!(level > 0.0 && level < 1.0))
            throw ConfigError("confidence_levels[" + std::to_string(i) + "]",
                              "confidence level must lie strictly inside "
                              "(0,1)");
    }
    if (cfg.methods.empty())
        throw ConfigError("methods", "at least one method required");
    if (cfg.runs < 100)
        throw ConfigError("runs", "at least 100 simulation runs required");
    if (cfg.bootstrap_samples < 100)
        throw ConfigError("bootstrap_samples",
                          "at least 100 bootstrap samples required");
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
        cfg.scenarios[i].bounds.validate();
}

std::vector<StudyResult> coverage_study(const StudyConfig& cfg,
                                        unsigned jobs) {
    validate_study_config(cfg);
    std::vector<StudyResult> results;

    for (const Scenario& scenario : cfg.scenarios) {
        const std::uint64_t scen_hash = name_hash(scenario.dist.name());
        const double idr = scenario.dist.interdecile_range();
        const double scenario_mean = scenario.dist.mean();

        for (std::size_t n : cfg.sample_sizes) {
            std::vector<CoverageCell> cells;

            auto add_cell = [&](std::optional<double> u, double level,
                                CiMethod method) {
                CoverageCell cell;
                cell.u = u;
                cell.level = level;
                cell.method = method;
                cell.truth = u ? scenario.dist.true_quantile(QuantileLevel(*u))
                               : scenario_mean;
                cell.feasible = true;
                if (u) {
                    if (method == CiMethod::ExactRandomized ||
                        method == CiMethod::ExactEqualTailed) {
                        if (!exact_ci_feasible(n, QuantileLevel(*u), level)) {
                            cell.feasible = false;
                            cell.skip_reason = infeasible_reason(
                                exact_ci_min_n(QuantileLevel(*u), level), n);
                        }
                    } else if (method == CiMethod::Asymptotic) {
                        const std::size_t min_n =
                            asymptotic_ci_min_n(QuantileLevel(*u), level);
                        if (n < min_n) {
                            cell.feasible = false;
                            cell.skip_reason = infeasible_reason(min_n, n);
                        }
                    }
                }
                if (cell.feasible) {
                    cell.hits.assign(cfg.runs, 0);
                    cell.lengths.assign(cfg.runs, 0.0);
                    cell.clipped.assign(cfg.runs, 0);
                }
                cells.push_back(std::move(cell));
            };

            for (double u : cfg.quantile_levels)
                for (double level : cfg.confidence_levels)
                    for (CiMethod method : cfg.methods)
                        if (is_quantile_method(method))
                            add_cell(u, level, method);
            for (double level : cfg.confidence_levels)
                for (CiMethod method : cfg.methods)
                    if (method == CiMethod::TMean)
                        add_cell(std::nullopt, level, method);

            parallel_runs(cfg.runs, jobs, [&](std::size_t run) {
                const RandomSource sample_src{
                    cfg.master_seed, chain(kTagSample, scen_hash, n, run)};
                const Sample sample = scenario.dist.draw(n, sample_src);
                for (CoverageCell& cell : cells) {
                    if (!cell.feasible) continue;
                    const std::uint64_t stat_bits =
                        cell.u ? bits(*cell.u) : kStatMean;
                    const RandomSource method_src{
                        cfg.master_seed,
                        chain(kTagMethod, scen_hash, n, stat_bits,
                              bits(cell.level),
                              static_cast<std::uint64_t>(cell.method), run)};
                    ConfidenceInterval ci;
                    switch (cell.method) {
                        case CiMethod::ExactRandomized:
                            ci = exact_ci(sample, QuantileLevel(*cell.u),
                                          cell.level,
                                          ExactCiMode::RandomizedOptimal,
                                          method_src);
                            break;
                        case CiMethod::ExactEqualTailed:
                            ci = exact_ci(sample, QuantileLevel(*cell.u),
                                          cell.level, ExactCiMode::EqualTailed,
                                          method_src);
                            break;
                        case CiMethod::Asymptotic:
                            ci = asymptotic_ci(sample, QuantileLevel(*cell.u),
                                               cell.level);
                            break;
                        case CiMethod::Bootstrap:
                            ci = bootstrap_ci(sample, QuantileLevel(*cell.u),
                                              cell.level,
                                              cfg.bootstrap_samples,
                                              scenario.bounds, method_src);
                            break;
                        case CiMethod::TMean:
                            ci = t_interval(sample, cell.level);
                            break;
                    }
                    cell.hits[run] =
                        (ci.lower <= cell.truth && cell.truth <= ci.upper)
                            ? 1
                            : 0;
                    cell.lengths[run] = ci.upper - ci.lower;
                    cell.clipped[run] = ci.clipped ? 1 : 0;
                }
            });

            for (CoverageCell& cell : cells) {
                StudyResult row;
                row.scenario = scenario.dist.name();
                row.method = cell.method;
                row.quantile_level = cell.u;
                row.confidence_level = cell.level;
                row.n = n;
                if (!cell.feasible) {
                    row.skipped_reason = cell.skip_reason;
                } else {
                    std::size_t hits = 0;
                    std::size_t clipped = 0;
                    double total_length = 0.0;
                    for (std::size_t r = 0; r < cfg.runs; ++r) {
                        hits += cell.hits[r];
                        clipped += cell.clipped[r];
                        total_length += cell.lengths[r];
                    }
                    row.valid_runs = cfg.runs;
                    row.clipped_runs = clipped;
                    row.empirical_confidence_level =
                        static_cast<double>(hits) /
                        static_cast<double>(cfg.runs);
                    row.avg_length_normalized =
                        total_length / static_cast<double>(cfg.runs) / idr;
                }
                results.push_back(std::move(row));
            }
        }
    }
    return results;
}

std::vector<BiasResult> bias_study(const StudyConfig& cfg, unsigned jobs) {
    validate_study_config(cfg);
    constexpr Estimator kEstimators[] = {Estimator::SampleQuantile,
                                         Estimator::Interpolated,
                                         Estimator::BootstrapMedian};
    std::vector<BiasResult> results;

    for (const Scenario& scenario : cfg.scenarios) {
        const std::uint64_t scen_hash = name_hash(scenario.dist.name());
        const std::size_t n_levels = cfg.quantile_levels.size();

        std::vector<double> truths(n_levels);
        for (std::size_t qi = 0; qi < n_levels; ++qi) {
            truths[qi] = scenario.dist.true_quantile(
                QuantileLevel(cfg.quantile_levels[qi]));
            if (std::fabs(truths[qi]) < 1e-9)
                throw DegenerateTrueQuantileError(
                    "true quantile of scenario '" + scenario.dist.name() +
                    "' at level " + std::to_string(cfg.quantile_levels[qi]) +
                    " is numerically zero; relative normalization undefined");
        }

        for (std::size_t n : cfg.sample_sizes) {
            const double np = static_cast<double>(n) + 1.0;
            std::vector<bool> interpolable(n_levels);
            for (std::size_t qi = 0; qi < n_levels; ++qi) {
                const double u = cfg.quantile_levels[qi];
                interpolable[qi] =
                    u > 1.0 / np && u < static_cast<double>(n) / np;
            }

            // deviations[estimator][level][run]
            std::vector<std::vector<std::vector<double>>> deviations(
                3, std::vector<std::vector<double>>(
                       n_levels, std::vector<double>(cfg.runs, 0.0)));

            parallel_runs(cfg.runs, jobs, [&](std::size_t run) {
                const RandomSource sample_src{
                    cfg.master_seed, chain(kTagSample, scen_hash, n, run)};
                const Sample sample = scenario.dist.draw(n, sample_src);
                const std::span<const double> sorted(sample.sorted());

                for (std::size_t qi = 0; qi < n_levels; ++qi) {
                    const double u = cfg.quantile_levels[qi];
                    deviations[0][qi][run] =
                        detail::sample_quantile_value(sorted, u) - truths[qi];
                    if (interpolable[qi])
                        deviations[1][qi][run] =
                            detail::interpolated_value(sorted, u) - truths[qi];
                }

                // Bootstrap replicates are shared across quantile levels:
                // the replicate samples do not depend on u, only the final
                // order-statistic pick does. Equivalent to calling
                // bootstrap_median_estimate per level with this source.
                const RandomSource boot_src{
                    cfg.master_seed, chain(kTagBootMedian, scen_hash, n, run)};
                std::vector<std::vector<double>> replicate_values(
                    n_levels,
                    std::vector<double>(cfg.bootstrap_samples, 0.0));
                std::vector<double> replicate(n);
                for (std::size_t b = 0; b < cfg.bootstrap_samples; ++b) {
                    RandomEngine engine(boot_src.substream(b));
                    for (std::size_t j = 0; j < n; ++j)
                        replicate[j] = detail::tail_extrapolated_value(
                            sorted, engine.next_open_unit());
                    std::sort(replicate.begin(), replicate.end());
                    for (std::size_t qi = 0; qi < n_levels; ++qi) {
                        const std::size_t pick = detail::sample_quantile_index(
                            n, cfg.quantile_levels[qi]);
                        replicate_values[qi][b] = replicate[pick - 1];
                    }
                }
                const std::size_t median_pick = detail::sample_quantile_index(
                    cfg.bootstrap_samples, 0.5);
                for (std::size_t qi = 0; qi < n_levels; ++qi) {
                    auto& vals = replicate_values[qi];
                    std::nth_element(vals.begin(),
                                     vals.begin() + (median_pick - 1),
                                     vals.end());
                    deviations[2][qi][run] =
                        vals[median_pick - 1] - truths[qi];
                }
            });

            for (std::size_t e = 0; e < 3; ++e) {
                for (std::size_t qi = 0; qi < n_levels; ++qi) {
                    BiasResult row;
                    row.scenario = scenario.dist.name();
                    row.estimator = kEstimators[e];
                    row.quantile_level = cfg.quantile_levels[qi];
                    row.n = n;
                    if (kEstimators[e] == Estimator::Interpolated &&
                        !interpolable[qi]) {
                        row.skipped_reason =
                            "skipped: level outside interpolable range (" +
                            std::to_string(1.0 / np) + ", " +
                            std::to_string(static_cast<double>(n) / np) + ")";
                        results.push_back(std::move(row));
                        continue;
                    }
                    double sum = 0.0;
                    double sum_sq = 0.0;
                    for (std::size_t r = 0; r < cfg.runs; ++r) {
                        const double d = deviations[e][qi][r];
                        sum += d;
                        sum_sq += d * d;
                    }
                    const double runs = static_cast<double>(cfg.runs);
                    const double denom = std::fabs(truths[qi]);
                    row.relative_modulus_bias =
                        std::fabs(sum / runs) / denom;
                    row.relative_rmse = std::sqrt(sum_sq / runs) / denom;
                    results.push_back(std::move(row));
                }
            }
        }
    }
    return results;
}

std::vector<Scenario> default_scenarios() {
    std::vector<Scenario> scenarios;
    const MetricBounds unit{0.0, 1.0};
    const MetricBounds none{};
    scenarios.push_back(
        {ScenarioDistribution("beta_right", BetaDist{2.0, 8.0}), unit});
    scenarios.push_back(
        {ScenarioDistribution("beta_left", BetaDist{8.0, 2.0}), unit});
    scenarios.push_back(
        {ScenarioDistribution("beta_symmetric", BetaDist{5.0, 5.0}), unit});
    scenarios.push_back(
        {ScenarioDistribution("uniform", UniformDist{0.0, 1.0}), unit});
    scenarios.push_back(
        {ScenarioDistribution("normal", NormalDist{0.85, 0.03}), none});
    scenarios.push_back(
        {ScenarioDistribution("normal_mixture",
                              NormalMixtureDist{{0.5, 0.5},
                                                {0.78, 0.90},
                                                {0.02, 0.02}}),
         none});
    return scenarios;
}

}  // namespace qci
