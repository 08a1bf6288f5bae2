#include "qci/analysis.hpp"

#include <bit>

namespace qci {

namespace {

constexpr std::uint64_t kTagPoint = 0x504f494e54455354ull;
constexpr std::uint64_t kTagInterval = 0x494e54564c455354ull;

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

AnalysisReport analyze_sample(const Sample& s,
                              const std::vector<QuantileRequest>& requests,
                              std::size_t bootstrap_samples,
                              const RandomSource& src) {
    if (requests.empty())
        throw DomainError("analyze_sample: at least one request required");

    AnalysisReport report;
    report.n = s.size();
    report.sample_mean = s.mean();
    report.master_seed = src.master_seed;
    report.bootstrap_samples = bootstrap_samples;

    for (const QuantileRequest& request : requests) {
        RequestReport rr;
        rr.quantile_level = request.quantile_level;
        rr.confidence_level = request.confidence_level;
        const QuantileLevel u(request.quantile_level);
        detail::validate_confidence_level(request.confidence_level);
        request.bounds.validate();

        auto add_estimate = [&](Estimator estimator, auto&& compute) {
            EstimateOutcome outcome;
            outcome.estimator = estimator;
            try {
                outcome.value = compute();
            } catch (const Error& e) {
                outcome.error = e.what();
            }
            rr.point_estimates.push_back(std::move(outcome));
        };
        add_estimate(Estimator::SampleQuantile,
                     [&] { return sample_quantile(s, u).value; });
        add_estimate(Estimator::Interpolated,
                     [&] { return interpolated_quantile(s, u).value; });
        add_estimate(Estimator::TailExtrapolated,
                     [&] { return tail_extrapolated_quantile(s, u).value; });
        add_estimate(Estimator::BootstrapMedian, [&] {
            const RandomSource boot_src = src.substream(
                mix64(kTagPoint, bits(request.quantile_level)));
            return bootstrap_median_estimate(s, u, bootstrap_samples,
                                             boot_src)
                .value;
        });

        for (CiMethod method : request.methods) {
            IntervalOutcome outcome;
            outcome.method = method;
            const RandomSource method_src = src.substream(
                mix64(kTagInterval,
                      mix64(bits(request.quantile_level),
                            mix64(bits(request.confidence_level),
                                  static_cast<std::uint64_t>(method)))));
            try {
                switch (method) {
                    case CiMethod::ExactRandomized:
                        outcome.interval = exact_ci(
                            s, u, request.confidence_level,
                            ExactCiMode::RandomizedOptimal, method_src);
                        break;
                    case CiMethod::ExactEqualTailed:
                        outcome.interval =
                            exact_ci(s, u, request.confidence_level,
                                     ExactCiMode::EqualTailed, method_src);
                        break;
                    case CiMethod::Asymptotic:
                        outcome.interval =
                            asymptotic_ci(s, u, request.confidence_level);
                        break;
                    case CiMethod::Bootstrap:
                        outcome.interval = bootstrap_ci(
                            s, u, request.confidence_level, bootstrap_samples,
                            request.bounds, method_src);
                        break;
                    case CiMethod::TMean:
                        outcome.interval =
                            t_interval(s, request.confidence_level);
                        break;
                }
            } catch (const InfeasibleSampleSizeError& e) {
                outcome.error = e.what();
                outcome.required_min_n = e.min_n();
            } catch (const Error& e) {
                outcome.error = e.what();
            }
            rr.intervals.push_back(std::move(outcome));
        }
        report.requests.push_back(std::move(rr));
    }
    return report;
}

}  // namespace qci
