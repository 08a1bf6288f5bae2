#pragma once

#include <cstddef>

namespace qci {

// P(X = successes) for X ~ Binomial(trials, p). Evaluated in log space.
double binomial_pmf(std::size_t successes, std::size_t trials, double p);

// P(X <= successes) for X ~ Binomial(trials, p).
double binomial_cdf(std::size_t successes, std::size_t trials, double p);

// Standard normal CDF / inverse CDF. The quantile is refined by Newton
// iteration on the erfc-based forward CDF (absolute error well below 1e-9).
double normal_cdf(double x);
double normal_quantile(double p);

// Student-t inverse CDF with df >= 1 degrees of freedom, computed by
// bracketed bisection plus Newton polish on the incomplete-beta forward CDF.
double t_quantile(double p, std::size_t df);

// Regularized incomplete beta function I_x(a,b), modified-Lentz continued
// fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

}  // namespace qci
