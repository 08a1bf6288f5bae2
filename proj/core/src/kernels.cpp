#include "qci/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qci/errors.hpp"

namespace qci {

namespace {

constexpr double kPi = 3.14159265358979323846;

double log_binomial_coefficient(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Modified Lentz evaluation of a continued fraction with unit denominators
// and numerator terms given by `numer`.
template <typename Numer>
double lentz_continued_fraction(Numer numer) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double f = 1.0;
    double c = 1.0;
    double d = 0.0;
    for (int m = 1; m < 100000; ++m) {
        const double an = numer(m);
        d = 1.0 + an * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) <= eps) break;
    }
    return f;
}

// Textbook continued fraction for the incomplete beta function, valid and
// fast for x below the switch point (a+1)/(a+b+2).
double incomplete_beta_cf(double x, double a, double b) {
    auto numer = [x, a, b](int n) {
        if (n % 2 == 0) {
            const double m = n / 2;
            return m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
        }
        const double m = (n - 1) / 2;
        return -(a + m) * (a + b + m) * x /
               ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
    };
    return lentz_continued_fraction(numer);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// Rational initial guess for the normal quantile (Acklam's method); the
// result is refined against the forward CDF, so only rough accuracy is
// needed here.
double normal_quantile_guess(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
                c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
                 c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double t_pdf(double x, double df) {
    const double v = df;
    const double log_norm = std::lgamma(0.5 * (v + 1.0)) -
                            std::lgamma(0.5 * v) - 0.5 * std::log(v * kPi);
    return std::exp(log_norm - 0.5 * (v + 1.0) * std::log1p(x * x / v));
}

double t_cdf(double x, double df) {
    const double v = df;
    const double z = v / (x * x + v);
    const double tail = 0.5 * regularized_incomplete_beta(z, 0.5 * v, 0.5);
    return x >= 0.0 ? 1.0 - tail : tail;
}

}  // namespace

double binomial_pmf(std::size_t successes, std::size_t trials, double p) {
    if (successes > trials)
        throw DomainError("binomial_pmf: successes " +
                          std::to_string(successes) + " exceed trials " +
                          std::to_string(trials));
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("binomial_pmf: p must lie in [0,1]");
    if (p == 0.0) return successes == 0 ? 1.0 : 0.0;
    if (p == 1.0) return successes == trials ? 1.0 : 0.0;
    const double s = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    const double log_pmf = log_binomial_coefficient(trials, successes) +
                           s * std::log(p) + (n - s) * std::log1p(-p);
    return std::exp(log_pmf);
}

double binomial_cdf(std::size_t successes, std::size_t trials, double p) {
    if (successes > trials)
        throw DomainError("binomial_cdf: successes " +
                          std::to_string(successes) + " exceed trials " +
                          std::to_string(trials));
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("binomial_cdf: p must lie in [0,1]");
    double sum = 0.0;
    for (std::size_t j = 0; j <= successes; ++j)
        sum += binomial_pmf(j, trials, p);
    return sum;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("normal_quantile: p must lie strictly inside (0,1)");
    double x = normal_quantile_guess(p);
    // Two Halley steps take the rational guess to full double precision.
    for (int iter = 0; iter < 2; ++iter) {
        const double err = normal_cdf(x) - p;
        const double step = err / normal_pdf(x);
        x -= step / (1.0 + 0.5 * x * step);
    }
    return x;
}

double t_quantile(double p, std::size_t df) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("t_quantile: p must lie strictly inside (0,1)");
    if (df == 0) throw DomainError("t_quantile: df must be at least 1");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -t_quantile(1.0 - p, df);

    const double v = static_cast<double>(df);
    // Bracket [0, hi] with t_cdf(hi) >= p, then bisect and polish.
    double lo = 0.0;
    double hi = 1.0;
    while (t_cdf(hi, v) < p) {
        hi *= 4.0;
        if (hi > 1e300)
            throw DomainError("t_quantile: failed to bracket quantile");
    }
    for (int iter = 0; iter < 64; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, v) < p)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 3; ++iter) {
        const double err = t_cdf(x, v) - p;
        const double dens = t_pdf(x, v);
        if (dens <= 0.0) break;
        const double next = x - err / dens;
        if (next > lo && next < hi) x = next;
    }
    return x;
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("regularized_incomplete_beta: x must lie in [0,1]");
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("regularized_incomplete_beta: a, b must be positive");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    // The continued fraction converges quickly only below the switch point;
    // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) above it.
    if (x < (a + 1.0) / (a + b + 2.0))
        return front / (a * incomplete_beta_cf(x, a, b));
    return 1.0 - front / (b * incomplete_beta_cf(1.0 - x, b, a));
}

}  // namespace qci
