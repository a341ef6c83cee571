#include "isabc/chi_square.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "isabc/errors.hpp"

namespace isabc::stats {

namespace {

void check_dof(double dof) {
    if (!(dof >= 1.0) || !std::isfinite(dof)) throw DomainError("chi-square: dof must be >= 1");
}

void check_x(double x) {
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError("chi-square: x must be >= 0");
}

double pdf(double x, double dof) {
    // d/dx P(k/2, x/2) = 0.5 * gamma_p_derivative(k/2, x/2)
    return 0.5 * boost::math::gamma_p_derivative(dof / 2.0, x / 2.0);
}

double wilson_hilferty(double p, double dof) {
    // Normal quantile through the inverse complementary error function.
    const double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
    const double h = 2.0 / (9.0 * dof);
    const double t = 1.0 - h + z * std::sqrt(h);
    return std::max(dof * t * t * t, 1e-8);
}

// Solves tail(x) = target where tail is either the CDF (lower) or the
// survival function (upper). Both are monotone in x.
double solve_quantile(double target, double dof, bool upper) {
    auto tail = [&](double x) { return upper ? chi2_sf(x, dof) : chi2_cdf(x, dof); };
    // f(x) > 0 means x is too small.
    auto f = [&](double x) { return upper ? tail(x) - target : target - tail(x); };

    double x = wilson_hilferty(upper ? 1.0 - target : target, dof);
    if (upper && target < 1e-300) x = dof + 100.0;
    double lo = 0.0, hi = std::max(x, 1.0);
    while (f(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NumericalFailure("chi2 quantile: cannot bracket");
    }
    x = std::clamp(x, lo, hi);

    const double tol = 1e-12 * std::min(target, 1.0 - target);
    for (int it = 0; it < 500; ++it) {
        const double fx = f(x);
        if (std::abs(fx) <= tol) return x;
        if (fx > 0.0) lo = x;
        else hi = x;
        const double d = pdf(x, dof);
        double next = d > 0.0 ? x + fx / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
        x = next;
    }
    throw NumericalFailure("chi2 quantile: no convergence for target " + std::to_string(target));
}

// log P(s, y) for s > y via the power series, which avoids the underflow of
// the direct value when s >> y. `lgamma_s1` is log Gamma(s + 1).
double log_gamma_p_series(double s, double y, double lgamma_s1) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 100000; ++k) {
        term *= y / (s + k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return s * std::log(y) - y - lgamma_s1 + std::log(sum);
}

double log_gamma_p(double s, double y, double lgamma_s1) {
    if (y <= 0.0) return -std::numeric_limits<double>::infinity();
    if (s > y) return log_gamma_p_series(s, y, lgamma_s1);
    return std::log(boost::math::gamma_p(s, y));
}

}  // namespace

double chi2_cdf(double x, double dof) {
    check_x(x);
    check_dof(dof);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(dof / 2.0, x / 2.0);
}

double chi2_sf(double x, double dof) {
    check_x(x);
    check_dof(dof);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double chi2_quantile(double p, double dof) {
    check_dof(dof);
    if (!(p > 0.0 && p < 1.0)) throw DomainError("chi2_quantile: p must lie in (0, 1)");
    // Use whichever tail is small for the accuracy of the stopping rule.
    return p > 0.5 ? solve_quantile(1.0 - p, dof, true) : solve_quantile(p, dof, false);
}

double chi2_quantile_upper(double q, double dof) {
    check_dof(dof);
    if (!(q > 0.0 && q < 1.0)) throw DomainError("chi2_quantile_upper: q must lie in (0, 1)");
    return q < 0.5 ? solve_quantile(q, dof, true) : solve_quantile(1.0 - q, dof, false);
}

double noncentral_chi2_cdf(double x, double dof, double lambda) {
    check_x(x);
    check_dof(dof);
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("noncentral_chi2_cdf: lambda must be >= 0");
    if (x == 0.0) return 0.0;
    if (lambda == 0.0) return chi2_cdf(x, dof);

    // ||g + mu|| is 1-Lipschitz with mean >= sqrt(lambda), so
    // P(X <= x) <= exp(-(sqrt(lambda) - sqrt(x))^2 / 2) for x < lambda.
    if (x < lambda) {
        const double gap = std::sqrt(lambda) - std::sqrt(x);
        if (0.5 * gap * gap > 745.0) return 0.0;
    }

    const double mu = lambda / 2.0;
    const double y = x / 2.0;
    const double a = dof / 2.0;
    const double log_mu = std::log(mu);

    double log_w = -mu;  // log Poisson weight of j
    double lgam = boost::math::lgamma(a + 1.0);  // log Gamma(a + j + 1)
    double w_cum = 0.0;
    double sum = 0.0;
    const long j_cap = static_cast<long>(mu + 60.0 * std::sqrt(mu) + 2000.0);
    for (long j = 0; j <= j_cap; ++j) {
        const double s_j = a + static_cast<double>(j);
        const double log_p = log_gamma_p(s_j, y, lgam);
        lgam += std::log(s_j + 1.0);
        sum += std::exp(log_w + log_p);
        w_cum += std::exp(log_w);
        // Remaining terms: sum_{k>j} w_k P(a+k, y) <= P(a+j, y) * (1 - W_j).
        const double tail = std::exp(log_p) * std::max(0.0, 1.0 - w_cum);
        if (static_cast<double>(j) > mu || tail < 1.0) {
            if (tail < 1e-14 * sum || tail < 1e-300) return std::min(sum, 1.0);
        }
        log_w += log_mu - std::log(static_cast<double>(j + 1));
    }
    throw NumericalFailure("noncentral_chi2_cdf: series did not converge");
}

}  // namespace isabc::stats
