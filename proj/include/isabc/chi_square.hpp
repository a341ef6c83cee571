#pragma once

// Central and non-central chi-square distribution functions used to
// calibrate the energy detector and to predict its miss probability.

namespace isabc::stats {

// F(x; k) = P(k/2, x/2), the regularized lower incomplete gamma function.
double chi2_cdf(double x, double dof);
// 1 - F(x; k), computed without cancellation.
double chi2_sf(double x, double dof);

// x with F(x; k) = p. Wilson-Hilferty seed, then safeguarded Newton /
// bisection until the CDF matches to 1e-12 (relative on the smaller tail).
double chi2_quantile(double p, double dof);
// x with 1 - F(x; k) = q; accurate for tiny q.
double chi2_quantile_upper(double q, double dof);

// Poisson mixture sum_j e^{-l/2} (l/2)^j / j! F(x; k + 2j), summed until the
// remaining terms are bounded below 1e-14 of the partial sum.
double noncentral_chi2_cdf(double x, double dof, double lambda);

}  // namespace isabc::stats
