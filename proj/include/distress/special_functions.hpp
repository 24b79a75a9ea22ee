#pragma once

namespace distress {

/// Natural log of the gamma function for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_inc_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double reg_inc_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), 0 <= x <= 1, a, b > 0.
double reg_inc_beta(double x, double a, double b);

/// Upper tail of the chi-square distribution. Non-integer df is allowed.
double chi_square_sf(double x, double df);

/// Upper tail of the F distribution with (d1, d2) degrees of freedom.
double f_sf(double x, double d1, double d2);

}  // namespace distress
