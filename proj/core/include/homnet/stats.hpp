#pragma once

namespace homnet {

/// Regularized incomplete beta function I_x(a, b) via the Lentz continued
/// fraction; relative accuracy ~1e-14 for moderate arguments.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double df);

}  // namespace homnet
