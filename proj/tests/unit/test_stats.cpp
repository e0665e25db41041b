#include <cmath>
#include <initializer_list>
#include <limits>

#include "doctest.h"
#include "homnet/stats.hpp"

using namespace homnet;

namespace {

// Student-t CDF by Simpson quadrature of the density, independent of the
// incomplete-beta route used by the library.
double t_pdf(double x, double df) {
    const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                     std::sqrt(df * M_PI);
    return c * std::pow(1.0 + x * x / df, -(df + 1) / 2);
}

double t_cdf_quadrature(double t, double df) {
    const double lo = 0.0, hi = std::fabs(t);
    const int steps = 4000;
    const double h = (hi - lo) / steps;
    double sum = t_pdf(lo, df) + t_pdf(hi, df);
    for (int i = 1; i < steps; ++i)
        sum += t_pdf(lo + i * h, df) * (i % 2 ? 4.0 : 2.0);
    const double half = sum * h / 3.0;
    return t >= 0 ? 0.5 + half : 0.5 - half;
}

}  // namespace

TEST_CASE("t CDF against the quadrature oracle") {
    for (double df : {1.0, 2.0, 5.0, 10.0, 19.0, 100.0})
        for (double t : {-4.0, -2.5, -1.0, -0.3, 0.0, 0.5, 1.7, 3.2})
            CHECK(student_t_cdf(t, df) == doctest::Approx(t_cdf_quadrature(t, df)).epsilon(1e-8));
}

TEST_CASE("t CDF symmetry and limits") {
    for (double df : {3.0, 12.0})
        for (double t : {0.4, 1.3, 2.9}) {
            CHECK(student_t_cdf(t, df) + student_t_cdf(-t, df) == doctest::Approx(1.0));
        }
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5));
    CHECK(student_t_cdf(std::numeric_limits<double>::infinity(), 7.0) == 1.0);
}

TEST_CASE("two-sided p equals twice the tail") {
    for (double df : {4.0, 19.0})
        for (double t : {0.7, 2.1, 3.5}) {
            const double p = student_t_two_sided_p(t, df);
            CHECK(p == doctest::Approx(2.0 * (1.0 - student_t_cdf(t, df))).epsilon(1e-10));
            CHECK(student_t_two_sided_p(-t, df) == doctest::Approx(p).epsilon(1e-12));
        }
    CHECK(student_t_two_sided_p(0.0, 9.0) == doctest::Approx(1.0));
}

TEST_CASE("incomplete beta endpoints and known values") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1,1) = x; I_x(2,1) = x^2.
    CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(incomplete_beta(2.0, 1.0, 0.6) == doctest::Approx(0.36).epsilon(1e-12));
}
