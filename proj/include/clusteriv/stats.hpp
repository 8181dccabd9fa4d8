// Scalar distribution functions and small statistical helpers used across
// the inference modules. Self-contained so results are identical on every
// platform we build for.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clusteriv {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile, p in (0,1). Accurate to ~1e-14 after refinement.
double normal_quantile(double p);

// Upper-a critical value of the chi-square distribution with 1 degree of
// freedom, i.e. c with P(X > c) = a.
double chi2_1_upper(double a);

// CDF of Student's t with nu degrees of freedom.
double student_t_cdf(double t, double nu);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
};

// Welch two-sample t-test from group summaries. Degenerate spreads give p = 1.
WelchResult welch_t_test(double mean1, double var1, std::size_t n1,
                         double mean2, double var2, std::size_t n2);

// Ranks 1..n with average ranks assigned to ties.
std::vector<double> average_ranks(std::span<const double> values);

double mean(std::span<const double> values);
// Sample variance with denominator n-1; 0 when n < 2.
double sample_variance(std::span<const double> values);

}  // namespace clusteriv
