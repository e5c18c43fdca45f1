#pragma once

#include <vector>

namespace georep {

// --- distribution kernels ---------------------------------------------------
// All three CDFs are computed through the regularized incomplete beta/gamma
// functions (continued-fraction evaluation), absolute error well under 1e-10.

double reg_inc_gamma_lower(double a, double x);  // P(a, x)
double reg_inc_beta(double a, double b, double x);  // I_x(a, b)

double normal_cdf(double z);
double t_cdf(double t, double df);                 // df >= 1
double f_cdf(double f, double df1, double df2);    // f >= 0, dfs >= 1

// --- tests -------------------------------------------------------------------

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double p_two_sided = 0.0;
    double mean_diff = 0.0;
    double sd_diff = 0.0;
    int n = 0;
};

// Paired-samples t-test on differences d_i = b_i - a_i (two-sided).
// ZeroVarianceError when every difference is identical.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct LeveneResult {
    double w = 0.0;
    int df1 = 0;
    int df2 = 0;
    double p = 0.0;
};

// Levene's test in its original mean-centered form: Z_ij = |x_ij - mean_i|.
LeveneResult levene_test(const std::vector<std::vector<double>>& groups);

struct PearsonResult {
    double r = 0.0;
    double t = 0.0;
    int df = 0;
    double p_two_sided = 0.0;
};

// Pearson correlation with two-sided p from the t distribution on n-2 df;
// |r| = 1 short-circuits to p = 0.
PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace georep
