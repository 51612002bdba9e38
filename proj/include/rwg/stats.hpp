#pragma once
#include <vector>

namespace rwg {

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

double mean(const std::vector<double>& v);

// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_std(const std::vector<double>& v);

// One-sample Kolmogorov-Smirnov p-value of `samples` against the CDF values
// `cdf_at_sample` (same order as the sorted samples is handled internally).
double ks_test_pvalue(std::vector<double> cdf_of_samples);

// Chi-square independence p-value for a presence x class contingency table
// (rows: absent/present). Degenerate tables (an empty margin) return 1.
double chi2_independence_pvalue(const std::vector<std::vector<double>>& table);

// Spearman rank correlation with average ranks for ties; constant input
// yields 0 ("no trend").
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rwg
