#pragma once

#include <vector>

namespace rf {

// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_stdev(const std::vector<double>& xs);

// Survival function of the chi-squared distribution with k dof.
double chi2_sf(double x, int dof);

// Chi-squared uniformity test over observed counts; returns the p-value.
double chi2_uniform_pvalue(const std::vector<long long>& counts);

struct WilcoxonResult {
  double statistic = 0;  // W = min(W+, W-)
  double p_value = 1;    // two-sided
  int n_effective = 0;   // pairs with nonzero difference
};

// Wilcoxon signed-rank test on paired samples. Exact distribution for up to
// 14 effective pairs, normal approximation beyond.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rf
