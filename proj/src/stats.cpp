#include "ruleforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rf {

double sample_stdev(const std::vector<double>& xs) {
  size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

namespace {

// Regularized lower incomplete gamma P(a, x), series + continued fraction.
double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p domain");
  if (x == 0) return 0;
  const double eps = 1e-14;
  const double lg = std::lgamma(a);
  if (x < a + 1) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < eps) break;
  }
  return 1 - std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace

double chi2_sf(double x, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi2 dof");
  if (x <= 0) return 1.0;
  return 1.0 - gamma_p(dof / 2.0, x / 2.0);
}

double chi2_uniform_pvalue(const std::vector<long long>& counts) {
  if (counts.size() < 2) return 1.0;
  long long total = std::accumulate(counts.begin(), counts.end(), 0ll);
  if (total == 0) return 1.0;
  double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0;
  for (long long c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return chi2_sf(stat, static_cast<int>(counts.size()) - 1);
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: length mismatch");
  std::vector<double> diffs;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0) diffs.push_back(d);
  }
  WilcoxonResult res;
  res.n_effective = static_cast<int>(diffs.size());
  if (diffs.empty()) return res;

  // rank by absolute difference, average ranks over ties
  std::vector<size_t> idx(diffs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t x, size_t y) { return std::fabs(diffs[x]) < std::fabs(diffs[y]); });
  std::vector<double> ranks(diffs.size());
  size_t i = 0;
  while (i < idx.size()) {
    size_t j = i;
    while (j + 1 < idx.size() &&
           std::fabs(diffs[idx[j + 1]]) == std::fabs(diffs[idx[i]]))
      ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t t = i; t <= j; ++t) ranks[idx[t]] = avg;
    i = j + 1;
  }
  double w_plus = 0, w_minus = 0;
  for (size_t t = 0; t < diffs.size(); ++t)
    (diffs[t] > 0 ? w_plus : w_minus) += ranks[t];
  res.statistic = std::min(w_plus, w_minus);

  int n = res.n_effective;
  if (n <= 14) {
    // exact two-sided p over all sign assignments
    long long total = 1ll << n;
    long long count = 0;
    double rank_sum = std::accumulate(ranks.begin(), ranks.end(), 0.0);
    double w = res.statistic + 1e-9;
    for (long long mask = 0; mask < total; ++mask) {
      double wp = 0;
      for (int k = 0; k < n; ++k)
        if (mask & (1ll << k)) wp += ranks[k];
      if (std::min(wp, rank_sum - wp) <= w) ++count;
    }
    res.p_value = static_cast<double>(count) / static_cast<double>(total);
  } else {
    double mean = n * (n + 1) / 4.0;
    double sd = std::sqrt(n * (n + 1) * (2.0 * n + 1) / 24.0);
    double z = (res.statistic - mean) / sd;  // <= 0 for the min statistic
    res.p_value = std::erfc(-z / std::sqrt(2.0));
  }
  res.p_value = std::min(1.0, res.p_value);
  return res;
}

}  // namespace rf
