#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nllkit {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace detail {

// Regularized incomplete gamma, series and continued-fraction halves split at
// x = s + 1 (Numerical Recipes scheme). Absolute accuracy well below 1e-8.
inline double gamma_p_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

inline double gamma_q_continued_fraction(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace detail

inline double regularized_gamma_p(double s, double x) {
  if (x < 0.0 || s <= 0.0) throw std::invalid_argument("regularized_gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return detail::gamma_p_series(s, x);
  return 1.0 - detail::gamma_q_continued_fraction(s, x);
}

inline double regularized_gamma_q(double s, double x) {
  if (x < 0.0 || s <= 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - detail::gamma_p_series(s, x);
  return detail::gamma_q_continued_fraction(s, x);
}

// Upper tail of the chi-square distribution with df degrees of freedom.
inline double chi_square_upper_tail(double x, double df) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, x / 2.0);
}

// 1-based ranks with ties replaced by mid-ranks.
inline std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

struct ChiSquareResult {
  double chi2 = 0.0;
  std::size_t df = 0;
  double p = 1.0;
};

inline ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                                      const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_gof: length mismatch");
  if (observed.size() < 2) throw std::invalid_argument("chi_square_gof: need at least 2 cells");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_gof: zero expected cell");
    double d = observed[i] - expected[i];
    r.chi2 += d * d / expected[i];
  }
  r.df = observed.size() - 1;
  r.p = chi_square_upper_tail(r.chi2, static_cast<double>(r.df));
  return r;
}

struct KruskalWallisResult {
  double h = 0.0;
  std::size_t df = 0;
  double p = 1.0;
};

inline KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
  for (const auto& g : groups)
    if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");

  std::vector<double> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const double n = static_cast<double>(pooled.size());
  std::vector<double> ranks = midranks(pooled);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    h += rank_sum * rank_sum / static_cast<double>(g.size());
    offset += g.size();
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  // Tie correction: divide by 1 - sum(t^3 - t)/(n^3 - n).
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  double correction = 1.0 - tie_sum / (n * n * n - n);

  KruskalWallisResult r;
  r.df = groups.size() - 1;
  if (h <= 0.0 || correction <= 0.0) {
    r.h = 0.0;
    r.p = 1.0;
    return r;
  }
  r.h = h / correction;
  r.p = chi_square_upper_tail(r.h, static_cast<double>(r.df));
  return r;
}

struct WilcoxonResult {
  double w = 0.0;       // min(w_plus, w_minus)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p = 1.0;       // two-sided
  std::size_t n = 0;    // nonzero differences
  bool exact = false;   // exact enumeration vs normal approximation
};

// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences are
// dropped. Exact p by enumerating all 2^n sign patterns for n <= 12 (the
// enumeration conditions on the observed |d| mid-ranks), normal approximation
// with tie correction above that.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                           const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon_signed_rank: length mismatch");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) throw std::invalid_argument("wilcoxon_signed_rank: all differences zero");

  const std::size_t n = diffs.size();
  std::vector<double> abs_d(n);
  for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::fabs(diffs[i]);
  std::vector<double> ranks = midranks(abs_d);

  WilcoxonResult r;
  r.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0)
      r.w_plus += ranks[i];
    else
      r.w_minus += ranks[i];
  }
  r.w = std::min(r.w_plus, r.w_minus);

  if (n <= 12) {
    r.exact = true;
    const double total = std::accumulate(ranks.begin(), ranks.end(), 0.0);
    const std::uint64_t patterns = std::uint64_t{1} << n;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      double wp = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) wp += ranks[i];
      if (std::min(wp, total - wp) <= r.w + 1e-9) ++count;
    }
    r.p = static_cast<double>(count) / static_cast<double>(patterns);
  } else {
    double nn = static_cast<double>(n);
    double mu = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    // Tie correction on |d| groups.
    std::vector<double> sorted(abs_d);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      double t = static_cast<double>(j - i + 1);
      var -= (t * t * t - t) / 48.0;
      i = j + 1;
    }
    if (var <= 0.0) {
      r.p = 1.0;
      return r;
    }
    double z = (r.w - mu) / std::sqrt(var);
    r.p = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::fabs(z))));
  }
  return r;
}

}  // namespace nllkit
