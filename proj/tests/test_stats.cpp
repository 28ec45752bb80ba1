#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nllkit/rng.hpp"
#include "nllkit/stats.hpp"

using namespace nllkit;

namespace {

// Independent exact oracle: two-sided p as the null probability that
// min(W+, W-) is at most the observed statistic, enumerated over all sign
// patterns. Ranks are recomputed here from scratch.
double wilcoxon_exact_oracle(const std::vector<double>& diffs) {
  std::vector<double> abs_d;
  for (double d : diffs)
    if (d != 0.0) abs_d.push_back(std::fabs(d));
  const std::size_t n = abs_d.size();

  std::vector<double> sorted(abs_d);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = 0, hi = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sorted[j] < abs_d[i]) ++lo;
      if (sorted[j] <= abs_d[i]) ++hi;
    }
    ranks[i] = (lo + 1 + hi) / 2.0;
  }

  double total = 0, w_plus = 0;
  std::size_t k = 0;
  for (double d : diffs) {
    if (d == 0.0) continue;
    total += ranks[k];
    if (d > 0) w_plus += ranks[k];
    ++k;
  }
  double w_obs = std::min(w_plus, total - w_plus);

  std::uint64_t hits = 0;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double wp = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) wp += ranks[i];
    if (std::min(wp, total - wp) <= w_obs + 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(patterns);
}

}  // namespace

TEST_CASE("normal cdf reference points") {
  CHECK(normal_cdf(0.0) == Catch::Approx(0.5));
  CHECK(normal_cdf(1.959963985) == Catch::Approx(0.975).epsilon(1e-6));
  CHECK(normal_cdf(-1.959963985) == Catch::Approx(0.025).epsilon(1e-4));
}

TEST_CASE("regularized gamma against chi-square closed forms") {
  // df = 2: upper tail is exp(-x/2).
  for (double x : {0.5, 1.0, 2.5, 5.0, 10.0, 25.0})
    CHECK(chi_square_upper_tail(x, 2.0) == Catch::Approx(std::exp(-x / 2.0)).margin(1e-10));
  // df = 1: upper tail is 2 * (1 - Phi(sqrt(x))).
  for (double x : {0.3, 1.0, 3.0, 8.0})
    CHECK(chi_square_upper_tail(x, 1.0) ==
          Catch::Approx(2.0 * (1.0 - normal_cdf(std::sqrt(x)))).margin(1e-10));
  // P + Q = 1 across the series/continued-fraction split.
  for (double s : {0.5, 1.0, 3.5, 10.0})
    for (double x : {0.1, s, s + 0.999, s + 1.001, 4 * s})
      CHECK(regularized_gamma_p(s, x) + regularized_gamma_q(s, x) ==
            Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("midranks handle ties") {
  CHECK(midranks({3.0, 1.0, 2.0}) == std::vector<double>{3.0, 1.0, 2.0});
  CHECK(midranks({1.0, 2.0, 2.0, 5.0}) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
  CHECK(midranks({7.0, 7.0, 7.0}) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("chi-square goodness of fit examples") {
  auto r = chi_square_gof({50, 30, 20}, {40, 40, 20});
  CHECK(r.chi2 == Catch::Approx(5.0).margin(1e-12));
  CHECK(r.df == 2);
  CHECK(r.p == Catch::Approx(0.0821).margin(1e-3));

  auto r2 = chi_square_gof({10, 20}, {15, 15});
  CHECK(r2.chi2 == Catch::Approx(10.0 / 3.0).margin(1e-12));
  CHECK(r2.df == 1);
  CHECK(r2.p == Catch::Approx(0.0679).margin(1e-3));

  auto identity = chi_square_gof({5, 5, 5}, {5, 5, 5});
  CHECK(identity.chi2 == 0.0);
  CHECK(identity.p == 1.0);

  CHECK_THROWS_AS(chi_square_gof({1, 2}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_gof({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("kruskal-wallis hand example") {
  // Rank sums 3, 7, 11 over n = 6 give H = 2/7 * 89.5 - 21 = 4.571...
  auto r = kruskal_wallis({{1, 2}, {3, 4}, {5, 6}});
  CHECK(r.h == Catch::Approx(4.571).margin(5e-4));
  CHECK(r.df == 2);
  CHECK(r.p == Catch::Approx(0.102).margin(1e-3));
}

TEST_CASE("kruskal-wallis degenerate and error cases") {
  auto tied = kruskal_wallis({{4.0, 4.0}, {4.0, 4.0}, {4.0}});
  CHECK(tied.h == 0.0);
  CHECK(tied.p == 1.0);

  CHECK_THROWS_AS(kruskal_wallis({{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(kruskal_wallis({{1.0}, {}}), std::invalid_argument);
}

TEST_CASE("wilcoxon all-positive differences n=6") {
  std::vector<double> a{2, 3, 4, 5, 6, 7};
  std::vector<double> b{1, 2, 3, 4, 5, 6};
  auto r = wilcoxon_signed_rank(a, b);
  CHECK(r.w == 0.0);
  CHECK(r.exact);
  CHECK(r.p == Catch::Approx(2.0 / 64.0).margin(1e-12));
}

TEST_CASE("wilcoxon mixed-sign example n=6") {
  // Differences {1,-2,3,-4,5,6}: W- = 2 + 4 = 6, W+ = 15, W = 6.
  std::vector<double> a{1, -2, 3, -4, 5, 6};
  std::vector<double> b{0, 0, 0, 0, 0, 0};
  auto r = wilcoxon_signed_rank(a, b);
  CHECK(r.w_minus == Catch::Approx(6.0));
  CHECK(r.w_plus == Catch::Approx(15.0));
  CHECK(r.w == Catch::Approx(6.0));
  CHECK(r.p == Catch::Approx(0.4375).margin(1e-12));  // 28/64, frozen from the oracle
  CHECK(r.p == Catch::Approx(wilcoxon_exact_oracle({1, -2, 3, -4, 5, 6})).margin(1e-12));
}

TEST_CASE("wilcoxon equals enumeration oracle for n <= 12") {
  Rng rng(20260809);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng.uniform_index(11);
    std::vector<double> a(n), b(n, 0.0);
    bool any_nonzero = false;
    for (auto& v : a) {
      // Coarse grid forces plenty of ties and some zeros.
      v = std::round(rng.uniform(-3.0, 3.0));
      if (v != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) a[0] = 1.0;
    auto r = wilcoxon_signed_rank(a, b);
    REQUIRE(r.exact);
    REQUIRE(r.p == Catch::Approx(wilcoxon_exact_oracle(a)).margin(1e-12));
  }
}

TEST_CASE("wilcoxon zero-difference handling") {
  CHECK_THROWS_AS(wilcoxon_signed_rank({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
  // Zeros dropped before ranking.
  auto r = wilcoxon_signed_rank({1, 5, 9}, {1, 2, 3});
  CHECK(r.n == 2);
}

TEST_CASE("wilcoxon normal approximation for larger n") {
  std::vector<double> a, b;
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    a.push_back(rng.normal(0.5, 1.0));
    b.push_back(rng.normal(0.0, 1.0));
  }
  auto r = wilcoxon_signed_rank(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.p > 0.0);
  CHECK(r.p <= 1.0);
  // Clearly shifted pairs should be significant.
  std::vector<double> shifted(30);
  for (int i = 0; i < 30; ++i) shifted[i] = b[i] + 2.0 + 0.01 * i;
  CHECK(wilcoxon_signed_rank(shifted, b).p < 0.001);
}

TEST_CASE("rng streams are deterministic and purpose-separated") {
  Rng a(derive_seed(42, "fit", 3));
  Rng b(derive_seed(42, "fit", 3));
  Rng c(derive_seed(42, "tune", 3));
  bool diverged = false;
  for (int i = 0; i < 16; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    if (x != c.next_u64()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("rng distribution sanity") {
  Rng rng(123);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(sum / n == Catch::Approx(0.0).margin(0.05));
  CHECK(sum2 / n == Catch::Approx(1.0).margin(0.05));

  double gsum = 0.0;
  for (int i = 0; i < n; ++i) gsum += static_cast<double>(rng.geometric(30.0));
  CHECK(gsum / n == Catch::Approx(30.0).epsilon(0.1));
}
