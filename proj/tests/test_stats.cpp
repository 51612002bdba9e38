#include <doctest.h>

#include <cmath>

#include "rwg/seed.hpp"
#include "rwg/stats.hpp"

using namespace rwg;

TEST_CASE("gamma_p against known points") {
  // P(1, x) = 1 - exp(-x)
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0})
    CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
  // chi-square(1) at its median: P(0.5, 0.2275) ~ 0.5
  CHECK(gamma_p(0.5, 0.454936 / 2.0) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("beta_inc against symmetry and uniform special case") {
  // I_x(1,1) = x
  for (double x : {0.1, 0.25, 0.7}) CHECK(beta_inc(1, 1, x) == doctest::Approx(x).epsilon(1e-12));
  for (double x : {0.2, 0.45})
    CHECK(beta_inc(2, 3, x) == doctest::Approx(1.0 - beta_inc(3, 2, 1.0 - x)).epsilon(1e-10));
}

TEST_CASE("ks test accepts its own uniforms and rejects a shifted sample") {
  Rng rng(5);
  std::vector<double> cdf_vals;
  for (int i = 0; i < 10000; ++i) cdf_vals.push_back(rng.uniform());
  CHECK(ks_test_pvalue(cdf_vals) > 1e-3);

  std::vector<double> biased;
  Rng rng2(6);
  for (int i = 0; i < 10000; ++i) biased.push_back(rng2.uniform() * 0.9);
  CHECK(ks_test_pvalue(biased) < 1e-6);
}

TEST_CASE("chi-square independence test behaves at both extremes") {
  // perfectly dependent 2x2
  CHECK(chi2_independence_pvalue({{100, 0}, {0, 100}}) < 1e-6);
  // independent margins
  CHECK(chi2_independence_pvalue({{50, 50}, {50, 50}}) == doctest::Approx(1.0));
  // degenerate: empty row
  CHECK(chi2_independence_pvalue({{100, 120}, {0, 0}}) == doctest::Approx(1.0));
}

TEST_CASE("spearman: monotone, anti-monotone, constant") {
  std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(spearman(x, {2, 4, 6, 8, 10}) == doctest::Approx(1.0));
  CHECK(spearman(x, {5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman(x, {7, 7, 7, 7, 7}) == doctest::Approx(0.0));
  CHECK(spearman(x, {1, 3, 2, 5, 4}) == doctest::Approx(0.8));
}

TEST_CASE("mean and sample std") {
  CHECK(mean({1, 2, 3, 4}) == doctest::Approx(2.5));
  CHECK(sample_std({2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(2.13809).epsilon(1e-4));
  CHECK(sample_std({3}) == 0.0);
}
