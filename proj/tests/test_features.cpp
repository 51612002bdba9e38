#include <doctest.h>

#include <cmath>

#include "rwg/errors.hpp"
#include "rwg/features.hpp"
#include "rwg/stats.hpp"

using namespace rwg;

namespace {

const FeatureKind kDistributions[] = {
    FeatureKind::Normal,    FeatureKind::Uniform,  FeatureKind::Exponential,
    FeatureKind::Lognormal, FeatureKind::Gamma,    FeatureKind::Beta,
    FeatureKind::Weibull,   FeatureKind::Laplace,  FeatureKind::Logistic,
    FeatureKind::Rayleigh,  FeatureKind::Pareto,   FeatureKind::Cauchy,
    FeatureKind::NegativeBinomial, FeatureKind::Gumbel, FeatureKind::Gompertz,
};

const FeatureKind kSequences[] = {
    FeatureKind::Arithmetic, FeatureKind::Geometric,   FeatureKind::Fibonacci,
    FeatureKind::Square,     FeatureKind::Cube,        FeatureKind::Prime,
    FeatureKind::Triangular, FeatureKind::Rectangular, FeatureKind::BinomialCoefficient,
    FeatureKind::Hamiltonian,
};

}  // namespace

TEST_CASE("arithmetic row matches the definition") {
  FeatureGenerator g{FeatureKind::Arithmetic, 0.0, 1.0, false};
  auto row = generate_features(g, 1, 5, 99);
  CHECK(row == std::vector<double>{0, 1, 2, 3, 4});
}

TEST_CASE("fibonacci row expands the recurrence") {
  FeatureGenerator g{FeatureKind::Fibonacci, 1.0, 1.0, false};
  auto row = generate_features(g, 1, 5, 0);
  CHECK(row == std::vector<double>{1, 1, 2, 3, 5});
}

TEST_CASE("uniform mean obeys the law of large numbers") {
  FeatureGenerator g{FeatureKind::Uniform, 0.0, 1.0, false};
  auto vals = generate_features(g, 1000, 1, 12345);
  CHECK(mean(vals) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::fabs(mean(vals) - 0.5) < 0.05);
}

TEST_CASE("sequence spot values") {
  CHECK(sequence_term({FeatureKind::Square, 0, 0, false}, 2) == 9);
  CHECK(sequence_term({FeatureKind::Cube, 0, 0, false}, 2) == 27);
  CHECK(sequence_term({FeatureKind::Prime, 0, 0, false}, 0) == 2);
  CHECK(sequence_term({FeatureKind::Prime, 0, 0, false}, 4) == 11);
  CHECK(sequence_term({FeatureKind::Triangular, 0, 0, false}, 3) == 10);
  CHECK(sequence_term({FeatureKind::Rectangular, 0, 0, false}, 1) == 6);
  CHECK(sequence_term({FeatureKind::BinomialCoefficient, 0, 0, false}, 3) == 20);
  CHECK(sequence_term({FeatureKind::Hamiltonian, 0, 0, false}, 2) ==
        doctest::Approx(1.0 + 0.5 + 1.0 / 3.0));
  CHECK(sequence_term({FeatureKind::Geometric, 1, 2, false}, 4) == 16);
}

TEST_CASE("sequences are pure: independent of seed, offset shifts rows") {
  for (FeatureKind k : kSequences) {
    FeatureGenerator g = default_feature_generator(k);
    CHECK(generate_features(g, 3, 4, 1) == generate_features(g, 3, 4, 999));
    FeatureGenerator off = g;
    off.offset_per_node = true;
    auto rows = generate_features(off, 3, 4, 1);
    CHECK(rows[4] == sequence_term(off, 1));  // node 1 starts at term 1
  }
}

TEST_CASE("every distribution passes a seeded KS self-check at n = 10^4") {
  for (FeatureKind k : kDistributions) {
    FeatureGenerator g = default_feature_generator(k);
    Rng rng(fnv1a64(feature_kind_name(k)));
    Rng pit_rng(fnv1a64(feature_kind_name(k)) + 1);
    bool discrete = k == FeatureKind::NegativeBinomial;
    std::vector<double> cdf_vals;
    cdf_vals.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
      double x = draw(g, rng);
      if (discrete) {
        // randomized PIT: F(x-1) + V * pmf(x) is uniform for integer draws
        double hi = cdf(g, x);
        double lo = x >= 1 ? cdf(g, x - 1) : 0.0;
        cdf_vals.push_back(lo + pit_rng.uniform() * (hi - lo));
      } else {
        cdf_vals.push_back(cdf(g, x));
      }
    }
    INFO(feature_kind_name(k));
    CHECK(ks_test_pvalue(cdf_vals) > 1e-3);
  }
}

TEST_CASE("winsorized tails stay finite") {
  for (FeatureKind k : {FeatureKind::Cauchy, FeatureKind::Pareto}) {
    FeatureGenerator g = default_feature_generator(k);
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) CHECK(std::isfinite(draw(g, rng)));
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(generate_features({FeatureKind::Exponential, 0.0, 0, false}, 2, 2, 1), ConfigError);
  CHECK_THROWS_AS(generate_features({FeatureKind::Beta, -1.0, 2.0, false}, 2, 2, 1), ConfigError);
  CHECK_THROWS_AS(generate_features({FeatureKind::Uniform, 1.0, 0.0, false}, 2, 2, 1), ConfigError);
  CHECK_THROWS_AS(generate_features(default_feature_generator(FeatureKind::Normal), 0, 2, 1),
                  ConfigError);
}

TEST_CASE("kind names round-trip and cover all 25") {
  int count = 0;
  for (FeatureKind k : kDistributions) {
    CHECK(feature_kind_from_name(feature_kind_name(k)) == k);
    ++count;
  }
  for (FeatureKind k : kSequences) {
    CHECK(feature_kind_from_name(feature_kind_name(k)) == k);
    CHECK(feature_kind_is_sequence(k));
    ++count;
  }
  CHECK(count == kFeatureKindCount);
}
