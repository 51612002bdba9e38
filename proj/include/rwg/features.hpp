#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rwg/seed.hpp"

namespace rwg {

enum class FeatureKind {
  // statistical distributions
  Normal,
  Uniform,
  Exponential,
  Lognormal,
  Gamma,
  Beta,
  Weibull,
  Laplace,
  Logistic,
  Rayleigh,
  Pareto,
  Cauchy,
  NegativeBinomial,
  Gumbel,
  Gompertz,
  // deterministic sequences
  Arithmetic,
  Geometric,
  Fibonacci,
  Square,
  Cube,
  Prime,
  Triangular,
  Rectangular,
  BinomialCoefficient,
  Hamiltonian,  // harmonic numbers; see docs for the naming note
};

constexpr int kFeatureKindCount = 25;

struct FeatureGenerator {
  FeatureKind kind = FeatureKind::Normal;
  // Distribution parameters (a, b) with kind-specific meaning: Normal
  // (mean, std), Uniform (lo, hi), Exponential (rate, -), Lognormal
  // (mu, sigma), Gamma (shape, scale), Beta (alpha, beta), Weibull
  // (shape, scale), Laplace (loc, scale), Logistic (loc, scale), Rayleigh
  // (sigma, -), Pareto (xm, alpha), Cauchy (loc, scale), NegativeBinomial
  // (r, p), Gumbel (loc, scale), Gompertz (eta, b). Sequences: Arithmetic
  // (start, step), Geometric (start, ratio), Fibonacci (first, second);
  // other sequences ignore them.
  double a = 0.0;
  double b = 1.0;
  // Sequence kinds only: when true, the row of node v starts at term v.
  bool offset_per_node = false;
};

bool feature_kind_is_sequence(FeatureKind k);
std::string feature_kind_name(FeatureKind k);
FeatureKind feature_kind_from_name(const std::string& name);
FeatureGenerator default_feature_generator(FeatureKind k);

// Validates parameter domains (e.g. Exponential rate > 0). Throws ConfigError.
void validate_generator(const FeatureGenerator& gen);

// One standard-normal draw (Box-Muller on the shared stream).
double standard_normal(Rng& rng);

// One draw from a distribution kind. Cauchy and Pareto draws are winsorized
// at the 0.999 tail quantile so downstream training stays finite.
double draw(const FeatureGenerator& gen, Rng& rng);

// CDF of the (un-winsorized) distribution, used by the KS self-check.
double cdf(const FeatureGenerator& gen, double x);

// Term k (0-based) of a sequence kind.
double sequence_term(const FeatureGenerator& gen, int k);

// n x dim feature matrix. Distribution kinds fill i.i.d. entries from the
// seeded stream; sequence kinds are pure functions of the parameters.
std::vector<double> generate_features(const FeatureGenerator& gen, int n, int dim,
                                      std::uint64_t seed);

std::string feature_registry_json();

}  // namespace rwg
