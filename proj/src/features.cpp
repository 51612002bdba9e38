#include "rwg/features.hpp"

#include <cmath>

#include "rwg/errors.hpp"
#include "rwg/stats.hpp"

namespace rwg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWinsorQ = 0.999;

struct KindInfo {
  FeatureKind kind;
  const char* name;
  bool sequence;
  double def_a, def_b;
  const char* description;
};

const KindInfo kKindTable[kFeatureKindCount] = {
    {FeatureKind::Normal, "normal", false, 0.0, 1.0, "normal(mean, std) draws"},
    {FeatureKind::Uniform, "uniform", false, 0.0, 1.0, "uniform(lo, hi) draws"},
    {FeatureKind::Exponential, "exponential", false, 1.0, 0.0, "exponential(rate) draws"},
    {FeatureKind::Lognormal, "lognormal", false, 0.0, 1.0, "lognormal(mu, sigma) draws"},
    {FeatureKind::Gamma, "gamma", false, 2.0, 1.0, "gamma(shape, scale) draws"},
    {FeatureKind::Beta, "beta", false, 2.0, 2.0, "beta(alpha, beta) draws"},
    {FeatureKind::Weibull, "weibull", false, 1.5, 1.0, "weibull(shape, scale) draws"},
    {FeatureKind::Laplace, "laplace", false, 0.0, 1.0, "laplace(loc, scale) draws"},
    {FeatureKind::Logistic, "logistic", false, 0.0, 1.0, "logistic(loc, scale) draws"},
    {FeatureKind::Rayleigh, "rayleigh", false, 1.0, 0.0, "rayleigh(sigma) draws"},
    {FeatureKind::Pareto, "pareto", false, 1.0, 2.5, "pareto(xm, alpha) draws, winsorized"},
    {FeatureKind::Cauchy, "cauchy", false, 0.0, 1.0, "cauchy(loc, scale) draws, winsorized"},
    {FeatureKind::NegativeBinomial, "negative_binomial", false, 5.0, 0.5,
     "negative_binomial(r, p) failure counts"},
    {FeatureKind::Gumbel, "gumbel", false, 0.0, 1.0, "gumbel(loc, scale) draws"},
    {FeatureKind::Gompertz, "gompertz", false, 1.0, 1.0, "gompertz(eta, b) draws"},
    {FeatureKind::Arithmetic, "arithmetic", true, 0.0, 1.0, "start + k*step"},
    {FeatureKind::Geometric, "geometric", true, 1.0, 2.0, "start * ratio^k"},
    {FeatureKind::Fibonacci, "fibonacci", true, 1.0, 1.0, "fibonacci recurrence"},
    {FeatureKind::Square, "square", true, 0.0, 0.0, "(k+1)^2"},
    {FeatureKind::Cube, "cube", true, 0.0, 0.0, "(k+1)^3"},
    {FeatureKind::Prime, "prime", true, 0.0, 0.0, "k-th prime"},
    {FeatureKind::Triangular, "triangular", true, 0.0, 0.0, "(k+1)(k+2)/2"},
    {FeatureKind::Rectangular, "rectangular", true, 0.0, 0.0, "pronic (k+1)(k+2)"},
    {FeatureKind::BinomialCoefficient, "binomial_coefficient", true, 0.0, 0.0,
     "central binomial C(2k, k)"},
    {FeatureKind::Hamiltonian, "hamiltonian", true, 0.0, 0.0, "harmonic number H_(k+1)"},
};

const KindInfo& info(FeatureKind k) { return kKindTable[static_cast<int>(k)]; }

double normal_draw(Rng& rng) { return standard_normal(rng); }

double gamma_draw(double shape, double scale, Rng& rng) {
  // Marsaglia-Tsang; shapes below 1 are boosted.
  if (shape < 1.0) {
    double u = rng.uniform();
    if (u <= 0) u = 0x1.0p-53;
    return gamma_draw(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal_draw(rng);
    double v = 1.0 + c * x;
    if (v <= 0) continue;
    v = v * v * v;
    double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double standard_normal(Rng& rng) {
  // Box-Muller; one fresh pair per draw keeps the stream stateless.
  double u1 = rng.uniform();
  double u2 = rng.uniform();
  if (u1 <= 0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

bool feature_kind_is_sequence(FeatureKind k) { return info(k).sequence; }

std::string feature_kind_name(FeatureKind k) { return info(k).name; }

FeatureKind feature_kind_from_name(const std::string& name) {
  for (const KindInfo& ki : kKindTable)
    if (name == ki.name) return ki.kind;
  throw ConfigError("unknown feature generator kind: " + name);
}

FeatureGenerator default_feature_generator(FeatureKind k) {
  return {k, info(k).def_a, info(k).def_b, false};
}

void validate_generator(const FeatureGenerator& g) {
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw ConfigError("feature generator " + feature_kind_name(g.kind) + ": invalid parameter, " +
                        what);
  };
  switch (g.kind) {
    case FeatureKind::Normal: require(g.b > 0, "std > 0"); break;
    case FeatureKind::Uniform: require(g.a < g.b, "lo < hi"); break;
    case FeatureKind::Exponential: require(g.a > 0, "rate > 0"); break;
    case FeatureKind::Lognormal: require(g.b > 0, "sigma > 0"); break;
    case FeatureKind::Gamma: require(g.a > 0 && g.b > 0, "shape, scale > 0"); break;
    case FeatureKind::Beta: require(g.a > 0 && g.b > 0, "alpha, beta > 0"); break;
    case FeatureKind::Weibull: require(g.a > 0 && g.b > 0, "shape, scale > 0"); break;
    case FeatureKind::Laplace: require(g.b > 0, "scale > 0"); break;
    case FeatureKind::Logistic: require(g.b > 0, "scale > 0"); break;
    case FeatureKind::Rayleigh: require(g.a > 0, "sigma > 0"); break;
    case FeatureKind::Pareto: require(g.a > 0 && g.b > 0, "xm, alpha > 0"); break;
    case FeatureKind::Cauchy: require(g.b > 0, "scale > 0"); break;
    case FeatureKind::NegativeBinomial:
      require(g.a >= 1 && g.b > 0 && g.b < 1, "r >= 1, 0 < p < 1");
      break;
    case FeatureKind::Gumbel: require(g.b > 0, "scale > 0"); break;
    case FeatureKind::Gompertz: require(g.a > 0 && g.b > 0, "eta, b > 0"); break;
    case FeatureKind::Geometric: require(g.b != 0, "ratio != 0"); break;
    default: break;  // remaining sequences have no constrained parameters
  }
}

double sequence_term(const FeatureGenerator& g, int k) {
  switch (g.kind) {
    case FeatureKind::Arithmetic: return g.a + g.b * k;
    case FeatureKind::Geometric: return g.a * std::pow(g.b, k);
    case FeatureKind::Fibonacci: {
      double x = g.a, y = g.b;
      for (int i = 0; i < k; ++i) {
        double z = x + y;
        x = y;
        y = z;
      }
      return x;
    }
    case FeatureKind::Square: return static_cast<double>(k + 1) * (k + 1);
    case FeatureKind::Cube: return static_cast<double>(k + 1) * (k + 1) * (k + 1);
    case FeatureKind::Prime: {
      int count = 0;
      for (int n = 2;; ++n) {
        bool prime = true;
        for (int d = 2; d * d <= n; ++d)
          if (n % d == 0) {
            prime = false;
            break;
          }
        if (prime && count++ == k) return n;
      }
    }
    case FeatureKind::Triangular: return static_cast<double>(k + 1) * (k + 2) / 2.0;
    case FeatureKind::Rectangular: return static_cast<double>(k + 1) * (k + 2);
    case FeatureKind::BinomialCoefficient: {
      double c = 1.0;
      for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 1);
      return c;
    }
    case FeatureKind::Hamiltonian: {
      double h = 0.0;
      for (int i = 1; i <= k + 1; ++i) h += 1.0 / i;
      return h;
    }
    default: throw ConfigError("sequence_term: not a sequence kind");
  }
}

double draw(const FeatureGenerator& g, Rng& rng) {
  double u = rng.uniform();
  if (u <= 0) u = 0x1.0p-53;
  switch (g.kind) {
    case FeatureKind::Normal: return g.a + g.b * normal_draw(rng);
    case FeatureKind::Uniform: return g.a + (g.b - g.a) * u;
    case FeatureKind::Exponential: return -std::log1p(-u) / g.a;
    case FeatureKind::Lognormal: return std::exp(g.a + g.b * normal_draw(rng));
    case FeatureKind::Gamma: return gamma_draw(g.a, g.b, rng);
    case FeatureKind::Beta: {
      double x = gamma_draw(g.a, 1.0, rng);
      double y = gamma_draw(g.b, 1.0, rng);
      return x / (x + y);
    }
    case FeatureKind::Weibull: return g.b * std::pow(-std::log1p(-u), 1.0 / g.a);
    case FeatureKind::Laplace: {
      double c = u - 0.5;
      return g.a - g.b * (c < 0 ? -1.0 : 1.0) * std::log1p(-2.0 * std::fabs(c));
    }
    case FeatureKind::Logistic: return g.a + g.b * std::log(u / (1.0 - u));
    case FeatureKind::Rayleigh: return g.a * std::sqrt(-2.0 * std::log1p(-u));
    case FeatureKind::Pareto: {
      double x = g.a / std::pow(1.0 - u, 1.0 / g.b);
      double cap = g.a / std::pow(1.0 - kWinsorQ, 1.0 / g.b);
      return std::min(x, cap);
    }
    case FeatureKind::Cauchy: {
      double x = g.a + g.b * std::tan(kPi * (u - 0.5));
      double cap = g.a + g.b * std::tan(kPi * (kWinsorQ - 0.5));
      double floor = g.a + g.b * std::tan(kPi * (1.0 - kWinsorQ - 0.5));
      return std::min(std::max(x, floor), cap);
    }
    case FeatureKind::NegativeBinomial: {
      // sum of r geometric failure counts with success probability p = b
      int r = static_cast<int>(g.a);
      double total = 0.0;
      for (int i = 0; i < r; ++i) {
        double ui = (i == 0) ? u : rng.uniform();
        if (ui <= 0) ui = 0x1.0p-53;
        total += std::floor(std::log(ui) / std::log(1.0 - g.b));
      }
      return total;
    }
    case FeatureKind::Gumbel: return g.a - g.b * std::log(-std::log(u));
    case FeatureKind::Gompertz: return (1.0 / g.b) * std::log(1.0 - std::log1p(-u) / g.a);
    default: throw ConfigError("draw: not a distribution kind");
  }
}

double cdf(const FeatureGenerator& g, double x) {
  switch (g.kind) {
    case FeatureKind::Normal: return std_normal_cdf((x - g.a) / g.b);
    case FeatureKind::Uniform:
      if (x <= g.a) return 0.0;
      if (x >= g.b) return 1.0;
      return (x - g.a) / (g.b - g.a);
    case FeatureKind::Exponential: return x <= 0 ? 0.0 : 1.0 - std::exp(-g.a * x);
    case FeatureKind::Lognormal: return x <= 0 ? 0.0 : std_normal_cdf((std::log(x) - g.a) / g.b);
    case FeatureKind::Gamma: return x <= 0 ? 0.0 : gamma_p(g.a, x / g.b);
    case FeatureKind::Beta: return beta_inc(g.a, g.b, x);
    case FeatureKind::Weibull: return x <= 0 ? 0.0 : 1.0 - std::exp(-std::pow(x / g.b, g.a));
    case FeatureKind::Laplace:
      return x < g.a ? 0.5 * std::exp((x - g.a) / g.b) : 1.0 - 0.5 * std::exp(-(x - g.a) / g.b);
    case FeatureKind::Logistic: return 1.0 / (1.0 + std::exp(-(x - g.a) / g.b));
    case FeatureKind::Rayleigh: return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x / (2.0 * g.a * g.a));
    case FeatureKind::Pareto: return x < g.a ? 0.0 : 1.0 - std::pow(g.a / x, g.b);
    case FeatureKind::Cauchy: return 0.5 + std::atan((x - g.a) / g.b) / kPi;
    case FeatureKind::NegativeBinomial: {
      if (x < 0) return 0.0;
      double k = std::floor(x);
      return beta_inc(g.a, k + 1.0, g.b);
    }
    case FeatureKind::Gumbel: return std::exp(-std::exp(-(x - g.a) / g.b));
    case FeatureKind::Gompertz:
      return x <= 0 ? 0.0 : 1.0 - std::exp(-g.a * (std::exp(g.b * x) - 1.0));
    default: throw ConfigError("cdf: not a distribution kind");
  }
}

std::vector<double> generate_features(const FeatureGenerator& g, int n, int dim,
                                      std::uint64_t seed) {
  if (n < 1 || dim < 1) throw ConfigError("generate_features: n and dim must be >= 1");
  validate_generator(g);
  std::vector<double> out(static_cast<std::size_t>(n) * dim);
  if (feature_kind_is_sequence(g.kind)) {
    for (int v = 0; v < n; ++v) {
      int base = g.offset_per_node ? v : 0;
      for (int k = 0; k < dim; ++k) out[static_cast<std::size_t>(v) * dim + k] = sequence_term(g, base + k);
    }
  } else {
    Rng rng(seed);
    for (double& x : out) x = draw(g, rng);
  }
  return out;
}

std::string feature_registry_json() {
  std::string o = "[\n";
  for (int i = 0; i < kFeatureKindCount; ++i) {
    const KindInfo& ki = kKindTable[i];
    o += std::string("  {\"id\": \"") + ki.name + "\", \"sequence\": " +
         (ki.sequence ? "true" : "false") + ", \"description\": \"" + ki.description + "\"}";
    o += (i + 1 < kFeatureKindCount) ? ",\n" : "\n";
  }
  o += "]\n";
  return o;
}

}  // namespace rwg
