#include <doctest.h>

#include <cmath>

#include "rwg/model.hpp"
#include "rwg/seed.hpp"

using namespace rwg;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

AttributedGraph tiny_graph(int n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  AttributedGraph g;
  g.num_nodes = n;
  g.feature_dim = dim;
  g.features.resize(static_cast<std::size_t>(n) * dim);
  for (double& x : g.features) x = rng.uniform(-1.5, 1.5);
  for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

Model shared_weights_norec(const Model& rec_model, std::uint64_t seed) {
  ModelConfig cfg = rec_model.cfg;
  cfg.rec_enabled = false;
  Model plain = init_model(cfg, rec_model.rec, seed);
  for (std::size_t p = 0; p < plain.params.size(); ++p)
    plain.params[p] = rec_model.params[rec_model.param_index(plain.param_names[p])];
  return plain;
}

}  // namespace

TEST_CASE("gamma schedule hits the documented values") {
  RecConfig cfg;  // defaults 1.0 / 0.2 / 0.01
  CHECK(rec_gamma(0, cfg) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(rec_gamma(10, cfg) - 0.904382075008804) <= 1e-6);
  CHECK(rec_gamma(1000, cfg) == 0.2);
}

TEST_CASE("gamma is non-increasing and floored over ten thousand epochs") {
  RecConfig cfg;
  double prev = rec_gamma(0, cfg);
  for (int t = 1; t <= 10000; ++t) {
    double g = rec_gamma(t, cfg);
    CHECK(g <= prev);
    CHECK(g >= cfg.gamma_min);
    prev = g;
  }
  CHECK(prev == cfg.gamma_min);
}

TEST_CASE("mask scalars stay strictly inside (0, 1) over 1e5 random inputs") {
  Rng rng(2024);
  for (int i = 0; i < 100000; ++i) {
    double gate = rng.uniform(-30.0, 30.0);
    double gamma = rng.uniform(0.2, 1.0);
    double s = sigmoid(gamma + gate);
    CHECK(s > 0.0);
    CHECK(s < 1.0);
  }
}

TEST_CASE("model gates produce per-node masks in (0, 1)") {
  ModelConfig mc;
  mc.backbone = Backbone::GCN;
  mc.input_dim = 3;
  mc.hidden_dim = 4;
  mc.num_classes = 3;
  mc.rec_enabled = true;
  mc.rec_gate_hidden = 4;
  Model m = init_model(mc, RecConfig{}, 7);
  Rng rng(8);
  for (Tensor& t : m.params)
    for (double& x : t.v) x += rng.uniform(-0.5, 0.5);

  for (int layer = 0; layer < mc.num_layers; ++layer) {
    // layer 0 gates the raw features, later gates see hidden-width rows
    Tensor h(40, layer == 0 ? mc.input_dim : mc.hidden_dim);
    for (double& x : h.v) x = rng.uniform(-3.0, 3.0);
    Tensor mask = rec_mask_values(m, layer, h, 0.7);
    REQUIRE(mask.rows == 40);
    REQUIRE(mask.cols == 1);
    for (double s : mask.v) {
      CHECK(s > 0.0);
      CHECK(s < 1.0);
    }
  }
  // zero gate output layer leaves the mask at sigmoid(gamma) exactly
  Model zero = init_model(mc, RecConfig{}, 7);
  Tensor h0(10, mc.input_dim);
  for (double& x : h0.v) x = rng.uniform(-3.0, 3.0);
  Tensor mask0 = rec_mask_values(zero, 0, h0, 0.0);
  for (double s : mask0.v) CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mask values match the closed form") {
  CHECK(sigmoid(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sigmoid(1.0) == doctest::Approx(0.731059).epsilon(1e-5));
  // zero input vector stays zero regardless of the gate
  Tape tape;
  Tensor h(2, 3);  // all zeros
  int hid = tape.leaf(h);
  Tensor mask(2, 1);
  mask.v = {0.3, 0.9};
  int masked = tape.col_scale(hid, tape.leaf(mask));
  for (double x : tape.value(masked).v) CHECK(x == 0.0);
}

TEST_CASE("large positive gate bias recovers the unwrapped layer within 1e-6") {
  ModelConfig mc;
  mc.backbone = Backbone::GCN;
  mc.input_dim = 3;
  mc.hidden_dim = 4;
  mc.num_classes = 3;
  mc.rec_enabled = true;
  mc.rec_gate_hidden = 4;
  Model m = init_model(mc, RecConfig{}, 15);
  for (int l = 0; l < mc.num_layers; ++l)
    m.params[m.param_index("layer" + std::to_string(l) + ".gate.b2")].v[0] = 40.0;
  Model plain = shared_weights_norec(m, 15);

  AttributedGraph g = tiny_graph(6, 3, 77);
  auto wrapped = forward_probs(m, g);
  auto bare = forward_probs(plain, g);
  for (std::size_t c = 0; c < wrapped.size(); ++c) CHECK(std::fabs(wrapped[c] - bare[c]) <= 1e-6);
}

TEST_CASE("large negative gate bias approaches the zero-input response") {
  ModelConfig mc;
  mc.backbone = Backbone::GCN;
  mc.input_dim = 3;
  mc.hidden_dim = 4;
  mc.num_classes = 3;
  mc.rec_enabled = true;
  mc.rec_gate_hidden = 4;
  Model m = init_model(mc, RecConfig{}, 16);
  for (int l = 0; l < mc.num_layers; ++l)
    m.params[m.param_index("layer" + std::to_string(l) + ".gate.b2")].v[0] = -40.0;
  Model plain = shared_weights_norec(m, 16);

  AttributedGraph g = tiny_graph(6, 3, 78);
  AttributedGraph zeroed = g;
  std::fill(zeroed.features.begin(), zeroed.features.end(), 0.0);
  auto wrapped = forward_probs(m, g);
  auto zero_resp = forward_probs(plain, zeroed);
  for (std::size_t c = 0; c < wrapped.size(); ++c)
    CHECK(std::fabs(wrapped[c] - zero_resp[c]) <= 1e-6);
}

TEST_CASE("mask scalars strictly increase with gamma") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double gate = rng.uniform(-5.0, 5.0);
    CHECK(sigmoid(0.9 + gate) > sigmoid(0.3 + gate));
  }
}

TEST_CASE("at initialization a 1-layer REC model predicts the same classes as the bare model") {
  ModelConfig mc;
  mc.backbone = Backbone::GCN;
  mc.num_layers = 1;
  mc.input_dim = 3;
  mc.hidden_dim = 4;
  mc.num_classes = 4;
  mc.rec_enabled = true;
  RecConfig rc;
  rc.gamma_min = rc.gamma_init = 1.0;  // constant schedule
  Model m = init_model(mc, rc, 91);    // gate output layer starts at zero
  Model plain = shared_weights_norec(m, 91);

  for (std::uint64_t s = 0; s < 40; ++s) {
    AttributedGraph g = tiny_graph(5, 3, 100 + s);
    auto rec_probs = forward_probs(m, g);
    auto plain_probs = forward_probs(plain, g);
    int rec_argmax = 0, plain_argmax = 0;
    for (std::size_t c = 1; c < rec_probs.size(); ++c) {
      if (rec_probs[c] > rec_probs[rec_argmax]) rec_argmax = static_cast<int>(c);
      if (plain_probs[c] > plain_probs[plain_argmax]) plain_argmax = static_cast<int>(c);
    }
    CHECK(rec_argmax == plain_argmax);
  }
}

TEST_CASE("rec config invariants are enforced") {
  CHECK_THROWS_AS(rec_gamma(-1, RecConfig{}), ConfigError);
}
