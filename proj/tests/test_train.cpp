#include <doctest.h>

#include <cmath>

#include "rwg/seed.hpp"
#include "rwg/train.hpp"

using namespace rwg;

namespace {

// Two classes flagged by which feature channel carries signal, so the task
// is linearly separable.
Dataset toy_dataset(int train_per_class, int eval_per_class, std::uint64_t seed) {
  Dataset ds;
  ds.manifest.num_classes = 2;
  ds.manifest.feature_dim = 4;
  Rng rng(seed);
  auto make = [&](int label, Split split) {
    GraphSample s;
    s.label = label;
    s.split = split;
    AttributedGraph& g = s.graph;
    g.num_nodes = 4 + rng.uniform_int(3);
    g.feature_dim = 4;
    g.features.resize(static_cast<std::size_t>(g.num_nodes) * 4);
    for (int v = 0; v < g.num_nodes; ++v)
      for (int k = 0; k < 4; ++k)
        g.feat(v, k) = (k == label) ? 1.0 + 0.1 * rng.uniform() : 0.05 * rng.uniform();
    for (int v = 1; v < g.num_nodes; ++v) g.add_edge(rng.uniform_int(v), v);
    return s;
  };
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < train_per_class; ++i) ds.samples.push_back(make(c, Split::Train));
    for (int i = 0; i < eval_per_class; ++i) ds.samples.push_back(make(c, Split::Val));
    for (int i = 0; i < eval_per_class; ++i) ds.samples.push_back(make(c, Split::Test));
  }
  ds.manifest.train_count = 2 * train_per_class;
  ds.manifest.val_count = 2 * eval_per_class;
  ds.manifest.test_count = 2 * eval_per_class;
  return ds;
}

ModelConfig toy_model(Backbone b) {
  ModelConfig mc;
  mc.backbone = b;
  mc.input_dim = 4;
  mc.hidden_dim = 8;
  mc.num_classes = 2;
  return mc;
}

}  // namespace

TEST_CASE("cross entropy closed-form cases") {
  CHECK(cross_entropy({{0, 1, 0}}, {1}) == 0.0);  // exact zero, pre-clamp
  CHECK(cross_entropy({{0.2, 0.2, 0.2, 0.2, 0.2}}, {3}) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(cross_entropy({{0.5, 0.5}}, {0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("conditional KL equals cross entropy on 100 random batches") {
  Rng rng(123);
  for (int batch = 0; batch < 100; ++batch) {
    int n = 1 + rng.uniform_int(16);
    int classes = 2 + rng.uniform_int(5);
    std::vector<std::vector<double>> probs(n, std::vector<double>(classes));
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      double sum = 0;
      for (double& p : probs[i]) {
        p = rng.uniform() + 1e-6;
        sum += p;
      }
      for (double& p : probs[i]) p /= sum;
      labels[i] = rng.uniform_int(classes);
    }
    CHECK(std::fabs(cross_entropy(probs, labels) - conditional_kl(probs, labels)) <= 1e-9);
  }
  CHECK(conditional_kl({{1.0, 0.0}}, {0}) == 0.0);
  CHECK(conditional_kl({{0.2, 0.2, 0.2, 0.2, 0.2}}, {0}) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("training reaches full accuracy on a separable toy set") {
  Dataset ds = toy_dataset(20, 5, 7);
  Model m = init_model(toy_model(Backbone::GCN), RecConfig{}, 1);
  TrainConfig tc;
  tc.epochs = 50;
  tc.seed = 1;
  TrainResult tr = train_model(std::move(m), ds, tc);
  CHECK(evaluate(tr.model, ds, Split::Train) == 1.0);
  CHECK(tr.trace.size() == 50);
}

TEST_CASE("identical seeds give identical traces") {
  Dataset ds = toy_dataset(10, 4, 9);
  TrainConfig tc;
  tc.epochs = 8;
  tc.seed = 42;
  TrainResult a = train_model(init_model(toy_model(Backbone::GIN), RecConfig{}, 3), ds, tc);
  TrainResult b = train_model(init_model(toy_model(Backbone::GIN), RecConfig{}, 3), ds, tc);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].train_loss == b.trace[i].train_loss);
    CHECK(a.trace[i].val_acc == b.trace[i].val_acc);
    CHECK(a.trace[i].test_acc == b.trace[i].test_acc);
  }
  CHECK(trace_csv(a.trace) == trace_csv(b.trace));
}

TEST_CASE("uniform predictions score exactly chance on balanced data") {
  Dataset ds = toy_dataset(5, 10, 11);
  Model m = init_model(toy_model(Backbone::GCN), RecConfig{}, 5);
  for (Tensor& t : m.params) std::fill(t.v.begin(), t.v.end(), 0.0);
  // argmax of uniform probabilities always picks class 0; half the labels match
  CHECK(evaluate(m, ds, Split::Test) == doctest::Approx(0.5));

  // five balanced classes: exactly 0.2
  Dataset ds5;
  ds5.manifest.num_classes = 5;
  ds5.manifest.feature_dim = 4;
  Rng rng(3);
  for (int c = 0; c < 5; ++c)
    for (int i = 0; i < 20; ++i) {
      GraphSample s;
      s.label = c;
      s.split = Split::Test;
      s.graph.num_nodes = 3;
      s.graph.feature_dim = 4;
      s.graph.features.resize(12);
      for (double& x : s.graph.features) x = rng.uniform(-1.0, 1.0);
      s.graph.add_edge(0, 1);
      s.graph.add_edge(1, 2);
      ds5.samples.push_back(s);
    }
  ds5.manifest.test_count = 100;
  ModelConfig mc5 = toy_model(Backbone::GCN);
  mc5.num_classes = 5;
  Model m5 = init_model(mc5, RecConfig{}, 5);
  for (Tensor& t : m5.params) std::fill(t.v.begin(), t.v.end(), 0.0);
  CHECK(evaluate(m5, ds5, Split::Test) == doctest::Approx(0.2));
}

TEST_CASE("empty split raises an evaluation error") {
  Dataset ds = toy_dataset(3, 1, 2);
  for (GraphSample& s : ds.samples)
    if (s.split == Split::Val) s.split = Split::Train;
  ds.manifest.train_count += ds.manifest.val_count;
  ds.manifest.val_count = 0;
  Model m = init_model(toy_model(Backbone::GCN), RecConfig{}, 5);
  CHECK_THROWS_AS(evaluate(m, ds, Split::Val), ConfigError);
}

TEST_CASE("rec-enabled training advances gamma per epoch") {
  Dataset ds = toy_dataset(6, 2, 13);
  ModelConfig mc = toy_model(Backbone::GCN);
  mc.rec_enabled = true;
  RecConfig rc;
  rc.epsilon = 0.1;
  TrainConfig tc;
  tc.epochs = 5;
  TrainResult tr = train_model(init_model(mc, rc, 2), ds, tc);
  CHECK(tr.model.gamma == doctest::Approx(rec_gamma(4, rc)));
}

TEST_CASE("plain gradient descent flag also trains") {
  Dataset ds = toy_dataset(15, 5, 21);
  TrainConfig tc;
  tc.epochs = 40;
  tc.plain_sgd = true;
  tc.learning_rate = 0.05;
  TrainResult tr = train_model(init_model(toy_model(Backbone::GCN), RecConfig{}, 6), ds, tc);
  CHECK(evaluate(tr.model, ds, Split::Train) >= 0.9);
}
