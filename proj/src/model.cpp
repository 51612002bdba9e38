#include "rwg/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rwg/dataset_io.hpp"
#include "rwg/seed.hpp"

namespace rwg {

std::string backbone_name(Backbone b) {
  switch (b) {
    case Backbone::GCN: return "gcn";
    case Backbone::GIN: return "gin";
    case Backbone::Cheb: return "cheb";
  }
  return "gcn";
}

Backbone backbone_from_name(const std::string& name) {
  if (name == "gcn") return Backbone::GCN;
  if (name == "gin") return Backbone::GIN;
  if (name == "cheb" || name == "chebnet") return Backbone::Cheb;
  throw ConfigError("unknown backbone: " + name);
}

double rec_gamma(int t, const RecConfig& cfg) {
  if (t < 0) throw ConfigError("rec_gamma: negative epoch index");
  return std::max(cfg.gamma_init * std::pow(1.0 - cfg.epsilon, t), cfg.gamma_min);
}

int Model::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < param_names.size(); ++i)
    if (param_names[i] == name) return static_cast<int>(i);
  throw ConfigError("model: unknown parameter " + name);
}

namespace {

void add_param(Model& m, const std::string& name, int rows, int cols, Rng* rng) {
  Tensor t(rows, cols);
  if (rng) {
    double bound = 1.0 / std::sqrt(static_cast<double>(rows));
    for (double& x : t.v) x = rng->uniform(-bound, bound);
  }
  m.param_names.push_back(name);
  m.params.push_back(std::move(t));
}

std::string layer_prefix(int l) { return "layer" + std::to_string(l) + "."; }

}  // namespace

Model init_model(const ModelConfig& cfg, const RecConfig& rec, std::uint64_t seed) {
  if (cfg.num_layers < 1 || cfg.hidden_dim < 1 || cfg.cheb_order < 1)
    throw ConfigError("model config: layers, hidden_dim and cheb order must be >= 1");
  Model m;
  m.cfg = cfg;
  m.rec = rec;
  m.gamma = rec.gamma_init;
  Rng rng(derive_seed(seed, 0, "init"));

  for (int l = 0; l < cfg.num_layers; ++l) {
    int in = l == 0 ? cfg.input_dim : cfg.hidden_dim;
    int out = cfg.hidden_dim;
    std::string p = layer_prefix(l);
    switch (cfg.backbone) {
      case Backbone::GCN:
        add_param(m, p + "W", in, out, &rng);
        add_param(m, p + "b", 1, out, nullptr);
        break;
      case Backbone::GIN:
        add_param(m, p + "W1", in, out, &rng);
        add_param(m, p + "b1", 1, out, nullptr);
        add_param(m, p + "W2", out, out, &rng);
        add_param(m, p + "b2", 1, out, nullptr);
        add_param(m, p + "eps", 1, 1, nullptr);
        break;
      case Backbone::Cheb:
        for (int k = 0; k <= cfg.cheb_order; ++k)
          add_param(m, p + "W" + std::to_string(k), in, out, &rng);
        add_param(m, p + "b", 1, out, nullptr);
        break;
    }
    if (cfg.rec_enabled) {
      add_param(m, p + "gate.W1", in, cfg.rec_gate_hidden, &rng);
      add_param(m, p + "gate.b1", 1, cfg.rec_gate_hidden, nullptr);
      add_param(m, p + "gate.W2", cfg.rec_gate_hidden, 1, nullptr);  // zero start
      add_param(m, p + "gate.b2", 1, 1, nullptr);
    }
  }
  add_param(m, "head.W", cfg.hidden_dim, cfg.num_classes, &rng);
  add_param(m, "head.b", 1, cfg.num_classes, nullptr);
  return m;
}

std::vector<int> register_params(Tape& tape, const Model& model) {
  std::vector<int> ids;
  ids.reserve(model.params.size());
  for (const Tensor& t : model.params) ids.push_back(tape.leaf(t));
  return ids;
}

namespace {

// Symmetrized adjacency helpers. Directed citation graphs propagate as
// undirected, the standard treatment for spectral-style convolutions.
Tensor sym_norm_adjacency_with_self_loops(const AttributedGraph& g) {
  int n = g.num_nodes;
  Tensor a(n, n);
  for (const Edge& e : g.edges) {
    a.at(e.u, e.v) = 1.0;
    a.at(e.v, e.u) = 1.0;
  }
  for (int i = 0; i < n; ++i) a.at(i, i) = 1.0;
  std::vector<double> dinv(n);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (int j = 0; j < n; ++j) d += a.at(i, j);
    dinv[i] = 1.0 / std::sqrt(d);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) *= dinv[i] * dinv[j];
  return a;
}

Tensor plain_adjacency(const AttributedGraph& g) {
  Tensor a(g.num_nodes, g.num_nodes);
  for (const Edge& e : g.edges) {
    a.at(e.u, e.v) = 1.0;
    a.at(e.v, e.u) = 1.0;
  }
  return a;
}

// Scaled Laplacian L - I = -D^{-1/2} A D^{-1/2} under the lambda_max = 2
// convention; zero-degree rows stay zero.
Tensor scaled_laplacian(const AttributedGraph& g) {
  int n = g.num_nodes;
  Tensor a = plain_adjacency(g);
  std::vector<double> dinv(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (int j = 0; j < n; ++j) d += a.at(i, j);
    dinv[i] = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Tensor l(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) l.at(i, j) = -a.at(i, j) * dinv[i] * dinv[j];
  return l;
}

int gate_mask(Tape& tape, const Model& model, const std::vector<int>& param_ids, int h, int layer,
              double gamma) {
  const std::string p = layer_prefix(layer);
  int w1 = param_ids[model.param_index(p + "gate.W1")];
  int b1 = param_ids[model.param_index(p + "gate.b1")];
  int w2 = param_ids[model.param_index(p + "gate.W2")];
  int b2 = param_ids[model.param_index(p + "gate.b2")];
  int hidden = tape.tanh_op(tape.add_rowvec(tape.matmul(h, w1), b1));
  int gate = tape.add_rowvec(tape.matmul(hidden, w2), b2);  // n x 1
  return tape.sigmoid(tape.add_const(gate, gamma));
}

int apply_rec_mask(Tape& tape, const Model& model, const std::vector<int>& param_ids, int h,
                   int layer, double gamma) {
  return tape.col_scale(h, gate_mask(tape, model, param_ids, h, layer, gamma));
}

}  // namespace

Tensor rec_mask_values(const Model& model, int layer, const Tensor& h, double gamma) {
  if (!model.cfg.rec_enabled) throw ConfigError("rec_mask_values: REC is disabled for this model");
  Tape tape;
  std::vector<int> ids = register_params(tape, model);
  int mask = gate_mask(tape, model, ids, tape.leaf(h), layer, gamma);
  return tape.value(mask);
}

ForwardResult model_forward(Tape& tape, const Model& model, const std::vector<int>& param_ids,
                            const AttributedGraph& g, double gamma) {
  const ModelConfig& cfg = model.cfg;
  if (g.feature_dim != cfg.input_dim)
    throw ShapeError("model_forward: graph feature_dim " + std::to_string(g.feature_dim) +
                     " does not match model input dim " + std::to_string(cfg.input_dim));
  if (g.num_nodes < 1) throw ShapeError("model_forward: empty graph");

  Tensor x(g.num_nodes, g.feature_dim);
  x.v = g.features;
  int h = tape.leaf(std::move(x));

  int prop = -1;
  switch (cfg.backbone) {
    case Backbone::GCN: prop = tape.leaf(sym_norm_adjacency_with_self_loops(g)); break;
    case Backbone::GIN: prop = tape.leaf(plain_adjacency(g)); break;
    case Backbone::Cheb: prop = tape.leaf(scaled_laplacian(g)); break;
  }

  for (int l = 0; l < cfg.num_layers; ++l) {
    const std::string p = layer_prefix(l);
    int hin = cfg.rec_enabled ? apply_rec_mask(tape, model, param_ids, h, l, gamma) : h;
    switch (cfg.backbone) {
      case Backbone::GCN: {
        int w = param_ids[model.param_index(p + "W")];
        int b = param_ids[model.param_index(p + "b")];
        h = tape.relu(tape.add_rowvec(tape.matmul(prop, tape.matmul(hin, w)), b));
        break;
      }
      case Backbone::GIN: {
        int eps = param_ids[model.param_index(p + "eps")];
        int one_plus_eps = tape.add_const(eps, 1.0);
        int agg = tape.add(tape.matmul(prop, hin), tape.scalar_mul(one_plus_eps, hin));
        int w1 = param_ids[model.param_index(p + "W1")];
        int b1 = param_ids[model.param_index(p + "b1")];
        int w2 = param_ids[model.param_index(p + "W2")];
        int b2 = param_ids[model.param_index(p + "b2")];
        int mid = tape.relu(tape.add_rowvec(tape.matmul(agg, w1), b1));
        h = tape.relu(tape.add_rowvec(tape.matmul(mid, w2), b2));
        break;
      }
      case Backbone::Cheb: {
        int b = param_ids[model.param_index(p + "b")];
        int t_prev2 = hin;                    // T_0 X
        int t_prev1 = tape.matmul(prop, hin); // T_1 X
        int z = tape.matmul(t_prev2, param_ids[model.param_index(p + "W0")]);
        if (cfg.cheb_order >= 1)
          z = tape.add(z, tape.matmul(t_prev1, param_ids[model.param_index(p + "W1")]));
        for (int k = 2; k <= cfg.cheb_order; ++k) {
          int t_k = tape.sub(tape.scale(tape.matmul(prop, t_prev1), 2.0), t_prev2);
          z = tape.add(z, tape.matmul(t_k, param_ids[model.param_index(p + "W" + std::to_string(k))]));
          t_prev2 = t_prev1;
          t_prev1 = t_k;
        }
        h = tape.relu(tape.add_rowvec(z, b));
        break;
      }
    }
    tape.check_finite(h, "layer " + std::to_string(l) + " (" + backbone_name(cfg.backbone) + ")");
  }

  int pooled = tape.mean_rows(h);
  ForwardResult out;
  out.logits = tape.add_rowvec(tape.matmul(pooled, param_ids[model.param_index("head.W")]),
                               param_ids[model.param_index("head.b")]);
  out.probs = tape.softmax_row(out.logits);
  tape.check_finite(out.probs, "softmax head");
  return out;
}

std::vector<double> forward_probs(const Model& model, const AttributedGraph& g) {
  Tape tape;
  std::vector<int> ids = register_params(tape, model);
  ForwardResult fr = model_forward(tape, model, ids, g, model.gamma);
  return tape.value(fr.probs).v;
}

void save_checkpoint(const Model& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("save_checkpoint: cannot open " + path);
  f << "rwg-checkpoint 1\n";
  f << "backbone " << backbone_name(model.cfg.backbone) << '\n';
  f << "num_layers " << model.cfg.num_layers << '\n';
  f << "input_dim " << model.cfg.input_dim << '\n';
  f << "hidden_dim " << model.cfg.hidden_dim << '\n';
  f << "num_classes " << model.cfg.num_classes << '\n';
  f << "cheb_order " << model.cfg.cheb_order << '\n';
  f << "rec_enabled " << (model.cfg.rec_enabled ? 1 : 0) << '\n';
  f << "rec_gate_hidden " << model.cfg.rec_gate_hidden << '\n';
  f << "gamma_init " << format_double(model.rec.gamma_init) << '\n';
  f << "gamma_min " << format_double(model.rec.gamma_min) << '\n';
  f << "epsilon " << format_double(model.rec.epsilon) << '\n';
  f << "gamma " << format_double(model.gamma) << '\n';
  for (std::size_t i = 0; i < model.params.size(); ++i) {
    const Tensor& t = model.params[i];
    f << "tensor " << model.param_names[i] << ' ' << t.rows << ' ' << t.cols << '\n';
    for (std::size_t j = 0; j < t.v.size(); ++j) f << format_double(t.v[j]) << (j + 1 < t.v.size() ? ' ' : '\n');
    if (t.v.empty()) f << '\n';
  }
}

Model load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("load_checkpoint: cannot open " + path);
  std::string magic;
  int version = 0;
  f >> magic >> version;
  if (magic != "rwg-checkpoint" || version != 1)
    throw ParseError("load_checkpoint: bad header in " + path);
  ModelConfig cfg;
  RecConfig rec;
  double gamma = 1.0;
  std::string key;
  Model m;
  while (f >> key) {
    if (key == "backbone") {
      std::string v;
      f >> v;
      cfg.backbone = backbone_from_name(v);
    } else if (key == "num_layers") f >> cfg.num_layers;
    else if (key == "input_dim") f >> cfg.input_dim;
    else if (key == "hidden_dim") f >> cfg.hidden_dim;
    else if (key == "num_classes") f >> cfg.num_classes;
    else if (key == "cheb_order") f >> cfg.cheb_order;
    else if (key == "rec_enabled") {
      int v;
      f >> v;
      cfg.rec_enabled = v != 0;
    } else if (key == "rec_gate_hidden") f >> cfg.rec_gate_hidden;
    else if (key == "gamma_init") f >> rec.gamma_init;
    else if (key == "gamma_min") f >> rec.gamma_min;
    else if (key == "epsilon") f >> rec.epsilon;
    else if (key == "gamma") f >> gamma;
    else if (key == "tensor") {
      std::string name;
      int rows, cols;
      if (!(f >> name >> rows >> cols)) throw ParseError("load_checkpoint: bad tensor header");
      Tensor t(rows, cols);
      for (double& x : t.v)
        if (!(f >> x)) throw ParseError("load_checkpoint: truncated tensor " + name);
      m.param_names.push_back(name);
      m.params.push_back(std::move(t));
    } else {
      throw ParseError("load_checkpoint: unknown key " + key);
    }
  }
  m.cfg = cfg;
  m.rec = rec;
  m.gamma = gamma;
  return m;
}

}  // namespace rwg
