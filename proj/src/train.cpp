#include "rwg/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rwg/dataset_io.hpp"
#include "rwg/seed.hpp"

namespace rwg {

double cross_entropy(const std::vector<std::vector<double>>& probs, const std::vector<int>& labels) {
  if (probs.size() != labels.size() || probs.empty())
    throw ConfigError("cross_entropy: batch size mismatch or empty batch");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    int y = labels[i];
    if (y < 0 || y >= static_cast<int>(probs[i].size()))
      throw ConfigError("cross_entropy: label out of range");
    total += -std::log(std::max(probs[i][y], kProbClamp));
  }
  return total / static_cast<double>(probs.size());
}

double conditional_kl(const std::vector<std::vector<double>>& probs, const std::vector<int>& labels) {
  if (probs.size() != labels.size() || probs.empty())
    throw ConfigError("conditional_kl: batch size mismatch or empty batch");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (int c = 0; c < static_cast<int>(probs[i].size()); ++c) {
      double p = (c == labels[i]) ? 1.0 : 0.0;
      if (p == 0.0) continue;  // 0 * log(0 / q) contributes nothing
      total += p * std::log(p / std::max(probs[i][c], kProbClamp));
    }
  }
  return total / static_cast<double>(probs.size());
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace

double evaluate(const Model& model, const Dataset& ds, Split split) {
  int total = 0, correct = 0;
  for (const GraphSample& s : ds.samples) {
    if (s.split != split) continue;
    ++total;
    if (argmax_lowest(forward_probs(model, s.graph)) == s.label) ++correct;
  }
  if (total == 0)
    throw ConfigError("evaluate: split " + split_name(split) + " is empty");
  return static_cast<double>(correct) / total;
}

std::vector<Tensor> batch_gradients(const Model& model, const std::vector<const GraphSample*>& batch,
                                    double weight_decay, double gamma, double* loss) {
  if (batch.empty()) throw ConfigError("batch_gradients: empty batch");
  Tape tape;
  std::vector<int> param_ids = register_params(tape, model);
  std::vector<int> terms;
  terms.reserve(batch.size());
  for (const GraphSample* s : batch) {
    ForwardResult fr = model_forward(tape, model, param_ids, s->graph, gamma);
    terms.push_back(tape.pick_log(fr.probs, s->label, kProbClamp));
  }
  int objective = tape.add_scalars(terms, 1.0 / static_cast<double>(batch.size()));
  if (weight_decay > 0) {
    std::vector<int> squares;
    squares.reserve(param_ids.size());
    for (int id : param_ids) squares.push_back(tape.sum_squares(id));
    objective = tape.add(objective, tape.add_scalars(squares, weight_decay / 2.0));
  }
  tape.check_finite(objective, "training objective");
  tape.backward(objective);
  if (loss) *loss = tape.value(objective).v[0];

  std::vector<Tensor> grads;
  grads.reserve(param_ids.size());
  for (int id : param_ids) grads.push_back(tape.grad(id));
  return grads;
}

TrainResult train_model(Model model, const Dataset& ds, const TrainConfig& cfg) {
  if (cfg.learning_rate <= 0 || cfg.batch_size < 1 || cfg.epochs < 1)
    throw ConfigError("train config: learning rate, batch size and epochs must be positive");
  if (ds.manifest.feature_dim != model.cfg.input_dim)
    throw ShapeError("train_model: dataset feature_dim does not match the model input dim");

  std::vector<int> train_idx;
  for (int i = 0; i < static_cast<int>(ds.samples.size()); ++i)
    if (ds.samples[i].split == Split::Train) train_idx.push_back(i);
  if (train_idx.empty()) throw ConfigError("train_model: empty train split");

  // Adam state
  std::vector<Tensor> m1, m2;
  for (const Tensor& p : model.params) {
    m1.emplace_back(p.rows, p.cols);
    m2.emplace_back(p.rows, p.cols);
  }
  const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  long long step = 0;

  TrainResult out;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    model.gamma = rec_gamma(epoch, model.rec);
    Rng shuffle_rng(derive_seed(cfg.seed, epoch, "shuffle"));
    shuffle_rng.shuffle(train_idx);

    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < train_idx.size(); start += cfg.batch_size) {
      std::vector<const GraphSample*> batch;
      for (std::size_t k = start; k < std::min(train_idx.size(), start + cfg.batch_size); ++k)
        batch.push_back(&ds.samples[train_idx[k]]);
      double loss = 0.0;
      std::vector<Tensor> grads =
          batch_gradients(model, batch, cfg.weight_decay, model.gamma, &loss);
      loss_sum += loss;
      ++batches;
      ++step;
      for (std::size_t p = 0; p < model.params.size(); ++p) {
        Tensor& theta = model.params[p];
        if (cfg.plain_sgd) {
          for (std::size_t j = 0; j < theta.v.size(); ++j)
            theta.v[j] -= cfg.learning_rate * grads[p].v[j];
          continue;
        }
        double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
        double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
        for (std::size_t j = 0; j < theta.v.size(); ++j) {
          double g = grads[p].v[j];
          m1[p].v[j] = beta1 * m1[p].v[j] + (1.0 - beta1) * g;
          m2[p].v[j] = beta2 * m2[p].v[j] + (1.0 - beta2) * g * g;
          double mhat = m1[p].v[j] / bc1;
          double vhat = m2[p].v[j] / bc2;
          theta.v[j] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + adam_eps);
        }
      }
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / std::max(1, batches);
    stats.val_acc = evaluate(model, ds, Split::Val);
    stats.test_acc = evaluate(model, ds, Split::Test);
    out.trace.push_back(stats);
  }
  out.model = std::move(model);
  return out;
}

std::string trace_csv(const std::vector<EpochStats>& trace) {
  std::string s = "epoch,train_loss,val_acc,test_acc\n";
  for (const EpochStats& e : trace) {
    s += std::to_string(e.epoch) + ',' + format_double(e.train_loss) + ',' +
         format_double(e.val_acc) + ',' + format_double(e.test_acc) + '\n';
  }
  return s;
}

void write_trace_csv(const std::vector<EpochStats>& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_trace_csv: cannot open " + path);
  f << trace_csv(trace);
}

}  // namespace rwg
