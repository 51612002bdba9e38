#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "rwg/bounds.hpp"
#include "rwg/dataset_io.hpp"
#include "rwg/experiments.hpp"
#include "rwg/generator.hpp"
#include "rwg/motifs.hpp"
#include "rwg/train.hpp"

namespace {

using namespace rwg;

int cmd_gen(const std::string& family, double bias, std::uint64_t seed, const std::string& out,
            const std::string& preset) {
  ExperimentConfig ec;
  ec.family = family_from_name(family);
  ec.preset = preset;
  GenerationConfig cfg = scenario_generation_config(ec, bias);
  Dataset ds = generate_dataset(cfg, seed);
  write_dataset(ds, out);
  std::cout << "wrote " << ds.samples.size() << " samples to " << out << " (digest "
            << ds.manifest.config_digest << ")\n";
  return 0;
}

int cmd_train(const std::string& data_dir, const std::string& backbone, bool rec,
              std::uint64_t seed, int epochs, const std::string& out) {
  Dataset ds = read_dataset(data_dir);
  ModelConfig mc;
  mc.backbone = backbone_from_name(backbone);
  mc.input_dim = ds.manifest.feature_dim;
  mc.num_classes = ds.manifest.num_classes;
  mc.rec_enabled = rec;
  RecConfig rc;
  Model model = init_model(mc, rc, seed);
  TrainConfig tc;
  tc.seed = seed;
  if (epochs > 0) tc.epochs = epochs;
  TrainResult tr = train_model(std::move(model), ds, tc);
  const EpochStats& last = tr.trace.back();
  std::printf("final: train_loss %.6f val_acc %.4f test_acc %.4f\n", last.train_loss, last.val_acc,
              last.test_acc);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    write_trace_csv(tr.trace, (std::filesystem::path(out) / "trace.csv").string());
    save_checkpoint(tr.model, (std::filesystem::path(out) / "model.ckpt").string());
    std::cout << "trace and checkpoint written to " << out << "\n";
  }
  return 0;
}

int cmd_experiment(const std::string& name, const std::string& config_path) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!name.empty()) cfg.scenario = name;
  RunResult r = run_experiment(cfg);
  std::cout << summary_csv(r);
  for (const auto& [k, v] : r.metrics) std::printf("%s = %.6f\n", k.c_str(), v);
  return 0;
}

int cmd_bounds(const std::string& graph_file, int labels, double lambda) {
  PartiallyDirectedGraph g = parse_pdg_file(graph_file);
  long long r = total_chain_component_cliques(g);
  std::cout << "vertices: " << g.num_vertices << "  directed: " << g.directed_edges.size()
            << "  undirected: " << g.undirected_edges.size() << "\n";
  std::cout << "chain components: " << chain_components(g).size() << "  maximal cliques r: " << r
            << "\n";
  BoundInput in;
  in.union_size = static_cast<double>(g.num_vertices - labels);
  in.lambda = lambda;
  in.label_count = labels;
  std::cout << "atomic lower bound: " << atomic_bound(in, r) << "\n";
  double n_eff = in.union_size / lambda + labels;
  if (n_eff >= 4) {
    NonatomicBound nb = nonatomic_bound(static_cast<int>(n_eff));
    std::printf("non-atomic lower bound: %.6f at k = %d\n", nb.value, nb.argmin_k);
  } else {
    std::cout << "non-atomic lower bound: undefined for fewer than 4 variables\n";
  }
  return 0;
}

int cmd_validate(const std::string& data_dir, bool check_ranges) {
  Dataset ds = read_dataset(data_dir);
  validate_dataset(ds);
  std::cout << "structural invariants: ok (" << ds.samples.size() << " samples)\n";
  if (check_ranges) {
    int nmin = 1 << 30, nmax = 0, emin = 1 << 30, emax = 0;
    for (const GraphSample& s : ds.samples) {
      nmin = std::min(nmin, s.graph.num_nodes);
      nmax = std::max(nmax, s.graph.num_nodes);
      emin = std::min(emin, static_cast<int>(s.graph.edges.size()));
      emax = std::max(emax, static_cast<int>(s.graph.edges.size()));
    }
    std::printf("node range: [%d, %d]  edge range: [%d, %d]\n", nmin, nmax, emin, emax);
  }
  std::cout << "registry discrepancies (edge counts vs source table):";
  for (const std::string& id : motif_edge_count_discrepancies()) std::cout << ' ' << id;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RWG causal graph benchmark toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a dataset");
  std::string gen_family = "molecular", gen_out = "data", gen_preset = "default";
  double gen_bias = 0.7;
  std::uint64_t gen_seed = 42;
  gen->add_option("family", gen_family, "molecular|citation")->required();
  gen->add_option("--bias", gen_bias, "train-split confounder bias");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--preset", gen_preset, "default|reduced");

  auto* train = app.add_subcommand("train", "train a backbone on a dataset");
  std::string train_data, train_model_name = "gcn", train_out;
  bool train_rec = false;
  std::uint64_t train_seed = 1;
  int train_epochs = 0;
  train->add_option("--data", train_data, "dataset directory")->required();
  train->add_option("--model", train_model_name, "gcn|gin|cheb");
  train->add_flag("--rec", train_rec, "enable the REC module");
  train->add_option("--seed", train_seed, "run seed");
  train->add_option("--epochs", train_epochs, "override epoch count");
  train->add_option("--out", train_out, "write trace.csv and model.ckpt here");

  auto* experiment = app.add_subcommand("experiment", "run a declarative scenario");
  std::string exp_name, exp_config;
  experiment->add_option("name", exp_name,
                         "three-scenario|bias-sweep|violation-sweep|confounder-kinds|pure-causal|"
                         "rec-comparison|bounds");
  experiment->add_option("--config", exp_config, "experiment config JSON")->required();

  auto* bounds = app.add_subcommand("bounds", "intervention lower bounds for a CPDAG file");
  std::string bounds_graph;
  int bounds_labels = 0;
  double bounds_lambda = 1.0;
  bounds->add_option("--graph", bounds_graph, "edge-list file with -> and -- markers")->required();
  bounds->add_option("--labels", bounds_labels, "label variable count");
  bounds->add_option("--lambda", bounds_lambda, "average occurrence multiplicity");

  auto* validate = app.add_subcommand("validate", "audit a dataset directory");
  std::string val_data;
  bool val_ranges = false;
  validate->add_option("--data", val_data, "dataset directory")->required();
  validate->add_flag("--ranges", val_ranges, "print realized node/edge ranges");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_family, gen_bias, gen_seed, gen_out, gen_preset);
    if (train->parsed())
      return cmd_train(train_data, train_model_name, train_rec, train_seed, train_epochs, train_out);
    if (experiment->parsed()) return cmd_experiment(exp_name, exp_config);
    if (bounds->parsed()) return cmd_bounds(bounds_graph, bounds_labels, bounds_lambda);
    if (validate->parsed()) return cmd_validate(val_data, val_ranges);
  } catch (const rwg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rwg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rwg::GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return 3;
  } catch (const rwg::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
