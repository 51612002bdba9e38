#pragma once
#include <cstdint>
#include <string>

#include "rwg/causal.hpp"
#include "rwg/citation.hpp"
#include "rwg/graph.hpp"
#include "rwg/molecular.hpp"

namespace rwg {

enum class Family { Molecular, Citation };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct GenerationConfig {
  Family family = Family::Molecular;
  int train_count = 1500;
  int val_count = 200;
  int test_count = 200;
  MoleculeAssemblyConfig molecular;
  CitationAssemblyConfig citation;
  CausalSpec causal;
  ConfounderSpec confounder;
};

// Deterministic digest of every generation parameter, stored in the
// manifest so results stay traceable to their exact configuration.
std::string config_digest(const GenerationConfig& cfg);

// Full pipeline: balanced labels per split, per-sample derived seeds,
// size budgeting for samples that will carry a confounder, assembly, and
// confounder injection. Byte-identical output for identical inputs.
Dataset generate_dataset(const GenerationConfig& cfg, std::uint64_t master_seed);

// Paper-scale presets (1900 samples) and fast desk-scale presets used by the
// experiment scenarios.
GenerationConfig molecular_default(double bias);
GenerationConfig molecular_reduced(double bias);
GenerationConfig citation_default(double bias);
GenerationConfig citation_reduced(double bias);

int config_num_classes(const GenerationConfig& cfg);
int config_feature_dim(const GenerationConfig& cfg);

// Family-appropriate canonical element for interventions.
AttributedGraph canonical_element_for(const GenerationConfig& cfg);

}  // namespace rwg
