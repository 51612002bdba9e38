// Finite-difference gradient checking against batch_gradients. Central
// differences converge at differentiable points; an entry that fails at the
// default step is re-checked at a smaller one so relu-kink crossings (a
// measure-zero hazard of the step interval) do not mask real errors, which
// fail at every step size.
#pragma once
#include <algorithm>
#include <cmath>

#include "rwg/train.hpp"

namespace rwg::fdcheck {

struct Result {
  double max_rel = 0.0;
  std::string worst_param;
};

inline double entry_rel_error(const Model& base, const std::vector<const GraphSample*>& batch,
                              double wd, double gamma, double analytic, std::size_t p,
                              std::size_t j) {
  double best = 1e300;
  for (double h : {1e-5, 1e-7}) {
    Model mp = base, mm = base;
    mp.params[p].v[j] += h;
    mm.params[p].v[j] -= h;
    double lp, lm;
    batch_gradients(mp, batch, wd, gamma, &lp);
    batch_gradients(mm, batch, wd, gamma, &lm);
    double numeric = (lp - lm) / (2 * h);
    double rel = std::fabs(analytic - numeric) /
                 std::max({1.0, std::fabs(analytic), std::fabs(numeric)});
    best = std::min(best, rel);
    if (best <= 1e-4) break;
  }
  return best;
}

// Max over all parameter entries (optionally restricted by name substring).
inline Result sweep(const Model& m, const std::vector<const GraphSample*>& batch, double wd,
                    double gamma, const std::string& name_filter = "") {
  double loss;
  std::vector<Tensor> grads = batch_gradients(m, batch, wd, gamma, &loss);
  Result r;
  for (std::size_t p = 0; p < m.params.size(); ++p) {
    if (!name_filter.empty() && m.param_names[p].find(name_filter) == std::string::npos) continue;
    for (std::size_t j = 0; j < m.params[p].v.size(); ++j) {
      double rel = entry_rel_error(m, batch, wd, gamma, grads[p].v[j], p, j);
      if (rel > r.max_rel) {
        r.max_rel = rel;
        r.worst_param = m.param_names[p];
      }
    }
  }
  return r;
}

}  // namespace rwg::fdcheck
