#include "rwg/seed.hpp"

#include "rwg/errors.hpp"

namespace rwg {

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k > n) throw ConfigError("sample_without_replacement: k > n");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    int j = i + uniform_int(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace rwg
