#include <doctest.h>

#include <set>

#include "rwg/seed.hpp"

using namespace rwg;

TEST_CASE("derive_seed is a pure function of its inputs") {
  SeedStream s{12345};
  CHECK(s.derive(7, "mol") == s.derive(7, "mol"));
  CHECK(derive_seed(1, 2, "x") == derive_seed(1, 2, "x"));
}

TEST_CASE("consecutive indices give distinct seeds") {
  SeedStream s{99};
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) CHECK(seen.insert(s.derive(i, "mol")).second);
}

TEST_CASE("distinct tags give distinct streams") {
  SeedStream s{99};
  for (int i = 0; i < 10000; ++i) CHECK(s.derive(i, "mol") != s.derive(i, "cit"));
}

TEST_CASE("rng uniform stays in [0,1) and shuffles deterministically") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  std::vector<int> v1{1, 2, 3, 4, 5, 6}, v2 = v1;
  Rng r1(7), r2(7);
  r1.shuffle(v1);
  r2.shuffle(v2);
  CHECK(v1 == v2);
}

TEST_CASE("sample_without_replacement returns distinct in-range values") {
  Rng r(3);
  auto got = r.sample_without_replacement(10, 10);
  std::set<int> s(got.begin(), got.end());
  CHECK(s.size() == 10);
  CHECK(*s.begin() == 0);
  CHECK(*s.rbegin() == 9);
}
