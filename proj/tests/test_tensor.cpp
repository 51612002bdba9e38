#include <doctest.h>

#include <cmath>

#include "rwg/seed.hpp"
#include "rwg/tensor.hpp"

using namespace rwg;

namespace {

Tensor random_tensor(int r, int c, Rng& rng) {
  Tensor t(r, c);
  for (double& x : t.v) x = rng.uniform(-1.0, 1.0);
  return t;
}

}  // namespace

TEST_CASE("matmul values") {
  Tape tape;
  Tensor a(2, 3);
  a.v = {1, 2, 3, 4, 5, 6};
  Tensor b(3, 2);
  b.v = {7, 8, 9, 10, 11, 12};
  int c = tape.matmul(tape.leaf(a), tape.leaf(b));
  CHECK(tape.value(c).at(0, 0) == 58);
  CHECK(tape.value(c).at(0, 1) == 64);
  CHECK(tape.value(c).at(1, 0) == 139);
  CHECK(tape.value(c).at(1, 1) == 154);
}

TEST_CASE("softmax rows sum to one and backward is consistent") {
  Tape tape;
  Tensor logits(1, 4);
  logits.v = {0.5, -1.0, 2.0, 0.0};
  int l = tape.leaf(logits);
  int p = tape.softmax_row(l);
  double sum = 0;
  for (double x : tape.value(p).v) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  int loss = tape.pick_log(p, 2, 1e-12);
  tape.backward(loss);
  // d(-log softmax_2)/dlogit_j = p_j - [j == 2]
  for (int j = 0; j < 4; ++j)
    CHECK(tape.grad(l).at(0, j) ==
          doctest::Approx(tape.value(p).at(0, j) - (j == 2 ? 1 : 0)).epsilon(1e-9));
}

TEST_CASE("shape errors are raised") {
  Tape tape;
  Rng rng(1);
  int a = tape.leaf(random_tensor(2, 3, rng));
  int b = tape.leaf(random_tensor(2, 3, rng));
  CHECK_THROWS_AS(tape.matmul(a, b), ShapeError);
  int s = tape.leaf(random_tensor(2, 2, rng));
  CHECK_THROWS_AS(tape.scalar_mul(s, a), ShapeError);
  CHECK_THROWS_AS(tape.backward(a), ShapeError);
}

TEST_CASE("finite check names the location") {
  Tape tape;
  Tensor bad(1, 2);
  bad.v = {1.0, std::nan("")};
  int id = tape.leaf(bad);
  try {
    tape.check_finite(id, "spot");
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("spot") != std::string::npos);
  }
}

TEST_CASE("finite differences validate a composite expression") {
  // f = mean_rows(relu(X W + b)) -> sigmoid -> pick_log against sum_squares mix
  Rng rng(99);
  Tensor X = random_tensor(4, 3, rng);
  Tensor W = random_tensor(3, 3, rng);
  Tensor b = random_tensor(1, 3, rng);
  Tensor s = random_tensor(4, 1, rng);

  auto eval = [&](const Tensor& Wv, double* grad_entry, int gi, int gj) {
    Tape tape;
    int xid = tape.leaf(X);
    int wid = tape.leaf(Wv);
    int bid = tape.leaf(b);
    int sid = tape.leaf(s);
    int h = tape.col_scale(tape.tanh_op(tape.add_rowvec(tape.matmul(xid, wid), bid)), sid);
    int pooled = tape.mean_rows(tape.sigmoid(h));
    int probs = tape.softmax_row(pooled);
    int loss = tape.add(tape.pick_log(probs, 1, 1e-12),
                        tape.add_scalars({tape.sum_squares(wid)}, 0.05));
    if (grad_entry) {
      tape.backward(loss);
      *grad_entry = tape.grad(wid).at(gi, gj);
    }
    return tape.value(loss).v[0];
  };

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double analytic = 0;
      eval(W, &analytic, i, j);
      const double h = 1e-5;
      Tensor Wp = W, Wm = W;
      Wp.at(i, j) += h;
      Wm.at(i, j) -= h;
      double numeric = (eval(Wp, nullptr, 0, 0) - eval(Wm, nullptr, 0, 0)) / (2 * h);
      CHECK(std::fabs(analytic - numeric) <=
            1e-4 * std::max({1.0, std::fabs(analytic), std::fabs(numeric)}));
    }
}

TEST_CASE("gradients accumulate when a node is used twice") {
  Tape tape;
  Tensor x(1, 1);
  x.v = {3.0};
  int xid = tape.leaf(x);
  int y = tape.add(xid, xid);  // y = 2x
  int sq = tape.sum_squares(y);  // (2x)^2 = 4x^2, d/dx = 8x = 24
  tape.backward(sq);
  CHECK(tape.grad(xid).v[0] == doctest::Approx(24.0));
}
