#include "rwg/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace rwg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ShapeError(std::string("tensor: ") + what);
}

}  // namespace

int Tape::push(Node n) {
  n.grad = Tensor(n.value.rows, n.value.cols);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int Tape::leaf(Tensor t) {
  Node n;
  n.op = Op::Leaf;
  n.value = std::move(t);
  return push(std::move(n));
}

int Tape::matmul(int a, int b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  require(A.cols == B.rows, "matmul inner dimension mismatch");
  Node n;
  n.op = Op::MatMul;
  n.a = a;
  n.b = b;
  n.value = Tensor(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double aik = A.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) n.value.at(i, j) += aik * B.at(k, j);
    }
  return push(std::move(n));
}

int Tape::add(int a, int b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  require(A.rows == B.rows && A.cols == B.cols, "add shape mismatch");
  Node n;
  n.op = Op::Add;
  n.a = a;
  n.b = b;
  n.value = A;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value.v[i] += B.v[i];
  return push(std::move(n));
}

int Tape::sub(int a, int b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  require(A.rows == B.rows && A.cols == B.cols, "sub shape mismatch");
  Node n;
  n.op = Op::Sub;
  n.a = a;
  n.b = b;
  n.value = A;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value.v[i] -= B.v[i];
  return push(std::move(n));
}

int Tape::add_rowvec(int a, int row) {
  const Tensor& A = nodes_[a].value;
  const Tensor& R = nodes_[row].value;
  require(R.rows == 1 && R.cols == A.cols, "add_rowvec shape mismatch");
  Node n;
  n.op = Op::AddRowVec;
  n.a = a;
  n.b = row;
  n.value = A;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) n.value.at(i, j) += R.at(0, j);
  return push(std::move(n));
}

int Tape::hadamard(int a, int b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  require(A.rows == B.rows && A.cols == B.cols, "hadamard shape mismatch");
  Node n;
  n.op = Op::Hadamard;
  n.a = a;
  n.b = b;
  n.value = A;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value.v[i] *= B.v[i];
  return push(std::move(n));
}

int Tape::scale(int a, double c) {
  Node n;
  n.op = Op::Scale;
  n.a = a;
  n.c = c;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x *= c;
  return push(std::move(n));
}

int Tape::add_const(int a, double c) {
  Node n;
  n.op = Op::AddConst;
  n.a = a;
  n.c = c;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x += c;
  return push(std::move(n));
}

int Tape::scalar_mul(int scalar, int a) {
  const Tensor& S = nodes_[scalar].value;
  require(S.rows == 1 && S.cols == 1, "scalar_mul expects a 1x1 scalar");
  Node n;
  n.op = Op::ScalarMul;
  n.a = a;
  n.b = scalar;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x *= S.v[0];
  return push(std::move(n));
}

int Tape::col_scale(int a, int s) {
  const Tensor& A = nodes_[a].value;
  const Tensor& S = nodes_[s].value;
  require(S.cols == 1 && S.rows == A.rows, "col_scale expects an n x 1 scale");
  Node n;
  n.op = Op::ColScale;
  n.a = a;
  n.b = s;
  n.value = A;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) n.value.at(i, j) *= S.at(i, 0);
  return push(std::move(n));
}

int Tape::relu(int a) {
  Node n;
  n.op = Op::Relu;
  n.a = a;
  n.value = nodes_[a].value;
  for (double& x : n.value.v)
    if (x < 0) x = 0;
  return push(std::move(n));
}

int Tape::tanh_op(int a) {
  Node n;
  n.op = Op::Tanh;
  n.a = a;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x = std::tanh(x);
  return push(std::move(n));
}

int Tape::sigmoid(int a) {
  Node n;
  n.op = Op::Sigmoid;
  n.a = a;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x = 1.0 / (1.0 + std::exp(-x));
  return push(std::move(n));
}

int Tape::mean_rows(int a) {
  const Tensor& A = nodes_[a].value;
  require(A.rows >= 1, "mean_rows of an empty tensor");
  Node n;
  n.op = Op::MeanRows;
  n.a = a;
  n.value = Tensor(1, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) n.value.at(0, j) += A.at(i, j);
  for (double& x : n.value.v) x /= A.rows;
  return push(std::move(n));
}

int Tape::softmax_row(int a) {
  const Tensor& A = nodes_[a].value;
  Node n;
  n.op = Op::SoftmaxRow;
  n.a = a;
  n.value = Tensor(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i) {
    double mx = A.at(i, 0);
    for (int j = 1; j < A.cols; ++j) mx = std::max(mx, A.at(i, j));
    double sum = 0.0;
    for (int j = 0; j < A.cols; ++j) {
      double e = std::exp(A.at(i, j) - mx);
      n.value.at(i, j) = e;
      sum += e;
    }
    for (int j = 0; j < A.cols; ++j) n.value.at(i, j) /= sum;
  }
  return push(std::move(n));
}

int Tape::pick_log(int probs, int index, double clamp) {
  const Tensor& P = nodes_[probs].value;
  require(P.rows == 1, "pick_log expects a row vector");
  require(index >= 0 && index < P.cols, "pick_log index out of range");
  Node n;
  n.op = Op::PickLog;
  n.a = probs;
  n.index = index;
  n.c = clamp;
  n.value = Tensor(1, 1);
  n.value.v[0] = -std::log(std::max(P.at(0, index), clamp));
  return push(std::move(n));
}

int Tape::sum_squares(int a) {
  const Tensor& A = nodes_[a].value;
  Node n;
  n.op = Op::SumSquares;
  n.a = a;
  n.value = Tensor(1, 1);
  for (double x : A.v) n.value.v[0] += x * x;
  return push(std::move(n));
}

int Tape::add_scalars(const std::vector<int>& ids, double coeff) {
  Node n;
  n.op = Op::AddScalars;
  n.list = ids;
  n.c = coeff;
  n.value = Tensor(1, 1);
  for (int id : ids) {
    require(nodes_[id].value.rows == 1 && nodes_[id].value.cols == 1,
            "add_scalars expects 1x1 nodes");
    n.value.v[0] += nodes_[id].value.v[0];
  }
  n.value.v[0] *= coeff;
  return push(std::move(n));
}

void Tape::backward(int root) {
  require(nodes_[root].value.rows == 1 && nodes_[root].value.cols == 1,
          "backward root must be 1x1");
  for (Node& n : nodes_) std::fill(n.grad.v.begin(), n.grad.v.end(), 0.0);
  nodes_[root].grad.v[0] = 1.0;

  for (int id = root; id >= 0; --id) {
    Node& n = nodes_[id];
    bool any = false;
    for (double g : n.grad.v)
      if (g != 0.0) {
        any = true;
        break;
      }
    if (!any) continue;
    switch (n.op) {
      case Op::Leaf: break;
      case Op::MatMul: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& B = nodes_[n.b].value;
        Tensor& dA = nodes_[n.a].grad;
        Tensor& dB = nodes_[n.b].grad;
        for (int i = 0; i < A.rows; ++i)
          for (int j = 0; j < B.cols; ++j) {
            double g = n.grad.at(i, j);
            if (g == 0.0) continue;
            for (int k = 0; k < A.cols; ++k) {
              dA.at(i, k) += g * B.at(k, j);
              dB.at(k, j) += g * A.at(i, k);
            }
          }
        break;
      }
      case Op::Add: {
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          nodes_[n.a].grad.v[i] += n.grad.v[i];
          nodes_[n.b].grad.v[i] += n.grad.v[i];
        }
        break;
      }
      case Op::Sub: {
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          nodes_[n.a].grad.v[i] += n.grad.v[i];
          nodes_[n.b].grad.v[i] -= n.grad.v[i];
        }
        break;
      }
      case Op::AddRowVec: {
        Tensor& dA = nodes_[n.a].grad;
        Tensor& dR = nodes_[n.b].grad;
        for (int i = 0; i < n.grad.rows; ++i)
          for (int j = 0; j < n.grad.cols; ++j) {
            dA.at(i, j) += n.grad.at(i, j);
            dR.at(0, j) += n.grad.at(i, j);
          }
        break;
      }
      case Op::Hadamard: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& B = nodes_[n.b].value;
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          nodes_[n.a].grad.v[i] += n.grad.v[i] * B.v[i];
          nodes_[n.b].grad.v[i] += n.grad.v[i] * A.v[i];
        }
        break;
      }
      case Op::Scale: {
        for (std::size_t i = 0; i < n.grad.size(); ++i)
          nodes_[n.a].grad.v[i] += n.c * n.grad.v[i];
        break;
      }
      case Op::AddConst: {
        for (std::size_t i = 0; i < n.grad.size(); ++i) nodes_[n.a].grad.v[i] += n.grad.v[i];
        break;
      }
      case Op::ScalarMul: {
        const Tensor& A = nodes_[n.a].value;
        double s = nodes_[n.b].value.v[0];
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          nodes_[n.a].grad.v[i] += s * n.grad.v[i];
          nodes_[n.b].grad.v[0] += A.v[i] * n.grad.v[i];
        }
        break;
      }
      case Op::ColScale: {
        const Tensor& A = nodes_[n.a].value;
        const Tensor& S = nodes_[n.b].value;
        Tensor& dA = nodes_[n.a].grad;
        Tensor& dS = nodes_[n.b].grad;
        for (int i = 0; i < A.rows; ++i)
          for (int j = 0; j < A.cols; ++j) {
            double g = n.grad.at(i, j);
            dA.at(i, j) += g * S.at(i, 0);
            dS.at(i, 0) += g * A.at(i, j);
          }
        break;
      }
      case Op::Relu: {
        const Tensor& A = nodes_[n.a].value;
        for (std::size_t i = 0; i < n.grad.size(); ++i)
          if (A.v[i] > 0) nodes_[n.a].grad.v[i] += n.grad.v[i];
        break;
      }
      case Op::Tanh: {
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          double t = n.value.v[i];
          nodes_[n.a].grad.v[i] += n.grad.v[i] * (1.0 - t * t);
        }
        break;
      }
      case Op::Sigmoid: {
        for (std::size_t i = 0; i < n.grad.size(); ++i) {
          double s = n.value.v[i];
          nodes_[n.a].grad.v[i] += n.grad.v[i] * s * (1.0 - s);
        }
        break;
      }
      case Op::MeanRows: {
        const Tensor& A = nodes_[n.a].value;
        Tensor& dA = nodes_[n.a].grad;
        for (int i = 0; i < A.rows; ++i)
          for (int j = 0; j < A.cols; ++j) dA.at(i, j) += n.grad.at(0, j) / A.rows;
        break;
      }
      case Op::SoftmaxRow: {
        Tensor& dA = nodes_[n.a].grad;
        for (int i = 0; i < n.value.rows; ++i) {
          double dot = 0.0;
          for (int j = 0; j < n.value.cols; ++j) dot += n.grad.at(i, j) * n.value.at(i, j);
          for (int j = 0; j < n.value.cols; ++j)
            dA.at(i, j) += (n.grad.at(i, j) - dot) * n.value.at(i, j);
        }
        break;
      }
      case Op::PickLog: {
        double p = nodes_[n.a].value.at(0, n.index);
        if (p > n.c) nodes_[n.a].grad.at(0, n.index) += -n.grad.v[0] / p;
        break;
      }
      case Op::SumSquares: {
        const Tensor& A = nodes_[n.a].value;
        for (std::size_t i = 0; i < A.size(); ++i)
          nodes_[n.a].grad.v[i] += 2.0 * A.v[i] * n.grad.v[0];
        break;
      }
      case Op::AddScalars: {
        for (int id2 : n.list) nodes_[id2].grad.v[0] += n.c * n.grad.v[0];
        break;
      }
    }
  }
}

void Tape::check_finite(int id, const std::string& where) const {
  for (double x : nodes_[id].value.v)
    if (!std::isfinite(x)) throw NumericalError("non-finite value in " + where);
}

}  // namespace rwg
