#pragma once
#include <string>
#include <vector>

#include "rwg/errors.hpp"

namespace rwg {

struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
  std::size_t size() const { return v.size(); }
};

// Reverse-mode autodiff over a dynamic tape of dense-tensor operations.
// Node ids index the tape; every op returns the id of its result. backward()
// runs the recorded adjoints in reverse order, accumulating into grad().
class Tape {
 public:
  int leaf(Tensor t);

  int matmul(int a, int b);
  int add(int a, int b);          // same shape
  int sub(int a, int b);          // same shape
  int add_rowvec(int a, int row); // n x m plus broadcast 1 x m
  int hadamard(int a, int b);
  int scale(int a, double c);
  int add_const(int a, double c);
  int scalar_mul(int scalar, int a);  // (1 x 1) * (n x m)
  int col_scale(int a, int s);        // (n x m) scaled per-row by (n x 1)
  int relu(int a);
  int tanh_op(int a);
  int sigmoid(int a);
  int mean_rows(int a);  // n x m -> 1 x m
  int softmax_row(int a);
  // -log(max(p[0, index], clamp)) as a 1 x 1 node
  int pick_log(int probs, int index, double clamp);
  int sum_squares(int a);  // 1 x 1
  // coeff * sum of 1 x 1 nodes, as a 1 x 1 node
  int add_scalars(const std::vector<int>& ids, double coeff);

  const Tensor& value(int id) const { return nodes_[id].value; }
  const Tensor& grad(int id) const { return nodes_[id].grad; }

  void backward(int root);

  // Throws NumericalError naming `where` if the node holds a non-finite value.
  void check_finite(int id, const std::string& where) const;

 private:
  enum class Op {
    Leaf,
    MatMul,
    Add,
    Sub,
    AddRowVec,
    Hadamard,
    Scale,
    AddConst,
    ScalarMul,
    ColScale,
    Relu,
    Tanh,
    Sigmoid,
    MeanRows,
    SoftmaxRow,
    PickLog,
    SumSquares,
    AddScalars,
  };
  struct Node {
    Op op = Op::Leaf;
    Tensor value;
    Tensor grad;
    int a = -1;
    int b = -1;
    double c = 0.0;
    int index = 0;
    std::vector<int> list;
  };
  int push(Node n);
  std::vector<Node> nodes_;
};

}  // namespace rwg
