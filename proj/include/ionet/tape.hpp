#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionet/dense.hpp"
#include "ionet/param_store.hpp"
#include "ionet/tensor.hpp"

namespace ionet::ad {

enum class Op : std::uint8_t {
  kLeaf,       // named parameter (differentiated)
  kConst,      // data constant (not differentiated)
  kAdd,        // a + b, elementwise, same shape
  kSub,        // a - b
  kMul,        // a ⊙ b
  kScale,      // aux * a
  kAddScalar,  // a + aux
  kMatVec,     // a{m,n} · b{n} -> {m}
  kTanh,
  kRelu,
  kDot,        // a · b -> {1}
  kSum,        // sum(a) -> {1}
  kMean,       // mean of scalar operands (extra pool) -> {1}
};

class Tape;

/// Handle to a node on a tape. Cheap to copy; valid until the tape is reset.
struct Var {
  Tape* tape = nullptr;
  int node = -1;
  bool valid() const { return tape != nullptr && node >= 0; }
};

/// Record of scalar/tensor operations supporting one reverse sweep.
/// Nodes are appended in evaluation order, so creation order is a
/// topological order; the backward pass walks it once in reverse.
/// A tape is single-threaded by contract; run concurrent work on
/// separate tapes.
class Tape {
 public:
  struct Node {
    Op op;
    int a = -1, b = -1;
    int ext_off = 0, ext_n = 0;  // extra operands (kMean)
    double aux = 0.0;
    Tensor value;
    Tensor adj;  // empty until the backward sweep touches it
  };

  Var leaf(const std::string& name, const Tensor& value) {
    const int id = push(Op::kLeaf, -1, -1, value);
    leaf_names_.emplace_back(name, id);
    return {this, id};
  }

  Var constant(Tensor value) { return {this, push(Op::kConst, -1, -1, std::move(value))}; }
  Var constant(double v) { return constant(Tensor::scalar(v)); }

  Var add(Var a, Var b) { return emit2(Op::kAdd, a, b); }
  Var sub(Var a, Var b) { return emit2(Op::kSub, a, b); }
  Var mul(Var a, Var b) { return emit2(Op::kMul, a, b); }

  Var scale(Var a, double c) {
    Node n = make1(Op::kScale, a);
    n.aux = c;
    return finish(std::move(n));
  }

  Var add_scalar(Var a, double c) {
    Node n = make1(Op::kAddScalar, a);
    n.aux = c;
    return finish(std::move(n));
  }

  Var matvec(Var w, Var x) { return emit2(Op::kMatVec, w, x); }
  Var tanh(Var a) { return finish(make1(Op::kTanh, a)); }
  Var relu(Var a) { return finish(make1(Op::kRelu, a)); }
  Var dot(Var a, Var b) { return emit2(Op::kDot, a, b); }
  Var sum(Var a) { return finish(make1(Op::kSum, a)); }

  Var mean(const std::vector<Var>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty set");
    Node n;
    n.op = Op::kMean;
    n.ext_off = static_cast<int>(pool_.size());
    n.ext_n = static_cast<int>(xs.size());
    for (Var v : xs) {
      check_mine(v);
      if (!node(v.node).value.is_scalar())
        throw std::invalid_argument("mean expects scalar operands");
      pool_.push_back(v.node);
    }
    return finish(std::move(n));
  }

  const Tensor& value(Var v) const { return nodes_[v.node].value; }
  double scalar(Var v) const { return nodes_[v.node].value.scalar_value(); }

  /// Adjoint of a node after backward(); zero tensor if the node was not
  /// reached by the sweep.
  Tensor grad(Var v) const {
    const Node& n = nodes_[v.node];
    if (n.adj.data.empty()) return Tensor(n.value.shape);
    return n.adj;
  }

  /// Reverse sweep seeding d(loss)/d(loss) = 1. Visits each node at most
  /// once, in reverse creation order.
  void backward(Var loss) {
    check_mine(loss);
    Node& top = nodes_[loss.node];
    if (!top.value.is_scalar())
      throw std::invalid_argument("backward: loss node must be scalar");
    for (Node& n : nodes_) n.adj.data.clear();
    top.adj = Tensor::scalar(1.0);
    for (int i = loss.node; i >= 0; --i) {
      Node& n = nodes_[i];
      if (n.adj.data.empty()) continue;
      propagate(n);
    }
  }

  /// Gradients for every named leaf, in leaf creation order. Leaves that do
  /// not reach the loss get exact zeros.
  ParamStore grad_params(Var loss) {
    backward(loss);
    ParamStore g;
    for (const auto& [name, id] : leaf_names_) {
      const Node& n = nodes_[id];
      if (n.adj.data.empty())
        g.add(name, Tensor(n.value.shape));
      else
        g.add(name, n.adj);
    }
    return g;
  }

  /// Recompute every non-leaf node from its recorded operands and compare
  /// with the stored primal values. Returns true when the replay is
  /// bit-identical.
  bool replay_matches() const {
    for (const Node& n : nodes_) {
      if (n.op == Op::kLeaf || n.op == Op::kConst) continue;
      Tensor v = eval(n);
      if (v.data != n.value.data) return false;
    }
    return true;
  }

  std::size_t node_count() const { return nodes_.size(); }

  void reset() {
    nodes_.clear();
    pool_.clear();
    leaf_names_.clear();
  }

 private:
  Node& node(int i) { return nodes_[i]; }
  const Node& node(int i) const { return nodes_[i]; }

  void check_mine(Var v) const {
    if (v.tape != this) throw std::invalid_argument("var belongs to another tape");
  }

  int push(Op op, int a, int b, Tensor value) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.value = std::move(value);
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  Node make1(Op op, Var a) {
    check_mine(a);
    Node n;
    n.op = op;
    n.a = a.node;
    return n;
  }

  Var emit2(Op op, Var a, Var b) {
    check_mine(a);
    check_mine(b);
    Node n;
    n.op = op;
    n.a = a.node;
    n.b = b.node;
    return finish(std::move(n));
  }

  Var finish(Node n) {
    n.value = eval(n);
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
  }

  Tensor eval(const Node& n) const {
    switch (n.op) {
      case Op::kLeaf:
      case Op::kConst:
        return n.value;
      case Op::kAdd:
        return dense::add(nodes_[n.a].value, nodes_[n.b].value);
      case Op::kSub:
        return dense::sub(nodes_[n.a].value, nodes_[n.b].value);
      case Op::kMul:
        return dense::mul(nodes_[n.a].value, nodes_[n.b].value);
      case Op::kScale:
        return dense::scale(nodes_[n.a].value, n.aux);
      case Op::kAddScalar:
        return dense::add_scalar(nodes_[n.a].value, n.aux);
      case Op::kMatVec:
        return dense::matvec(nodes_[n.a].value, nodes_[n.b].value);
      case Op::kTanh:
        return dense::tanh(nodes_[n.a].value);
      case Op::kRelu:
        return dense::relu(nodes_[n.a].value);
      case Op::kDot:
        return dense::dot(nodes_[n.a].value, nodes_[n.b].value);
      case Op::kSum:
        return dense::sum(nodes_[n.a].value);
      case Op::kMean: {
        double acc = 0.0;
        for (int k = 0; k < n.ext_n; ++k)
          acc += nodes_[pool_[n.ext_off + k]].value.data[0];
        return Tensor::scalar(acc / n.ext_n);
      }
    }
    throw std::logic_error("unreachable op");
  }

  Tensor& adj_of(int i) {
    Node& n = nodes_[i];
    if (n.adj.data.empty()) n.adj = Tensor(n.value.shape);
    return n.adj;
  }

  void propagate(Node& n) {
    const Tensor& g = n.adj;
    switch (n.op) {
      case Op::kLeaf:
      case Op::kConst:
        return;
      case Op::kAdd: {
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data[i] += g.data[i];
        Tensor& db = adj_of(n.b);
        for (std::size_t i = 0; i < g.size(); ++i) db.data[i] += g.data[i];
        return;
      }
      case Op::kSub: {
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data[i] += g.data[i];
        Tensor& db = adj_of(n.b);
        for (std::size_t i = 0; i < g.size(); ++i) db.data[i] -= g.data[i];
        return;
      }
      case Op::kMul: {
        const Tensor& a = nodes_[n.a].value;
        const Tensor& b = nodes_[n.b].value;
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data[i] += g.data[i] * b.data[i];
        Tensor& db = adj_of(n.b);
        for (std::size_t i = 0; i < g.size(); ++i) db.data[i] += g.data[i] * a.data[i];
        return;
      }
      case Op::kScale: {
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data[i] += n.aux * g.data[i];
        return;
      }
      case Op::kAddScalar: {
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data[i] += g.data[i];
        return;
      }
      case Op::kMatVec: {
        const Tensor& w = nodes_[n.a].value;
        const Tensor& x = nodes_[n.b].value;
        const int m = w.rows(), k = w.cols();
        Tensor& dw = adj_of(n.a);
        for (int i = 0; i < m; ++i) {
          const double gi = g.data[i];
          double* drow = &dw.data[static_cast<std::size_t>(i) * k];
          for (int j = 0; j < k; ++j) drow[j] += gi * x.data[j];
        }
        Tensor& dx = adj_of(n.b);
        for (int i = 0; i < m; ++i) {
          const double gi = g.data[i];
          const double* row = &w.data[static_cast<std::size_t>(i) * k];
          for (int j = 0; j < k; ++j) dx.data[j] += gi * row[j];
        }
        return;
      }
      case Op::kTanh: {
        const Tensor& y = n.value;
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i)
          da.data[i] += g.data[i] * (1.0 - y.data[i] * y.data[i]);
        return;
      }
      case Op::kRelu: {
        const Tensor& a = nodes_[n.a].value;
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < g.size(); ++i)
          da.data[i] += a.data[i] > 0.0 ? g.data[i] : 0.0;
        return;
      }
      case Op::kDot: {
        const double gs = g.data[0];
        const Tensor& a = nodes_[n.a].value;
        const Tensor& b = nodes_[n.b].value;
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < a.size(); ++i) da.data[i] += gs * b.data[i];
        Tensor& db = adj_of(n.b);
        for (std::size_t i = 0; i < a.size(); ++i) db.data[i] += gs * a.data[i];
        return;
      }
      case Op::kSum: {
        const double gs = g.data[0];
        Tensor& da = adj_of(n.a);
        for (std::size_t i = 0; i < da.size(); ++i) da.data[i] += gs;
        return;
      }
      case Op::kMean: {
        const double share = g.data[0] / n.ext_n;
        for (int k = 0; k < n.ext_n; ++k) adj_of(pool_[n.ext_off + k]).data[0] += share;
        return;
      }
    }
  }

  std::vector<Node> nodes_;
  std::vector<int> pool_;
  std::vector<std::pair<std::string, int>> leaf_names_;
};

inline Var operator+(Var a, Var b) { return a.tape->add(a, b); }
inline Var operator-(Var a, Var b) { return a.tape->sub(a, b); }
inline Var operator*(Var a, Var b) { return a.tape->mul(a, b); }

}  // namespace ionet::ad
