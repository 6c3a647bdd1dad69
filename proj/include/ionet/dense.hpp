#pragma once

#include <cmath>
#include <stdexcept>

#include "ionet/tensor.hpp"

namespace ionet::ad::dense {

// Elementwise and matrix-vector kernels shared by the tape and by untaped
// evaluation, so both paths produce bit-identical values. Accumulations run
// left to right; no reordering, no FMA contraction assumptions.

inline void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

inline Tensor add(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "add");
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

inline Tensor sub(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "sub");
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

inline Tensor mul(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "mul");
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

inline Tensor scale(const Tensor& a, double c) {
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = c * a.data[i];
  return out;
}

inline Tensor add_scalar(const Tensor& a, double c) {
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] + c;
  return out;
}

inline Tensor matvec(const Tensor& w, const Tensor& x) {
  if (w.shape.size() != 2 || x.shape.size() != 1 || w.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("matvec: shape mismatch");
  const int m = w.rows(), k = w.cols();
  Tensor out({m});
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    const double* row = &w.data[static_cast<std::size_t>(i) * k];
    for (int j = 0; j < k; ++j) acc += row[j] * x.data[j];
    out.data[i] = acc;
  }
  return out;
}

inline Tensor tanh(const Tensor& a) {
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = std::tanh(a.data[i]);
  return out;
}

inline Tensor relu(const Tensor& a) {
  Tensor out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] > 0.0 ? a.data[i] : 0.0;
  return out;
}

inline Tensor dot(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.data[i] * b.data[i];
  return Tensor::scalar(acc);
}

inline Tensor sum(const Tensor& a) {
  double acc = 0.0;
  for (double v : a.data) acc += v;
  return Tensor::scalar(acc);
}

}  // namespace ionet::ad::dense
