#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace ionet::ad {

/// Dense row-major tensor of 64-bit floats. A scalar is represented with
/// shape {1}; matrices are {rows, cols}.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;

  explicit Tensor(std::vector<int> s)
      : shape(std::move(s)), data(count(shape), 0.0) {}

  Tensor(std::vector<int> s, std::vector<double> d)
      : shape(std::move(s)), data(std::move(d)) {
    assert(data.size() == count(shape));
  }

  static std::size_t count(const std::vector<int>& s) {
    std::size_t n = 1;
    for (int d : s) n *= static_cast<std::size_t>(d);
    return n;
  }

  static Tensor scalar(double v) { return Tensor({1}, {v}); }

  static Tensor vector(std::vector<double> v) {
    const int n = static_cast<int>(v.size());
    return Tensor({n}, std::move(v));
  }

  static Tensor matrix(int rows, int cols) { return Tensor({rows, cols}); }

  std::size_t size() const { return data.size(); }
  bool is_scalar() const { return data.size() == 1; }

  double scalar_value() const {
    assert(is_scalar());
    return data[0];
  }

  int rows() const {
    assert(shape.size() == 2);
    return shape[0];
  }
  int cols() const {
    assert(shape.size() == 2);
    return shape[1];
  }

  double& operator()(int i) { return data[static_cast<std::size_t>(i)]; }
  double operator()(int i) const { return data[static_cast<std::size_t>(i)]; }
  double& operator()(int i, int j) {
    return data[static_cast<std::size_t>(i) * cols() + j];
  }
  double operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols() + j];
  }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

}  // namespace ionet::ad
