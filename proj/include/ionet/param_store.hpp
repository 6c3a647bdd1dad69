#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ionet/tensor.hpp"

namespace ionet::ad {

/// Ordered collection of named parameter tensors. Iteration, flattening and
/// gradient extraction all follow insertion order, so results are
/// reproducible run to run.
class ParamStore {
 public:
  void add(const std::string& name, Tensor value) {
    if (index_.count(name)) throw std::invalid_argument("duplicate parameter: " + name);
    index_[name] = names_.size();
    names_.push_back(name);
    values_.push_back(std::move(value));
  }

  bool has(const std::string& name) const { return index_.count(name) > 0; }

  const Tensor& get(const std::string& name) const {
    return values_[find(name)];
  }
  Tensor& get(const std::string& name) { return values_[find(name)]; }

  const Tensor& at(std::size_t i) const { return values_[i]; }
  Tensor& at(std::size_t i) { return values_[i]; }
  const std::string& name_at(std::size_t i) const { return names_[i]; }

  std::size_t entry_count() const { return names_.size(); }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& t : values_) n += t.size();
    return n;
  }

  std::vector<double> flatten() const {
    std::vector<double> out;
    out.reserve(total_size());
    for (const auto& t : values_) out.insert(out.end(), t.data.begin(), t.data.end());
    return out;
  }

  void unflatten(std::span<const double> flat) {
    if (flat.size() != total_size())
      throw std::invalid_argument("unflatten: size mismatch");
    std::size_t k = 0;
    for (auto& t : values_) {
      for (double& v : t.data) v = flat[k++];
    }
  }

  /// A store with the same names/shapes, all entries zero.
  ParamStore zeros_like() const {
    ParamStore g;
    for (std::size_t i = 0; i < names_.size(); ++i)
      g.add(names_[i], Tensor(values_[i].shape));
    return g;
  }

 private:
  std::size_t find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("no parameter named " + name);
    return it->second;
  }

  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace ionet::ad
