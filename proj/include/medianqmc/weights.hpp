#pragma once

#include <stdexcept>
#include <vector>

namespace mqmc {

// Product weights: the weight of a coordinate subset u is
// prod_{j in u} gamma_j. Only the per-coordinate sequence is stored.
struct ProductWeights {
  std::vector<double> gammas;

  void validate(int dims) const {
    if (static_cast<int>(gammas.size()) < dims) {
      throw std::invalid_argument("ProductWeights: fewer weights than dimensions");
    }
    for (double g : gammas) {
      if (!(g > 0.0)) throw std::invalid_argument("ProductWeights: weights must be positive");
    }
  }
};

// gamma_j = 1 / j^k for j = 1..dims.
inline ProductWeights polynomial_decay_weights(int dims, int k) {
  ProductWeights w;
  w.gammas.reserve(static_cast<std::size_t>(dims));
  for (int j = 1; j <= dims; ++j) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= static_cast<double>(j);
    w.gammas.push_back(1.0 / p);
  }
  return w;
}

// gamma_j = 1 for j = 1..dims.
inline ProductWeights unit_weights(int dims) {
  ProductWeights w;
  w.gammas.assign(static_cast<std::size_t>(dims), 1.0);
  return w;
}

}  // namespace mqmc
