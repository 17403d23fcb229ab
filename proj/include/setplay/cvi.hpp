#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "setplay/fcm.hpp"

namespace setplay::cvi {

/// Dense symmetric pairwise distance matrix with zero diagonal.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> d;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n_) : n(n_), d(n_ * n_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return d[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

struct SilhouetteConfig {
  double alpha = 1.0;  // weighting exponent, >= 0
};

struct FsResult {
  double value = 0.0;
  bool all_weights_zero = false;
};

/// Per-column argmax of the partition; ties go to the lowest row index.
std::vector<std::size_t> crisp_assignment(const fcm::PartitionMatrix& partition);

/// Silhouette of object j under a crisp assignment: (b - a) / max(a, b),
/// a = mean distance to co-members, b = smallest mean distance to another
/// occupied cluster. Singletons (and degenerate a == b == 0) score 0.
double silhouette_object(std::size_t j, std::span<const std::size_t> assignment,
                         const DistanceMatrix& pairwise);

/// Silhouettes weighted by (mu_p - mu_q)^alpha, the gap between each
/// column's two largest memberships; 0^0 is taken as 1 so alpha = 0
/// reduces to the plain mean silhouette.
FsResult fuzzy_silhouette(const fcm::PartitionMatrix& partition,
                          const DistanceMatrix& pairwise,
                          const SilhouetteConfig& cfg = {});

}  // namespace setplay::cvi
