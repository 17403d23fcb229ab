#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace setplay::fcm {

struct Config {
  int c = 2;
  double m = 2.0;  // fuzzifier, > 1
  int max_iters = 300;
  double epsilon = 1e-6;  // convergence on max membership change
  std::uint64_t seed = 0;
  /// Optional observer called after each membership update.
  std::function<void(int iteration, const struct PartitionMatrix&)> on_iteration;
};

/// C x N fuzzy membership matrix; every column sums to 1.
struct PartitionMatrix {
  std::size_t c = 0;
  std::size_t n = 0;
  std::vector<double> mu;  // row-major

  PartitionMatrix() = default;
  PartitionMatrix(std::size_t c_, std::size_t n_) : c(c_), n(n_), mu(c_ * n_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return mu[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return mu[i * n + j]; }

  bool column_stochastic(double tol = 1e-9) const;
};

/// Hybrid centroid: weighted-mean scalar features plus the index of the
/// instance donating the non-scalar features (trees, lists).
struct Centroid {
  std::vector<double> scalars;
  std::size_t donor = 0;
};

struct Result {
  PartitionMatrix partition;
  std::vector<Centroid> centroids;
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // all instances indistinguishable
};

/// Dataset access for the engine: instances are indexed 0..n-1; the caller
/// supplies the scalar feature view and the instance-to-centroid distance.
struct Problem {
  std::size_t n = 0;
  std::size_t scalar_dim = 0;
  std::function<double(std::size_t j, std::size_t k)> scalar;
  std::function<double(std::size_t j, const Centroid& v)> distance;
};

/// Standard FCM membership update for one object given its distances to all
/// centroids: mu_i = 1 / sum_k (d_i/d_k)^(2/(m-1)). Zero distances split
/// full membership uniformly among the zero-distance centroids.
std::vector<double> update_memberships(std::span<const double> distances, double m);

/// Scalar part = sum(mu^m x) / sum(mu^m); donor = argmax membership, ties
/// broken toward the lowest instance index.
Centroid compute_centroid(const Problem& problem, std::span<const double> memberships,
                          double m);

/// J = sum_i sum_j mu_ij^m d(x_j, v_i)^2.
double objective(const Problem& problem, const std::vector<Centroid>& centroids,
                 const PartitionMatrix& partition, double m);

/// Alternates membership and centroid updates from a seeded random fuzzy
/// partition until max |d mu| < epsilon or max_iters. Deterministic given
/// the seed.
Result run(const Problem& problem, const Config& cfg);

}  // namespace setplay::fcm
