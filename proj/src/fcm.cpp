#include "setplay/fcm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace setplay::fcm {

bool PartitionMatrix::column_stochastic(double tol) const {
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      double v = at(i, j);
      if (v < -tol || v > 1.0 + tol) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

namespace {

// mt19937_64 has a standard-defined sequence; extracting doubles by hand
// keeps runs reproducible across standard library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PartitionMatrix random_partition(std::size_t c, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PartitionMatrix p(c, n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      // Strictly positive samples so columns always normalize.
      double v = uniform01(rng) + 1e-12;
      p.at(i, j) = v;
      sum += v;
    }
    for (std::size_t i = 0; i < c; ++i) p.at(i, j) /= sum;
  }
  return p;
}

}  // namespace

std::vector<double> update_memberships(std::span<const double> distances, double m) {
  std::size_t c = distances.size();
  std::vector<double> mu(c, 0.0);
  std::size_t zeros = 0;
  for (double d : distances) {
    if (d == 0.0) ++zeros;
  }
  if (zeros > 0) {
    for (std::size_t i = 0; i < c; ++i) {
      if (distances[i] == 0.0) mu[i] = 1.0 / static_cast<double>(zeros);
    }
    return mu;
  }
  double expo = 2.0 / (m - 1.0);
  for (std::size_t i = 0; i < c; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      sum += std::pow(distances[i] / distances[k], expo);
    }
    mu[i] = 1.0 / sum;
  }
  return mu;
}

Centroid compute_centroid(const Problem& problem, std::span<const double> memberships,
                          double m) {
  Centroid v;
  v.scalars.assign(problem.scalar_dim, 0.0);
  double wsum = 0.0;
  for (std::size_t j = 0; j < problem.n; ++j) {
    double w = std::pow(memberships[j], m);
    wsum += w;
    for (std::size_t k = 0; k < problem.scalar_dim; ++k) {
      v.scalars[k] += w * problem.scalar(j, k);
    }
  }
  if (wsum > 0.0) {
    for (double& s : v.scalars) s /= wsum;
  }
  // A constant feature must average to exactly that constant, so identical
  // instances end up at distance 0 from every centroid.
  for (std::size_t k = 0; k < problem.scalar_dim; ++k) {
    double first = problem.scalar(0, k);
    bool constant = true;
    for (std::size_t j = 1; j < problem.n && constant; ++j) {
      constant = problem.scalar(j, k) == first;
    }
    if (constant) v.scalars[k] = first;
  }
  v.donor = 0;
  for (std::size_t j = 1; j < problem.n; ++j) {
    if (memberships[j] > memberships[v.donor]) v.donor = j;
  }
  return v;
}

double objective(const Problem& problem, const std::vector<Centroid>& centroids,
                 const PartitionMatrix& partition, double m) {
  double j_total = 0.0;
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    for (std::size_t j = 0; j < problem.n; ++j) {
      double d = problem.distance(j, centroids[i]);
      j_total += std::pow(partition.at(i, j), m) * d * d;
    }
  }
  return j_total;
}

Result run(const Problem& problem, const Config& cfg) {
  if (cfg.c < 2) throw std::invalid_argument("fcm: cluster count must be >= 2");
  if (cfg.m <= 1.0) throw std::invalid_argument("fcm: fuzzifier must be > 1");
  if (problem.n < static_cast<std::size_t>(cfg.c)) {
    throw std::invalid_argument("fcm: need at least c instances");
  }

  std::size_t c = static_cast<std::size_t>(cfg.c);
  Result res;
  res.partition = random_partition(c, problem.n, cfg.seed);
  res.centroids.resize(c);

  std::vector<double> dists(c);
  std::vector<double> column(c);
  bool all_zero_everywhere = true;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    for (std::size_t i = 0; i < c; ++i) {
      std::span<const double> row(&res.partition.mu[i * problem.n], problem.n);
      res.centroids[i] = compute_centroid(problem, row, cfg.m);
    }

    double max_delta = 0.0;
    all_zero_everywhere = true;
    PartitionMatrix next(c, problem.n);
    for (std::size_t j = 0; j < problem.n; ++j) {
      for (std::size_t i = 0; i < c; ++i) {
        dists[i] = problem.distance(j, res.centroids[i]);
        if (dists[i] != 0.0) all_zero_everywhere = false;
      }
      std::vector<double> mu = update_memberships(dists, cfg.m);
      for (std::size_t i = 0; i < c; ++i) {
        max_delta = std::max(max_delta, std::abs(mu[i] - res.partition.at(i, j)));
        next.at(i, j) = mu[i];
      }
    }
    res.partition = std::move(next);
    res.objective_history.push_back(objective(problem, res.centroids, res.partition, cfg.m));
    res.iterations = iter + 1;
    if (cfg.on_iteration) cfg.on_iteration(res.iterations, res.partition);
    if (max_delta < cfg.epsilon) {
      res.converged = true;
      break;
    }
  }
  res.degenerate = all_zero_everywhere;
  return res;
}

}  // namespace setplay::fcm
