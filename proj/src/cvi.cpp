#include "setplay/cvi.hpp"

#include <cmath>
#include <limits>

namespace setplay::cvi {

std::vector<std::size_t> crisp_assignment(const fcm::PartitionMatrix& partition) {
  std::vector<std::size_t> out(partition.n, 0);
  for (std::size_t j = 0; j < partition.n; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < partition.c; ++i) {
      if (partition.at(i, j) > partition.at(best, j)) best = i;
    }
    out[j] = best;
  }
  return out;
}

double silhouette_object(std::size_t j, std::span<const std::size_t> assignment,
                         const DistanceMatrix& pairwise) {
  std::size_t n = assignment.size();
  std::size_t own = assignment[j];

  double a_sum = 0.0;
  std::size_t a_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j || assignment[k] != own) continue;
    a_sum += pairwise.at(j, k);
    ++a_count;
  }
  if (a_count == 0) return 0.0;  // singleton
  double a = a_sum / static_cast<double>(a_count);

  double b = std::numeric_limits<double>::infinity();
  std::size_t clusters = 0;
  for (std::size_t k = 0; k < n; ++k) clusters = std::max(clusters, assignment[k] + 1);
  for (std::size_t q = 0; q < clusters; ++q) {
    if (q == own) continue;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (assignment[k] != q) continue;
      sum += pairwise.at(j, k);
      ++count;
    }
    if (count > 0) b = std::min(b, sum / static_cast<double>(count));
  }
  if (!std::isfinite(b)) return 0.0;  // no other occupied cluster

  double denom = std::max(a, b);
  if (denom == 0.0) return 0.0;
  return (b - a) / denom;
}

FsResult fuzzy_silhouette(const fcm::PartitionMatrix& partition,
                          const DistanceMatrix& pairwise, const SilhouetteConfig& cfg) {
  auto assignment = crisp_assignment(partition);
  FsResult res;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < partition.n; ++j) {
    double first = -1.0, second = -1.0;
    for (std::size_t i = 0; i < partition.c; ++i) {
      double v = partition.at(i, j);
      if (v > first) {
        second = first;
        first = v;
      } else if (v > second) {
        second = v;
      }
    }
    double gap = first - second;
    double w = (gap == 0.0 && cfg.alpha == 0.0) ? 1.0 : std::pow(gap, cfg.alpha);
    if (w > 0.0) {
      num += w * silhouette_object(j, assignment, pairwise);
      den += w;
    }
  }
  if (den == 0.0) {
    res.all_weights_zero = true;
    res.value = 0.0;
    return res;
  }
  res.value = num / den;
  return res;
}

}  // namespace setplay::cvi
