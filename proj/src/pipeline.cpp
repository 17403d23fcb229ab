#include "setplay/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setplay::pipeline {

using model::SetplayFeatures;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Split: return "split";
    case Verdict::Keep: return "keep";
    case Verdict::Singleton: return "singleton";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1) +
                    0xbf58476d1ce4e5b9ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

cvi::DistanceMatrix pairwise_level1(const std::vector<SetplayFeatures>& dataset) {
  std::size_t n = dataset.size();
  cvi::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = metrics::level1_distance(dataset[i], dataset[j]);
      d.at(i, j) = v;
      d.at(j, i) = v;
    }
  }
  return d;
}

cvi::DistanceMatrix pairwise_level2(const std::vector<SetplayFeatures>& dataset,
                                    const metrics::DistanceConfig& dist) {
  std::size_t n = dataset.size();
  cvi::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = metrics::level2_distance(dataset[i], dataset[j], dist);
      d.at(i, j) = v;
      d.at(j, i) = v;
    }
  }
  return d;
}

std::vector<std::vector<Member>> assign_members(const fcm::PartitionMatrix& partition,
                                                double gamma) {
  std::vector<std::vector<Member>> clusters(partition.c);
  for (std::size_t i = 0; i < partition.c; ++i) {
    std::size_t argmax = 0;
    double row_max = partition.at(i, 0);
    for (std::size_t j = 1; j < partition.n; ++j) {
      if (partition.at(i, j) > row_max) {
        row_max = partition.at(i, j);
        argmax = j;
      }
    }
    double threshold = row_max - gamma;
    for (std::size_t j = 0; j < partition.n; ++j) {
      if (j == argmax || partition.at(i, j) > threshold) {
        clusters[i].push_back({j, partition.at(i, j)});
      }
    }
  }
  return clusters;
}

namespace {

/// Fixed-length scalar view used by both stages: (x1, x2, x4).
double level_scalar(const SetplayFeatures& f, std::size_t k) {
  switch (k) {
    case 0: return static_cast<double>(f.our_players_number);
    case 1: return static_cast<double>(f.their_players_number);
    default: return static_cast<double>(f.steps_count);
  }
}

struct RestartOutcome {
  fcm::Result fcm;
  double fs = 0.0;
  bool fs_degenerate = false;
  std::uint64_t seed = 0;
};

/// Runs `restarts` seeded FCM instances and scores each converged partition
/// with FS against the precomputed pairwise matrix.
SweepEntry sweep_point(const fcm::Problem& problem, const cvi::DistanceMatrix& pairwise,
                       int c, double m, double alpha, int restarts, std::uint64_t base_seed,
                       std::uint64_t stream, fcm::Result* best_out) {
  SweepEntry entry;
  entry.c = c;
  double sum = 0.0, sumsq = 0.0;
  bool any_nondegenerate = false;
  bool have_best = false;
  double best_fs = 0.0;

  for (int r = 0; r < restarts; ++r) {
    fcm::Config fc;
    fc.c = c;
    fc.m = m;
    fc.seed = derive_seed(base_seed, stream, static_cast<std::uint64_t>(r));
    fcm::Result result = fcm::run(problem, fc);
    cvi::FsResult fs = cvi::fuzzy_silhouette(result.partition, pairwise, {alpha});
    if (!fs.all_weights_zero) any_nondegenerate = true;
    sum += fs.value;
    sumsq += fs.value * fs.value;
    if (!have_best || fs.value > best_fs) {
      have_best = true;
      best_fs = fs.value;
      entry.best_seed = fc.seed;
      if (best_out) *best_out = std::move(result);
    }
  }
  entry.fs_best = best_fs;
  entry.fs_mean = sum / restarts;
  double var = sumsq / restarts - entry.fs_mean * entry.fs_mean;
  entry.fs_std = std::sqrt(std::max(0.0, var));
  entry.degenerate = !any_nondegenerate;
  return entry;
}

}  // namespace

Stage1Result stage1(const std::vector<SetplayFeatures>& dataset, const Config& cfg) {
  std::size_t n = dataset.size();
  if (n < 2) throw std::invalid_argument("stage1: need at least 2 setplays");
  if (cfg.gamma < 0.0 || cfg.gamma > 1.0) {
    throw std::invalid_argument("stage1: gamma must be in [0,1]");
  }
  if (cfg.restarts < 1) throw std::invalid_argument("stage1: restarts must be >= 1");

  Stage1Result res;
  int c_max = cfg.c1_max;
  if (static_cast<std::size_t>(c_max) > n) {
    c_max = static_cast<int>(n);
    res.warnings.push_back("c1 range truncated to N=" + std::to_string(n));
  }
  if (cfg.c1_min > c_max) throw std::invalid_argument("stage1: empty c1 range");

  // Tree diffs between instances are reused for all instance-to-centroid
  // distances; centroids donate their tree from a real instance.
  std::vector<int> treediff(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int v = metrics::diff_node(dataset[i].abort_condition, dataset[j].abort_condition);
      treediff[i * n + j] = v;
      treediff[j * n + i] = v;
    }
  }

  fcm::Problem problem;
  problem.n = n;
  problem.scalar_dim = 3;
  problem.scalar = [&dataset](std::size_t j, std::size_t k) {
    return level_scalar(dataset[j], k);
  };
  problem.distance = [&dataset, &treediff, n](std::size_t j, const fcm::Centroid& v) {
    double sq = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      double diff = level_scalar(dataset[j], k) - v.scalars[k];
      sq += diff * diff;
    }
    double t = static_cast<double>(treediff[j * n + v.donor]);
    return std::sqrt(sq + t * t);
  };

  cvi::DistanceMatrix pairwise = pairwise_level1(dataset);

  fcm::Result best_run;
  bool have_best = false;
  for (int c = cfg.c1_min; c <= c_max; ++c) {
    fcm::Result candidate;
    SweepEntry entry = sweep_point(problem, pairwise, c, cfg.m, cfg.alpha, cfg.restarts,
                                   cfg.seed, 1, &candidate);
    if (entry.degenerate) {
      res.warnings.push_back("all restarts at C=" + std::to_string(c) +
                             " produced fully ambiguous partitions");
    }
    res.sweep.push_back(entry);
    if (!have_best || entry.fs_best > res.sweep[static_cast<std::size_t>(
                                          res.best_c - cfg.c1_min)].fs_best) {
      have_best = true;
      res.best_c = c;
      res.best_seed = entry.best_seed;
      best_run = std::move(candidate);
    }
  }

  res.partition = std::move(best_run.partition);
  res.clusters = assign_members(res.partition, cfg.gamma);
  for (std::size_t i = 0; i < res.clusters.size(); ++i) {
    if (res.clusters[i].empty()) {
      res.warnings.push_back("stage-1 cluster " + std::to_string(i) +
                             " has no members and was dropped");
    }
  }
  std::erase_if(res.clusters, [](const std::vector<Member>& m) { return m.empty(); });
  return res;
}

GroupedDataset stage2(const Stage1Result& s1, const std::vector<SetplayFeatures>& dataset,
                      const Config& cfg) {
  GroupedDataset out;
  for (std::size_t ci = 0; ci < s1.clusters.size(); ++ci) {
    const std::vector<Member>& members = s1.clusters[ci];
    ClusterOutcome outcome;
    outcome.id = static_cast<int>(ci);
    outcome.members = members;

    if (members.size() == 1) {
      outcome.fs = 1.0;  // singletons cannot be split
      outcome.verdict = Verdict::Singleton;
      out.clusters.push_back(std::move(outcome));
      continue;
    }

    std::vector<SetplayFeatures> subset;
    subset.reserve(members.size());
    for (const Member& m : members) subset.push_back(dataset[m.index]);
    std::size_t sn = subset.size();

    int c2 = std::min(cfg.c2,
                      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(sn)))));
    c2 = std::max(c2, 2);
    outcome.c2_used = c2;

    std::vector<int> treediff(sn * sn, 0);
    std::vector<double> stepterm(sn * sn, 0.0);
    for (std::size_t i = 0; i < sn; ++i) {
      for (std::size_t j = i + 1; j < sn; ++j) {
        int t = metrics::diff_node(subset[i].abort_condition, subset[j].abort_condition);
        treediff[i * sn + j] = treediff[j * sn + i] = t;
        std::size_t common = std::min(subset[i].steps_list.size(),
                                      subset[j].steps_list.size());
        double s = 0.0;
        for (std::size_t z = 0; z < common; ++z) {
          double sd = metrics::step_distance(subset[i].steps_list[z],
                                             subset[j].steps_list[z], cfg.dist);
          s += cfg.dist.normalize_features ? sd * sd : sd;
        }
        stepterm[i * sn + j] = stepterm[j * sn + i] = s;
      }
    }

    fcm::Problem problem;
    problem.n = sn;
    problem.scalar_dim = 3;
    problem.scalar = [&subset](std::size_t j, std::size_t k) {
      return level_scalar(subset[j], k);
    };
    bool normalize = cfg.dist.normalize_features;
    problem.distance = [&subset, &treediff, &stepterm, sn, normalize](
                           std::size_t j, const fcm::Centroid& v) {
      double sq = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        double diff = level_scalar(subset[j], k) - v.scalars[k];
        sq += diff * diff;
      }
      double t = static_cast<double>(treediff[j * sn + v.donor]);
      sq += t * t;
      double steps = stepterm[j * sn + v.donor];
      return normalize ? std::sqrt(sq + steps) : std::sqrt(sq) + steps;
    };

    cvi::DistanceMatrix pairwise = pairwise_level2(subset, cfg.dist);

    fcm::Result best_run;
    SweepEntry entry =
        sweep_point(problem, pairwise, c2, cfg.m, cfg.alpha, cfg.restarts, cfg.seed,
                    1000 + static_cast<std::uint64_t>(ci), &best_run);
    outcome.fs = entry.fs_best;
    outcome.fs_degenerate = entry.degenerate;
    outcome.best_seed = entry.best_seed;
    outcome.verdict =
        entry.fs_best >= cfg.split_fs_threshold ? Verdict::Split : Verdict::Keep;
    if (outcome.verdict == Verdict::Split) {
      auto sub = assign_members(best_run.partition, cfg.gamma);
      for (std::size_t si = 0; si < sub.size(); ++si) {
        SubCluster sc;
        sc.id = static_cast<int>(si);
        for (const Member& m : sub[si]) {
          sc.members.push_back({members[m.index].index, m.membership});
        }
        if (!sc.members.empty()) outcome.subclusters.push_back(std::move(sc));
      }
    }
    out.clusters.push_back(std::move(outcome));
  }
  return out;
}

RunResult run(const std::vector<SetplayFeatures>& dataset, const Config& cfg) {
  RunResult res;
  res.stage1 = stage1(dataset, cfg);
  res.stage2 = stage2(res.stage1, dataset, cfg);
  return res;
}

}  // namespace setplay::pipeline
