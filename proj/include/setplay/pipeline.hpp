#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setplay/cvi.hpp"
#include "setplay/fcm.hpp"
#include "setplay/metrics.hpp"
#include "setplay/model.hpp"

namespace setplay::pipeline {

struct Config {
  int c1_min = 2;
  int c1_max = 8;
  int c2 = 2;
  double m = 2.0;
  double alpha = 1.0;
  double gamma = 0.5;        // membership flexibility, in [0,1]
  int restarts = 10;
  std::uint64_t seed = 0;
  double split_fs_threshold = 0.5;
  metrics::DistanceConfig dist;
};

struct Member {
  std::size_t index;   // position in the input dataset
  double membership;
};

enum class Verdict { Split, Keep, Singleton };

std::string verdict_name(Verdict v);

struct SubCluster {
  int id = 0;
  std::vector<Member> members;
};

struct ClusterOutcome {
  int id = 0;
  std::vector<Member> members;
  double fs = 1.0;
  bool fs_degenerate = false;
  Verdict verdict = Verdict::Singleton;
  int c2_used = 0;
  std::uint64_t best_seed = 0;
  std::vector<SubCluster> subclusters;
};

struct SweepEntry {
  int c = 0;
  double fs_best = 0.0;
  double fs_mean = 0.0;
  double fs_std = 0.0;
  std::uint64_t best_seed = 0;
  bool degenerate = false;  // every restart produced an all-ambiguous partition
};

struct Stage1Result {
  std::vector<SweepEntry> sweep;        // one entry per C in the sweep range
  int best_c = 0;
  std::uint64_t best_seed = 0;
  fcm::PartitionMatrix partition;       // best restart at best_c
  std::vector<std::vector<Member>> clusters;
  std::vector<std::string> warnings;
};

struct GroupedDataset {
  std::vector<ClusterOutcome> clusters;
};

struct RunResult {
  Stage1Result stage1;
  GroupedDataset stage2;
};

/// Splitmix64-style seed derivation so restart fan-out is order-independent.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

cvi::DistanceMatrix pairwise_level1(const std::vector<model::SetplayFeatures>& dataset);
cvi::DistanceMatrix pairwise_level2(const std::vector<model::SetplayFeatures>& dataset,
                                    const metrics::DistanceConfig& dist);

/// Instance j joins cluster i iff mu_ij > (max_j mu_ij) - gamma; the
/// row-max instance is always a member, so gamma = 0 degenerates to
/// singletons and member sets grow monotonically with gamma.
std::vector<std::vector<Member>> assign_members(const fcm::PartitionMatrix& partition,
                                                double gamma);

/// C sweep over level-1 features: per C, the best-FS restart is the
/// representative; best_c maximizes FS (ties toward the smaller C).
Stage1Result stage1(const std::vector<model::SetplayFeatures>& dataset, const Config& cfg);

/// Per stage-1 cluster: singletons get fs = 1; otherwise FCM over the full
/// features with C capped at ceil(sqrt(cluster size)), and the split/keep
/// verdict from the FS threshold.
GroupedDataset stage2(const Stage1Result& s1,
                      const std::vector<model::SetplayFeatures>& dataset, const Config& cfg);

RunResult run(const std::vector<model::SetplayFeatures>& dataset, const Config& cfg);

}  // namespace setplay::pipeline
