#pragma once

#include <span>
#include <string>
#include <vector>

#include "setplay/model.hpp"

namespace setplay::metrics {

struct DistanceConfig {
  /// Cost charged per player present in only one of two player lists.
  /// Default is the 20x30 m field diagonal.
  double unmatched_player_penalty = 36.06;
  /// When set, the step terms of the two-level distance are combined
  /// quadratically instead of being added unsquared to the level-1 term.
  bool normalize_features = false;
};

/// Count of differing nodes between two condition trees under index-aligned
/// traversal: a position occupied in both trees contributes 1 when the
/// labels differ; a subtree present in only one tree contributes its full
/// node count.
int diff_node(const model::BoolTree& a, const model::BoolTree& b);

/// Stage-1 distance over (x1, x2, x3, x4); the steps list is ignored.
double level1_distance(const model::SetplayFeatures& a, const model::SetplayFeatures& b);

/// sqrt of the count of positions at which the two behavior vectors differ;
/// positions past the shorter vector count as different.
double behavior_norm(std::span<const std::string> v1, std::span<const std::string> v2);

/// Sum of Euclidean distances between index-paired players, plus the
/// configured penalty per unmatched player.
double player_list_norm(std::span<const model::Point> l1, std::span<const model::Point> l2,
                        const DistanceConfig& cfg = {});

/// Distance between two step rows (p1..p9).
double step_distance(const model::StepFeatures& s1, const model::StepFeatures& s2,
                     const DistanceConfig& cfg = {});

/// Stage-2 distance: the level-1 distance plus the unsquared sum of step
/// distances over the common step prefix.
double level2_distance(const model::SetplayFeatures& a, const model::SetplayFeatures& b,
                       const DistanceConfig& cfg = {});

}  // namespace setplay::metrics
