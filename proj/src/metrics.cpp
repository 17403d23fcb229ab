#include "setplay/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace setplay::metrics {

using model::BoolTree;
using model::Point;
using model::SetplayFeatures;
using model::StepFeatures;

int diff_node(const BoolTree& a, const BoolTree& b) {
  int d = (a.label != b.label) ? 1 : 0;
  std::size_t n = std::max(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.children.size() && i < b.children.size()) {
      d += diff_node(a.children[i], b.children[i]);
    } else if (i < a.children.size()) {
      d += model::tree_size(a.children[i]);
    } else {
      d += model::tree_size(b.children[i]);
    }
  }
  return d;
}

double level1_distance(const SetplayFeatures& a, const SetplayFeatures& b) {
  double d1 = static_cast<double>(b.our_players_number - a.our_players_number);
  double d2 = static_cast<double>(b.their_players_number - a.their_players_number);
  double d3 = static_cast<double>(diff_node(a.abort_condition, b.abort_condition));
  double d4 = static_cast<double>(b.steps_count - a.steps_count);
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4);
}

double behavior_norm(std::span<const std::string> v1, std::span<const std::string> v2) {
  std::size_t n = std::max(v1.size(), v2.size());
  int diffs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= v1.size() || i >= v2.size() || v1[i] != v2[i]) ++diffs;
  }
  return std::sqrt(static_cast<double>(diffs));
}

double player_list_norm(std::span<const Point> l1, std::span<const Point> l2,
                        const DistanceConfig& cfg) {
  std::size_t common = std::min(l1.size(), l2.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < common; ++i) {
    sum += std::hypot(l2[i].x - l1[i].x, l2[i].y - l1[i].y);
  }
  std::size_t unmatched = std::max(l1.size(), l2.size()) - common;
  sum += cfg.unmatched_player_penalty * static_cast<double>(unmatched);
  return sum;
}

double step_distance(const StepFeatures& s1, const StepFeatures& s2,
                     const DistanceConfig& cfg) {
  double p7 = static_cast<double>(s2.next_step - s1.next_step);
  double p5 = player_list_norm(s1.our_players_list, s2.our_players_list, cfg);
  double p6 = player_list_norm(s1.their_players_list, s2.their_players_list, cfg);
  double p8 = static_cast<double>(diff_node(s1.condition, s2.condition));
  double p9 = behavior_norm(s1.behaviors_list, s2.behaviors_list);
  double p1 = static_cast<double>(s2.our_players_in_step - s1.our_players_in_step);
  double p2 = static_cast<double>(s2.their_players_in_step - s1.their_players_in_step);
  double p3 = s2.wait_time - s1.wait_time;
  double p4 = s2.abort_time - s1.abort_time;
  return std::sqrt(p7 * p7 + p5 * p5 + p6 * p6 + p8 * p8 + p9 * p9 + p1 * p1 + p2 * p2 +
                   p3 * p3 + p4 * p4);
}

double level2_distance(const SetplayFeatures& a, const SetplayFeatures& b,
                       const DistanceConfig& cfg) {
  double d1 = level1_distance(a, b);
  std::size_t common = std::min(a.steps_list.size(), b.steps_list.size());
  if (cfg.normalize_features) {
    double sq = d1 * d1;
    for (std::size_t z = 0; z < common; ++z) {
      double s = step_distance(a.steps_list[z], b.steps_list[z], cfg);
      sq += s * s;
    }
    return std::sqrt(sq);
  }
  double sum = d1;
  for (std::size_t z = 0; z < common; ++z) {
    sum += step_distance(a.steps_list[z], b.steps_list[z], cfg);
  }
  return sum;
}

}  // namespace setplay::metrics
