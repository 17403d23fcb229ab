#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "setplay/metrics.hpp"

using namespace setplay;
using model::BoolTree;
using model::Point;

namespace {

BoolTree leaf(std::string s) { return BoolTree{std::move(s), {}}; }

BoolTree random_tree(std::mt19937_64& rng, int depth) {
  static const char* labels[] = {"and", "or", "not", "playm(ko_our)", "bowner(P1)",
                                 "canShoot(P2)", "playm(play_on)"};
  std::uniform_int_distribution<int> pick(0, 6);
  BoolTree t = leaf(labels[pick(rng)]);
  if (depth > 0) {
    std::uniform_int_distribution<int> nch(0, 3);
    int n = nch(rng);
    for (int i = 0; i < n; ++i) t.children.push_back(random_tree(rng, depth - 1));
  }
  return t;
}

model::SetplayFeatures random_features(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(0, 6);
  std::uniform_real_distribution<double> coord(-15.0, 15.0);
  model::SetplayFeatures f;
  f.our_players_number = 1 + small(rng);
  f.their_players_number = small(rng) / 2;
  f.abort_condition = random_tree(rng, 2);
  f.steps_count = 1 + small(rng) / 2;
  for (int s = 0; s < f.steps_count; ++s) {
    model::StepFeatures st;
    st.our_players_in_step = 1 + small(rng) / 2;
    st.their_players_in_step = small(rng) / 3;
    st.wait_time = small(rng);
    st.abort_time = st.wait_time + small(rng);
    for (int i = 0; i < st.our_players_in_step; ++i)
      st.our_players_list.push_back({coord(rng), coord(rng) / 1.5});
    for (int i = 0; i < st.their_players_in_step; ++i)
      st.their_players_list.push_back({coord(rng), coord(rng) / 1.5});
    st.next_step = (s + 1 < f.steps_count) ? s + 1 : model::kTerminalStep;
    st.condition = random_tree(rng, 1);
    for (int i = 0; i < st.our_players_in_step; ++i)
      st.behaviors_list.push_back(small(rng) % 2 ? "intercept()" : "mov(1,2)");
    f.steps_list.push_back(std::move(st));
  }
  return f;
}

}  // namespace

TEST_CASE("tree diff matches the positional oracle on fixed cases") {
  BoolTree A = leaf("bowner(P1)");
  BoolTree B = leaf("playm(ko_our)");
  BoolTree orAB{"or", {A, B}};

  CHECK(metrics::diff_node(A, A) == 0);
  CHECK(metrics::diff_node(A, B) == 1);
  // or(A,B) vs A: root labels differ, A occupies a child slot only on one
  // side, B likewise -> 3 differing positions.
  CHECK(metrics::diff_node(orAB, A) == 3);
  CHECK(metrics::diff_node(orAB, A) == oracles::tree_diff(orAB, A));

  BoolTree notA{"not", {A}};
  CHECK(metrics::diff_node(orAB, notA) == oracles::tree_diff(orAB, notA));
  CHECK(metrics::diff_node(orAB, BoolTree{"or", {B, A}}) == 2);
}

TEST_CASE("tree diff matches the positional oracle on random trees") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 400; ++i) {
    BoolTree a = random_tree(rng, 3);
    BoolTree b = random_tree(rng, 3);
    CHECK(metrics::diff_node(a, b) == oracles::tree_diff(a, b));
  }
}

TEST_CASE("behavior norm counts positional mismatches") {
  std::vector<std::string> a{"mov(1,2)", "intercept()", "pos(4,3)"};
  std::vector<std::string> b{"mov(1,2)", "pos(4,3)", "pos(4,3)"};
  CHECK(metrics::behavior_norm(a, a) == 0.0);
  CHECK(metrics::behavior_norm(a, b) == doctest::Approx(1.0));
  std::vector<std::string> c{"mov(1,2)"};
  CHECK(metrics::behavior_norm(a, c) == doctest::Approx(std::sqrt(2.0)));
  CHECK(metrics::behavior_norm({}, a) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("player list norm pairs by index and penalizes unmatched players") {
  std::vector<Point> a{{0, 0}, {3, 4}};
  std::vector<Point> b{{0, 0}, {0, 0}};
  CHECK(metrics::player_list_norm(a, b) == doctest::Approx(5.0));
  std::vector<Point> c{{0, 0}};
  CHECK(metrics::player_list_norm(a, c) == doctest::Approx(36.06));
  metrics::DistanceConfig cfg;
  cfg.unmatched_player_penalty = 10.0;
  CHECK(metrics::player_list_norm(a, c, cfg) == doctest::Approx(10.0));
  CHECK(metrics::player_list_norm({}, {}) == 0.0);
}

TEST_CASE("level-1 distance reduces to Euclidean when trees are equal") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    model::SetplayFeatures a = random_features(rng);
    model::SetplayFeatures b = random_features(rng);
    b.abort_condition = a.abort_condition;
    double dx1 = b.our_players_number - a.our_players_number;
    double dx2 = b.their_players_number - a.their_players_number;
    double dx4 = b.steps_count - a.steps_count;
    double expect = std::sqrt(dx1 * dx1 + dx2 * dx2 + dx4 * dx4);
    CHECK(metrics::level1_distance(a, b) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("step distance reduces to scalar Euclidean when lists and trees match") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    model::SetplayFeatures f = random_features(rng);
    if (f.steps_list.empty()) continue;
    model::StepFeatures a = f.steps_list[0];
    model::StepFeatures b = a;
    b.wait_time += 2.0;
    b.abort_time += 3.0;
    b.next_step += 1;
    double expect = std::sqrt(2.0 * 2.0 + 3.0 * 3.0 + 1.0 * 1.0);
    CHECK(metrics::step_distance(a, b) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("metric axioms hold on random feature pairs") {
  std::mt19937_64 rng(99);
  std::vector<model::SetplayFeatures> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_features(rng));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 1000; ++t) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    double d1 = metrics::level1_distance(a, b);
    double d2 = metrics::level2_distance(a, b);
    CHECK(d1 >= 0.0);
    CHECK(d2 >= 0.0);
    CHECK(d1 == metrics::level1_distance(b, a));
    CHECK(d2 == metrics::level2_distance(b, a));
    CHECK(metrics::level1_distance(a, a) == 0.0);
    CHECK(metrics::level2_distance(a, a) == 0.0);
  }
}

TEST_CASE("two-level distance adds step terms unsquared over the common prefix") {
  std::mt19937_64 rng(7);
  model::SetplayFeatures a = random_features(rng);
  model::SetplayFeatures b = random_features(rng);
  std::size_t common = std::min(a.steps_list.size(), b.steps_list.size());
  double expect = metrics::level1_distance(a, b);
  for (std::size_t z = 0; z < common; ++z)
    expect += metrics::step_distance(a.steps_list[z], b.steps_list[z]);
  CHECK(metrics::level2_distance(a, b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("normalized variant combines terms quadratically") {
  std::mt19937_64 rng(8);
  metrics::DistanceConfig cfg;
  cfg.normalize_features = true;
  model::SetplayFeatures a = random_features(rng);
  model::SetplayFeatures b = random_features(rng);
  std::size_t common = std::min(a.steps_list.size(), b.steps_list.size());
  double sq = std::pow(metrics::level1_distance(a, b), 2);
  for (std::size_t z = 0; z < common; ++z)
    sq += std::pow(metrics::step_distance(a.steps_list[z], b.steps_list[z], cfg), 2);
  CHECK(metrics::level2_distance(a, b, cfg) == doctest::Approx(std::sqrt(sq)).epsilon(1e-12));
  CHECK(metrics::level2_distance(a, a, cfg) == 0.0);
}
