#include <doctest.h>

#include <cmath>
#include <set>

#include "setplay/datagen.hpp"
#include "setplay/metrics.hpp"
#include "setplay/model.hpp"
#include "setplay/sexpr.hpp"
#include "test_util.hpp"

using namespace setplay;

TEST_CASE("play mode names round-trip") {
  for (auto m : {datagen::PlayMode::PlayOn, datagen::PlayMode::KickIn,
                 datagen::PlayMode::GoalKick, datagen::PlayMode::KoOur}) {
    CHECK(datagen::play_mode_from_name(datagen::play_mode_name(m)) == m);
  }
  CHECK_THROWS_AS(datagen::play_mode_from_name("corner"), std::invalid_argument);
}

TEST_CASE("every generated plan parses and validates cleanly") {
  auto plans = datagen::generate_corpus(datagen::four_family_spec(31));
  REQUIRE(plans.size() == 18);
  for (const auto& plan : plans) {
    auto record = model::extract_setplay(sexpr::parse_text(plan.text));
    CHECK(model::validate(record).empty());
    CHECK(!record.steps.empty());
  }
}

TEST_CASE("generation is deterministic per seed") {
  auto a = datagen::generate_corpus(datagen::four_family_spec(7));
  auto b = datagen::generate_corpus(datagen::four_family_spec(7));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].text == b[i].text);
    CHECK(a[i].file_stem == b[i].file_stem);
  }
  auto c = datagen::generate_corpus(datagen::four_family_spec(8));
  CHECK(a[0].text != c[0].text);
}

TEST_CASE("the four-family shape yields 5+4+4+5 plans with unique stems") {
  auto plans = datagen::generate_corpus(datagen::four_family_spec(12));
  std::vector<int> counts(4, 0);
  std::set<std::string> stems;
  for (const auto& p : plans) {
    counts[p.family] += 1;
    stems.insert(p.file_stem);
  }
  CHECK(counts == std::vector<int>{5, 4, 4, 5});
  CHECK(stems.size() == plans.size());
}

TEST_CASE("family members share the coarse structure") {
  auto features = test_util::four_family_corpus(45);
  auto plans = datagen::generate_corpus(datagen::four_family_spec(45));
  REQUIRE(features.size() == plans.size());
  for (std::size_t i = 1; i < plans.size(); ++i) {
    if (plans[i].family != plans[i - 1].family) continue;
    const auto& a = features[i - 1];
    const auto& b = features[i];
    CHECK(a.our_players_number == b.our_players_number);
    CHECK(a.their_players_number == b.their_players_number);
    CHECK(a.steps_count == b.steps_count);
    CHECK(a.abort_condition == b.abort_condition);
    CHECK(metrics::level1_distance(a, b) == 0.0);
  }
}

TEST_CASE("jitter moves positions without changing structure") {
  datagen::FamilySpec spec;
  spec.play_mode = datagen::PlayMode::KickIn;
  spec.count = 3;
  spec.players_min = spec.players_max = 4;
  spec.steps_min = spec.steps_max = 3;
  spec.jitter = 1.0;
  spec.behavior_swap_prob = 0.0;
  spec.seed = 5;
  auto features = test_util::corpus_features({spec});
  REQUIRE(features.size() == 3);
  bool moved = false;
  for (std::size_t i = 1; i < features.size(); ++i) {
    CHECK(metrics::level1_distance(features[0], features[i]) == 0.0);
    REQUIRE(features[0].steps_list.size() == features[i].steps_list.size());
    for (std::size_t s = 0; s < features[0].steps_list.size(); ++s) {
      const auto& sa = features[0].steps_list[s];
      const auto& sb = features[i].steps_list[s];
      CHECK(sa.behaviors_list == sb.behaviors_list);
      for (std::size_t p = 0; p < sa.our_players_list.size(); ++p) {
        double dx = sa.our_players_list[p].x - sb.our_players_list[p].x;
        double dy = sa.our_players_list[p].y - sb.our_players_list[p].y;
        CHECK(std::abs(dx) <= 2.0 + 1e-9);
        CHECK(std::abs(dy) <= 2.0 + 1e-9);
        if (dx != 0.0 || dy != 0.0) moved = true;
      }
    }
  }
  CHECK(moved);
}

TEST_CASE("zero jitter and zero swap probability give identical feature rows") {
  datagen::FamilySpec spec;
  spec.count = 2;
  spec.players_min = spec.players_max = 3;
  spec.steps_min = spec.steps_max = 2;
  spec.jitter = 0.0;
  spec.behavior_swap_prob = 0.0;
  spec.seed = 9;
  auto features = test_util::corpus_features({spec});
  REQUIRE(features.size() == 2);
  CHECK(features[0].steps_list == features[1].steps_list);
}

TEST_CASE("opponent counts depend on the play mode") {
  for (auto [mode, opp] : std::vector<std::pair<datagen::PlayMode, int>>{
           {datagen::PlayMode::PlayOn, 2},
           {datagen::PlayMode::KickIn, 1},
           {datagen::PlayMode::GoalKick, 0},
           {datagen::PlayMode::KoOur, 0}}) {
    datagen::FamilySpec spec;
    spec.play_mode = mode;
    spec.count = 1;
    spec.players_min = spec.players_max = 2;
    spec.steps_min = spec.steps_max = 2;
    spec.seed = 3;
    auto features = test_util::corpus_features({spec});
    CHECK(features[0].their_players_number == opp);
  }
}

TEST_CASE("invalid family specs are rejected") {
  datagen::FamilySpec spec;
  spec.count = 0;
  CHECK_THROWS_AS(datagen::generate_corpus({spec}), std::invalid_argument);
  spec.count = 1;
  spec.jitter = -1.0;
  CHECK_THROWS_AS(datagen::generate_corpus({spec}), std::invalid_argument);
}
