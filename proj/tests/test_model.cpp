#include <doctest.h>

#include "listing_example.hpp"
#include "setplay/model.hpp"
#include "setplay/sexpr.hpp"

using namespace setplay;
using model::BoolTree;

namespace {

model::SetplayRecord listing_record() {
  return model::extract_setplay(sexpr::parse_text(kListingExample));
}

const char* kMinimal =
    "(setplay :name s :id 1 :players (list) :abortCond (playm play_on) "
    ":steps (seq (step :id 0 :participants (list) :condition (playm play_on) "
    ":transitions (list))))";

}  // namespace

TEST_CASE("extract the published example") {
  auto sp = listing_record();
  CHECK(sp.name == "newSetPlay");
  CHECK(sp.id == 1);
  CHECK(sp.invertible);
  REQUIRE(sp.players.size() == 4);
  CHECK(sp.players[0].role_name == "Player7");
  CHECK(sp.players[1].role_name == "Player5");
  REQUIRE(sp.steps.size() == 2);
  CHECK(sp.steps[0].wait_time == 0.0);
  CHECK(sp.steps[0].abort_time == 26.0);
  CHECK(sp.steps[0].participants_ours.size() == 4);
  CHECK(sp.steps[0].participants_theirs.empty());
  CHECK(sp.extras.count(":version") == 1);  // unknown keyword preserved

  // abort condition: (or (bowner ...) (and (not ...) (not ...)))
  CHECK(sp.abort_cond.label == "or");
  REQUIRE(sp.abort_cond.children.size() == 2);
  CHECK(sp.abort_cond.children[0].children.empty());  // folded predicate leaf
  CHECK(sp.abort_cond.children[1].label == "and");
}

TEST_CASE("minimal well-formed plan") {
  auto sp = model::extract_setplay(sexpr::parse_text(kMinimal));
  REQUIRE(sp.steps.size() == 1);
  CHECK(sp.steps[0].participants_ours.empty());
  CHECK(model::validate(sp).empty());
}

TEST_CASE("missing required field") {
  CHECK_THROWS_AS(
      model::extract_setplay(sexpr::parse_text("(setplay :id 1 :players (list))")),
      model::ExtractError);
}

TEST_CASE("duplicate step id rejected at extraction") {
  const char* text =
      "(setplay :name s :id 1 :players (list) :abortCond (playm play_on) "
      ":steps (seq (step :id 0 :condition (playm play_on)) (step :id 0 :condition (playm "
      "play_on))))";
  try {
    model::extract_setplay(sexpr::parse_text(text));
    FAIL("expected DuplicateStepId");
  } catch (const model::ExtractError& e) {
    CHECK(e.kind == model::ExtractError::Kind::DuplicateStepId);
  }
}

TEST_CASE("validator flags dangling transitions and unknown participants") {
  const char* text =
      "(setplay :name s :id 1 :players (list (playerRole :roleName P1)) "
      ":abortCond (playm play_on) :steps (seq "
      "(step :id 0 :participants (list (at (playerRole :roleName P9) (pt :x 0 :y 0))) "
      ":condition (playm play_on) :transitions (list (nextStep :id 9)))))";
  auto sp = model::extract_setplay(sexpr::parse_text(text));
  auto report = model::validate(sp);
  bool dangling = false, unknown = false;
  for (const auto& v : report) {
    if (v.code == "DanglingTransition") dangling = true;
    if (v.code == "UnknownParticipant") unknown = true;
  }
  CHECK(dangling);
  CHECK(unknown);
}

TEST_CASE("validator checks wait/abort ordering and initial step") {
  model::SetplayRecord sp;
  sp.name = "x";
  model::StepRecord s;
  s.id = 3;
  s.wait_time = 5.0;
  s.abort_time = 2.0;
  sp.steps.push_back(s);
  auto report = model::validate(sp);
  bool ordering = false, missing_zero = false;
  for (const auto& v : report) {
    if (v.code == "TimeOrdering") ordering = true;
    if (v.code == "MissingInitialStep") missing_zero = true;
  }
  CHECK(ordering);
  CHECK(missing_zero);
}

TEST_CASE("level-1 features of the example") {
  auto f = model::extract_features(listing_record());
  CHECK(f.our_players_number == 4);
  CHECK(f.their_players_number == 0);  // opponents in conditions don't count
  CHECK(f.steps_count == 2);
  CHECK(f.steps_list.size() == 2);
}

TEST_CASE("step features of the example's initial step") {
  auto sp = listing_record();
  auto f = model::extract_step_features(sp, sp.steps[0]);
  CHECK(f.our_players_in_step == 4);
  CHECK(f.their_players_in_step == 0);
  CHECK(f.wait_time == 0.0);
  CHECK(f.abort_time == 26.0);
  CHECK(f.next_step == 1);
  REQUIRE(f.behaviors_list.size() == 4);
  // ordered by participant order Player7, Player5, Player6, Player8
  CHECK(f.behaviors_list[0] == "bto(Player5,normal)");
  CHECK(f.behaviors_list[1] == "intercept()");
  CHECK(f.behaviors_list[2] == "pos(4,3)");
  CHECK(f.behaviors_list[3] == "mov(3.5,-4)");
  CHECK(f.our_players_list.size() == 4);
  CHECK(f.our_players_list[1].x == -6.0);
}

TEST_CASE("terminal step yields marker and idle behaviors") {
  auto sp = listing_record();
  auto f = model::extract_step_features(sp, sp.steps[1]);
  CHECK(f.next_step == model::kTerminalStep);
  CHECK(f.condition == BoolTree{"true", {}});
  REQUIRE(f.behaviors_list.size() == 1);
  CHECK(f.behaviors_list[0] == "idle()");
}

TEST_CASE("canonical numbers strip redundant decimals") {
  CHECK(model::canonical_number("-6.0") == "-6");
  CHECK(model::canonical_number("3.50") == "3.5");
  CHECK(model::canonical_number("26") == "26");
  CHECK(model::canonical_number("normal") == "normal");
}

TEST_CASE("extraction is deterministic") {
  auto a = model::extract_features(listing_record());
  auto b = model::extract_features(listing_record());
  CHECK(a == b);
}

TEST_CASE("editing one directive changes only that step's row") {
  std::string text = kListingExample;
  auto pos = text.find(":x 3.5");
  REQUIRE(pos != std::string::npos);
  std::string edited = text;
  edited.replace(pos, 6, ":x 9.5");
  auto fa = model::extract_features(model::extract_setplay(sexpr::parse_text(text)));
  auto fb = model::extract_features(model::extract_setplay(sexpr::parse_text(edited)));
  CHECK(fa.steps_list[0] != fb.steps_list[0]);
  CHECK(fa.steps_list[1] == fb.steps_list[1]);
  CHECK(fa.steps_list[0].behaviors_list[3] == "mov(3.5,-4)");
  CHECK(fb.steps_list[0].behaviors_list[3] == "mov(9.5,-4)");
}

TEST_CASE("schema totality on generated records") {
  auto sp = listing_record();
  auto f = model::extract_features(sp);
  CHECK(f.steps_count == static_cast<int>(f.steps_list.size()));
  for (const auto& s : f.steps_list) {
    CHECK(s.our_players_in_step == static_cast<int>(s.our_players_list.size()));
    CHECK(s.their_players_in_step == static_cast<int>(s.their_players_list.size()));
    CHECK(s.our_players_in_step <= f.our_players_number);
    CHECK(s.their_players_in_step <= f.their_players_number);
  }
}
