#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setplay/sexpr.hpp"

namespace setplay::model {

/// Step id used as the "no next step" marker for terminal steps.
inline constexpr int kTerminalStep = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct PlayerRef {
  enum class Kind { Role, TeamNumber };
  enum class Team { Ours, Opp };

  Kind kind = Kind::Role;
  std::string role_name;     // Kind::Role
  Team team = Team::Ours;    // Kind::TeamNumber
  int number = 0;            // Kind::TeamNumber

  bool is_ours() const { return kind == Kind::Role || team == Team::Ours; }

  std::string display() const;

  friend bool operator==(const PlayerRef&, const PlayerRef&) = default;
};

/// Boolean-expression tree. Operator nodes are "and"/"or"/"not"; predicate
/// leaves carry the predicate name with its argument atoms folded into the
/// label (e.g. "playm(ko_our)").
struct BoolTree {
  std::string label;
  std::vector<BoolTree> children;
  friend bool operator==(const BoolTree&, const BoolTree&) = default;
};

int tree_size(const BoolTree& t);

struct Behavior {
  PlayerRef actor;
  std::string action_string;  // canonical, e.g. "bto(Player5,normal)"
  friend bool operator==(const Behavior&, const Behavior&) = default;
};

struct Transition {
  int next_step_id = kTerminalStep;
  std::vector<Behavior> directives;
};

struct StepRecord {
  int id = 0;
  std::optional<double> wait_time;
  std::optional<double> abort_time;
  std::vector<std::pair<PlayerRef, Point>> participants_ours;
  std::vector<std::pair<PlayerRef, Point>> participants_theirs;
  BoolTree condition;
  std::optional<PlayerRef> lead_player;
  std::vector<Transition> transitions;
};

struct SetplayRecord {
  std::string name;
  int id = 0;
  bool invertible = false;
  std::vector<PlayerRef> players;
  BoolTree abort_cond;
  std::vector<StepRecord> steps;
  // Keyword forms not used by the schema, preserved verbatim.
  std::map<std::string, std::string> extras;
};

/// One row of the step-level schema (fields p1..p9).
struct StepFeatures {
  int our_players_in_step = 0;                  // p1
  int their_players_in_step = 0;                // p2
  double wait_time = 0.0;                       // p3
  double abort_time = 0.0;                      // p4
  std::vector<Point> our_players_list;          // p5
  std::vector<Point> their_players_list;        // p6
  int next_step = kTerminalStep;                // p7
  BoolTree condition;                           // p8
  std::vector<std::string> behaviors_list;      // p9
  friend bool operator==(const StepFeatures&, const StepFeatures&) = default;
};

/// One row of the setplay-level schema (x1..x5), plus identity for reporting.
struct SetplayFeatures {
  std::string name;
  int id = 0;
  int our_players_number = 0;                   // x1
  int their_players_number = 0;                 // x2
  BoolTree abort_condition;                     // x3
  int steps_count = 0;                          // x4
  std::vector<StepFeatures> steps_list;         // x5
  friend bool operator==(const SetplayFeatures&, const SetplayFeatures&) = default;
};

class ExtractError : public std::runtime_error {
 public:
  enum class Kind { MissingField, TypeMismatch, DuplicateStepId };

  ExtractError(Kind kind, std::string path, const std::string& what)
      : std::runtime_error(what), kind(kind), path(std::move(path)) {}

  Kind kind;
  std::string path;
};

struct Violation {
  std::string code;  // e.g. "DanglingTransition", "DuplicateStepId"
  std::string path;
  std::string message;
};

/// Canonical string of an action form: name + ordered arguments, keyword
/// markers and structural wrappers dropped, numbers normalized
/// ("-6.0" -> "-6"). E.g. (bto :players (list (playerRole :roleName Player5))
/// :type normal) -> "bto(Player5,normal)".
std::string canonical_action(const sexpr::Node& action);

/// Canonical shortest decimal form of a numeric atom; non-numeric atoms
/// pass through verbatim.
std::string canonical_number(const std::string& atom);

BoolTree condition_tree(const sexpr::Node& node);

SetplayRecord extract_setplay(const sexpr::Node& root);

std::vector<Violation> validate(const SetplayRecord& sp);

SetplayFeatures extract_features(const SetplayRecord& sp);

StepFeatures extract_step_features(const SetplayRecord& sp, const StepRecord& step);

}  // namespace setplay::model
