#include "setplay/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "setplay/model.hpp"
#include "setplay/sexpr.hpp"

namespace setplay::datagen {

using sexpr::Node;

std::string play_mode_name(PlayMode m) {
  switch (m) {
    case PlayMode::PlayOn: return "play_on";
    case PlayMode::KickIn: return "kick_in";
    case PlayMode::GoalKick: return "goal_kick";
    case PlayMode::KoOur: return "ko_our";
  }
  return "play_on";
}

PlayMode play_mode_from_name(const std::string& name) {
  if (name == "play_on") return PlayMode::PlayOn;
  if (name == "kick_in") return PlayMode::KickIn;
  if (name == "goal_kick") return PlayMode::GoalKick;
  if (name == "ko_our") return PlayMode::KoOur;
  throw std::invalid_argument("unknown play mode: " + name);
}

namespace {

Node atom(const std::string& s) { return Node::atom(s); }
Node list(std::vector<Node> ch) { return Node::list(std::move(ch)); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string coord(double v) {
  double r = std::round(v * 1000.0) / 1000.0;
  if (r == 0.0) r = 0.0;  // normalize -0
  return model::canonical_number(std::to_string(r));
}

// 20x30 m field.
constexpr double kHalfLength = 15.0;
constexpr double kHalfWidth = 10.0;

enum class ActionKind { Mov, Pos, Bto, Intercept };

struct ActionPlan {
  ActionKind kind = ActionKind::Intercept;
  int target_player = 0;  // Bto: index into our roles
  double tx = 0.0, ty = 0.0;  // Mov/Pos region
};

struct FamilyBase {
  int n_our = 1;
  int n_opp = 0;
  int n_steps = 2;
  std::vector<std::string> roles;
  // base positions: [step][player]; own players first, then opponents
  std::vector<std::vector<std::pair<double, double>>> positions;
  std::vector<std::vector<ActionPlan>> actions;  // [step][own player]
};

Node playm(const std::string& mode) { return list({atom("playm"), atom(mode)}); }

Node not_of(Node n) { return list({atom("not"), std::move(n)}); }

Node abort_condition(PlayMode mode) {
  switch (mode) {
    case PlayMode::PlayOn:
      return not_of(playm("play_on"));
    case PlayMode::KickIn:
      return list({atom("or"), not_of(playm("kick_in")), not_of(playm("play_on"))});
    case PlayMode::GoalKick:
      return list({atom("and"), not_of(playm("goal_kick")), not_of(playm("play_on"))});
    case PlayMode::KoOur:
      return list({atom("or"),
                   list({atom("bowner"), atom(":players"),
                         list({atom("list"),
                               list({atom("player"), atom(":team"), atom("opp"),
                                     atom(":number"), atom("1")}),
                               list({atom("player"), atom(":team"), atom("opp"),
                                     atom(":number"), atom("2")})})}),
                   list({atom("and"), not_of(playm("play_on")), not_of(playm("ko_our"))})});
  }
  return not_of(playm("play_on"));
}

int opponents_for(PlayMode mode) {
  switch (mode) {
    case PlayMode::PlayOn: return 2;
    case PlayMode::KickIn: return 1;
    default: return 0;
  }
}

FamilyBase build_base(const FamilySpec& spec) {
  std::mt19937_64 rng(mix(spec.seed, 0xba5e));
  FamilyBase base;
  base.n_our = std::max(1, uniform_int(rng, spec.players_min, spec.players_max));
  base.n_opp = opponents_for(spec.play_mode);
  base.n_steps = std::max(2, uniform_int(rng, spec.steps_min, spec.steps_max));
  for (int p = 0; p < base.n_our; ++p) {
    base.roles.push_back("Player" + std::to_string(2 + p));
  }
  base.positions.resize(base.n_steps);
  base.actions.resize(base.n_steps);
  for (int s = 0; s < base.n_steps; ++s) {
    for (int p = 0; p < base.n_our + base.n_opp; ++p) {
      base.positions[s].emplace_back(uniform(rng, -kHalfLength, kHalfLength),
                                     uniform(rng, -kHalfWidth, kHalfWidth));
    }
    base.actions[s].resize(base.n_our);
    for (int p = 0; p < base.n_our; ++p) {
      ActionPlan a;
      switch (uniform_int(rng, 0, 3)) {
        case 0:
          a.kind = ActionKind::Mov;
          a.tx = uniform(rng, -kHalfLength, kHalfLength);
          a.ty = uniform(rng, -kHalfWidth, kHalfWidth);
          break;
        case 1:
          a.kind = ActionKind::Pos;
          a.tx = uniform(rng, -kHalfLength, kHalfLength);
          a.ty = uniform(rng, -kHalfWidth, kHalfWidth);
          break;
        case 2:
          a.kind = ActionKind::Bto;
          a.target_player = (p + 1) % base.n_our;
          break;
        default:
          a.kind = ActionKind::Intercept;
          break;
      }
      base.actions[s][p] = a;
    }
  }
  return base;
}

Node player_ref(const FamilyBase& base, int p) {
  if (p < base.n_our) {
    return list({atom("playerRole"), atom(":roleName"), atom(base.roles[p])});
  }
  return list({atom("player"), atom(":team"), atom("opp"), atom(":number"),
               atom(std::to_string(p - base.n_our + 1))});
}

Node action_node(const FamilyBase& base, const ActionPlan& a) {
  switch (a.kind) {
    case ActionKind::Mov:
      return list({atom("mov"), atom(":region"),
                   list({atom("pt"), atom(":x"), atom(coord(a.tx)), atom(":y"),
                         atom(coord(a.ty))})});
    case ActionKind::Pos:
      return list({atom("pos"), atom(":region"),
                   list({atom("pt"), atom(":x"), atom(coord(a.tx)), atom(":y"),
                         atom(coord(a.ty))})});
    case ActionKind::Bto:
      return list({atom("bto"), atom(":players"),
                   list({atom("list"), player_ref(base, a.target_player)}),
                   atom(":type"), atom("normal")});
    case ActionKind::Intercept:
      return list({atom("intercept")});
  }
  return list({atom("intercept")});
}

std::string plan_text(const FamilySpec& spec, const FamilyBase& base, int member,
                      int plan_id) {
  std::mt19937_64 rng(mix(spec.seed, 0x700 + static_cast<std::uint64_t>(member)));

  // Member-local copy with jittered positions and an optional behavior swap.
  auto positions = base.positions;
  auto actions = base.actions;
  for (auto& step : positions) {
    for (auto& [x, y] : step) {
      x += uniform(rng, -spec.jitter, spec.jitter);
      y += uniform(rng, -spec.jitter, spec.jitter);
    }
  }
  if (uniform01(rng) < spec.behavior_swap_prob && base.n_our > 0) {
    int s = uniform_int(rng, 0, base.n_steps - 1);
    int p = uniform_int(rng, 0, base.n_our - 1);
    ActionPlan& a = actions[s][p];
    a.kind = (a.kind == ActionKind::Mov) ? ActionKind::Pos
             : (a.kind == ActionKind::Pos) ? ActionKind::Mov
                                           : ActionKind::Intercept;
  }

  std::vector<Node> players{atom("list")};
  for (int p = 0; p < base.n_our + base.n_opp; ++p) players.push_back(player_ref(base, p));

  std::vector<Node> steps{atom("seq")};
  for (int s = 0; s < base.n_steps; ++s) {
    std::vector<Node> participants{atom("list")};
    for (int p = 0; p < base.n_our + base.n_opp; ++p) {
      auto [x, y] = positions[s][p];
      participants.push_back(
          list({atom("at"), player_ref(base, p),
                list({atom("pt"), atom(":x"), atom(coord(x)), atom(":y"),
                      atom(coord(y))})}));
    }
    Node condition = (s == 0)
                         ? playm(play_mode_name(spec.play_mode))
                         : list({atom("bowner"), atom(":players"),
                                 list({atom("list"), player_ref(base, 0)})});
    std::vector<Node> step{atom("step"),
                           atom(":id"), atom(std::to_string(s)),
                           atom(":waitTime"), atom("0"),
                           atom(":abortTime"), atom(std::to_string(20 + 2 * s)),
                           atom(":participants"), list(std::move(participants)),
                           atom(":condition"), std::move(condition),
                           atom(":leadPlayer"), player_ref(base, 0)};
    std::vector<Node> transitions{atom("list")};
    if (s + 1 < base.n_steps) {
      std::vector<Node> directives{atom("list")};
      for (int p = 0; p < base.n_our; ++p) {
        directives.push_back(list({atom("do"), atom(":players"),
                                   list({atom("list"), player_ref(base, p)}),
                                   atom(":actions"),
                                   list({atom("list"), action_node(base, actions[s][p])})}));
      }
      transitions.push_back(list({atom("nextStep"), atom(":id"),
                                  atom(std::to_string(s + 1)), atom(":directives"),
                                  list(std::move(directives))}));
    }
    step.push_back(atom(":transitions"));
    step.push_back(list(std::move(transitions)));
    steps.push_back(list(std::move(step)));
  }

  Node root = list({atom("setplay"),
                    atom(":name"),
                    atom(play_mode_name(spec.play_mode) + "_" + std::to_string(member)),
                    atom(":id"), atom(std::to_string(plan_id)),
                    atom(":invertible"), atom("true"),
                    atom(":players"), list(std::move(players)),
                    atom(":abortCond"), abort_condition(spec.play_mode),
                    atom(":steps"), list(std::move(steps))});
  return sexpr::serialize(root);
}

}  // namespace

std::vector<GeneratedPlan> generate_corpus(const std::vector<FamilySpec>& specs) {
  std::vector<GeneratedPlan> out;
  int plan_id = 1;
  for (std::size_t f = 0; f < specs.size(); ++f) {
    const FamilySpec& spec = specs[f];
    if (spec.count < 1) throw std::invalid_argument("family count must be >= 1");
    if (spec.jitter < 0.0) throw std::invalid_argument("jitter must be >= 0");
    FamilyBase base = build_base(spec);
    for (int m = 0; m < spec.count; ++m) {
      GeneratedPlan plan;
      plan.family = static_cast<int>(f);
      plan.text = plan_text(spec, base, m, plan_id++);
      char idx[16];
      std::snprintf(idx, sizeof(idx), "%02d", m);
      plan.file_stem =
          play_mode_name(spec.play_mode) + "_f" + std::to_string(f) + "_p" + idx;
      out.push_back(std::move(plan));
    }
  }
  return out;
}

std::vector<FamilySpec> four_family_spec(std::uint64_t seed, double jitter) {
  std::vector<FamilySpec> specs(4);
  specs[0] = {PlayMode::PlayOn, 5, 5, 7, 3, 4, jitter, 0.15, mix(seed, 1)};
  specs[1] = {PlayMode::KickIn, 4, 3, 5, 2, 3, jitter, 0.15, mix(seed, 2)};
  specs[2] = {PlayMode::GoalKick, 4, 2, 4, 4, 6, jitter, 0.15, mix(seed, 3)};
  specs[3] = {PlayMode::KoOur, 5, 1, 3, 2, 2, jitter, 0.15, mix(seed, 4)};
  return specs;
}

}  // namespace setplay::datagen
