#include "setplay/model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

namespace setplay::model {

namespace {

using sexpr::Node;

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

int require_int(const Node& n, const std::string& path) {
  int v = 0;
  if (!n.is_atom() || !parse_int(n.text(), v)) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                       path + ": expected an integer atom");
  }
  return v;
}

double require_double(const Node& n, const std::string& path) {
  double v = 0.0;
  if (!n.is_atom() || !parse_double(n.text(), v)) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                       path + ": expected a numeric atom");
  }
  return v;
}

bool head_is(const Node& n, const std::string& name) {
  return n.is_list() && !n.children().empty() && n.children().front().is_atom() &&
         n.children().front().text() == name;
}

/// Walks the ":keyword value" pairs that follow the head atom of a form.
std::vector<std::pair<std::string, const Node*>> keyword_pairs(const Node& form,
                                                               const std::string& path) {
  std::vector<std::pair<std::string, const Node*>> out;
  const auto& ch = form.children();
  std::size_t i = 1;
  while (i < ch.size()) {
    if (!ch[i].is_atom() || ch[i].text().empty() || ch[i].text()[0] != ':') {
      throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                         path + ": expected a :keyword atom");
    }
    if (i + 1 >= ch.size()) {
      throw ExtractError(ExtractError::Kind::MissingField, path,
                         path + ": keyword " + ch[i].text() + " has no value");
    }
    out.emplace_back(ch[i].text(), &ch[i + 1]);
    i += 2;
  }
  return out;
}

const Node* find_keyword(const std::vector<std::pair<std::string, const Node*>>& pairs,
                         const std::string& key) {
  for (const auto& [k, v] : pairs)
    if (k == key) return v;
  return nullptr;
}

const Node& require_keyword(const std::vector<std::pair<std::string, const Node*>>& pairs,
                            const std::string& key, const std::string& path) {
  const Node* n = find_keyword(pairs, key);
  if (!n) {
    throw ExtractError(ExtractError::Kind::MissingField, path,
                       path + ": missing required field " + key);
  }
  return *n;
}

// Structural wrapper heads whose names carry no comparison value.
bool is_wrapper_head(const std::string& name) {
  return name == "list" || name == "pt" || name == "playerRole" || name == "player" ||
         name == "at";
}

void flatten_args(const Node& n, std::vector<std::string>& out, bool skip_head) {
  if (n.is_atom()) {
    if (!n.text().empty() && n.text()[0] == ':') return;  // keyword marker
    out.push_back(canonical_number(n.text()));
    return;
  }
  const auto& ch = n.children();
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i == 0 && skip_head && ch[i].is_atom() && is_wrapper_head(ch[i].text())) continue;
    flatten_args(ch[i], out, true);
  }
}

std::string fold_form(const std::string& name, const Node& form) {
  std::vector<std::string> args;
  const auto& ch = form.children();
  for (std::size_t i = 1; i < ch.size(); ++i) flatten_args(ch[i], args, true);
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i];
  }
  s += ')';
  return s;
}

PlayerRef parse_player_ref(const Node& n, const std::string& path) {
  if (head_is(n, "playerRole")) {
    auto pairs = keyword_pairs(n, path);
    const Node& name = require_keyword(pairs, ":roleName", path);
    if (!name.is_atom()) {
      throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                         path + ": :roleName expects an atom");
    }
    PlayerRef pr;
    pr.kind = PlayerRef::Kind::Role;
    pr.role_name = name.text();
    return pr;
  }
  if (head_is(n, "player")) {
    auto pairs = keyword_pairs(n, path);
    const Node& team = require_keyword(pairs, ":team", path);
    const Node& number = require_keyword(pairs, ":number", path);
    if (!team.is_atom()) {
      throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                         path + ": :team expects an atom");
    }
    PlayerRef pr;
    pr.kind = PlayerRef::Kind::TeamNumber;
    pr.team = (team.text() == "opp") ? PlayerRef::Team::Opp : PlayerRef::Team::Ours;
    pr.number = require_int(number, path + "/:number");
    return pr;
  }
  throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                     path + ": expected (playerRole ...) or (player ...)");
}

Point parse_point(const Node& n, const std::string& path) {
  if (!head_is(n, "pt")) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, path, path + ": expected (pt ...)");
  }
  auto pairs = keyword_pairs(n, path);
  Point p;
  p.x = require_double(require_keyword(pairs, ":x", path), path + "/:x");
  p.y = require_double(require_keyword(pairs, ":y", path), path + "/:y");
  return p;
}

std::vector<Behavior> parse_directives(const Node& n, const std::string& path) {
  std::vector<Behavior> out;
  if (!n.is_list()) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                       path + ": expected a (list ...) of do-forms");
  }
  for (const Node& d : n.children()) {
    if (d.is_atom() && d.text() == "list") continue;
    if (!head_is(d, "do")) {
      throw ExtractError(ExtractError::Kind::TypeMismatch, path, path + ": expected (do ...)");
    }
    auto pairs = keyword_pairs(d, path);
    const Node& players = require_keyword(pairs, ":players", path);
    const Node& actions = require_keyword(pairs, ":actions", path);
    std::vector<PlayerRef> actors;
    for (const Node& p : players.children()) {
      if (p.is_atom() && p.text() == "list") continue;
      actors.push_back(parse_player_ref(p, path + "/:players"));
    }
    for (const PlayerRef& actor : actors) {
      for (const Node& a : actions.children()) {
        if (a.is_atom() && a.text() == "list") continue;
        out.push_back({actor, canonical_action(a)});
      }
    }
  }
  return out;
}

Transition parse_transition(const Node& n, const std::string& path) {
  if (!head_is(n, "nextStep")) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, path,
                       path + ": expected (nextStep ...)");
  }
  auto pairs = keyword_pairs(n, path);
  Transition t;
  t.next_step_id = require_int(require_keyword(pairs, ":id", path), path + "/:id");
  if (const Node* dir = find_keyword(pairs, ":directives")) {
    t.directives = parse_directives(*dir, path + "/:directives");
  }
  return t;
}

StepRecord parse_step(const Node& n, const std::string& path) {
  auto pairs = keyword_pairs(n, path);
  StepRecord step;
  step.id = require_int(require_keyword(pairs, ":id", path), path + "/:id");
  if (const Node* w = find_keyword(pairs, ":waitTime"))
    step.wait_time = require_double(*w, path + "/:waitTime");
  if (const Node* a = find_keyword(pairs, ":abortTime"))
    step.abort_time = require_double(*a, path + "/:abortTime");
  if (const Node* parts = find_keyword(pairs, ":participants")) {
    for (const Node& p : parts->children()) {
      if (p.is_atom() && p.text() == "list") continue;
      if (!head_is(p, "at") || p.children().size() != 3) {
        throw ExtractError(ExtractError::Kind::TypeMismatch, path + "/:participants",
                           path + ": participant entries must be (at <player> <pt>)");
      }
      PlayerRef pr = parse_player_ref(p.children()[1], path + "/:participants");
      Point pos = parse_point(p.children()[2], path + "/:participants");
      if (pr.is_ours()) {
        step.participants_ours.emplace_back(pr, pos);
      } else {
        step.participants_theirs.emplace_back(pr, pos);
      }
    }
  }
  if (const Node* cond = find_keyword(pairs, ":condition")) {
    step.condition = condition_tree(*cond);
  } else {
    step.condition = BoolTree{"true", {}};
  }
  if (const Node* lead = find_keyword(pairs, ":leadPlayer")) {
    step.lead_player = parse_player_ref(*lead, path + "/:leadPlayer");
  }
  if (const Node* trans = find_keyword(pairs, ":transitions")) {
    for (const Node& t : trans->children()) {
      if (t.is_atom() && t.text() == "list") continue;
      step.transitions.push_back(parse_transition(t, path + "/:transitions"));
    }
  }
  return step;
}

}  // namespace

std::string PlayerRef::display() const {
  if (kind == Kind::Role) return role_name;
  return std::string(team == Team::Opp ? "opp#" : "our#") + std::to_string(number);
}

int tree_size(const BoolTree& t) {
  int n = 1;
  for (const BoolTree& c : t.children) n += tree_size(c);
  return n;
}

std::string canonical_number(const std::string& atom) {
  double v = 0.0;
  if (!parse_double(atom, v)) return atom;
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return atom;
  return std::string(buf, ptr);
}

std::string canonical_action(const sexpr::Node& action) {
  if (action.is_atom()) return action.text() + "()";
  if (action.children().empty() || !action.children().front().is_atom()) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, ":actions",
                       "action form must start with an action name");
  }
  return fold_form(action.children().front().text(), action);
}

BoolTree condition_tree(const sexpr::Node& node) {
  if (node.is_atom()) return BoolTree{node.text(), {}};
  if (node.children().empty() || !node.children().front().is_atom()) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, ":condition",
                       "condition form must start with an operator or predicate name");
  }
  const std::string& head = node.children().front().text();
  if (head == "and" || head == "or" || head == "not") {
    BoolTree t{head, {}};
    for (std::size_t i = 1; i < node.children().size(); ++i) {
      t.children.push_back(condition_tree(node.children()[i]));
    }
    return t;
  }
  return BoolTree{fold_form(head, node), {}};
}

SetplayRecord extract_setplay(const sexpr::Node& root) {
  if (!head_is(root, "setplay")) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, "setplay",
                       "top-level form must be (setplay ...)");
  }
  auto pairs = keyword_pairs(root, "setplay");
  SetplayRecord sp;

  const Node& name = require_keyword(pairs, ":name", "setplay");
  if (!name.is_atom()) {
    throw ExtractError(ExtractError::Kind::TypeMismatch, "setplay/:name",
                       ":name expects an atom");
  }
  sp.name = name.text();
  sp.id = require_int(require_keyword(pairs, ":id", "setplay"), "setplay/:id");
  if (const Node* inv = find_keyword(pairs, ":invertible")) {
    sp.invertible = inv->is_atom() && inv->text() == "true";
  }

  const Node& players = require_keyword(pairs, ":players", "setplay");
  for (const Node& p : players.children()) {
    if (p.is_atom() && p.text() == "list") continue;
    sp.players.push_back(parse_player_ref(p, "setplay/:players"));
  }

  sp.abort_cond = condition_tree(require_keyword(pairs, ":abortCond", "setplay"));

  const Node& steps = require_keyword(pairs, ":steps", "setplay");
  std::set<int> seen_ids;
  for (const Node& s : steps.children()) {
    if (s.is_atom() && s.text() == "seq") continue;
    if (!head_is(s, "step")) {
      throw ExtractError(ExtractError::Kind::TypeMismatch, "setplay/:steps",
                         ":steps entries must be (step ...)");
    }
    StepRecord step = parse_step(s, "setplay/:steps/step");
    if (!seen_ids.insert(step.id).second) {
      throw ExtractError(ExtractError::Kind::DuplicateStepId,
                         "setplay/:steps/step#" + std::to_string(step.id),
                         "duplicate step id " + std::to_string(step.id));
    }
    sp.steps.push_back(std::move(step));
  }

  static const std::set<std::string> known = {":name", ":id",        ":invertible",
                                              ":players", ":abortCond", ":steps"};
  for (const auto& [k, v] : pairs) {
    if (!known.count(k)) sp.extras[k] = sexpr::serialize(*v);
  }
  return sp;
}

std::vector<Violation> validate(const SetplayRecord& sp) {
  std::vector<Violation> out;
  std::set<int> ids;
  bool has_zero = false;
  for (const StepRecord& s : sp.steps) {
    std::string where = "step#" + std::to_string(s.id);
    if (!ids.insert(s.id).second) {
      out.push_back({"DuplicateStepId", where, "duplicate step id " + std::to_string(s.id)});
    }
    if (s.id == 0) has_zero = true;
    if (s.wait_time && s.abort_time && *s.abort_time < *s.wait_time) {
      out.push_back({"TimeOrdering", where, "abortTime is smaller than waitTime"});
    }
  }
  if (!has_zero) {
    out.push_back({"MissingInitialStep", "setplay", "no step with id 0"});
  }
  for (const StepRecord& s : sp.steps) {
    std::string where = "step#" + std::to_string(s.id);
    for (const Transition& t : s.transitions) {
      if (t.next_step_id != kTerminalStep && !ids.count(t.next_step_id)) {
        out.push_back({"DanglingTransition", where,
                       where + " -> " + std::to_string(t.next_step_id) +
                           " targets a nonexistent step"});
      }
    }
    for (const auto& side : {s.participants_ours, s.participants_theirs}) {
      for (const auto& [pr, pos] : side) {
        if (std::find(sp.players.begin(), sp.players.end(), pr) == sp.players.end()) {
          out.push_back({"UnknownParticipant", where,
                         pr.display() + " is not in the setplay player list"});
        }
      }
    }
  }
  return out;
}

StepFeatures extract_step_features(const SetplayRecord& sp, const StepRecord& step) {
  StepFeatures f;
  f.our_players_in_step = static_cast<int>(step.participants_ours.size());
  f.their_players_in_step = static_cast<int>(step.participants_theirs.size());
  f.wait_time = step.wait_time.value_or(0.0);
  f.abort_time = step.abort_time.value_or(0.0);
  for (const auto& [pr, pos] : step.participants_ours) f.our_players_list.push_back(pos);
  for (const auto& [pr, pos] : step.participants_theirs) f.their_players_list.push_back(pos);

  // The language stores the condition for entering a step on the target
  // step itself, so the primary transition's condition is looked up there.
  const Transition* primary = step.transitions.empty() ? nullptr : &step.transitions.front();
  f.next_step = primary ? primary->next_step_id : kTerminalStep;
  f.condition = BoolTree{"true", {}};
  if (primary) {
    for (const StepRecord& s : sp.steps) {
      if (s.id == primary->next_step_id) {
        f.condition = s.condition;
        break;
      }
    }
  }

  for (const auto& [pr, pos] : step.participants_ours) {
    std::string action = "idle()";
    if (primary) {
      for (const Behavior& b : primary->directives) {
        if (b.actor == pr) {
          action = b.action_string;
          break;
        }
      }
    }
    f.behaviors_list.push_back(std::move(action));
  }
  return f;
}

SetplayFeatures extract_features(const SetplayRecord& sp) {
  SetplayFeatures f;
  f.name = sp.name;
  f.id = sp.id;
  for (const PlayerRef& p : sp.players) {
    if (p.is_ours()) {
      ++f.our_players_number;
    } else {
      ++f.their_players_number;
    }
  }
  f.abort_condition = sp.abort_cond;

  std::vector<const StepRecord*> ordered;
  ordered.reserve(sp.steps.size());
  for (const StepRecord& s : sp.steps) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const StepRecord* a, const StepRecord* b) { return a->id < b->id; });
  for (const StepRecord* s : ordered) {
    f.steps_list.push_back(extract_step_features(sp, *s));
  }
  f.steps_count = static_cast<int>(f.steps_list.size());
  return f;
}

}  // namespace setplay::model
