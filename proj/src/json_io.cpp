#include "setplay/json_io.hpp"

namespace setplay::json_io {

using model::BoolTree;
using model::Point;
using model::SetplayFeatures;
using model::StepFeatures;

json tree_to_json(const BoolTree& t) {
  json j;
  j["label"] = t.label;
  json children = json::array();
  for (const BoolTree& c : t.children) children.push_back(tree_to_json(c));
  j["children"] = std::move(children);
  return j;
}

BoolTree tree_from_json(const json& j) {
  BoolTree t;
  t.label = j.at("label").get<std::string>();
  for (const json& c : j.at("children")) t.children.push_back(tree_from_json(c));
  return t;
}

namespace {

json points_to_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const Point& p : pts) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

std::vector<Point> points_from_json(const json& j) {
  std::vector<Point> out;
  for (const json& p : j) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

}  // namespace

json step_features_to_json(const StepFeatures& s) {
  json j;
  j["ourPlayersInStep"] = s.our_players_in_step;
  j["theirPlayersInStep"] = s.their_players_in_step;
  j["waitTime"] = s.wait_time;
  j["abortTime"] = s.abort_time;
  j["ourPlayersList"] = points_to_json(s.our_players_list);
  j["theirPlayersList"] = points_to_json(s.their_players_list);
  j["nextStep"] = s.next_step;
  j["condition"] = tree_to_json(s.condition);
  j["behaviorsList"] = s.behaviors_list;
  return j;
}

StepFeatures step_features_from_json(const json& j) {
  StepFeatures s;
  s.our_players_in_step = j.at("ourPlayersInStep").get<int>();
  s.their_players_in_step = j.at("theirPlayersInStep").get<int>();
  s.wait_time = j.at("waitTime").get<double>();
  s.abort_time = j.at("abortTime").get<double>();
  s.our_players_list = points_from_json(j.at("ourPlayersList"));
  s.their_players_list = points_from_json(j.at("theirPlayersList"));
  s.next_step = j.at("nextStep").get<int>();
  s.condition = tree_from_json(j.at("condition"));
  s.behaviors_list = j.at("behaviorsList").get<std::vector<std::string>>();
  return s;
}

json setplay_features_to_json(const SetplayFeatures& f) {
  json j;
  j["name"] = f.name;
  j["id"] = f.id;
  j["ourPlayersNumber"] = f.our_players_number;
  j["theirPlayersNumber"] = f.their_players_number;
  j["abortCondition"] = tree_to_json(f.abort_condition);
  j["steps"] = f.steps_count;
  json steps = json::array();
  for (const StepFeatures& s : f.steps_list) steps.push_back(step_features_to_json(s));
  j["stepsList"] = std::move(steps);
  return j;
}

SetplayFeatures setplay_features_from_json(const json& j) {
  SetplayFeatures f;
  f.name = j.at("name").get<std::string>();
  f.id = j.at("id").get<int>();
  f.our_players_number = j.at("ourPlayersNumber").get<int>();
  f.their_players_number = j.at("theirPlayersNumber").get<int>();
  f.abort_condition = tree_from_json(j.at("abortCondition"));
  f.steps_count = j.at("steps").get<int>();
  for (const json& s : j.at("stepsList")) {
    f.steps_list.push_back(step_features_from_json(s));
  }
  return f;
}

json dataset_to_json(const std::vector<SetplayFeatures>& dataset) {
  json j;
  j["schema"] = "setplay-dataset/1";
  json rows = json::array();
  for (const SetplayFeatures& f : dataset) rows.push_back(setplay_features_to_json(f));
  j["setplays"] = std::move(rows);
  return j;
}

std::vector<SetplayFeatures> dataset_from_json(const json& j) {
  std::vector<SetplayFeatures> out;
  for (const json& row : j.at("setplays")) {
    out.push_back(setplay_features_from_json(row));
  }
  return out;
}

namespace {

json members_to_json(const std::vector<pipeline::Member>& members,
                     const std::vector<SetplayFeatures>& dataset) {
  json arr = json::array();
  for (const pipeline::Member& m : members) {
    json e;
    e["index"] = m.index;
    e["name"] = dataset[m.index].name;
    e["membership"] = m.membership;
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace

json report_to_json(const pipeline::Config& cfg, const std::vector<SetplayFeatures>& dataset,
                    const pipeline::RunResult& result) {
  json j;
  json config;
  config["c1_min"] = cfg.c1_min;
  config["c1_max"] = cfg.c1_max;
  config["c2"] = cfg.c2;
  config["m"] = cfg.m;
  config["alpha"] = cfg.alpha;
  config["gamma"] = cfg.gamma;
  config["restarts"] = cfg.restarts;
  config["seed"] = cfg.seed;
  config["split_fs_threshold"] = cfg.split_fs_threshold;
  config["unmatched_player_penalty"] = cfg.dist.unmatched_player_penalty;
  config["normalize_features"] = cfg.dist.normalize_features;
  j["config"] = std::move(config);

  const pipeline::Stage1Result& s1 = result.stage1;
  json stage1;
  json sweep = json::array();
  for (const pipeline::SweepEntry& e : s1.sweep) {
    json row;
    row["c"] = e.c;
    row["fs_best"] = e.fs_best;
    row["fs_mean"] = e.fs_mean;
    row["fs_std"] = e.fs_std;
    row["best_seed"] = e.best_seed;
    row["degenerate"] = e.degenerate;
    sweep.push_back(std::move(row));
  }
  stage1["fs_by_c"] = std::move(sweep);
  stage1["best_c"] = s1.best_c;
  stage1["best_seed"] = s1.best_seed;
  json partition = json::array();
  for (std::size_t i = 0; i < s1.partition.c; ++i) {
    json row = json::array();
    for (std::size_t jj = 0; jj < s1.partition.n; ++jj) {
      row.push_back(s1.partition.at(i, jj));
    }
    partition.push_back(std::move(row));
  }
  stage1["partition"] = std::move(partition);
  json rosters = json::array();
  for (const auto& members : s1.clusters) rosters.push_back(members_to_json(members, dataset));
  stage1["clusters"] = std::move(rosters);
  stage1["warnings"] = s1.warnings;
  j["stage1"] = std::move(stage1);

  json stage2 = json::array();
  for (const pipeline::ClusterOutcome& c : result.stage2.clusters) {
    json row;
    row["id"] = c.id;
    row["members"] = members_to_json(c.members, dataset);
    row["fs"] = c.fs;
    row["fs_degenerate"] = c.fs_degenerate;
    row["verdict"] = pipeline::verdict_name(c.verdict);
    row["c2_used"] = c.c2_used;
    row["best_seed"] = c.best_seed;
    json subs = json::array();
    for (const pipeline::SubCluster& sc : c.subclusters) {
      json sub;
      sub["id"] = sc.id;
      sub["members"] = members_to_json(sc.members, dataset);
      subs.push_back(std::move(sub));
    }
    row["subclusters"] = std::move(subs);
    stage2.push_back(std::move(row));
  }
  j["stage2"] = std::move(stage2);
  return j;
}

}  // namespace setplay::json_io
