#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "setplay/datagen.hpp"
#include "setplay/json_io.hpp"
#include "setplay/model.hpp"
#include "setplay/pipeline.hpp"
#include "setplay/sexpr.hpp"

namespace fs = std::filesystem;
using setplay::json_io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInternalError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a temp file + rename so readers never see partial output.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

struct PipelineFlags {
  setplay::pipeline::Config cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--c1-min", cfg.c1_min, "smallest stage-1 cluster count");
    cmd->add_option("--c1-max", cfg.c1_max, "largest stage-1 cluster count");
    cmd->add_option("--c2", cfg.c2, "stage-2 cluster count (capped per cluster)");
    cmd->add_option("--m", cfg.m, "FCM fuzzifier exponent (> 1)");
    cmd->add_option("--alpha", cfg.alpha, "fuzzy silhouette weighting exponent");
    cmd->add_option("--gamma", cfg.gamma, "membership flexibility in [0,1]");
    cmd->add_option("--restarts", cfg.restarts, "FCM restarts per cluster count");
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
    cmd->add_option("--split-fs-threshold", cfg.split_fs_threshold,
                    "stage-2 FS at or above which a cluster is split");
    cmd->add_flag("--normalize", cfg.dist.normalize_features,
                  "combine step terms quadratically in the stage-2 distance");
    cmd->add_option("--unmatched-penalty", cfg.dist.unmatched_player_penalty,
                    "cost per unmatched player in player-list norms");
  }

  void finalize() {
    if (const char* env = std::getenv("SETPLAY_SEED")) {
      cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (cfg.m <= 1.0) throw CLI::ValidationError("--m", "fuzzifier must be > 1");
    if (cfg.gamma < 0.0 || cfg.gamma > 1.0) {
      throw CLI::ValidationError("--gamma", "gamma must be in [0,1]");
    }
    if (cfg.restarts < 1) throw CLI::ValidationError("--restarts", "restarts must be >= 1");
    if (cfg.c1_min < 2) throw CLI::ValidationError("--c1-min", "cluster counts start at 2");
    if (cfg.c1_max < cfg.c1_min) {
      throw CLI::ValidationError("--c1-max", "c1 range is empty");
    }
    if (cfg.c2 < 2) throw CLI::ValidationError("--c2", "stage-2 cluster count must be >= 2");
  }
};

json config_echo(const setplay::pipeline::Config& cfg) {
  json c;
  c["c1_min"] = cfg.c1_min;
  c["c1_max"] = cfg.c1_max;
  c["c2"] = cfg.c2;
  c["m"] = cfg.m;
  c["alpha"] = cfg.alpha;
  c["gamma"] = cfg.gamma;
  c["restarts"] = cfg.restarts;
  c["seed"] = cfg.seed;
  c["split_fs_threshold"] = cfg.split_fs_threshold;
  c["unmatched_player_penalty"] = cfg.dist.unmatched_player_penalty;
  c["normalize_features"] = cfg.dist.normalize_features;
  return c;
}

std::vector<fs::path> collect_plan_files(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const std::string& p : paths) {
    fs::path path(p);
    if (!fs::exists(path)) throw InputError("no such path: " + p);
    if (fs::is_directory(path)) {
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".sp") {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(path);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_parse(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<fs::path> files = collect_plan_files(inputs);
  if (files.empty()) {
    std::cerr << "warning: no .sp files found\n";
  }
  std::vector<setplay::model::SetplayFeatures> dataset;
  int failures = 0;
  for (const fs::path& file : files) {
    try {
      auto root = setplay::sexpr::parse_text(read_file(file));
      auto record = setplay::model::extract_setplay(root);
      auto report = setplay::model::validate(record);
      if (!report.empty()) {
        for (const auto& v : report) {
          std::cerr << file.string() << ": " << v.code << " at " << v.path << ": "
                    << v.message << "\n";
        }
        ++failures;
        continue;
      }
      dataset.push_back(setplay::model::extract_features(record));
    } catch (const setplay::sexpr::ParseError& e) {
      std::cerr << file.string() << ":" << e.pos.line << ":" << e.pos.column << ": "
                << e.what() << "\n";
      ++failures;
    } catch (const setplay::model::ExtractError& e) {
      std::cerr << file.string() << ": " << e.what() << "\n";
      ++failures;
    }
  }
  write_atomic(out_path, setplay::json_io::dataset_to_json(dataset).dump(2) + "\n");
  std::cout << "wrote " << dataset.size() << " setplays to " << out_path << "\n";
  return failures == 0 ? kExitOk : kExitInputError;
}

std::string fs_curve_csv(const std::vector<setplay::pipeline::SweepEntry>& sweep) {
  std::string csv = "c,fs_best,fs_mean,fs_std\n";
  for (const auto& e : sweep) {
    csv += std::to_string(e.c) + "," + fixed9(e.fs_best) + "," + fixed9(e.fs_mean) + "," +
           fixed9(e.fs_std) + "\n";
  }
  return csv;
}

std::string partition_csv(const setplay::fcm::PartitionMatrix& p) {
  std::string csv;
  for (std::size_t i = 0; i < p.c; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) {
      if (j) csv += ",";
      csv += fixed9(p.at(i, j));
    }
    csv += "\n";
  }
  return csv;
}

int cmd_cluster(const std::string& dataset_path, const std::string& out_dir,
                setplay::pipeline::Config cfg) {
  json dataset_json = json::parse(read_file(dataset_path));
  auto dataset = setplay::json_io::dataset_from_json(dataset_json);
  if (dataset.size() < 2) throw InputError("dataset needs at least 2 setplays");

  auto result = setplay::pipeline::run(dataset, cfg);

  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  write_atomic(dir / "report.json",
               setplay::json_io::report_to_json(cfg, dataset, result).dump(2) + "\n");
  write_atomic(dir / "fs_curve.csv", fs_curve_csv(result.stage1.sweep));
  write_atomic(dir / "partition_stage1.csv", partition_csv(result.stage1.partition));

  json manifest;
  manifest["tool"] = "setplay";
  manifest["version"] = kVersion;
  manifest["command"] = "cluster";
  manifest["inputs"] = json::array({dataset_path});
  manifest["config"] = config_echo(cfg);
  json seeds = json::array();
  for (const auto& e : result.stage1.sweep) seeds.push_back(e.best_seed);
  manifest["stage1_best_seeds"] = std::move(seeds);
  manifest["timestamp"] = timestamp_utc();
  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "best C = " << result.stage1.best_c << "; wrote report to " << out_dir
            << "\n";
  return kExitOk;
}

int cmd_generate(const std::string& spec_path, const std::string& out_dir) {
  json spec_json = json::parse(read_file(spec_path));
  std::vector<setplay::datagen::FamilySpec> specs;
  for (const json& f : spec_json.at("families")) {
    setplay::datagen::FamilySpec s;
    s.play_mode = setplay::datagen::play_mode_from_name(f.at("play_mode").get<std::string>());
    s.count = f.at("count").get<int>();
    if (s.count < 1) throw InputError("family count must be >= 1");
    if (f.contains("players")) {
      s.players_min = f["players"].at(0).get<int>();
      s.players_max = f["players"].at(1).get<int>();
    }
    if (f.contains("steps")) {
      s.steps_min = f["steps"].at(0).get<int>();
      s.steps_max = f["steps"].at(1).get<int>();
    }
    if (f.contains("jitter")) s.jitter = f["jitter"].get<double>();
    if (f.contains("behavior_swap_prob")) {
      s.behavior_swap_prob = f["behavior_swap_prob"].get<double>();
    }
    if (f.contains("seed")) s.seed = f["seed"].get<std::uint64_t>();
    specs.push_back(s);
  }

  auto plans = setplay::datagen::generate_corpus(specs);
  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  for (const auto& plan : plans) {
    write_atomic(dir / (plan.file_stem + ".sp"), plan.text + "\n");
  }
  write_atomic(dir / "spec_echo.json", spec_json.dump(2) + "\n");
  std::cout << "wrote " << plans.size() << " plans to " << out_dir << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& dataset_path, const std::string& out_dir,
              setplay::pipeline::Config base_cfg, const std::vector<double>& ms,
              const std::vector<double>& alphas) {
  json dataset_json = json::parse(read_file(dataset_path));
  auto dataset = setplay::json_io::dataset_from_json(dataset_json);
  if (dataset.size() < 2) throw InputError("dataset needs at least 2 setplays");

  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  for (double m : ms) {
    for (double alpha : alphas) {
      setplay::pipeline::Config cfg = base_cfg;
      cfg.m = m;
      cfg.alpha = alpha;
      auto s1 = setplay::pipeline::stage1(dataset, cfg);
      char name[64];
      std::snprintf(name, sizeof(name), "fs_curve_m%g_a%g.csv", m, alpha);
      write_atomic(dir / name, fs_curve_csv(s1.sweep));
    }
  }
  std::cout << "wrote " << ms.size() * alphas.size() << " curve files to " << out_dir
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"setplay: parse, generate, and cluster multi-robot setplays"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // parse
  auto* parse = app.add_subcommand("parse", "extract a JSON dataset from .sp plan files");
  std::vector<std::string> parse_inputs;
  std::string parse_out = "dataset.json";
  parse->add_option("paths", parse_inputs, "plan files or directories")->required();
  parse->add_option("--out", parse_out, "output dataset path");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "run the two-stage clustering pipeline");
  std::string cluster_dataset;
  std::string cluster_out = "out";
  cluster->add_option("dataset", cluster_dataset, "dataset JSON from 'parse'")->required();
  cluster->add_option("--out-dir", cluster_out, "output directory");
  PipelineFlags cluster_flags;
  cluster_flags.attach(cluster);

  // generate
  auto* generate = app.add_subcommand("generate", "generate a synthetic plan corpus");
  std::string gen_spec;
  std::string gen_out = "corpus";
  generate->add_option("spec", gen_spec, "family spec JSON")->required();
  generate->add_option("--out-dir", gen_out, "output directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "stage-1 FS curves over an m x alpha grid");
  std::string sweep_dataset;
  std::string sweep_out = "sweep";
  std::vector<double> sweep_ms{1.5, 2.0};
  std::vector<double> sweep_alphas{1.0, 2.0};
  sweep->add_option("dataset", sweep_dataset, "dataset JSON from 'parse'")->required();
  sweep->add_option("--out-dir", sweep_out, "output directory");
  sweep->add_option("--m-grid", sweep_ms, "fuzzifier values");
  sweep->add_option("--alpha-grid", sweep_alphas, "alpha values");
  PipelineFlags sweep_flags;
  sweep_flags.attach(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return cmd_parse(parse_inputs, parse_out);
    if (cluster->parsed()) {
      cluster_flags.finalize();
      return cmd_cluster(cluster_dataset, cluster_out, cluster_flags.cfg);
    }
    if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
    if (sweep->parsed()) {
      sweep_flags.finalize();
      for (double m : sweep_ms) {
        if (m <= 1.0) throw CLI::ValidationError("--m-grid", "fuzzifier must be > 1");
      }
      return cmd_sweep(sweep_dataset, sweep_out, sweep_flags.cfg, sweep_ms, sweep_alphas);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}
