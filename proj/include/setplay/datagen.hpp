#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setplay::datagen {

enum class PlayMode { PlayOn, KickIn, GoalKick, KoOur };

std::string play_mode_name(PlayMode m);
PlayMode play_mode_from_name(const std::string& name);

/// One family of structurally related plans: members share the play-mode
/// condition shapes, player count, and step count, differing by jittered
/// positions and occasional behavior swaps.
struct FamilySpec {
  PlayMode play_mode = PlayMode::PlayOn;
  int count = 1;
  int players_min = 1;
  int players_max = 8;
  int steps_min = 2;
  int steps_max = 6;
  double jitter = 0.5;             // positional noise, meters
  double behavior_swap_prob = 0.15;  // chance a member swaps one behavior
  std::uint64_t seed = 0;
};

struct GeneratedPlan {
  std::string text;        // S-expression source
  std::string file_stem;   // e.g. "kick_in_f1_p03"
  int family = 0;
};

/// Deterministic per seed; every generated text parses and validates with
/// an empty report.
std::vector<GeneratedPlan> generate_corpus(const std::vector<FamilySpec>& specs);

/// A four-family, 18-plan corpus shape covering all four play modes.
std::vector<FamilySpec> four_family_spec(std::uint64_t seed, double jitter = 0.5);

}  // namespace setplay::datagen
