#pragma once

#include <vector>

#include "setplay/datagen.hpp"
#include "setplay/model.hpp"
#include "setplay/sexpr.hpp"

namespace test_util {

inline setplay::model::SetplayFeatures features_of(const std::string& text) {
  auto root = setplay::sexpr::parse_text(text);
  auto record = setplay::model::extract_setplay(root);
  return setplay::model::extract_features(record);
}

/// Parses a generated corpus into feature rows.
inline std::vector<setplay::model::SetplayFeatures> corpus_features(
    const std::vector<setplay::datagen::FamilySpec>& specs) {
  std::vector<setplay::model::SetplayFeatures> out;
  for (const auto& plan : setplay::datagen::generate_corpus(specs)) {
    out.push_back(features_of(plan.text));
  }
  return out;
}

inline std::vector<setplay::model::SetplayFeatures> four_family_corpus(std::uint64_t seed,
                                                                 double jitter = 0.5) {
  return corpus_features(setplay::datagen::four_family_spec(seed, jitter));
}

}  // namespace test_util
