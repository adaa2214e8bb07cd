#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "snapfix/solid.hpp"
#include "snapfix/synth.hpp"

namespace snapfix {

/// Everything a run needs; mirrors module defaults when unset.
struct RunConfig {
  std::string input;
  std::string format;  // "", "off", "obj", "stl"
  ExtrusionParams params;
  double angleTol = 1e-6;
  double distTol = 1e-6;
  double epsCover = kEpsCover;
  std::string objective = "fingers";
  int maxFingers = 4;
  std::string solidPath;
  std::string jsonPath;
  int threads = 1;

  void save(std::ostream& out) const;
  static RunConfig load(std::istream& in);
};

/// Table-shaped result record: mesh columns, synthesis columns, timings.
struct Report {
  std::string name;
  long verts = 0;
  long edges = 0;
  long tris = 0;
  long merged = 0;
  long genusValue = 0;
  int minFingers = 0;               // 0 = no fixture
  long long fixturesAtMin = -1;     // -1 = not counted
  std::array<long long, 3> validCalls{0, 0, 0};
  double wallMs = 0.0;
  std::optional<Fixture> fixture;
  std::optional<QualityMetrics> metrics;
  std::optional<Direction> serving;

  /// Deterministic payload; timing fields are carried separately so byte
  /// comparison across runs can strip them.
  nlohmann::json toJson(bool includeTiming = true) const;
  std::string csvRow() const;
  static std::string csvHeader();
};

nlohmann::json fixtureToJson(const Fixture& f, const std::optional<QualityMetrics>& q,
                             const std::optional<Direction>& serving);

}  // namespace snapfix
