#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/motion.hpp"
#include "core/types.hpp"

namespace eotrack {

struct TrajectorySegment {
  enum class Kind { Straight, Turn };
  Kind kind = Kind::Straight;
  int steps = 1;
  double turn_angle = 0.0;  // total heading change over the segment [rad]
};

struct TrajectorySpec {
  Vec2 start{0.0, 0.0};
  double heading = 0.0;  // [rad]
  double speed = 0.5;    // [m/s]
  std::vector<TrajectorySegment> segments;
};

/// Inclusive step range during which the listed anchors lose the direct path.
struct BlockageWindow {
  int from = 1;
  int to = 0;
  std::vector<int> anchor_ids;  // 1-based
};

/// Full drops the blocked anchor's whole active frame; LosOnly drops just
/// the direct-path component and keeps scatter and clutter.
enum class BlockageMode { Full, LosOnly };

/// Generative ground-truth parameters: fixed device offset and the
/// elliptical object extent.
struct TruthParams {
  BiasState bias{0.32, -kPi / 3.0};
  ExtentIdeal extent;
};

struct TrackerParams {
  double ess_threshold = 0.5;  // resample when ESS < threshold * I
  int ideal_samples = 50;      // Monte-Carlo draws of the boundary-arc model
  double mu_los = 1.0;         // LOS existence mean in the active ratio
};

/// Complete experiment configuration; the committed default reproduces the
/// reference scene (3 anchors, 180 steps, two direction changes, staged
/// blockage windows).
struct Scenario {
  int schema_version = 1;
  std::uint64_t seed = 1;
  int num_steps = 180;
  double dt = 0.1;  // [s]
  std::vector<Anchor> anchors;
  TrajectorySpec trajectory;
  TruthParams truth;
  SceneConstants constants;
  double ref_amplitude_db = 30.0;  // at 1 m path length
  std::vector<BlockageWindow> blockage;
  BlockageMode blockage_mode = BlockageMode::Full;
  AspectSign aspect_sign = AspectSign::Facing;
  bool monostatic_pairs = false;  // include (j,j) passive pairs
  MotionParams motion;
  PriorParams prior;
  TrackerParams tracker;

  bool anchor_blocked(int step, int anchor_id) const;
  /// 0-based index of the anchor with the given id; -1 if absent.
  int anchor_index(int anchor_id) const;
  /// Ordered (rx, tx) index pairs in canonical order.
  std::vector<std::pair<int, int>> passive_pairs() const;
};

Scenario default_scenario();

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// Throws std::invalid_argument on any violated invariant.
void validate_scenario(const Scenario& s);

/// One-page description of the scenario JSON schema (for CLI help).
const std::string& scenario_schema_help();

}  // namespace eotrack
