#pragma once

#include "core/scenario.hpp"

namespace eotrack {

struct TruthStep {
  KinematicState kin;
  Vec2 device{0.0, 0.0};
};

/// Ground-truth track; steps[k] is time step n = k + 1.
struct GroundTruth {
  std::vector<TruthStep> steps;
};

/// Deterministic piecewise constant-turn path with continuous position and
/// velocity; device positions are left unset.
GroundTruth generate_trajectory(const TrajectorySpec& spec, int num_steps,
                                double dt);

/// Trajectory plus per-step device positions from the fixed truth bias.
GroundTruth generate_ground_truth(const Scenario& s);

/// Free-space pathloss amplitude (linear) of a path of the given total
/// length, referenced to `ref_db` at 1 m.
double amplitude_from_path(double path_length, double ref_db);

/// Active measurements of one step: per unblocked anchor one direct-path
/// return, Poisson object returns off the boundary-arc model and Poisson
/// clutter, amplitude-thresholded and shuffled.
std::vector<std::vector<Measurement>> generate_active_frame(
    const TruthStep& truth, int step, const Scenario& s, Rng& rng);

/// Passive measurements of one step for every ordered anchor pair; blockage
/// never applies to these.
std::vector<PassiveBucket> generate_passive_frame(const TruthStep& truth,
                                                  const Scenario& s, Rng& rng);

struct Dataset {
  GroundTruth truth;
  std::vector<MeasurementFrame> frames;

  std::size_t measurement_count() const;
};

Dataset simulate(const Scenario& s);
Dataset simulate(const Scenario& s, std::uint64_t seed);

}  // namespace eotrack
