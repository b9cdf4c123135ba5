#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/likelihoods.hpp"
#include "core/synthesis.hpp"

namespace eotrack {

/// Tracking method variants.
///  - GeoExtended:   active LOS + passive circle/ellipse scattering model
///  - IdealExtended: active LOS + passive Monte-Carlo boundary-arc model
///  - ActiveOnly:    active LOS only, passive frames ignored
///  - PointTarget:   passive model collapsed to the device point, extent frozen
enum class Method {
  GeoExtended = 0,
  IdealExtended = 1,
  ActiveOnly = 2,
  PointTarget = 3,
};

const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
/// Parses a comma-separated list; throws std::invalid_argument on unknown
/// names, deduplicates while preserving order.
std::vector<Method> parse_method_list(std::string_view csv);

struct ParticleSet {
  std::vector<AugmentedState> states;
  std::vector<double> weights;  // normalized, sum 1

  std::size_t size() const { return states.size(); }
};

struct TrackerConfig {
  Method method = Method::GeoExtended;
  int particle_count = 1000;
  int ideal_samples = 50;
  double ess_threshold = 0.5;
  double mu_los = 1.0;
  std::uint64_t seed = 1;
};

struct StepEstimate {
  int step = 0;
  AugmentedState state;
  Vec2 device{0.0, 0.0};
  double ess = 0.0;
  double seconds = 0.0;
};

struct TrackOutput {
  std::vector<StepEstimate> steps;
  std::vector<int> degeneracy_steps;  // steps where weights were reset
};

double effective_sample_size(const ParticleSet& ps);

ParticleSet init_particles(const Vec2& position_hint, const PriorParams& prior,
                           const TrackerConfig& cfg, Rng& rng);

/// Propagates every particle through the transition models; weights are
/// untouched. PointTarget keeps the extent frozen.
void predict(ParticleSet& ps, const MotionParams& motion,
             const TrackerConfig& cfg, Rng& rng);

/// Multiplies each particle weight by the product of per-measurement
/// association factors (1 + ratio) of the frame, in the log domain, and
/// renormalizes. Returns false when the weights had to be reset to uniform
/// (degenerate update).
bool update(ParticleSet& ps, const MeasurementFrame& frame, const Scenario& s,
            const TrackerConfig& cfg, Rng& rng);

void systematic_resample(ParticleSet& ps, Rng& rng);

/// Resamples when ESS < threshold * I; returns true if resampled.
bool maybe_resample(ParticleSet& ps, double ess_threshold, Rng& rng);

/// Weighted posterior mean; the bias angle is averaged circularly.
AugmentedState mmse_estimate(const ParticleSet& ps);

TrackOutput run_filter(const Dataset& ds, const Scenario& s,
                       const TrackerConfig& cfg);

}  // namespace eotrack
