#include "core/motion.hpp"

namespace eotrack {

KinematicState sample_kinematic(const KinematicState& x,
                                const MotionParams& params, Rng& rng) {
  const Vec2 accel(draw_normal(rng, params.accel_std),
                   draw_normal(rng, params.accel_std));
  KinematicState out;
  out.position =
      x.position + params.dt * x.velocity + 0.5 * params.dt * params.dt * accel;
  out.velocity = x.velocity + params.dt * accel;
  return out;
}

BiasState sample_bias(const BiasState& b, const MotionParams& params,
                      Rng& rng) {
  const double range =
      reflect_at_floor(b.range + draw_normal(rng, params.bias_range_walk_std));
  const double angle = b.angle + draw_normal(rng, params.bias_angle_walk_std);
  return BiasState(range, angle);
}

ExtentGeo sample_extent(const ExtentGeo& x, const MotionParams& params,
                        Rng& rng) {
  ExtentGeo out;
  out.radius =
      reflect_at_floor(x.radius + draw_normal(rng, params.radius_walk_std));
  out.width =
      reflect_at_floor(x.width + draw_normal(rng, params.width_walk_std));
  return out;
}

AugmentedState sample_prior(const Vec2& position_hint,
                            const PriorParams& params, Rng& rng) {
  AugmentedState y;
  y.kin.position =
      position_hint + Vec2(draw_uniform(rng, -params.position_halfwidth,
                                        params.position_halfwidth),
                           draw_uniform(rng, -params.position_halfwidth,
                                        params.position_halfwidth));
  y.kin.velocity = Vec2(draw_normal(rng, params.velocity_std),
                        draw_normal(rng, params.velocity_std));
  y.bias = BiasState(draw_uniform(rng, 0.0, params.bias_range_max),
                     draw_uniform(rng, -kPi, kPi));
  y.extent.radius = draw_uniform(rng, params.radius_min, params.radius_max);
  y.extent.width = draw_uniform(rng, params.width_min, params.width_max);
  return y;
}

}  // namespace eotrack
