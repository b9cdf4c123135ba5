#pragma once

#include "core/rng.hpp"
#include "core/types.hpp"

namespace eotrack {

/// Which side of the object the scattering ellipse sits on. `Facing` places
/// it on the surface toward the receiving anchor (the physical reflection
/// side); `Literal` on the opposite side.
enum class AspectSign { Facing, Literal };

/// Per-anchor Gaussian approximation of the scatterer distribution on the
/// object surface. Invariants: semi_major >= semi_minor > 0 and
/// cov = A(orientation) diag((l/2)^2, (w/2)^2) A(orientation)^T.
struct ScatterEllipse {
  Vec2 center{0.0, 0.0};    // chi [m]
  double orientation = 0.0; // theta [rad], in (-pi, pi]
  double semi_major = 0.0;  // l [m]
  double semi_minor = 0.0;  // w [m]
  Mat2 cov = Mat2::Zero();  // R [m^2]
};

/// Angle of the direction from the object center toward the anchor
/// (`Facing`), or the reverse direction (`Literal`). Throws
/// std::invalid_argument when the points coincide.
double aspect_angle(const Vec2& center, const Anchor& anchor,
                    AspectSign sign = AspectSign::Facing);

/// Point at distance `radius` from `center` in direction `aspect`.
Vec2 ellipse_center(const Vec2& center, double radius, double aspect);

/// Semi-major axis of the scattering ellipse: the half-chord of the circular
/// arc subtending the opening angle.
double semi_major_axis(double radius, double opening_angle);

/// Tangent direction of the circle at the aspect angle, in (-pi, pi].
double ellipse_orientation(double aspect);

ScatterEllipse build_ellipse(const Vec2& center, const ExtentGeo& extent,
                             const Anchor& anchor, double opening_angle,
                             AspectSign sign = AspectSign::Facing);

/// Gaussian scatterer draw: center + zero-mean noise with covariance `cov`.
Vec2 sample_geo_scatterer(const ScatterEllipse& ellipse, Rng& rng);

/// Scatterer draw from the boundary-arc model: a point on the object
/// ellipse boundary, uniform in polar angle over the sector of width
/// `opening_angle` centered on `aspect`, jittered along the outward normal
/// with standard deviation width/2.
Vec2 sample_ideal_scatterer(const Vec2& center, const ExtentIdeal& extent,
                            double aspect, double opening_angle, Rng& rng);

}  // namespace eotrack
