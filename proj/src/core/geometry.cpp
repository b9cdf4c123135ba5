#include "core/geometry.hpp"

#include <stdexcept>

namespace eotrack {

namespace {
constexpr double kCoincidentSq = 1e-24;
}

double aspect_angle(const Vec2& center, const Anchor& anchor, AspectSign sign) {
  const Vec2 d = anchor.position - center;
  if (d.squaredNorm() < kCoincidentSq) {
    throw std::invalid_argument(
        "degenerate geometry: object center coincides with anchor " +
        std::to_string(anchor.id));
  }
  const double facing = std::atan2(d.y(), d.x());
  return sign == AspectSign::Facing ? facing : wrap_angle(facing + kPi);
}

Vec2 ellipse_center(const Vec2& center, double radius, double aspect) {
  return center + radius * Vec2(std::cos(aspect), std::sin(aspect));
}

double semi_major_axis(double radius, double opening_angle) {
  return radius * std::sin(0.5 * opening_angle);
}

double ellipse_orientation(double aspect) {
  return wrap_angle(aspect + 0.5 * kPi);
}

ScatterEllipse build_ellipse(const Vec2& center, const ExtentGeo& extent,
                             const Anchor& anchor, double opening_angle,
                             AspectSign sign) {
  const double aspect = aspect_angle(center, anchor, sign);

  ScatterEllipse e;
  e.center = ellipse_center(center, extent.radius, aspect);
  e.orientation = ellipse_orientation(aspect);
  e.semi_major = semi_major_axis(extent.radius, opening_angle);
  e.semi_minor = extent.width;
  if (e.semi_major < e.semi_minor) {
    // Tiny radius against a large width: swap axes and rotate a quarter
    // turn; the covariance is unchanged and l >= w keeps holding.
    std::swap(e.semi_major, e.semi_minor);
    e.orientation = wrap_angle(e.orientation + 0.5 * kPi);
  }

  const double c = std::cos(e.orientation);
  const double s = std::sin(e.orientation);
  Mat2 rot;
  rot << c, -s, s, c;
  Mat2 axes = Mat2::Zero();
  axes(0, 0) = 0.25 * e.semi_major * e.semi_major;
  axes(1, 1) = 0.25 * e.semi_minor * e.semi_minor;
  e.cov = rot * axes * rot.transpose();
  return e;
}

Vec2 sample_geo_scatterer(const ScatterEllipse& ellipse, Rng& rng) {
  std::normal_distribution<double> n01;
  const double z1 = n01(rng);
  const double z2 = n01(rng);
  const double c = std::cos(ellipse.orientation);
  const double s = std::sin(ellipse.orientation);
  const Vec2 major(c, s);
  const Vec2 minor(-s, c);
  return ellipse.center + (0.5 * ellipse.semi_major * z1) * major +
         (0.5 * ellipse.semi_minor * z2) * minor;
}

Vec2 sample_ideal_scatterer(const Vec2& center, const ExtentIdeal& extent,
                            double aspect, double opening_angle, Rng& rng) {
  const double eta =
      aspect + draw_uniform(rng, -0.5 * opening_angle, 0.5 * opening_angle);
  const double ce = std::cos(eta);
  const double se = std::sin(eta);
  const double a = extent.semi_major;
  const double b = extent.semi_minor;
  // Boundary point of the ellipse at polar angle eta.
  const double rho = a * b / std::sqrt(b * b * ce * ce + a * a * se * se);
  const Vec2 q = center + rho * Vec2(ce, se);
  // Outward normal direction at that point.
  Vec2 normal(rho * ce / (a * a), rho * se / (b * b));
  normal.normalize();
  return q + draw_normal(rng, 0.5 * extent.width) * normal;
}

}  // namespace eotrack
