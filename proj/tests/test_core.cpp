#include <doctest.h>

#include "core/rng.hpp"
#include "core/types.hpp"

using namespace eotrack;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::abs(std::remainder(w - a, kTwoPi)) < 1e-12);
  }
}

TEST_CASE("bias angle normalized on construction") {
  const BiasState b(0.2, 5.0 * kPi / 2.0);
  CHECK(b.angle == doctest::Approx(0.5 * kPi));
}

TEST_CASE("device_position") {
  SUBCASE("zero bias collapses to center") {
    const KinematicState x{Vec2(0.0, 0.0), Vec2(1.0, 1.0)};
    const Vec2 m = device_position(x, BiasState(0.0, 1.234));
    CHECK(m.x() == doctest::Approx(0.0));
    CHECK(m.y() == doctest::Approx(0.0));
  }
  SUBCASE("unit offset along x") {
    const KinematicState x{Vec2(1.0, 2.0), Vec2(0.0, 0.0)};
    const Vec2 m = device_position(x, BiasState(1.0, 0.0));
    CHECK(m.x() == doctest::Approx(2.0));
    CHECK(m.y() == doctest::Approx(2.0));
  }
  SUBCASE("reference offset") {
    const KinematicState x{Vec2(0.0, 0.0), Vec2(0.0, 0.0)};
    const Vec2 m = device_position(x, BiasState(0.32, -kPi / 3.0));
    CHECK(m.x() == doctest::Approx(0.16).epsilon(1e-4));
    CHECK(m.y() == doctest::Approx(-0.27713).epsilon(1e-4));
  }
}

TEST_CASE("device offset distance equals bias range") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const KinematicState x{Vec2(draw_uniform(rng, -10, 10), draw_uniform(rng, -10, 10)),
                           Vec2(0.0, 0.0)};
    const BiasState b(draw_uniform(rng, 0.0, 2.0), draw_uniform(rng, -8.0, 8.0));
    const Vec2 m = device_position(x, b);
    CHECK(std::abs((m - x.position).norm() - b.range) < 1e-12);
  }
}

TEST_CASE("device_position is rotation-equivariant") {
  Rng rng(202);
  for (int i = 0; i < 100; ++i) {
    const KinematicState x{Vec2(draw_uniform(rng, -5, 5), draw_uniform(rng, -5, 5)),
                           Vec2(0.0, 0.0)};
    const BiasState b(draw_uniform(rng, 0.0, 1.0), draw_uniform(rng, -3.0, 3.0));
    const double psi = draw_uniform(rng, -3.0, 3.0);
    Mat2 rot;
    rot << std::cos(psi), -std::sin(psi), std::sin(psi), std::cos(psi);

    const KinematicState xr{rot * x.position, Vec2(0.0, 0.0)};
    const BiasState br(b.range, b.angle + psi);
    const Vec2 rotated_then_mapped = device_position(xr, br);
    const Vec2 mapped_then_rotated = rot * device_position(x, b);
    CHECK((rotated_then_mapped - mapped_then_rotated).norm() < 1e-12);
  }
}
