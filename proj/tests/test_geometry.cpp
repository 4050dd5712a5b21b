#include <catch_amalgamated.hpp>

#include <boost/math/tools/minima.hpp>

#include "bergman/geometry.hpp"
#include "oracles.hpp"

using namespace bergman;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("domain parsing and aliases") {
  CHECK(Domain::parse("disc") == Domain::disc());
  CHECK(Domain::parse("ball2") == Domain::ball(2));
  CHECK(Domain::parse("ball<3>") == Domain::ball(3));
  CHECK(Domain::parse("polydisc(2)") == Domain::polydisc(2));
  CHECK(Domain::parse("ellipsoid2").kind() == DomainKind::Ellipsoid);
  // Ball(1) is the disc, Ellipsoid(1) is Ball(2).
  CHECK(Domain::ball(1) == Domain::disc());
  CHECK(Domain::ellipsoid(1) == Domain::ball(2));
  CHECK_THROWS_AS(Domain::parse("sphere2"), PreconditionError);
  CHECK_THROWS_AS(Domain::ball(0), PreconditionError);
}

TEST_CASE("contains") {
  CHECK(contains(Domain::disc(), Point{0.0}));
  CHECK_FALSE(contains(Domain::ball(2), Point{0.8, 0.7}));
  CHECK(contains(Domain::ellipsoid(2), Point{0.5, 0.9}));
  CHECK_FALSE(contains(Domain::polydisc(2), Point{0.5, cplx(0.0, 1.0)}));
  CHECK_THROWS_AS(contains(Domain::ball(2), Point{0.1}), PreconditionError);
}

TEST_CASE("boundary_distance closed cases") {
  CHECK_THAT(boundary_distance(Domain::disc(), Point{0.0}), WithinAbs(1.0, 1e-15));
  CHECK_THAT(boundary_distance(Domain::ball(2), Point{0.3, 0.4}), WithinAbs(0.5, 1e-15));
  CHECK_THAT(boundary_distance(Domain::polydisc(2), Point{0.3, 0.6}), WithinAbs(0.4, 1e-15));
  CHECK_THROWS_AS(boundary_distance(Domain::disc(), Point{1.0}), PreconditionError);
}

namespace {

// Distance from (X, Y) to the profile x^2 + y^{2m} = 1 in the real quarter plane:
// dense sampling of the boundary, then Brent refinement around the best sample.
double profile_distance_oracle(int m, double X, double Y) {
  auto dist = [&](double th) {
    // parametrize the profile by the angle of (x, y^m) on the unit circle
    const double x = std::cos(th), y = std::pow(std::sin(th), 1.0 / m);
    return std::hypot(x - X, y - Y);
  };
  const int N = 200000;
  double best = 1e300;
  int ib = 0;
  for (int i = 0; i <= N; ++i) {
    const double v = dist(0.5 * oracle::pi * i / N);
    if (v < best) best = v, ib = i;
  }
  const double h = 0.5 * oracle::pi / N;
  const auto r = boost::math::tools::brent_find_minima(dist, std::max(0.0, (ib - 2) * h), std::min(0.5 * oracle::pi, (ib + 2) * h), 52);
  return r.second;
}

}  // namespace

TEST_CASE("ellipsoid boundary_distance against dense sampling") {
  const Domain e = Domain::ellipsoid(2);
  for (auto [x, y] : {std::pair{0.0, 0.5}, {0.5, 0.5}, {0.9, 0.1}, {0.2, 0.95}, {0.0, 0.999}, {0.7, 0.7}}) {
    const double got = boundary_distance(e, Point{x, y});
    CHECK_THAT(got, WithinAbs(profile_distance_oracle(2, x, y), 1e-12));
  }
  // the distance only depends on the moduli
  CHECK_THAT(boundary_distance(e, Point{std::polar(0.5, 1.0), std::polar(0.5, -2.0)}),
             WithinAbs(boundary_distance(e, Point{0.5, 0.5}), 1e-14));
  // m = 3 as well
  CHECK_THAT(boundary_distance(Domain::ellipsoid(3), Point{0.3, 0.8}), WithinAbs(profile_distance_oracle(3, 0.3, 0.8), 1e-12));
}

TEST_CASE("nearest point satisfies the Lagrange condition") {
  // At the nearest point P of x^2 + y^{2m} = 1, (X, Y) - P is parallel to the normal (2x, 2m y^{2m-1}).
  const int m = 2;
  const double X = 0.0, Y = 0.5;
  const ProfilePoint p = ellipsoid_profile_nearest(m, X, Y);
  const double nx = 2 * p.x, ny = 2 * m * std::pow(p.y, 2 * m - 1);
  const double cross = (X - p.x) * ny - (Y - p.y) * nx;
  CHECK(std::abs(cross) < 1e-12);
  CHECK_THAT(p.x * p.x + std::pow(p.y, 2 * m), WithinAbs(1.0, 1e-13));
}

TEST_CASE("boundary_atlas total areas") {
  CHECK_THAT(boundary_atlas(Domain::disc(), 8).total_area, WithinAbs(2 * pi, 1e-12));
  CHECK_THAT(boundary_atlas(Domain::ball(2), 64).total_area, WithinAbs(2 * pi * pi, 1e-10));
  // Integrating 1 reproduces the stored area.
  const auto ball = boundary_atlas(Domain::ball(2), 16);
  CHECK_THAT(ball.integrate([](const Point&) { return 1.0; }), WithinRel(2 * pi * pi, 1e-12));
  // Ellipsoid |z1|^2 + |z2|^4 = 1: with |z2| = t, |z1| = sqrt(1 - t^4) and two free angles,
  // area = 4 pi^2 int_0^1 t sqrt(1 - t^4 + 4 t^6) dt.
  const double ref = 4 * pi * pi * oracle::tanh_sinh([](double t) { return t * std::sqrt(1 - std::pow(t, 4) + 4 * std::pow(t, 6)); }, 0, 1);
  const double a32 = boundary_atlas(Domain::ellipsoid(2), 32).total_area;
  CHECK_THAT(a32, WithinRel(ref, 1e-12));
  CHECK(a32 > 2 * pi * pi);
}

TEST_CASE("chart images lie on the boundary") {
  for (const Domain& d : {Domain::disc(), Domain::ball(2), Domain::ball(3), Domain::ellipsoid(2), Domain::ellipsoid(3)}) {
    const auto atlas = boundary_atlas(d, 8);
    double worst = 0.0;
    for (const auto& c : atlas.charts)
      quad::for_each_node(c.rule, [&](std::span<const double> p, double) { worst = std::max(worst, std::abs(d.defining(c.map(p)))); });
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("monomial moments") {
  CHECK_THAT(monomial_moment(Domain::disc(), {0}), WithinRel(pi, 1e-15));
  for (int k = 0; k < 6; ++k) CHECK_THAT(monomial_moment(Domain::disc(), {k}), WithinRel(pi / (k + 1), 1e-14));
  // Ball(2): pi^2 a! b! / (2 + a + b)!
  CHECK_THAT(monomial_moment(Domain::ball(2), {1, 2}), WithinRel(pi * pi * 2.0 / 120.0, 1e-14));
  CHECK_THAT(volume(Domain::ball(2)), WithinRel(pi * pi / 2, 1e-14));

  // Ellipsoid(m): iterated integral 2 pi int rho^{2k+1} pi (1 - rho^{2m})^{j+1} / (j+1) d rho.
  for (int m : {2, 3, 5})
    for (auto [j, k] : {std::pair{0, 0}, {1, 0}, {0, 3}, {4, 2}, {7, 9}}) {
      const double ref = oracle::tanh_sinh(
          [&](double rho) { return 2 * pi * std::pow(rho, 2 * k + 1) * pi * std::pow(1 - std::pow(rho, 2 * m), j + 1) / (j + 1); }, 0, 1);
      CHECK_THAT(monomial_moment(Domain::ellipsoid(m), {j, k}), WithinRel(ref, 1e-10));
    }
  CHECK_THROWS_AS(monomial_moment(Domain::disc(), {-1}), PreconditionError);
}

TEST_CASE("volume rule reproduces monomial moments") {
  for (const Domain& d : {Domain::disc(), Domain::ball(2), Domain::polydisc(2), Domain::ellipsoid(2)}) {
    const auto rule = volume_rule(d, 16, 16);
    const double vol = integrate_volume(rule, [](const Point&) { return 1.0; });
    CHECK_THAT(vol, WithinRel(volume(d), 1e-12));
    if (d.dim() == 2) {
      const double m = integrate_volume(rule, [](const Point& z) { return std::norm(z[0]) * std::pow(std::norm(z[1]), 2); });
      CHECK_THAT(m, WithinRel(monomial_moment(d, {1, 2}), 1e-11));
    }
  }
}
