#include <catch_amalgamated.hpp>

#include "bergman/boundary.hpp"
#include "oracles.hpp"

using namespace bergman;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// ||K(., w)||^2 over the boundary of {|z1|^2 + |z2|^{2m} < 1}, parametrized by
// (|z1|, |z2|) = (cos phi, sin(phi)^{1/m}) and the two angles, with surface element
// |z1| |z2| |d(profile)/d phi| d phi d theta1 d theta2. Boundary points are pulled in
// by 1e-14 so the kernel evaluator accepts them.
double ellipsoid_boundary_oracle(const KernelEvaluator& k, int m, const Point& w, int nth1, int nth2) {
  auto profile = [&](double phi) {
    const double x = std::cos(phi), sp = std::sin(phi);
    const double y = std::pow(sp, 1.0 / m);
    const double dx = -sp, dy = std::pow(sp, 1.0 / m - 1.0) * std::cos(phi) / m;
    double sum = 0.0;
    for (int i = 0; i < nth1; ++i)
      for (int j = 0; j < nth2; ++j) {
        const Point z{std::polar(x * (1 - 1e-14), 2 * pi * i / nth1), std::polar(y * (1 - 1e-14), 2 * pi * j / nth2)};
        sum += std::norm(k.bergman(z, w));
      }
    return sum * (2 * pi / nth1) * (2 * pi / nth2) * x * y * std::hypot(dx, dy);
  };
  return oracle::tanh_sinh(profile, 0.0, pi / 2);
}

}  // namespace

TEST_CASE("disc boundary norm") {
  CHECK_THAT(boundary_norm_sq(Domain::disc(), {0.0}).value, WithinRel(2 / pi, 1e-14));
  for (double x : {0.25, 0.5, 0.9, 0.999}) {
    // 2 pi / pi^2 * sum (k+1)^2 x^{2k}
    const double ref = 2 * pi / (pi * pi) * oracle::squared_weight_series(x * x);
    CHECK_THAT(boundary_norm_sq(Domain::disc(), {x}).value, WithinRel(ref, 1e-11));
  }
}

TEST_CASE("ball boundary norm against the zonal series") {
  for (int n : {2, 3})
    for (double x : {0.0, 0.3, 0.8, 0.99}) {
      Point w(static_cast<std::size_t>(n), 0.0);
      w[0] = x;
      // |1 - <eta, w>|^2 is quadratic in eta, so a coarse atlas is exact; S^5 at the default resolution is slow
      const int res = n == 2 ? 16 : 8;
      CHECK_THAT(boundary_norm_sq(Domain::ball(n), w, res).value, WithinRel(oracle::ball_boundary_series(n, x), 1e-11));
    }
  // unitary invariance
  const double a = boundary_norm_sq(Domain::ball(2), {0.6, 0.0}).value;
  const double b = boundary_norm_sq(Domain::ball(2), {std::polar(0.6 / std::sqrt(2.0), 0.3), std::polar(0.6 / std::sqrt(2.0), -1.1)}).value;
  CHECK_THAT(b, WithinRel(a, 1e-12));
}

TEST_CASE("ellipsoid boundary norm against brute-force surface quadrature") {
  // the closed-form kernel is checked against its moment series in the kernel tests
  const KernelEvaluator closed(Domain::ellipsoid(2));
  const Point w{0.3, 0.4};
  const double ref = ellipsoid_boundary_oracle(closed, 2, w, 48, 48);
  CHECK_THAT(boundary_norm_sq(Domain::ellipsoid(2), w).value, WithinRel(ref, 1e-9));

  // nearer the boundary, with a finer rule in the second angle
  const Point v{0.2, 0.8};
  const double ref2 = ellipsoid_boundary_oracle(closed, 2, v, 24, 128);
  CHECK_THAT(boundary_norm_sq(Domain::ellipsoid(2), v).value, WithinRel(ref2, 1e-9));

  CHECK_THROWS_AS(boundary_norm_sq(Domain::polydisc(2), {0.0, 0.0}), UnsupportedDomain);
}

TEST_CASE("ratio_R closed forms") {
  CHECK_THAT(ratio_R(Domain::disc(), {0.0}).ratio, WithinRel(2.0, 1e-14));
  CHECK_THAT(ratio_R(Domain::disc(), {0.5}).ratio, WithinRel(5.0 / 3.0, 1e-13));
  for (double x : {0.25, 0.75, 0.99, 1 - 1e-6}) {
    const RatioReport r = ratio_R(Domain::disc(), {x});
    CHECK_THAT(r.ratio, WithinRel(2 * (1 + x * x) / (1 + x), 1e-8));
    CHECK(r.pass_upper);
    CHECK_THAT(r.upper_bound, WithinRel(4 * std::numbers::e + 1, 1e-15));
  }
}

TEST_CASE("theorem1 sweeps") {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto disc = theorem1_sweep(Domain::disc(), {1.0}, deltas);
  // 2(1 + x^2)/(1 + x) rises to 2 as x -> 1
  for (std::size_t i = 1; i < disc.size(); ++i) CHECK(disc[i].ratio > disc[i - 1].ratio);
  CHECK_THAT(disc.back().ratio, WithinAbs(2.0, 1e-5));

  for (const auto& r : theorem1_sweep(Domain::ball(2), {1.0, 0.0}, deltas)) {
    CHECK(r.ratio <= 8 * std::numbers::e + 1);
    CHECK(r.pass_upper);
    // the series needs ~40/delta terms, so it is only summed down to 1e-4
    if (r.delta_w >= 1e-4) CHECK_THAT(r.boundary_norm_sq, WithinRel(oracle::ball_boundary_series(2, std::abs(r.w[0])), 1e-10));
  }

  const auto ell = theorem1_sweep(Domain::ellipsoid(2), {0.0, 1.0}, {1e-1, 1e-2, 1e-3, 1e-4});
  for (const auto& r : ell) {
    CHECK(r.pass_upper);
    CHECK(r.empirical_floor > 0.0);
    CHECK_THAT(r.delta_w, WithinRel(std::abs(r.delta_w), 1e-15));
  }
  CHECK_THAT(ell.back().delta_w, WithinRel(1e-4, 1e-9));
}

TEST_CASE("floor stability") {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  const auto a = theorem1_sweep(Domain::ellipsoid(2), {0.0, 1.0}, deltas, 16);
  const auto b = theorem1_sweep(Domain::ellipsoid(2), {0.0, 1.0}, deltas, 32);
  const VerificationReport v = floor_stability(Domain::ellipsoid(2), a, b, 16);
  CHECK(v.pass);
  CHECK(v.lhs < 1e-6);
}

TEST_CASE("Szego to Bergman ratio") {
  const VerificationReport a = szego_bergman_ratio(Domain::disc(), {0.0});
  CHECK_THAT(a.lhs, WithinRel(0.5, 1e-15));
  CHECK_THAT(a.rhs, WithinRel(1 / (4 * std::numbers::e + 1), 1e-15));
  for (double x : {0.3, 0.9, 1 - 1e-6}) {
    const VerificationReport r = szego_bergman_ratio(Domain::disc(), {x});
    CHECK_THAT(r.lhs, WithinRel((1 - x * x) / 2, 1e-10));
    CHECK(r.pass);
  }
  // ball(2): S/K = (1/(2 pi^2)) (1-x^2)^{-2} / ((2/pi^2) (1-x^2)^{-3}) = (1 - x^2) / 4
  for (double x : {0.0, 0.5, 0.999}) {
    const VerificationReport r = szego_bergman_ratio(Domain::ball(2), {x, 0.0});
    CHECK_THAT(r.lhs, WithinRel((1 - x * x) / 4, 1e-10));
    CHECK(r.pass);
  }
}

TEST_CASE("Hardy limit") {
  const HardyLimit c = hardy_constant_limit();
  for (std::size_t i = 0; i < c.eps.size(); ++i) CHECK_THAT(c.values[i], WithinRel(2 * pi / (1 + c.eps[i]), 1e-12));
  CHECK_THAT(c.extrapolated, WithinRel(2 * pi, 1e-8));

  const HardyLimit h0 = hardy_kernel_limit(0.0);
  CHECK_THAT(h0.boundary, WithinRel(2 / pi, 1e-14));
  CHECK_THAT(h0.extrapolated, WithinRel(2 / pi, 1e-4));
  const HardyLimit h5 = hardy_kernel_limit(0.5);
  CHECK_THAT(h5.boundary, WithinRel(2 * 1.25 / (pi * std::pow(0.75, 3)), 1e-13));
  CHECK_THAT(h5.extrapolated, WithinRel(h5.boundary, 1e-4));
  CHECK(h5.increasing);
  // one weighted value against an adaptive integral
  const double r = 0.9;
  const double ref = (1 - r) * oracle::left_singular(
                                   [&](double sg) {
                                     const double rho = 1 - sg, u = rho * rho * 0.25;
                                     return 2 * (1 + u) / (pi * std::pow(1 - u, 3)) * rho;
                                   },
                                   -r);
  CHECK_THAT(h5.values[0], WithinRel(ref, 1e-10));
  CHECK(hardy_identity_check(0.9).pass);
}

TEST_CASE("Neville extrapolation is exact on polynomials") {
  const std::vector<double> x{0.1, 0.01, 0.001, 1e-4};
  std::vector<double> y;
  for (double v : x) y.push_back(3 - 2 * v + 5 * v * v);
  CHECK_THAT(neville_at_zero(x, y).first, WithinAbs(3.0, 1e-12));
}

TEST_CASE("infimum constant") {
  const Infimum a = infimum_constant(1);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK_THAT(std::exp(a.t_closed), WithinRel(phi, 1e-15));
  CHECK_THAT(a.value, WithinRel(std::pow(phi, 5), 1e-10));
  CHECK_THAT(a.value, WithinRel(11.0902, 1e-5));
  CHECK_THAT(a.t_star, WithinAbs(a.t_closed, 1e-7));
  CHECK(a.value < 4 * std::numbers::e + 1);
  CHECK(infimum_constant(2).value < 8 * std::numbers::e + 1);
  // value / (4en) decreases toward 1
  double prev = 1e300;
  for (int n = 1; n <= 50; ++n) {
    const Infimum m = infimum_constant(n);
    CHECK_THAT(m.value, WithinRel(m.value_closed, 1e-10));
    const double q = m.value / (4 * std::numbers::e * n);
    CHECK(q > 1.0);
    CHECK(q < prev);
    prev = q;
  }
  CHECK(prev < 1 + 1 / (4 * std::numbers::e * 50));
  for (const auto& r : infimum_reports(3)) CHECK(r.pass);
}
