#include <catch_amalgamated.hpp>

#include "bergman/kernel.hpp"
#include "bergman/rng.hpp"
#include "oracles.hpp"

using namespace bergman;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Point random_point(Rng& rng, const Domain& d, double rmax) {
  Point z(static_cast<std::size_t>(d.dim()));
  for (;;) {
    for (auto& c : z) c = rmax * rng.complex_unit_square();
    if (norm(z) <= rmax && contains(d, z)) return z;
  }
}

}  // namespace

TEST_CASE("kernel values at the origin") {
  CHECK_THAT(bergman_eval(KernelEvaluator(Domain::disc()), {0.0}, {0.0}).real(), WithinRel(1 / pi, 1e-15));
  CHECK_THAT(bergman_eval(KernelEvaluator(Domain::ball(2)), {0.0, 0.0}, {0.0, 0.0}).real(), WithinRel(2 / (pi * pi), 1e-15));
  // Complete Reinhardt domains: K(0, 0) = 1 / Vol.
  const Domain e = Domain::ellipsoid(2);
  CHECK_THAT(kernel_diag(KernelEvaluator(e), {0.0, 0.0}), WithinRel(1 / volume(e), 1e-14));
  CHECK_THAT(kernel_diag(KernelEvaluator(Domain::polydisc(2)), {0.0, 0.0}), WithinRel(1 / (pi * pi), 1e-15));
}

TEST_CASE("disc kernel against the power series") {
  CHECK_THAT(bergman_eval(KernelEvaluator(Domain::disc()), {0.5}, {0.5}).real(), WithinRel(oracle::disc_kernel_series(0.25), 1e-14));
  CHECK_THAT(bergman_eval(KernelEvaluator(Domain::disc()), {0.5}, {0.5}).real(), WithinRel(1 / (pi * 0.5625), 1e-15));
  CHECK_THAT(kernel_diag(KernelEvaluator(Domain::disc()), {0.9}), WithinRel(oracle::disc_kernel_series(0.81), 1e-13));
  CHECK_THAT(kernel_diag(KernelEvaluator(Domain::disc()), {0.9}), WithinRel(1 / (pi * 0.0361), 1e-14));
}

TEST_CASE("ball kernel against the zonal series") {
  Rng rng(7);
  for (int n : {2, 3}) {
    const Domain b = Domain::ball(n);
    const KernelEvaluator k(b);
    for (int i = 0; i < 20; ++i) {
      const Point z = random_point(rng, b, 0.9), w = random_point(rng, b, 0.9);
      const cplx ref = oracle::ball_kernel_series(n, inner(z, w));
      CHECK(std::abs(k.bergman(z, w) - ref) <= 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("Hermitian symmetry and positivity") {
  Rng rng(11);
  for (const Domain& d : {Domain::disc(), Domain::ball(2), Domain::polydisc(2), Domain::ellipsoid(2), Domain::ellipsoid(3)}) {
    const KernelEvaluator k(d);
    const KernelEvaluator s(d, KernelMode::MomentSeries);
    for (int i = 0; i < 10; ++i) {
      const Point z = random_point(rng, d, 0.9), w = random_point(rng, d, 0.9);
      CHECK(k.bergman(z, w) == std::conj(k.bergman(w, z)));
      CHECK(std::abs(s.bergman(z, w) - std::conj(s.bergman(w, z))) <= 1e-13 * std::abs(s.bergman(z, w)));
      CHECK(k.diag(w) > 0.0);
    }
  }
}

TEST_CASE("moment series agrees with the closed forms") {
  Rng rng(3);
  for (const Domain& d : {Domain::disc(), Domain::ball(2), Domain::polydisc(2), Domain::ellipsoid(2), Domain::ellipsoid(3)}) {
    const KernelEvaluator k(d);
    const KernelEvaluator s(d, KernelMode::MomentSeries);
    for (int i = 0; i < 10; ++i) {
      const Point z = random_point(rng, d, 0.95), w = random_point(rng, d, 0.95);
      const cplx a = k.bergman(z, w), b = s.bergman(z, w);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("series refuses points it cannot certify") {
  const KernelEvaluator s(Domain::ellipsoid(2), KernelMode::MomentSeries, 1e-14, 50);
  CHECK_THROWS_AS(s.bergman({0.0, 0.999}, {0.0, 0.999}), KernelTailError);
  CHECK_THROWS_AS(KernelEvaluator(Domain::disc()).bergman({1.0}, {0.0}), PreconditionError);
}

TEST_CASE("reproducing property") {
  CHECK(reproduce_check(KernelEvaluator(Domain::disc()), HolomorphicPolynomial::constant(1.0, 1), {0.0}, 16) <= 1e-10);
  CHECK(reproduce_check(KernelEvaluator(Domain::disc()), HolomorphicPolynomial::monomial({3}), {0.4}, 32) <= 1e-9);
  CHECK(reproduce_check(KernelEvaluator(Domain::ball(2)), HolomorphicPolynomial::monomial({1, 2}), {0.2, 0.3}, 32) <= 1e-8);
  CHECK(reproduce_check(KernelEvaluator(Domain::ellipsoid(2)), HolomorphicPolynomial::monomial({2, 1}), {0.3, 0.2}, 32) <= 1e-8);
  CHECK(reproduce_check(KernelEvaluator(Domain::polydisc(2)), HolomorphicPolynomial::monomial({1, 1}, cplx(0, 2)), {0.3, 0.2}, 32) <= 1e-8);
}

TEST_CASE("Szego kernel") {
  CHECK_THAT(szego_eval(Domain::disc(), {0.0}, {0.0}).real(), WithinRel(1 / (2 * pi), 1e-15));
  CHECK_THAT(szego_eval(Domain::ball(2), {0.0, 0.0}, {0.0, 0.0}).real(), WithinRel(1 / (2 * pi * pi), 1e-15));
  // Geometric series sum_k x^{2k} / (2 pi) at x = 0.5.
  double s = 0.0;
  for (int k = 0; k < 200; ++k) s += std::pow(0.25, k);
  CHECK_THAT(szego_eval(Domain::disc(), {0.5}, {0.5}).real(), WithinRel(s / (2 * pi), 1e-14));
  CHECK_THAT(szego_diag(Domain::disc(), {0.5}), WithinRel(1 / (2 * pi * 0.75), 1e-15));
  CHECK_THAT(szego_diag(Domain::ball(2), {0.6, 0.0}), WithinRel(szego_eval(Domain::ball(2), {0.6, 0.0}, {0.6, 0.0}).real(), 1e-14));
  CHECK_THROWS_AS(szego_eval(Domain::ellipsoid(2), {0.0, 0.0}, {0.0, 0.0}), UnsupportedDomain);
}
