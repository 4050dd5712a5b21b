#include <catch_amalgamated.hpp>

#include "bergman/projection.hpp"
#include "oracles.hpp"

using namespace bergman;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double c0(const DiscFunction& f) { return std::abs(projection_coefficients(f).at(0)); }

radial::PowerTerm power_term(double p, std::function<double(double)> of_rho) {
  return {p, [of_rho](const radial::RadialPoint& q) { return cplx(of_rho(q.rho)); }};
}

}  // namespace

TEST_CASE("radial integrator") {
  // int_0^1 (-log rho)^a rho^{2k+1} d rho = Gamma(a+1) / (2k+2)^{a+1}
  for (double a : {-0.9, -0.5, 0.0, 0.3, 1.5})
    for (int k : {0, 1, 5}) {
      const auto v = radial::integrate_term(a, [k](const radial::RadialPoint& p) { return cplx(std::pow(p.rho, 2 * k)); });
      CHECK_THAT(v.value.real(), WithinRel(std::tgamma(a + 1) / std::pow(2.0 * k + 2, a + 1), 1e-12));
    }
  // (1 - rho)^{-0.6} carried as s^{-0.6} (s / (1 - rho))^{0.6}
  const auto w = WeightSpec::log_delta(0.6).exp_psi(1);
  const auto v = radial::integrate_term(w.power, w.smooth);
  // B(0.4, 2) = 1 / (0.4 * 1.4)
  CHECK_THAT(v.value.real(), WithinRel(1 / (0.4 * 1.4), 1e-12));
  CHECK_THAT(v.value.real(), WithinRel(oracle::left_singular([](double s) { return 1 - s; }, -0.6), 1e-12));
  CHECK_THROWS_AS(radial::integrate_term(-1.0, [](const radial::RadialPoint&) { return cplx(1.0); }), DivergenceError);
}

TEST_CASE("unweighted projection") {
  CHECK_THAT(c0(DiscFunction::constant(1.0)), WithinAbs(1.0, 1e-14));
  // radial rho^2: mean value (1/pi) int rho^2 dV = 1/2
  const DiscFunction rho2 = DiscFunction::radial_profile({{power_term(0.0, [](double r) { return r * r; })}, {}});
  CHECK_THAT(c0(rho2), WithinAbs(0.5, 1e-14));
  // (-log rho)^{1/2}: 2 int (-log rho)^{1/2} rho d rho = Gamma(3/2) / sqrt 2
  CHECK_THAT(c0(DiscFunction::log_power(0.5)), WithinRel(std::tgamma(1.5) / std::sqrt(2.0), 1e-13));
  const double ref = 2 * oracle::tanh_sinh([](double r) { return std::sqrt(-std::log(r)) * r; }, 0, 1);
  CHECK_THAT(c0(DiscFunction::log_power(0.5)), WithinRel(ref, 1e-12));
  // the anti-holomorphic part is killed
  DiscFunction f = DiscFunction::constant(2.0);
  f.modes[-1] = radial::Profile::monomial(1);
  CHECK(projection_coefficients(f).size() == 1);
}

TEST_CASE("weighted projection") {
  // flat weight reduces to the plain projection
  const DiscFunction f = DiscFunction::log_power(0.7);
  CHECK_THAT(std::abs(weighted_projection_coefficients(f, WeightSpec::flat()).at(0)), WithinRel(c0(f), 1e-14));
  // constants are fixed
  CHECK_THAT(std::abs(weighted_projection_coefficients(DiscFunction::constant(3.0), WeightSpec::loglog(0.4)).at(0)),
             WithinRel(3.0, 1e-13));
  // LogLog(0.5), f = z (-log rho): ratio of two radial integrals against (-log rho)^{1/2}
  DiscFunction g;
  g.modes[1] = {{power_term(1.0, [](double r) { return r; })}, {}};
  const cplx c = weighted_projection_coefficients(g, WeightSpec::loglog(0.5)).at(1);
  const double num = oracle::tanh_sinh([](double r) { return r * r * r * std::pow(-std::log(r), 1.5); }, 0, 1);
  const double den = oracle::tanh_sinh([](double r) { return r * r * r * std::pow(-std::log(r), 0.5); }, 0, 1);
  CHECK_THAT(c.real(), WithinRel(num / den, 1e-12));
  CHECK_THAT(c.real(), WithinRel(0.375, 1e-12));
}

TEST_CASE("weight specs") {
  for (const auto& w : {WeightSpec::loglog(0.3), WeightSpec::log_delta(0.6), WeightSpec::df_index(0.5, 1.0, HDescriptor::Delta),
                        WeightSpec::df_index(0.5, 1.0, HDescriptor::LogModulus)}) {
    CHECK_FALSE(w.curvature_certificate().empty());
    CHECK_FALSE(w.density().empty());
    CHECK(w.r > 0.0);
    CHECK(w.r < 1.0);
  }
  CHECK_THAT(WeightSpec::df_index(0.5, 1.0, HDescriptor::Delta).r, WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(WeightSpec::loglog(1.0), PreconditionError);
  CHECK_THROWS_AS(WeightSpec::df_index(0.6, 0.5, HDescriptor::Delta), PreconditionError);
}

TEST_CASE("weighted ratio") {
  // holomorphic f: ratio 1
  CHECK_THAT(weighted_ratio(DiscFunction::holomorphic({{0, 1.0}, {3, cplx(0, 2)}}), WeightSpec::loglog(0.3)), WithinRel(1.0, 1e-13));

  // f = rho^2 s^{0.7} + e^{i theta} rho s^{0.2}, psi = -0.6 log(1 - rho): every
  // piece of the ratio as a 1-D integral.
  DiscFunction f;
  f.modes[0] = {{power_term(0.7, [](double r) { return r * r; })}, {}};
  f.modes[1] = {{power_term(0.2, [](double r) { return r; })}, {}};
  auto s = [](double r) { return -std::log(r); };
  const double a0 = 2 * oracle::tanh_sinh([&](double r) { return r * r * std::pow(s(r), 0.7) * r; }, 0, 1);
  const double a1 = 4 * oracle::tanh_sinh([&](double r) { return r * std::pow(s(r), 0.2) * r * r; }, 0, 1);
  // the weight (1 - r)^{-0.6} is carried by left_singular in sigma = 1 - r
  const double num = oracle::left_singular([&](double sg) { const double r = 1 - sg; return (a0 * a0 + a1 * a1 * r * r) * r; }, -0.6);
  const double den = oracle::left_singular(
      [&](double sg) {
        const double r = 1 - sg, l = -std::log1p(-sg);
        return (std::pow(r, 4) * std::pow(l, 1.4) + r * r * std::pow(l, 0.4)) * r;
      },
      -0.6);
  CHECK_THAT(weighted_ratio(f, WeightSpec::log_delta(0.6)), WithinRel(num / den, 1e-10));
}

TEST_CASE("sharp example") {
  CHECK_THAT(sharp_example_closed_form(0.5), WithinRel(pi / 2, 1e-15));
  CHECK_THAT(sharp_example_closed_form(1e-4), WithinAbs(1.0, 1e-7));
  CHECK_THAT(sharp_example_closed_form(0.9), WithinRel(9.14976, 1e-5));
  for (double r = 0.1; r < 0.95; r += 0.1) {
    const double q = sharp_example_ratio(r);
    CHECK_THAT(q, WithinRel(pi * r / std::sin(pi * r), 1e-6));
    CHECK(q <= 1 / (1 - r) + 1e-9);
  }
  for (const auto& rep : sharp_example_reports(0.5)) CHECK(rep.pass);
}

TEST_CASE("Blocki constants") {
  const BlockiValues a = blocki_values(0.2);
  CHECK_THAT(a.improved, WithinRel(1 / 0.75, 1e-14));
  CHECK_THAT(a.general, WithinRel(1.25, 1e-14));
  // At r = 0.2 the improved constant is the larger one.
  CHECK(a.improved > a.general);
  const BlockiValues b = blocki_values(0.1);
  CHECK_THAT(b.lower, WithinRel(0.1 * pi / std::sin(0.1 * pi), 1e-15));
  CHECK(b.lower < b.general);
  CHECK(b.lower < b.improved);
  CHECK(b.improved < b.general);  // 0.1 < 3 - 2 sqrt 2
  CHECK(std::isinf(blocki_values(0.5).improved));
  const auto reps = blocki_remark_check({0.1, 0.2, 0.5});
  REQUIRE(reps.size() == 5);
  CHECK(reps[0].pass);
  CHECK(reps[1].pass);
  CHECK_FALSE(reps[3].pass);  // sharper at r = 0.2
  CHECK(reps[4].pass);
}

TEST_CASE("Kohn decomposition") {
  CHECK(kohn_orthogonality_residual(DiscFunction::holomorphic({{0, 1.0}, {2, 0.5}}), WeightSpec::loglog(0.3)) <= 1e-12);
  CHECK(kohn_orthogonality_residual(DiscFunction::log_power(0.5), WeightSpec::loglog(0.5)) <= 1e-8);
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const DiscFunction f = random_disc_function(rng);
    for (const auto& w : {WeightSpec::loglog(0.3), WeightSpec::log_delta(0.6)}) {
      const KohnResult k = kohn_decomposition(f, w);
      CHECK(k.residual <= 1e-8);
      CHECK(k.pythagoras <= 1e-8);
      CHECK(weighted_ratio(f, w) <= 1 / (1 - w.r) + 1e-9);
    }
  }
}

TEST_CASE("Hardy weight ratio") {
  CHECK_THAT(hardy_weight_ratio(DiscFunction::constant(1.0), 0.9), WithinRel(0.1, 1e-12));
  CHECK(hardy_weight_ratio(DiscFunction::holomorphic({{2, 1.0}}), 0.99) <= 1.0);
  std::map<int, cplx> k;
  for (int j = 0; j <= 60; ++j) k[j] = (j + 1) * std::pow(0.9, j) / pi;
  CHECK(hardy_weight_ratio(DiscFunction::holomorphic(k), 0.9) <= 1.0);
  DiscFunction f = DiscFunction::disc_indicator(0.5, 1.0);
  CHECK(hardy_weight_ratio(f, 0.5) <= 1.0);
}

TEST_CASE("sublevel Hardy inequality against adaptive integrals") {
  const double x = 0.5, t = 1.0, r = 0.9;
  const SublevelHardy h = sublevel_hardy(x, t, r);
  const double lhs = (1 - r) * oracle::left_singular(
                                   [&](double sg) {
                                     const double rho = 1 - sg, u = rho * rho * x * x;
                                     return 2 * (1 + u) / (pi * std::pow(1 - u, 3)) * rho;
                                   },
                                   -r);
  CHECK_THAT(h.lhs, WithinRel(lhs, 1e-10));
  const SublevelShape s = sublevel_shape({x}, t);
  const cplx c = s.center[0];
  const double R = s.r_parallel;
  const double rhs = oracle::kronrod(
      [&](double rr) {
        return rr * oracle::kronrod(
                        [&](double th) {
                          const cplx z = c + std::polar(rr, th);
                          const cplx q = R * R - (z - c) * std::conj(cplx(x) - c);
                          const double k = R * R / (pi * std::norm(q));
                          return k * k * std::pow(1 - std::abs(z), -r);
                        },
                        0, 2 * pi);
      },
      0, R);
  CHECK_THAT(h.rhs, WithinRel(rhs, 1e-9));
  CHECK(h.lhs <= h.rhs);
}

TEST_CASE("weighted L^q corpus") {
  CHECK(df_lq_check(0.5, 2.0, 42).pass);
  CHECK(df_lq_check(0.5, 2.2, 42).pass);
  CHECK_THROWS_AS(df_lq_check(0.5, 3.0, 42), PreconditionError);
}
