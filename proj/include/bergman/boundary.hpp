#pragma once

// Boundary L^2 norms of K(., w), the ratio delta(w) ||K(., w)||^2_{L^2(bd)} / K(w, w),
// the Szego / Bergman diagonal comparison, the limit (1-r) int |u|^2 delta^{-r} -> boundary
// norm, and the constant inf_t (e^t+1) e^{2nt} / (e^t-1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/kernel.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/report.hpp"

namespace bergman {

// 4en + 1
inline double upper_constant(int n) { return 4.0 * std::numbers::e * n + 1.0; }

struct BoundaryNorm {
  double value = 0.0;  // int_{bd} |K(z, w)|^2 dsigma(z)
  double err = 0.0;    // |value(res) - value(2 res)|
};

namespace detail {

// Disc and balls: pulling back by the automorphism that exchanges 0 and w turns
// |K(z, w)|^2 dsigma(z) into c_n^2 |1 - <eta, w>|^2 / (1 - |w|^2)^{n+2} dsigma(eta),
// a polynomial in eta.
inline double ball_boundary_norm_sq(const Domain& d, const Point& w, int res) {
  const int n = d.dim();
  const double x = norm(w);
  const double cn = std::exp(std::lgamma(n + 1.0) - n * std::log(pi));
  const double scale = cn * cn * std::pow(one_minus_sq(x), -(n + 2));
  const BoundaryAtlas atlas = boundary_atlas(d, res);
  return scale * atlas.integrate([&](const Point& eta) { return std::norm(1.0 - inner(eta, w)); });
}

// sum_{j>=1} j^2 (j+m)^2 Q^{j-1}
inline double ellipsoid_shell_sum(double Q, double m) {
  const double omq = 1.0 - Q;
  const double s2 = (1.0 + Q) / (omq * omq * omq);
  const double s3 = (1.0 + 4.0 * Q + Q * Q) / (omq * omq * omq * omq);
  const double s4 = (1.0 + 11.0 * Q + 11.0 * Q * Q + Q * Q * Q) / (omq * omq * omq * omq * omq);
  return s4 + 2.0 * m * s3 + m * m * s2;
}

// Ellipsoid {|z1|^2 + |z2|^{2m} < 1}. With a = z1 conj(w1) and b = z2 conj(w2),
// K = (pi^2 m)^{-1} sum_k (k+1)(k+1+m) b^k (1-a)^{-2-(k+1)/m}, so the theta_2
// integral is a Parseval sum in closed form. The remaining profile and theta_1
// integrals use panels graded toward the point nearest to w.
inline double ellipsoid_boundary_norm_sq(int m, const Point& w, double delta, int per_panel) {
  const double A1 = std::abs(w[0]), A2 = std::abs(w[1]);
  const ProfilePoint near = ellipsoid_profile_nearest(m, A1, A2);
  const ProfileSplit split = profile_split(m);
  const double h0 = 0.5 * delta;
  const double c = 2.0 / (pi * pi * pi * m * m);
  const quad::Rule th = quad::graded_rule(0.0, pi, 0.0, h0, per_panel);

  auto theta_integral = [&](double x, double y) {
    return 2.0 * quad::integrate(th, [&](double t) {
      const double L = std::norm(1.0 - std::polar(x * A1, t));
      const double Lm = std::pow(L, -1.0 / m);
      const double Q = y * y * A2 * A2 * Lm;
      return c * Lm / (L * L) * ellipsoid_shell_sum(Q, m);
    });
  };
  const quad::Rule ra = quad::graded_rule(0.0, split.y_split, std::min(near.y, split.y_split), h0, per_panel);
  const double ia = quad::integrate(ra, [&](double y) {
    const Graph g = chart_a(m, y);
    return g.f * y * std::sqrt(1.0 + g.d1 * g.d1) * theta_integral(g.f, y);
  });
  const quad::Rule rb = quad::graded_rule(0.0, split.x_split, std::min(near.x, split.x_split), h0, per_panel);
  const double ib = quad::integrate(rb, [&](double x) {
    const Graph g = chart_b(m, x);
    return x * g.f * std::sqrt(1.0 + g.d1 * g.d1) * theta_integral(x, g.f);
  });
  return ia + ib;
}

}  // namespace detail

// int_{bd} |K(z, w)|^2 dsigma(z), evaluated at `resolution` and twice that; the
// finer value is returned and the difference is the error estimate.
inline BoundaryNorm boundary_norm_sq(const Domain& d, const Point& w, int resolution = 16) {
  if (!d.smooth_boundary()) throw UnsupportedDomain("boundary_norm_sq: " + d.name() + " has no C^2 boundary");
  d.check_dim(w);
  if (!contains(d, w)) throw PreconditionError("boundary_norm_sq: w is not interior to " + d.name());
  require(resolution >= 4, "boundary_norm_sq: resolution must be >= 4");
  double v1 = 0.0, v2 = 0.0;
  if (d.kind() == DomainKind::Ellipsoid) {
    const double delta = boundary_distance(d, w);
    v1 = detail::ellipsoid_boundary_norm_sq(d.param(), w, delta, resolution);
    v2 = detail::ellipsoid_boundary_norm_sq(d.param(), w, delta, 2 * resolution);
  } else {
    v1 = detail::ball_boundary_norm_sq(d, w, resolution);
    v2 = detail::ball_boundary_norm_sq(d, w, 2 * resolution);
  }
  const double diff = std::abs(v1 - v2);
  if (!(diff <= 1e-6 * std::abs(v2)))
    throw QuadratureError("boundary_norm_sq did not converge on " + d.name() + ": " + fmt17(v1) + " vs " + fmt17(v2));
  return {v2, diff};
}

// ---------------------------------------------------------------------------
// Ratio delta(w) ||K(., w)||^2 / K(w, w)

struct RatioReport {
  Point w;
  double delta_w = 0.0;
  double boundary_norm_sq = 0.0;
  double diag = 0.0;
  double ratio = 0.0;
  double upper_bound = 0.0;
  bool pass_upper = false;
  double empirical_floor = 0.0;  // running minimum over a sweep
  double err = 0.0;              // error of ratio from the boundary quadrature
};

inline RatioReport ratio_R(const Domain& d, const Point& w, int resolution = 16) {
  RatioReport r;
  r.w = w;
  r.delta_w = boundary_distance(d, w);
  const BoundaryNorm b = boundary_norm_sq(d, w, resolution);
  r.boundary_norm_sq = b.value;
  r.diag = KernelEvaluator(d).diag(w);
  r.ratio = r.delta_w * b.value / r.diag;
  r.err = r.delta_w * b.err / r.diag;
  r.upper_bound = upper_constant(d.dim());
  r.pass_upper = r.ratio <= r.upper_bound + 1e-9;
  r.empirical_floor = r.ratio;
  return r;
}

inline std::string point_string(const Point& w) {
  std::string s;
  for (const auto& c : w) {
    if (!s.empty()) s += ' ';
    s += fmt17(c.real());
    if (c.imag() != 0.0) s += (c.imag() < 0 ? "" : "+") + fmt17(c.imag()) + "i";
  }
  return s;
}

inline VerificationReport to_verification(const Domain& d, const RatioReport& r) {
  VerificationReport v = upper_bound_report("boundary_ratio.upper", d.name(), r.ratio, r.upper_bound, 1e-9, r.err);
  v.input("w", point_string(r.w)).input("delta_w", r.delta_w);
  return v;
}

// Point along the ray from 0 through `direction` at boundary distance delta.
inline Point point_at_distance(const Domain& d, const Point& direction, double delta) {
  d.check_dim(direction);
  require(delta > 0.0, "point_at_distance: delta must be positive");
  const double len = norm(direction);
  require(len > 0.0, "point_at_distance: zero direction");
  Point u = direction;
  for (auto& c : u) c /= len;
  if (d.kind() == DomainKind::UnitDisc || d.kind() == DomainKind::Ball) {
    require(delta < 1.0, "point_at_distance: delta must be < 1");
    for (auto& c : u) c *= 1.0 - delta;
    return u;
  }
  auto at = [&](double s) {
    Point p = u;
    for (auto& c : p) c *= s;
    return p;
  };
  // Boundary crossing of the ray, then bisection on the distance (decreasing along the ray).
  double lo = 0.0, hi = 1.0;
  while (contains(d, at(hi))) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (contains(d, at(mid)) ? lo : hi) = mid;
  }
  const double s_edge = lo;
  require(delta < boundary_distance(d, Point(static_cast<std::size_t>(d.dim()), cplx(0.0))), "point_at_distance: delta exceeds the inradius");
  lo = 0.0;
  hi = s_edge;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * s_edge; ++it) {
    const double mid = 0.5 * (lo + hi);
    (boundary_distance(d, at(mid)) > delta ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

// The default ray of a domain: along z_1 for disc and balls, toward (0, 1) for ellipsoids.
inline Point default_direction(const Domain& d) {
  Point u(static_cast<std::size_t>(d.dim()), 0.0);
  u[d.kind() == DomainKind::Ellipsoid ? 1 : 0] = 1.0;
  return u;
}

inline std::vector<RatioReport> theorem1_sweep(const Domain& d, const Point& direction, const std::vector<double>& deltas,
                                               int resolution = 16) {
  std::vector<RatioReport> out(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    out[i] = ratio_R(d, point_at_distance(d, direction, deltas[i]), resolution);
  });
  double floor = std::numeric_limits<double>::infinity();
  for (auto& r : out) {
    floor = std::min(floor, r.ratio);
    r.empirical_floor = floor;
  }
  return out;
}

// The smallest ratio over the sweep must be positive and move by less than 5%
// when the resolution doubles.
inline VerificationReport floor_stability(const Domain& d, const std::vector<RatioReport>& coarse,
                                          const std::vector<RatioReport>& fine, int resolution) {
  require(!coarse.empty() && coarse.size() == fine.size(), "floor_stability: sweeps differ in length");
  const double f1 = coarse.back().empirical_floor, f2 = fine.back().empirical_floor;
  VerificationReport v;
  v.statement_id = "boundary_ratio.floor";
  v.domain = d.name();
  v.input("resolution", static_cast<double>(resolution)).input("floor", f2).input("floor_coarse", f1);
  v.input("delta_min", coarse.back().delta_w);
  v.lhs = std::abs(f1 / f2 - 1.0);
  v.rhs = 0.05;
  v.margin = (f1 > 0.0 && f2 > 0.0) ? v.rhs - v.lhs : -INFINITY;
  v.tolerance = 0.0;
  v.err = std::abs(f1 - f2);
  return v.decide();
}

// ---------------------------------------------------------------------------
// S(w, w) / K(w, w) >= delta(w) / (4en + 1)

inline VerificationReport szego_bergman_ratio(const Domain& d, const Point& w) {
  if (d.kind() != DomainKind::UnitDisc && d.kind() != DomainKind::Ball)
    throw UnsupportedDomain("szego_bergman_ratio needs the disc or a ball, not " + d.name());
  const double s = szego_diag(d, w);
  const double k = KernelEvaluator(d).diag(w);
  const double delta = boundary_distance(d, w);
  VerificationReport r;
  r.statement_id = "szego_bergman.lower";
  r.domain = d.name();
  r.input("w", point_string(w)).input("delta_w", delta);
  r.lhs = s / k;
  r.rhs = delta / upper_constant(d.dim());
  r.margin = r.lhs - r.rhs;
  r.tolerance = 1e-12;
  r.err = 4e-16 * r.lhs;
  return r.decide();
}

// ---------------------------------------------------------------------------
// (1-r) int_D |u|^2 (1-|z|)^{-r} dV -> int_{bd D} |u|^2 dsigma as r -> 1

struct HardyLimit {
  std::vector<double> eps;     // 1 - r
  std::vector<double> values;  // (1-r) weighted volume integrals
  double extrapolated = 0.0;
  double err = 0.0;  // size of the last Neville correction
  double boundary = 0.0;
  bool increasing = false;
};

// Polynomial extrapolation to eps = 0 through all points (Neville).
inline std::pair<double, double> neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> p = y;
  double last = 0.0;
  const std::size_t n = x.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      const double v = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
      if (i == 0) last = std::abs(v - p[0]);
      p[i] = v;
    }
  }
  return {p[0], last};
}

namespace detail {

// (1-r) int_0^1 Theta(rho) (1-rho)^{-r} rho drho where Theta is the angular integral.
template <class Theta>
double weighted_volume(Theta&& theta, double r, int nodes) {
  const quad::Rule jr = quad::jacobi_on(0.0, 1.0, nodes, -r, 0.0);
  return (1.0 - r) * quad::integrate(jr, [&](double rho) { return theta(rho) * rho; });
}

inline HardyLimit hardy_limit(const std::function<double(double)>& theta, double boundary,
                              const std::vector<double>& rs) {
  HardyLimit h;
  h.boundary = boundary;
  for (double r : rs) {
    require(r > 0.0 && r < 1.0, "hardy_identity_check: r must lie in (0, 1)");
    h.eps.push_back(1.0 - r);
    h.values.push_back(weighted_volume(theta, r, 200));
  }
  std::tie(h.extrapolated, h.err) = neville_at_zero(h.eps, h.values);
  h.increasing = std::is_sorted(h.values.begin(), h.values.end());
  return h;
}

}  // namespace detail

inline std::vector<double> default_hardy_schedule() { return {0.9, 0.99, 0.999, 0.9999}; }

// u = K(., w) on the disc with w = x.
inline HardyLimit hardy_kernel_limit(double x, const std::vector<double>& rs = default_hardy_schedule()) {
  require(x >= 0.0 && x < 1.0, "hardy_identity_check: |w| must lie in [0, 1)");
  const Domain disc = Domain::disc();
  const KernelEvaluator k(disc);
  auto theta = [&](double rho) {
    const double a = rho * x;
    const quad::Rule rule = quad::mobius_trapezoid(128, 0.0, (1.0 - a) / (1.0 + a));
    return quad::integrate(rule, [&](double t) {
      const cplx q = 1.0 - std::polar(rho, t) * x;
      return 1.0 / (pi * pi * std::norm(q * q));
    });
  };
  return detail::hardy_limit(theta, boundary_norm_sq(disc, Point{cplx(x, 0.0)}).value, rs);
}

// u = 1: the weighted integrals are 2 pi / (2 - r) and the boundary integral is 2 pi.
inline HardyLimit hardy_constant_limit(const std::vector<double>& rs = default_hardy_schedule()) {
  return detail::hardy_limit([](double) { return 2.0 * pi; }, 2.0 * pi, rs);
}

inline VerificationReport hardy_report(const HardyLimit& h, const std::string& u_label) {
  VerificationReport r = equality_report("hardy_limit.boundary_norm", "disc", h.extrapolated, h.boundary,
                                         1e-4 * h.boundary, h.err);
  r.input("u", u_label).input("r_max", 1.0 - h.eps.back()).input("increasing", h.increasing ? "true" : "false");
  return r;
}

inline VerificationReport hardy_identity_check(double x, const std::vector<double>& rs = default_hardy_schedule()) {
  return hardy_report(hardy_kernel_limit(x, rs), "K(.,w);w=" + fmt17(x));
}

// ---------------------------------------------------------------------------
// inf_{t>0} (e^t + 1) e^{2nt} / (e^t - 1)

inline double infimum_objective(int n, double t) { return (std::exp(t) + 1.0) * std::exp(2.0 * n * t) / std::expm1(t); }

struct Infimum {
  double t_star = 0.0;
  double value = 0.0;
  double t_closed = 0.0;      // log((1 + sqrt(1 + 4n^2)) / (2n))
  double value_closed = 0.0;  // objective at t_closed
};

inline Infimum infimum_constant(int n) {
  require(n >= 1, "infimum_constant: n must be >= 1");
  auto log_g = [n](double t) { return std::log1p(std::exp(t)) + 2.0 * n * t - std::log(std::expm1(t)); };
  const auto [t, v] = boost::math::tools::brent_find_minima(log_g, 1e-8, 5.0, std::numeric_limits<double>::digits);
  Infimum r;
  r.t_star = t;
  r.value = std::exp(v);
  r.t_closed = std::log((1.0 + std::sqrt(1.0 + 4.0 * n * n)) / (2.0 * n));
  r.value_closed = infimum_objective(n, r.t_closed);
  return r;
}

inline std::vector<VerificationReport> infimum_reports(int n) {
  const Infimum m = infimum_constant(n);
  const double e4n = 4.0 * std::numbers::e * n;
  VerificationReport a = upper_bound_report("infimum.bound", "n=" + std::to_string(n), m.value, e4n + 1.0, 0.0);
  a.input("n", static_cast<double>(n)).input("t_star", m.t_star).input("value_over_4en", m.value / e4n);
  VerificationReport b = equality_report("infimum.stationary_point", "n=" + std::to_string(n), m.value,
                                         m.value_closed, 1e-10 * m.value_closed, std::abs(m.t_star - m.t_closed));
  b.input("n", static_cast<double>(n)).input("t_closed", m.t_closed);
  return {a, b};
}

}  // namespace bergman
