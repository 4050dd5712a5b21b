#pragma once

// Pluricomplex Green functions of the disc and the ball, the geometry of their
// sublevel sets {G(., w) < -t}, and the checks built on them.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/kernel.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/report.hpp"
#include "bergman/rng.hpp"

namespace bergman {

class GreenEvaluator {
 public:
  GreenEvaluator(Domain d, Point pole) : domain_(d), pole_(std::move(pole)) {
    if (d.kind() != DomainKind::UnitDisc && d.kind() != DomainKind::Ball)
      throw UnsupportedDomain("Green function is only available on the disc and balls, not " + d.name());
    d.check_dim(pole_);
    require(contains(d, pole_), "Green function: pole must be interior");
  }

  const Domain& domain() const { return domain_; }
  const Point& pole() const { return pole_; }

  // |phi_w(z)|^2 where phi_w is the automorphism exchanging 0 and w. Uses
  // |1-<z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - sum_{j<k} |z_j w_k - z_k w_j|^2.
  double pseudo_distance_sq(const Point& z) const {
    const Point& w = pole_;
    double num = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) num += std::norm(z[j] - w[j]);
    for (std::size_t j = 0; j < z.size(); ++j)
      for (std::size_t k = j + 1; k < z.size(); ++k) num -= std::norm(z[j] * w[k] - z[k] * w[j]);
    const double den = std::norm(1.0 - inner(z, w));
    return std::max(0.0, num) / den;
  }

  double eval(const Point& z) const {
    domain_.check_dim(z);
    require(contains(domain_, z), "green_eval: point must be interior");
    const double q = pseudo_distance_sq(z);
    if (q == 0.0) throw PreconditionError("green_eval: z coincides with the pole");
    return 0.5 * std::log(q);
  }

 private:
  Domain domain_;
  Point pole_;
};

inline double green_eval(const GreenEvaluator& g, const Point& z) { return g.eval(z); }

// phi_w(z) = (w - P z - s Q z) / (1 - <z, w>), P the projection onto w, Q = I - P,
// s = sqrt(1 - |w|^2). An involution of the ball with phi_w(0) = w.
inline Point ball_automorphism(const Point& w, const Point& z) {
  const double ww = norm_sq(w);
  const double s = std::sqrt(one_minus_sq(std::sqrt(ww)));
  const cplx zw = inner(z, w);
  Point out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const cplx pz = ww > 0.0 ? zw / ww * w[j] : cplx(0.0);
    out[j] = (w[j] - pz - s * (z[j] - pz)) / (1.0 - zw);
  }
  return out;
}

// The sublevel set {G(., w) < -t} is the image of the ball of radius e^{-t} under
// phi_w: a Euclidean ellipsoid centered at c with semi-axis r_parallel in the
// complex direction of w and r_perp in the orthogonal directions.
struct SublevelShape {
  Point center;
  double r_parallel;
  double r_perp;
};

inline SublevelShape sublevel_shape(const Point& w, double t) {
  const double eps = std::exp(-t), e2 = eps * eps;
  const double x2 = norm_sq(w);
  const double omx2 = one_minus_sq(std::sqrt(x2));
  const double den = 1.0 - e2 * x2;
  SublevelShape s;
  s.center = w;
  for (auto& c : s.center) c *= -std::expm1(-2.0 * t) / den;
  s.r_parallel = eps * omx2 / den;
  s.r_perp = eps * std::sqrt(omx2 / den);
  return s;
}

// Affine chart of the sublevel set over the unit ball: v -> c + r_par P v + r_perp Q v.
inline Point sublevel_chart(const SublevelShape& s, const Point& w, const Point& v) {
  const double ww = norm_sq(w);
  const cplx vw = inner(v, w);
  Point z(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const cplx pv = ww > 0.0 ? vw / ww * w[j] : cplx(0.0);
    z[j] = s.center[j] + s.r_parallel * pv + s.r_perp * (v[j] - pv);
  }
  return z;
}

struct SublevelReport {
  double t = 0.0;
  double delta_w = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  double annulus_lo = 0.0;
  double annulus_hi = 0.0;
  bool included = false;
};

namespace detail {

// Extremes of |z|^2 on the level set {|phi_w(z)|^2 = eps^2} by projected
// gradient with Newton retraction along grad H. sign = +1 maximizes, -1 minimizes.
inline double level_set_extreme(const GreenEvaluator& g, double eps, int sign, int starts, std::uint64_t seed) {
  const Point& w = g.pole();
  const std::size_t n = w.size();
  const double target = eps * eps;
  const double A = one_minus_sq(norm(w));

  auto H = [&](const Point& z) { return g.pseudo_distance_sq(z); };
  auto gradH = [&](const Point& z) {
    const cplx q = 1.0 - inner(z, w);
    const double D = std::norm(q);
    const double B = 1.0 - norm_sq(z);
    Point gr(n);
    for (std::size_t j = 0; j < n; ++j) gr[j] = -A * (-2.0 * z[j] * D + 2.0 * B * q * w[j]) / (D * D);
    return gr;
  };
  auto real_dot = [](const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (std::conj(a[j]) * b[j]).real();
    return s;
  };
  auto retract = [&](Point z) {
    for (int it = 0; it < 60; ++it) {
      const double h = H(z) - target;
      if (std::abs(h) <= 1e-16 * target) break;
      const Point gr = gradH(z);
      const double gg = real_dot(gr, gr);
      for (std::size_t j = 0; j < n; ++j) z[j] -= h / gg * gr[j];
    }
    return z;
  };
  // Point of the level set on the ray w + r u, by bisection on r (the sublevel
  // set is convex and contains w).
  auto on_ray = [&](const Point& u) {
    double lo = 0.0, hi = 1.0;
    auto at = [&](double r) {
      Point z = w;
      for (std::size_t j = 0; j < n; ++j) z[j] += r * u[j];
      return z;
    };
    while (norm(at(hi)) < 1.0 && H(at(hi)) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Point z = at(mid);
      (norm(z) < 1.0 && H(z) < target ? lo : hi) = mid;
    }
    return retract(at(0.5 * (lo + hi)));
  };

  Rng rng(seed);
  double best = sign > 0 ? -1.0 : 2.0;
  for (int s = 0; s < starts; ++s) {
    Point u(n);
    if (s < 2 && norm_sq(w) > 0.0) {
      u = w;  // along and against the pole direction
      for (auto& c : u) c *= (s == 0 ? 1.0 : -1.0);
    } else {
      // uniform direction by rejection from the cube
      do {
        for (auto& c : u) c = rng.complex_unit_square();
      } while (norm_sq(u) > 1.0 || norm_sq(u) < 1e-6);
    }
    const double un = norm(u);
    for (auto& c : u) c /= un;
    Point z = on_ray(u);
    double f = norm_sq(z);
    const double step0 = 0.1 * eps * A;
    double step = step0;
    for (int it = 0; it < 5000 && step > 1e-10 * step0; ++it) {
      const Point gr = gradH(z);
      const double gg = real_dot(gr, gr);
      // tangential part of grad |z|^2 = 2z
      const double c = real_dot(gr, z) / gg;
      Point d(n);
      double dn = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        d[j] = 2.0 * (z[j] - c * gr[j]);
        dn += std::norm(d[j]);
      }
      dn = std::sqrt(dn);
      if (dn <= 1e-9 * std::sqrt(f)) break;
      Point trial = z;
      for (std::size_t j = 0; j < n; ++j) trial[j] += sign * step * d[j] / dn;
      trial = retract(trial);
      const double ft = norm_sq(trial);
      if (norm(trial) < 1.0 && sign * (ft - f) > 0.0) {
        z = trial;
        f = ft;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best = sign > 0 ? std::max(best, f) : std::min(best, f);
  }
  return best;
}

}  // namespace detail

// Extremes of delta over {G(., w) < -t} and the annulus test
// (e^t-1)/(e^t+1) delta(w) <= delta <= (e^t+1)/(e^t-1) delta(w).
inline SublevelReport sublevel_extremes(const GreenEvaluator& g, double t) {
  if (!(t > 0.0)) throw PreconditionError("sublevel_extremes: t must be positive");
  const Domain& d = g.domain();
  const Point& w = g.pole();
  const double eps = std::exp(-t);
  const double x = norm(w);
  SublevelReport r;
  r.t = t;
  r.delta_w = boundary_distance(d, w);
  const double th = std::tanh(0.5 * t);
  r.annulus_lo = th * r.delta_w;
  r.annulus_hi = r.delta_w / th;
  if (d.kind() == DomainKind::UnitDisc) {
    // Euclidean disc with center c and radius R; |c| + R and |c| - R in closed
    // form, written to avoid cancellation.
    r.delta_min = (1.0 - x) * (1.0 - eps) / (1.0 + x * eps);
    r.delta_max = x >= eps ? (1.0 - x) * (1.0 + eps) / (1.0 - x * eps) : 1.0;
  } else {
    const double fmax = detail::level_set_extreme(g, eps, +1, 16, 0x5eed0001);
    r.delta_min = 1.0 - std::sqrt(fmax);
    if (x < eps) {
      r.delta_max = 1.0;  // the origin lies in the set
    } else {
      const double fmin = detail::level_set_extreme(g, eps, -1, 16, 0x5eed0002);
      r.delta_max = 1.0 - std::sqrt(fmin);
    }
  }
  const double slack = 1e-9 * r.delta_w;
  r.included = r.delta_min >= r.annulus_lo - slack && r.delta_max <= r.annulus_hi + slack;
  return r;
}

// Inclusion of the sublevel set in the annulus as a report. The margin is the
// smaller relative gap to the two annulus walls.
inline VerificationReport sublevel_inclusion_report(const GreenEvaluator& g, double t) {
  const SublevelReport s = sublevel_extremes(g, t);
  VerificationReport r;
  r.statement_id = "green_sublevel.annulus";
  r.domain = g.domain().name();
  r.input("delta_w", s.delta_w).input("t", t);
  r.lhs = s.delta_min;
  r.rhs = s.annulus_lo;
  r.margin = std::min(s.delta_min / s.annulus_lo - 1.0, 1.0 - s.delta_max / s.annulus_hi);
  r.tolerance = 1e-9;
  r.err = 1e-12;
  return r.decide();
}

// int_{G < -t} |f|^2 dV >= e^{-2nt} |f(w)|^2 / K(w, w).
inline VerificationReport herbort_check(const GreenEvaluator& g, double t, const HolomorphicPolynomial& f,
                                        int resolution) {
  require(t > 0.0, "herbort_check: t must be positive");
  require(f.degree() <= 10, "herbort_check: polynomial degree must be <= 10");
  const Domain& d = g.domain();
  const Point& w = g.pole();
  const int n = d.dim();
  const SublevelShape shape = sublevel_shape(w, t);
  const double jac = std::pow(shape.r_parallel, 2) * std::pow(shape.r_perp, 2 * (n - 1));
  // |f|^2 pulled back by the affine chart is a polynomial of degree 2 deg f; the
  // rule below integrates it exactly once the resolution exceeds deg f + 2.
  auto lhs_at = [&](int res) {
    const VolumeRule rule = volume_rule(d, res, res);
    return jac * integrate_volume(rule, [&](const Point& v) { return std::norm(f(sublevel_chart(shape, w, v))); });
  };
  const int res = std::max(resolution, f.degree() + 4);
  const double lhs = lhs_at(res);
  const double lhs2 = lhs_at(res + 2);
  const KernelEvaluator k(d);
  const double rhs = std::exp(-2.0 * n * t) * std::norm(f(w)) / k.diag(w);
  VerificationReport r;
  r.statement_id = "green_sublevel.mass";
  r.domain = d.name();
  r.input("w_norm", norm(w)).input("t", t).input("f", f.describe());
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = 1e-9 * (1.0 + std::abs(rhs));
  r.err = std::abs(lhs - lhs2);
  return r.decide();
}

// K(w, w) >= e^{-2t} K_{G<-t}(w, w) on the disc, where the sublevel set is the
// Euclidean disc D(c, R) with kernel diagonal R^2 / (pi (R^2 - |w - c|^2)^2).
inline VerificationReport sublevel_kernel_check(const GreenEvaluator& g, double t) {
  if (g.domain().kind() != DomainKind::UnitDisc)
    throw UnsupportedDomain("sublevel_kernel_check needs a Euclidean-disc sublevel set (disc only)");
  require(t > 0.0, "sublevel_kernel_check: t must be positive");
  const Point& w = g.pole();
  const SublevelShape s = sublevel_shape(w, t);
  const double R = s.r_parallel;
  const double dist = std::abs(w[0] - s.center[0]);
  const double q = (R - dist) * (R + dist);
  const double ksub = R * R / (pi * q * q);
  const double lhs = KernelEvaluator(g.domain()).diag(w);
  const double rhs = std::exp(-2.0 * t) * ksub;
  VerificationReport r;
  r.statement_id = "green_sublevel.kernel";
  r.domain = "disc";
  r.input("w_norm", std::abs(w[0])).input("t", t);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = 1e-12;
  r.err = 4e-16 * std::max(lhs, rhs);
  return r.decide();
}

// For poles w = (1 - delta, 0, ...) and t = 1, the smallest C with
// C^{-1} delta |log delta|^{-1} <= delta(.) <= C delta |log delta|^n on {G < -1};
// the check passes when that C is at most `c_claim`.
inline std::vector<VerificationReport> log_inclusion_check(const Domain& d, const std::vector<double>& deltas,
                                                           double c_claim = 3.0) {
  std::vector<VerificationReport> out;
  const int n = d.dim();
  for (double delta : deltas) {
    require(delta > 0.0 && delta < 1.0, "log_inclusion_check: delta must lie in (0, 1)");
    Point w(static_cast<std::size_t>(n), 0.0);
    w[0] = 1.0 - delta;
    const GreenEvaluator g(d, w);
    const SublevelReport s = sublevel_extremes(g, 1.0);
    const double L = std::abs(std::log(s.delta_w));
    const double lower = s.delta_w / L;
    const double upper = s.delta_w * std::pow(L, n);
    const double c_needed = std::max(lower / s.delta_min, s.delta_max / upper);
    VerificationReport r;
    r.statement_id = "green_sublevel.log_annulus";
    r.domain = d.name();
    r.input("delta_w", s.delta_w).input("t", 1.0).input("annulus_included", s.included ? "true" : "false");
    r.lhs = c_needed;
    r.rhs = c_claim;
    r.margin = c_claim - c_needed;
    r.tolerance = 1e-9;
    r.err = 1e-9 * c_needed;
    out.push_back(r.decide());
  }
  return out;
}

}  // namespace bergman
