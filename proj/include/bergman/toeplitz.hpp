#pragma once

// Integrals int |K(z, w)|^2 delta(w)^alpha dV(w) and ||K(z, .)||_{L^p} on the disc
// and balls, and power-law fits of their growth as z approaches the boundary.
//
// Both integrands only depend on w through w_1 and |w| once z = (x, 0, ..., 0),
// so the volume integral splits into a radial integral in |w_1|, an angle, and a
// one-dimensional integral over the remaining radius.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/kernel.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/report.hpp"

namespace bergman {

namespace detail {

inline void require_zonal_domain(const Domain& d, const char* what) {
  if (d.kind() != DomainKind::UnitDisc && d.kind() != DomainKind::Ball)
    throw UnsupportedDomain(std::string(what) + " is only available on the disc and balls, not " + d.name());
}

// H(r1) = int_{|w'|^2 < 1 - r1^2} (1 - |w|)^alpha dV(w') = (1-r1)^{alpha+n-1} J(r1).
// Returns J; with v = r1 + (1-r1) u the integrand is (1-u)^alpha times a polynomial in u.
inline double transverse_factor(int n, double alpha, double r1) {
  if (n == 1) return 1.0;
  const double sigma = 2.0 * std::pow(pi, n - 1) / std::tgamma(static_cast<double>(n - 1));
  const quad::Rule rule = quad::jacobi_on(0.0, 1.0, n + 2, alpha, 0.0);
  const double q = 1.0 - r1;
  return sigma * quad::integrate(rule, [&](double u) {
           return std::pow(u, n - 2) * std::pow(2.0 * r1 + q * u, n - 2) * (r1 + q * u);
         });
}

// int_Omega |1 - x w_1|^{-power} delta(w)^alpha dV(w) for z = (x, 0, ...).
inline double zonal_integral(int n, double x, double power, double alpha, int res) {
  const double delta = 1.0 - x;
  const double h0 = std::max(0.25 * delta, 1e-14);
  const int ang = 4 * res;
  auto theta = [&](double r1) {
    const double a = std::min(x * r1, 1.0 - 1e-16);
    const quad::Rule rule = quad::mobius_trapezoid(ang, 0.0, (1.0 - a) / (1.0 + a));
    return quad::integrate(rule, [&](double t) { return std::pow(std::norm(1.0 - std::polar(a, t)), -0.5 * power); });
  };
  const double e = alpha + n - 1;
  // Last panel carries (1 - r1)^{alpha+n-1} in its weights.
  const quad::Rule last = quad::jacobi_on(1.0 - h0, 1.0, res, e, 0.0);
  const double tail = quad::integrate(last, [&](double r1) { return r1 * transverse_factor(n, alpha, r1) * theta(r1); });
  const quad::Rule body = quad::graded_rule(0.0, 1.0 - h0, 1.0 - h0, h0, res);
  const double main = quad::integrate(body, [&](double r1) {
    return r1 * std::pow(1.0 - r1, e) * transverse_factor(n, alpha, r1) * theta(r1);
  });
  return main + tail;
}

inline double kernel_constant(int n) { return std::exp(std::lgamma(n + 1.0) - n * std::log(pi)); }

inline double zonal_x(const Domain& d, const Point& z) {
  d.check_dim(z);
  if (!contains(d, z)) throw PreconditionError("toeplitz: z is not interior to " + d.name());
  return norm(z);  // unitary invariance moves z to (|z|, 0, ...)
}

}  // namespace detail

struct ToeplitzValue {
  double value = 0.0;
  double err = 0.0;  // change when the rules double
};

// int |K(z, w)|^2 delta(w)^alpha dV(w)
inline ToeplitzValue weighted_square_integral_detail(const Domain& d, const Point& z, double alpha, int resolution = 24) {
  detail::require_zonal_domain(d, "weighted_square_integral");
  require(alpha >= 0.0, "weighted_square_integral: alpha must be >= 0");
  require(resolution >= 4, "weighted_square_integral: resolution must be >= 4");
  const int n = d.dim();
  const double x = detail::zonal_x(d, z);
  const double c = detail::kernel_constant(n);
  const double v1 = c * c * detail::zonal_integral(n, x, 2.0 * (n + 1), alpha, resolution);
  const double v2 = c * c * detail::zonal_integral(n, x, 2.0 * (n + 1), alpha, 2 * resolution);
  if (!(std::abs(v1 - v2) <= 1e-6 * std::abs(v2)))
    throw QuadratureError("weighted_square_integral did not converge: " + fmt17(v1) + " vs " + fmt17(v2));
  return {v2, std::abs(v1 - v2)};
}

inline double weighted_square_integral(const Domain& d, const Point& z, double alpha, int resolution = 24) {
  return weighted_square_integral_detail(d, z, alpha, resolution).value;
}

// (int |K(z, w)|^p dV(w))^{1/p}
inline ToeplitzValue kernel_lp_norm_detail(const Domain& d, const Point& z, double p, int resolution = 24) {
  detail::require_zonal_domain(d, "kernel_lp_norm");
  require(p > 1.0, "kernel_lp_norm: p must exceed 1");
  const int n = d.dim();
  const double x = detail::zonal_x(d, z);
  const double c = detail::kernel_constant(n);
  auto at = [&](int res) { return c * std::pow(detail::zonal_integral(n, x, p * (n + 1), 0.0, res), 1.0 / p); };
  const double v1 = at(resolution), v2 = at(2 * resolution);
  if (!(std::abs(v1 - v2) <= 1e-6 * std::abs(v2)))
    throw QuadratureError("kernel_lp_norm did not converge: " + fmt17(v1) + " vs " + fmt17(v2));
  return {v2, std::abs(v1 - v2)};
}

inline double kernel_lp_norm(const Domain& d, const Point& z, double p, int resolution = 24) {
  return kernel_lp_norm_detail(d, z, p, resolution).value;
}

// ---------------------------------------------------------------------------
// Power-law fits in delta(z)

struct ExponentFit {
  double alpha = 0.0;  // weight exponent (or p for L^p fits)
  std::vector<double> sample_deltas;
  std::vector<double> sample_values;
  double slope = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  double err = 0.0;  // largest relative quadrature error among the samples
};

// Least-squares slope of log(values) against log(deltas).
inline double loglog_slope(const std::vector<double>& deltas, const std::vector<double>& values) {
  const std::size_t n = deltas.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(deltas[i]);
    my += std::log(values[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(deltas[i]) - mx;
    sxy += dx * (std::log(values[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline void require_span(const std::vector<double>& deltas) {
  if (deltas.size() < 3) throw PreconditionError("exponent fit needs at least 3 samples");
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  if (!(*lo > 0.0) || *hi >= 1.0) throw PreconditionError("exponent fit: deltas must lie in (0, 1)");
  if (*hi / *lo < 100.0 * (1.0 - 1e-12)) throw PreconditionError("exponent fit needs samples spanning at least 2 decades");
}

inline std::vector<double> default_toeplitz_schedule() { return {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1}; }

// Slope window: alpha - (n+1) below the critical exponent and 0 above it. A 0.1
// allowance covers the |log delta|^{-alpha} factor in the lower bound.
inline ExponentFit exponent_fit(const Domain& d, double alpha, const std::vector<double>& deltas, int resolution = 24) {
  detail::require_zonal_domain(d, "exponent_fit");
  require_span(deltas);
  const int n = d.dim();
  ExponentFit f;
  f.alpha = alpha;
  f.sample_deltas = deltas;
  f.sample_values.assign(deltas.size(), 0.0);
  std::vector<double> errs(deltas.size(), 0.0);
  parallel_for(deltas.size(), [&](std::size_t i) {
    Point z(static_cast<std::size_t>(n), cplx(0.0));
    z[0] = 1.0 - deltas[i];
    const ToeplitzValue v = weighted_square_integral_detail(d, z, alpha, resolution);
    f.sample_values[i] = v.value;
    errs[i] = v.err / v.value;
  });
  f.err = *std::max_element(errs.begin(), errs.end());
  f.slope = loglog_slope(f.sample_deltas, f.sample_values);
  const double crit = n + 1.0;
  if (alpha < crit) {
    f.expected = alpha - crit;
    f.tolerance = 0.05 + (alpha > 0.0 ? 0.1 : 0.0);
  } else if (alpha > crit) {
    f.expected = 0.0;
    f.tolerance = 0.1;
  } else {
    // Critical exponent: neither window applies. The growth is
    // logarithmic, which a finite schedule sees as a small negative slope.
    f.expected = 0.0;
    f.tolerance = 0.15;
  }
  return f;
}

// Growth of ||K(z, .)||_p: expected slope -(n+1)(1 - 1/p).
inline ExponentFit lp_exponent_fit(const Domain& d, double p, const std::vector<double>& deltas, int resolution = 24) {
  detail::require_zonal_domain(d, "lp_exponent_fit");
  require_span(deltas);
  const int n = d.dim();
  ExponentFit f;
  f.alpha = p;
  f.sample_deltas = deltas;
  f.sample_values.assign(deltas.size(), 0.0);
  std::vector<double> errs(deltas.size(), 0.0);
  parallel_for(deltas.size(), [&](std::size_t i) {
    Point z(static_cast<std::size_t>(n), cplx(0.0));
    z[0] = 1.0 - deltas[i];
    const ToeplitzValue v = kernel_lp_norm_detail(d, z, p, resolution);
    f.sample_values[i] = v.value;
    errs[i] = v.err / v.value;
  });
  f.err = *std::max_element(errs.begin(), errs.end());
  f.slope = loglog_slope(f.sample_deltas, f.sample_values);
  f.expected = -(n + 1.0) * (1.0 - 1.0 / p);
  f.tolerance = 0.05;
  return f;
}

inline VerificationReport exponent_report(const Domain& d, const ExponentFit& f) {
  VerificationReport r = equality_report("toeplitz.slope", d.name(), f.slope, f.expected, f.tolerance, f.err);
  r.input("alpha", f.alpha)
      .input("delta_min", *std::min_element(f.sample_deltas.begin(), f.sample_deltas.end()))
      .input("delta_max", *std::max_element(f.sample_deltas.begin(), f.sample_deltas.end()))
      .input("samples", static_cast<double>(f.sample_deltas.size()));
  return r;
}

}  // namespace bergman
