#pragma once

// Radial integrals on the unit disc in the variable s = -log(rho).
//
// With rho = e^{-s} the area element rho drho becomes e^{-2s} ds on (0, inf).
// Integrands are sums of terms s^p * phi(s); the factor s^p is carried by a
// Gauss-Jacobi rule on the first panel, so endpoint singularities (1-rho)^{-r}
// with r close to 1 are integrated without loss of order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman::radial {

using cplx = std::complex<double>;

struct RadialPoint {
  double s;              // -log rho
  double rho;            // e^{-s}
  double one_minus_rho;  // 1 - rho, computed as -expm1(-s)
};

inline RadialPoint at_s(double s) { return {s, std::exp(-s), -std::expm1(-s)}; }

inline RadialPoint at_rho(double rho) { return {-std::log(rho), rho, 1.0 - rho}; }

using Smooth = std::function<cplx(const RadialPoint&)>;

// s^power * smooth(point)
struct PowerTerm {
  double power = 0.0;
  Smooth smooth;
};

// Radial profile: a sum of power terms, with the values of s where the profile
// jumps (indicator functions) listed so the integrator can split there.
struct Profile {
  std::vector<PowerTerm> terms;
  std::vector<double> breaks;

  cplx operator()(const RadialPoint& p) const {
    cplx v = 0.0;
    for (const auto& t : terms) v += (t.power == 0.0 ? 1.0 : std::pow(p.s, t.power)) * t.smooth(p);
    return v;
  }

  static Profile monomial(int k, cplx c = 1.0) {
    return {{{0.0, [k, c](const RadialPoint& p) { return c * std::exp(-k * p.s); }}}, {}};
  }
};

struct Settings {
  double first_panel = 1.0 / 4096.0;  // Jacobi panel [0, first_panel]
  double s_max = 40.0;                // e^{-80} beyond this
  int per_panel = 20;
};

struct Value {
  cplx value;
  double tail;  // bound on the neglected part beyond s_max
};

namespace detail {

inline std::vector<double> knots(const Settings& st, const std::vector<double>& breaks) {
  std::vector<double> k{0.0};
  for (double x = st.first_panel; x < 1.0; x *= 2.0) k.push_back(x);
  for (double x = 1.0; x < st.s_max; x *= 2.0) k.push_back(x);
  k.push_back(st.s_max);
  for (double b : breaks)
    if (b > 0.0 && b < st.s_max) k.push_back(b);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end(), [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, b); }),
          k.end());
  return k;
}

}  // namespace detail

// int_0^inf s^power phi(s) e^{-2s} ds, i.e. int_0^1 (-log rho)^power phi rho drho.
inline Value integrate_term(double power, const Smooth& phi, const std::vector<double>& breaks = {},
                            const Settings& st = {}) {
  if (!(power > -1.0)) throw DivergenceError("radial integral diverges: s-power " + std::to_string(power) + " <= -1");
  const std::vector<double> k = detail::knots(st, breaks);
  std::vector<cplx> parts;
  parts.reserve(k.size());
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double a = k[i], b = k[i + 1];
    if (i == 0) {
      const quad::Rule r = quad::jacobi_on(a, b, st.per_panel, 0.0, power);
      parts.push_back(quad::integrate(r, [&](double s) { return phi(at_s(s)) * std::exp(-2.0 * s); }));
    } else {
      const quad::Rule r = quad::gauss_legendre(st.per_panel).mapped(a, b);
      parts.push_back(quad::integrate(r, [&](double s) { return std::pow(s, power) * phi(at_s(s)) * std::exp(-2.0 * s); }));
    }
  }
  const double sm = st.s_max;
  const double tail = 0.5 * std::pow(sm, power) * std::abs(phi(at_s(sm))) * std::exp(-2.0 * sm);
  return {quad::pairwise_sum(parts), tail};
}

// Sum of integrate_term over a list of terms; terms with equal powers share a rule.
inline Value integrate_terms(const std::vector<PowerTerm>& terms, const std::vector<double>& breaks = {},
                             const Settings& st = {}) {
  std::map<double, std::vector<const Smooth*>> by_power;
  for (const auto& t : terms) by_power[t.power].push_back(&t.smooth);
  std::vector<cplx> parts;
  double tail = 0.0;
  for (const auto& [p, fs] : by_power) {
    const Value v = integrate_term(
        p,
        [&fs](const RadialPoint& x) {
          cplx s = 0.0;
          for (const Smooth* f : fs) s += (*f)(x);
          return s;
        },
        breaks, st);
    parts.push_back(v.value);
    tail += v.tail;
  }
  return {quad::pairwise_sum(parts), tail};
}

// Terms of a(rho) * conj(b(rho)) * w(rho).
inline std::vector<PowerTerm> product_terms(const Profile& a, const Profile& b, const PowerTerm& w) {
  std::vector<PowerTerm> out;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      Smooth fa = ta.smooth, fb = tb.smooth, fw = w.smooth;
      out.push_back({ta.power + tb.power + w.power,
                     [fa, fb, fw](const RadialPoint& p) { return fa(p) * std::conj(fb(p)) * fw(p); }});
    }
  return out;
}

inline std::vector<double> merged_breaks(const Profile& a, const Profile& b) {
  std::vector<double> br = a.breaks;
  br.insert(br.end(), b.breaks.begin(), b.breaks.end());
  return br;
}

// 2pi int_0^1 a conj(b) w rho drho: the L^2 pairing of a e^{ik theta} and b e^{ik theta}.
inline Value pairing(const Profile& a, const Profile& b, const PowerTerm& w, const Settings& st = {}) {
  const Value v = integrate_terms(product_terms(a, b, w), merged_breaks(a, b), st);
  return {quad::two_pi * v.value, quad::two_pi * v.tail};
}

}  // namespace bergman::radial
