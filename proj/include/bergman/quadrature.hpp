#pragma once

// One-dimensional and tensor-product quadrature rules plus a deterministic
// integration driver.
//
// All rules are immutable once built. Gauss rules are cached by (kind, n, a, b)
// behind a mutex, so repeated requests return the same object.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman::quad {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Support { Interval, Circle };

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Support support = Support::Interval;
  double lo = -1.0;
  double hi = 1.0;
  std::string exactness;

  std::size_t size() const { return nodes.size(); }

  // Affine image on [a, b]. Only meaningful for interval rules whose weight
  // function is 1; singular-weight rules should be built with jacobi_on().
  Rule mapped(double a, double b) const {
    Rule r;
    r.support = Support::Interval;
    r.lo = a;
    r.hi = b;
    r.exactness = exactness;
    const double scale = (b - a) / (hi - lo);
    r.nodes.resize(nodes.size());
    r.weights.resize(weights.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      r.nodes[i] = a + (nodes[i] - lo) * scale;
      r.weights[i] = weights[i] * scale;
    }
    return r;
  }
};

// ---------------------------------------------------------------------------
// Summation

namespace detail {
template <class T>
T pairwise_sum_impl(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_impl(v, h) + pairwise_sum_impl(v + h, n - h);
}

inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const std::complex<double>& x) {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}
}  // namespace detail

// Cascade summation in a fixed binary-tree order. The result depends only on the
// order of the input, never on how the terms were produced.
template <class T>
T pairwise_sum(std::span<const T> v) {
  return detail::pairwise_sum_impl(v.data(), v.size());
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return detail::pairwise_sum_impl(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Rule construction

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

inline Rule make_gauss_legendre(int n) {
  Rule r;
  r.nodes.assign(static_cast<std::size_t>(n), 0.0);
  r.weights.assign(static_cast<std::size_t>(n), 0.0);
  r.exactness = "polynomials up to degree " + std::to_string(2 * n - 1);
  if (n == 1) {
    r.weights[0] = 2.0;
    return r;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    if (2 * i + 1 == n) x = 0.0;
    for (int it = 0; it < 100 && x != 0.0; ++it) {
      auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = (x == 0.0 && n % 2 == 1) ? legendre(n, 0.0).second : legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    r.weights[static_cast<std::size_t>(i)] = w;
  }
  return r;
}

// Recurrence coefficients of the orthonormal Jacobi polynomials for the weight
// (1-x)^a (1+x)^b: diagonal alpha_k and off-diagonal beta_k (k >= 1).
inline double jacobi_alpha(int k, double a, double b) {
  if (k == 0) return (b - a) / (a + b + 2.0);
  const double s = 2.0 * k + a + b;
  return (b * b - a * a) / (s * (s + 2.0));
}

inline double jacobi_beta(int k, double a, double b) {
  if (k == 1) {
    const double s = 2.0 + a + b;
    return std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0)));
  }
  const double s = 2.0 * k + a + b;
  return std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
}

inline double jacobi_mu0(double a, double b) {
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

inline Rule make_gauss_jacobi(int n, double a, double b) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag(k) = jacobi_alpha(k, a, b);
  for (int k = 1; k < n; ++k) sub(k - 1) = jacobi_beta(k, a, b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (n == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag(0);
    es.compute(m, Eigen::EigenvaluesOnly);
  } else {
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  }
  const double mu0 = jacobi_mu0(a, b);
  const double p0 = 1.0 / std::sqrt(mu0);

  // Orthonormal p_0..p_n at x, together with p_n' and the Christoffel sum.
  auto eval = [&](double x, double& pn, double& dpn, double& christoffel) {
    double pm1 = 0.0, p = p0, dpm1 = 0.0, dp = 0.0;
    christoffel = p * p;
    for (int k = 0; k < n; ++k) {
      const double bk = k == 0 ? 0.0 : jacobi_beta(k, a, b);
      const double bk1 = jacobi_beta(k + 1, a, b);
      const double ak = jacobi_alpha(k, a, b);
      const double pn1 = ((x - ak) * p - bk * pm1) / bk1;
      const double dpn1 = ((x - ak) * dp + p - bk * dpm1) / bk1;
      pm1 = p;
      p = pn1;
      dpm1 = dp;
      dp = dpn1;
      if (k + 1 < n) christoffel += p * p;
    }
    pn = p;
    dpn = dp;
  };

  Rule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double pn, dpn, ch;
    for (int it = 0; it < 20; ++it) {
      eval(x, pn, dpn, ch);
      const double dx = pn / dpn;
      const double xn = std::clamp(x - dx, -1.0, 1.0);
      if (std::abs(xn - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
        x = xn;
        break;
      }
      x = xn;
    }
    eval(x, pn, dpn, ch);
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 1.0 / ch;
  }
  std::ostringstream ex;
  ex << "p(x)(1-x)^" << a << "(1+x)^" << b << " for deg p <= " << 2 * n - 1;
  r.exactness = ex.str();
  return r;
}

inline Rule make_periodic_trapezoid(int n) {
  Rule r;
  r.support = Support::Circle;
  r.lo = 0.0;
  r.hi = two_pi;
  r.exactness = "trigonometric polynomials of degree < " + std::to_string(n);
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.assign(static_cast<std::size_t>(n), two_pi / n);
  for (int j = 0; j < n; ++j) r.nodes[static_cast<std::size_t>(j)] = two_pi * j / n;
  return r;
}

template <class Key>
const Rule& cached(const Key& key, const std::function<Rule()>& build) {
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<Rule>> cache;
  std::lock_guard lk(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto [pos, ok] = cache.emplace(key, std::make_unique<Rule>(build()));
  return *pos->second;
}

inline std::uint64_t bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

}  // namespace detail

// Gauss-Legendre on [-1, 1]; exact for polynomials of degree <= 2n-1.
inline const Rule& gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  return detail::cached(std::tuple<int, int>{0, n}, [n] { return detail::make_gauss_legendre(n); });
}

// Gauss-Jacobi on [-1, 1] for the weight (1-x)^a (1+x)^b. The weight is folded
// into the returned weights: sum w_i f(x_i) ~ int (1-x)^a (1+x)^b f(x) dx.
inline const Rule& gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw PreconditionError("gauss_jacobi: n must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw PreconditionError("gauss_jacobi: exponents must exceed -1");
  if (a == 0.0 && b == 0.0) return gauss_legendre(n);
  return detail::cached(std::tuple<int, int, std::uint64_t, std::uint64_t>{1, n, detail::bits(a), detail::bits(b)},
                        [=] { return detail::make_gauss_jacobi(n, a, b); });
}

// n equispaced nodes on [0, 2pi) with weights 2pi/n.
inline const Rule& periodic_trapezoid(int n) {
  if (n < 1) throw PreconditionError("periodic_trapezoid: n must be >= 1");
  return detail::cached(std::tuple<int, int>{2, n}, [n] { return detail::make_periodic_trapezoid(n); });
}

// Rule for int_a^b (b-t)^alpha (t-a)^beta f(t) dt with the singular factors
// carried by the weights.
inline Rule jacobi_on(double a, double b, int n, double alpha_at_b, double beta_at_a) {
  const Rule& base = gauss_jacobi(n, alpha_at_b, beta_at_a);
  Rule r;
  r.lo = a;
  r.hi = b;
  r.exactness = base.exactness;
  const double half = 0.5 * (b - a);
  const double scale = std::pow(half, alpha_at_b + beta_at_a + 1.0);
  r.nodes.resize(base.size());
  r.weights.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    r.nodes[i] = a + half * (base.nodes[i] + 1.0);
    r.weights[i] = base.weights[i] * scale;
  }
  return r;
}

// Trapezoid rule on the circle pulled back through a disc automorphism:
// tan((theta-center)/2) = lambda tan(u/2) with u equispaced. Small lambda packs
// nodes around `center`; lambda = 1 is the plain (shifted) trapezoid rule.
// Nodes are reduced to [0, 2pi).
inline Rule mobius_trapezoid(int n, double center, double lambda) {
  if (n < 1) throw PreconditionError("mobius_trapezoid: n must be >= 1");
  if (!(lambda > 0.0) || lambda > 1.0) throw PreconditionError("mobius_trapezoid: lambda must lie in (0, 1]");
  Rule r;
  r.support = Support::Circle;
  r.lo = 0.0;
  r.hi = two_pi;
  r.exactness = "f(theta(u)) theta'(u) trigonometric of degree < " + std::to_string(n);
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const double h = two_pi / n;
  for (int j = 0; j < n; ++j) {
    const double u = -pi + h * (j + 0.5);
    const double c = std::cos(0.5 * u), s = std::sin(0.5 * u);
    const double th = 2.0 * std::atan2(lambda * s, c);
    double node = std::fmod(center + th, two_pi);
    if (node < 0.0) node += two_pi;
    r.nodes[static_cast<std::size_t>(j)] = node;
    r.weights[static_cast<std::size_t>(j)] = h * lambda / (c * c + lambda * lambda * s * s);
  }
  return r;
}

// Composite Gauss-Legendre on [a, b] with panels growing geometrically (x2)
// away from `focus`; the first panel on each side has width h0.
inline Rule graded_rule(double a, double b, double focus, double h0, int per_panel) {
  require(b > a, "graded_rule: empty interval");
  focus = std::clamp(focus, a, b);
  h0 = std::max(h0, 1e-15 * (b - a));
  std::vector<double> knots{focus};
  for (double w = h0, x = focus; x < b; w *= 2.0) {
    x = std::min(b, x + w);
    knots.push_back(x);
  }
  for (double w = h0, x = focus; x > a; w *= 2.0) {
    x = std::max(a, x - w);
    knots.insert(knots.begin(), x);
  }
  // Drop slivers produced by clamping at the ends.
  auto merge_sliver = [&](bool front) {
    if (knots.size() < 4) return;
    if (front) {
      const double w0 = knots[1] - knots[0], w1 = knots[2] - knots[1];
      if (w0 < 0.25 * w1) knots.erase(knots.begin() + 1);
    } else {
      const std::size_t m = knots.size();
      const double w0 = knots[m - 1] - knots[m - 2], w1 = knots[m - 2] - knots[m - 3];
      if (w0 < 0.25 * w1) knots.erase(knots.end() - 2);
    }
  };
  merge_sliver(true);
  merge_sliver(false);

  const Rule& gl = gauss_legendre(per_panel);
  Rule r;
  r.lo = a;
  r.hi = b;
  r.exactness = "piecewise polynomials of degree " + std::to_string(2 * per_panel - 1) + " on graded panels";
  for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
    if (!(knots[p + 1] > knots[p])) continue;
    const Rule seg = gl.mapped(knots[p], knots[p + 1]);
    r.nodes.insert(r.nodes.end(), seg.nodes.begin(), seg.nodes.end());
    r.weights.insert(r.weights.end(), seg.weights.begin(), seg.weights.end());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Integration

template <class F>
auto integrate(const Rule& rule, F&& f) {
  using T = std::decay_t<decltype(f(0.0))>;
  std::vector<T> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const T v = f(rule.nodes[i]);
    if (!detail::finite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand at node " << rule.nodes[i];
      throw QuadratureError(os.str());
    }
    terms[i] = rule.weights[i] * v;
  }
  return pairwise_sum(terms);
}

struct TensorRule {
  std::vector<Rule> axes;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
  }
};

// Visits every node of a tensor rule in row-major order (last axis fastest),
// passing the coordinates and the product weight.
template <class Fn>
void for_each_node(const TensorRule& rule, Fn&& fn) {
  const std::size_t dim = rule.axes.size();
  std::vector<double> x(dim);
  std::vector<std::size_t> idx(dim, 0);
  const std::size_t total = rule.size();
  for (std::size_t count = 0; count < total; ++count) {
    double w = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      x[d] = rule.axes[d].nodes[idx[d]];
      w *= rule.axes[d].weights[idx[d]];
    }
    fn(std::span<const double>(x), w);
    for (std::size_t d = dim; d-- > 0;) {
      if (++idx[d] < rule.axes[d].size()) break;
      idx[d] = 0;
    }
  }
}

// f receives the node coordinates as a span, one entry per axis.
template <class F>
auto integrate(const TensorRule& rule, F&& f) {
  std::vector<double> probe(rule.axes.size());
  using T = std::decay_t<decltype(f(std::span<const double>(probe)))>;
  std::vector<T> terms;
  terms.reserve(rule.size());
  for_each_node(rule, [&](std::span<const double> x, double w) {
    const T v = f(x);
    if (!detail::finite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand at node (";
      for (std::size_t d = 0; d < x.size(); ++d) os << (d ? ", " : "") << x[d];
      os << ")";
      throw QuadratureError(os.str());
    }
    terms.push_back(w * v);
  });
  return pairwise_sum(terms);
}

}  // namespace bergman::quad
