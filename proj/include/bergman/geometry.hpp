#pragma once

// Model domains: disc, polydisc, ball, complex ellipsoid
// {|z1|^2 + |z2|^{2m} < 1}. Membership, boundary distance, boundary charts with
// surface measure, volume quadrature and monomial moments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <regex>
#include <span>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

using cplx = std::complex<double>;
using Point = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;

inline double norm_sq(const Point& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

inline double norm(const Point& z) { return std::sqrt(norm_sq(z)); }

// <z, w> = sum z_j conj(w_j)
inline cplx inner(const Point& z, const Point& w) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

// 1 - |w|^2 without cancellation near the unit sphere.
inline double one_minus_sq(double r) { return (1.0 - r) * (1.0 + r); }

inline double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

enum class DomainKind { UnitDisc, Polydisc, Ball, Ellipsoid };

class Domain {
 public:
  static Domain disc() { return Domain(DomainKind::UnitDisc, 1, 1); }
  static Domain polydisc(int n) {
    require(n >= 1, "polydisc dimension must be positive");
    if (n == 1) return disc();
    return Domain(DomainKind::Polydisc, n, n);
  }
  static Domain ball(int n) {
    require(n >= 1, "ball dimension must be positive");
    if (n == 1) return disc();
    return Domain(DomainKind::Ball, n, n);
  }
  static Domain ellipsoid(int m) {
    require(m >= 1, "ellipsoid exponent must be positive");
    if (m == 1) return ball(2);
    return Domain(DomainKind::Ellipsoid, 2, m);
  }

  // Accepts "disc", "ball2", "ball<2>", "ball(2)", and likewise for polydisc and
  // ellipsoid.
  static Domain parse(const std::string& text) {
    if (text == "disc" || text == "unitdisc") return disc();
    static const std::regex re(R"(^(polydisc|ball|ellipsoid)[<(]?([0-9]+)[>)]?$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw PreconditionError("unknown domain '" + text + "'");
    const int k = std::stoi(m[2].str());
    if (m[1] == "polydisc") return polydisc(k);
    if (m[1] == "ball") return ball(k);
    return ellipsoid(k);
  }

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // n for polydisc/ball, m for the ellipsoid, 1 for the disc.
  int param() const { return param_; }

  std::string name() const {
    switch (kind_) {
      case DomainKind::UnitDisc: return "disc";
      case DomainKind::Polydisc: return "polydisc" + std::to_string(param_);
      case DomainKind::Ball: return "ball" + std::to_string(param_);
      case DomainKind::Ellipsoid: return "ellipsoid" + std::to_string(param_);
    }
    return "?";
  }

  bool smooth_boundary() const { return kind_ != DomainKind::Polydisc; }

  double diameter() const {
    switch (kind_) {
      case DomainKind::UnitDisc:
      case DomainKind::Ball: return 2.0;
      case DomainKind::Polydisc: return 2.0 * std::sqrt(static_cast<double>(param_));
      case DomainKind::Ellipsoid: {
        // Farthest boundary point from the origin maximizes x^2 + y^2 on
        // x^2 + y^{2m} = 1, i.e. 1 - y^{2m} + y^2, at y^{2m-2} = 1/m.
        const double m = param_;
        const double y = std::pow(m, -1.0 / (2.0 * m - 2.0));
        return 2.0 * std::sqrt(1.0 - std::pow(y, 2.0 * m) + y * y);
      }
    }
    return 0.0;
  }

  // Negative inside, zero on the boundary.
  double defining(const Point& z) const {
    check_dim(z);
    switch (kind_) {
      case DomainKind::UnitDisc:
      case DomainKind::Ball: return norm_sq(z) - 1.0;
      case DomainKind::Polydisc: {
        double mx = 0.0;
        for (const auto& c : z) mx = std::max(mx, std::norm(c));
        return mx - 1.0;
      }
      case DomainKind::Ellipsoid: return std::norm(z[0]) + std::pow(std::norm(z[1]), param_) - 1.0;
    }
    return 0.0;
  }

  void check_dim(const Point& z) const {
    if (static_cast<int>(z.size()) != dim_)
      throw PreconditionError(name() + ": expected " + std::to_string(dim_) + " coordinates, got " +
                              std::to_string(z.size()));
  }

  bool operator==(const Domain& o) const { return kind_ == o.kind_ && param_ == o.param_; }

 private:
  Domain(DomainKind k, int dim, int param) : kind_(k), dim_(dim), param_(param) {}
  DomainKind kind_;
  int dim_;
  int param_;
};

inline bool contains(const Domain& d, const Point& z) { return d.defining(z) < 0.0; }

// ---------------------------------------------------------------------------
// Ellipsoid profile curve x^2 + y^{2m} = 1 in the (|z1|, |z2|) quadrant.

struct ProfilePoint {
  double distance;  // Euclidean distance from (X, Y) to the curve
  double x, y;      // nearest point
};

namespace detail {

// Two graph charts of the profile: A parametrized by y on [0, y_split] and B by x
// on [0, x_split]. At the split m y^{2m-1} = x, so |dx/dy| = |dy/dx| = 1 there.
struct ProfileSplit {
  double y_split, x_split;
};

inline ProfileSplit profile_split(int m) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double y = 0.5 * (lo + hi);
    const double g = m * std::pow(y, 2 * m - 1) - std::sqrt(1.0 - std::pow(y, 2 * m));
    (g < 0.0 ? lo : hi) = y;
  }
  const double y = 0.5 * (lo + hi);
  return {y, std::sqrt(1.0 - std::pow(y, 2 * m))};
}

// Value, first and second derivative of the graph function of a chart.
struct Graph {
  double f, d1, d2;
};

inline Graph chart_a(int m, double y) {  // x(y) = sqrt(1 - y^{2m})
  const double u = 1.0 - std::pow(y, 2 * m);
  const double u1 = -2.0 * m * std::pow(y, 2 * m - 1);
  const double u2 = -2.0 * m * (2 * m - 1) * std::pow(y, 2 * m - 2);
  const double x = std::sqrt(u);
  return {x, 0.5 * u1 / x, 0.5 * u2 / x - 0.25 * u1 * u1 / (u * x)};
}

inline Graph chart_b(int m, double x) {  // y(x) = (1 - x^2)^{1/(2m)}
  const double p = 1.0 / (2.0 * m);
  const double u = 1.0 - x * x;
  const double y = std::pow(u, p);
  const double d1 = p * y / u * (-2.0 * x);
  const double d2 = p * (p - 1.0) * y / (u * u) * 4.0 * x * x + p * y / u * (-2.0);
  return {y, d1, d2};
}

// Minimizes the squared distance over one chart. `swap` means the chart's
// parameter is x and its graph value is y (chart B).
inline ProfilePoint nearest_on_chart(int m, double X, double Y, double hi, bool swap) {
  auto eval = [&](double v, double& D, double& D1, double& D2) {
    const Graph g = swap ? chart_b(m, v) : chart_a(m, v);
    // chart A: point (g.f, v); chart B: point (v, g.f)
    const double dp = swap ? v - X : v - Y;          // along the parameter
    const double dg = swap ? g.f - Y : g.f - X;      // along the graph value
    D = dp * dp + dg * dg;
    D1 = 2.0 * (dp + dg * g.d1);
    D2 = 2.0 * (1.0 + g.d1 * g.d1 + dg * g.d2);
  };
  const int samples = 512;
  int best = 0;
  double bestD = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    double D, D1, D2;
    eval(hi * i / samples, D, D1, D2);
    if (D < bestD) {
      bestD = D;
      best = i;
    }
  }
  double a = hi * std::max(0, best - 1) / samples;
  double b = hi * std::min(samples, best + 1) / samples;
  double Da, Da1, Da2, Db, Db1, Db2;
  eval(a, Da, Da1, Da2);
  eval(b, Db, Db1, Db2);
  double v = hi * best / samples;
  if (Da1 < 0.0 && Db1 > 0.0) {
    // Safeguarded Newton on D'(v) = 0 inside the bracket [a, b].
    for (int it = 0; it < 200; ++it) {
      double D, D1, D2;
      eval(v, D, D1, D2);
      if (D1 == 0.0) break;
      (D1 < 0.0 ? a : b) = v;
      double nv = v - D1 / D2;
      if (!(D2 > 0.0) || !(nv > a && nv < b)) nv = 0.5 * (a + b);
      if (std::abs(nv - v) <= 1e-17 + 1e-16 * std::abs(v) || b - a <= 1e-16) {
        v = nv;
        break;
      }
      v = nv;
    }
  } else {
    // Minimum sits at a chart end; keep the better endpoint.
    v = Da <= Db ? a : b;
  }
  double D, D1, D2;
  eval(v, D, D1, D2);
  if (bestD < D) {
    v = hi * best / samples;
    eval(v, D, D1, D2);
  }
  const Graph g = swap ? chart_b(m, v) : chart_a(m, v);
  return swap ? ProfilePoint{std::sqrt(D), v, g.f} : ProfilePoint{std::sqrt(D), g.f, v};
}

}  // namespace detail

// Nearest point of the profile curve x^2 + y^{2m} = 1 (x, y >= 0) to (X, Y).
inline ProfilePoint ellipsoid_profile_nearest(int m, double X, double Y) {
  const auto split = detail::profile_split(m);
  const ProfilePoint pa = detail::nearest_on_chart(m, X, Y, split.y_split, false);
  const ProfilePoint pb = detail::nearest_on_chart(m, X, Y, split.x_split, true);
  return pa.distance <= pb.distance ? pa : pb;
}

inline double boundary_distance(const Domain& d, const Point& z) {
  if (!contains(d, z)) throw PreconditionError("boundary_distance: point is not interior to " + d.name());
  switch (d.kind()) {
    case DomainKind::UnitDisc: return 1.0 - std::abs(z[0]);
    case DomainKind::Ball: return 1.0 - norm(z);
    case DomainKind::Polydisc: {
      double mn = 1.0;
      for (const auto& c : z) mn = std::min(mn, 1.0 - std::abs(c));
      return mn;
    }
    case DomainKind::Ellipsoid:
      return ellipsoid_profile_nearest(d.param(), std::abs(z[0]), std::abs(z[1])).distance;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Boundary charts

struct Chart {
  std::string name;
  quad::TensorRule rule;  // parameter box with its quadrature
  std::function<Point(std::span<const double>)> map;
  std::function<double(std::span<const double>)> density;
};

struct BoundaryAtlas {
  std::vector<Chart> charts;
  double total_area = 0.0;

  // Integral of f over the boundary against surface measure.
  template <class F>
  auto integrate(F&& f) const {
    using T = std::decay_t<decltype(f(Point{}))>;
    std::vector<T> parts;
    for (const auto& c : charts)
      parts.push_back(quad::integrate(c.rule, [&](std::span<const double> p) { return T(f(c.map(p)) * c.density(p)); }));
    return quad::pairwise_sum(parts);
  }
};

namespace detail {

inline double sphere_area(int n) {  // area of S^{2n-1}
  return 2.0 * std::pow(pi, n) / std::tgamma(static_cast<double>(n));
}

// Positive-orthant point of S^{n-1} from angles phi_1..phi_{n-1} in [0, pi/2],
// with the spherical density prod_k sin^{n-1-k}(phi_k).
inline double orthant_point(std::span<const double> phi, std::vector<double>& omega) {
  const std::size_t n = phi.size() + 1;
  omega.assign(n, 0.0);
  double s = 1.0, dens = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    omega[k] = s * std::cos(phi[k]);
    if (n >= 2) dens *= std::pow(std::sin(phi[k]), static_cast<double>(n - 2 - k));
    s *= std::sin(phi[k]);
  }
  omega[n - 1] = s;
  return dens;
}

}  // namespace detail

inline BoundaryAtlas boundary_atlas(const Domain& d, int resolution) {
  if (!d.smooth_boundary()) throw UnsupportedDomain("boundary_atlas: " + d.name() + " has no smooth boundary chart");
  require(resolution >= 4, "boundary_atlas: resolution must be >= 4");
  BoundaryAtlas atlas;
  const quad::Rule& trap = quad::periodic_trapezoid(resolution);
  switch (d.kind()) {
    case DomainKind::UnitDisc: {
      Chart c;
      c.name = "circle";
      c.rule.axes = {trap};
      c.map = [](std::span<const double> p) { return Point{std::polar(1.0, p[0])}; };
      c.density = [](std::span<const double>) { return 1.0; };
      atlas.charts.push_back(std::move(c));
      atlas.total_area = 2.0 * pi;
      break;
    }
    case DomainKind::Ball: {
      const int n = d.param();
      const quad::Rule phi = quad::gauss_legendre(resolution).mapped(0.0, 0.5 * pi);
      Chart c;
      c.name = "sphere";
      for (int k = 0; k + 1 < n; ++k) c.rule.axes.push_back(phi);
      for (int k = 0; k < n; ++k) c.rule.axes.push_back(trap);
      c.map = [n](std::span<const double> p) {
        std::vector<double> omega;
        detail::orthant_point(p.first(static_cast<std::size_t>(n - 1)), omega);
        Point z(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = std::polar(omega[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(n - 1 + j)]);
        return z;
      };
      c.density = [n](std::span<const double> p) {
        std::vector<double> omega;
        double dens = detail::orthant_point(p.first(static_cast<std::size_t>(n - 1)), omega);
        for (double o : omega) dens *= o;
        return dens;
      };
      atlas.charts.push_back(std::move(c));
      atlas.total_area = detail::sphere_area(n);
      break;
    }
    case DomainKind::Ellipsoid: {
      const int m = d.param();
      const auto split = detail::profile_split(m);
      Chart a;
      a.name = "ellipsoid.y";
      a.rule.axes = {quad::gauss_legendre(resolution).mapped(0.0, split.y_split), trap, trap};
      a.map = [m](std::span<const double> p) {
        const auto g = detail::chart_a(m, p[0]);
        return Point{std::polar(g.f, p[1]), std::polar(p[0], p[2])};
      };
      a.density = [m](std::span<const double> p) {
        const auto g = detail::chart_a(m, p[0]);
        return g.f * p[0] * std::sqrt(1.0 + g.d1 * g.d1);
      };
      Chart b;
      b.name = "ellipsoid.x";
      b.rule.axes = {quad::gauss_legendre(resolution).mapped(0.0, split.x_split), trap, trap};
      b.map = [m](std::span<const double> p) {
        const auto g = detail::chart_b(m, p[0]);
        return Point{std::polar(p[0], p[1]), std::polar(g.f, p[2])};
      };
      b.density = [m](std::span<const double> p) {
        const auto g = detail::chart_b(m, p[0]);
        return p[0] * g.f * std::sqrt(1.0 + g.d1 * g.d1);
      };
      atlas.charts.push_back(std::move(a));
      atlas.charts.push_back(std::move(b));
      atlas.total_area = atlas.integrate([](const Point&) { return 1.0; });
      break;
    }
    case DomainKind::Polydisc: break;
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// Moments

inline double log_monomial_moment(const Domain& d, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != d.dim()) throw PreconditionError("monomial_moment: multi-index length mismatch");
  for (int a : alpha)
    if (a < 0) throw PreconditionError("monomial_moment: negative index");
  switch (d.kind()) {
    case DomainKind::UnitDisc: return std::log(pi) - std::log(alpha[0] + 1.0);
    case DomainKind::Polydisc: {
      double s = 0.0;
      for (int a : alpha) s += std::log(pi) - std::log(a + 1.0);
      return s;
    }
    case DomainKind::Ball: {
      // pi^n alpha! / (n + |alpha|)!
      const int n = d.dim();
      double s = n * std::log(pi);
      int total = n;
      for (int a : alpha) {
        s += std::lgamma(a + 1.0);
        total += a;
      }
      return s - std::lgamma(total + 1.0);
    }
    case DomainKind::Ellipsoid: {
      // (2pi)^2 / (2j+2) * 1/(2m) * B((k+1)/m, j+2)
      const double m = d.param();
      const double j = alpha[0], k = alpha[1];
      return 2.0 * std::log(2.0 * pi) - std::log(2.0 * j + 2.0) - std::log(2.0 * m) + log_beta((k + 1.0) / m, j + 2.0);
    }
  }
  return 0.0;
}

inline double monomial_moment(const Domain& d, const std::vector<int>& alpha) {
  return std::exp(log_monomial_moment(d, alpha));
}

inline double volume(const Domain& d) { return monomial_moment(d, std::vector<int>(static_cast<std::size_t>(d.dim()), 0)); }

// ---------------------------------------------------------------------------
// Volume quadrature: a flat list of weighted interior points.

struct VolumeNode {
  Point z;
  double weight;
};

using VolumeRule = std::vector<VolumeNode>;

// radial: Gauss-Legendre points in the radial variable; angular: trapezoid points
// per angle (and Gauss-Legendre points per sphere latitude). Exact for
// polynomials in (z, conj z) of moderate degree.
inline VolumeRule volume_rule(const Domain& d, int radial, int angular) {
  require(radial >= 1 && angular >= 1, "volume_rule: resolutions must be positive");
  VolumeRule out;
  const quad::Rule rr = quad::gauss_legendre(radial).mapped(0.0, 1.0);
  const quad::Rule& tr = quad::periodic_trapezoid(angular);
  switch (d.kind()) {
    case DomainKind::UnitDisc:
      for (std::size_t i = 0; i < rr.size(); ++i)
        for (std::size_t j = 0; j < tr.size(); ++j)
          out.push_back({Point{std::polar(rr.nodes[i], tr.nodes[j])}, rr.weights[i] * tr.weights[j] * rr.nodes[i]});
      break;
    case DomainKind::Polydisc: {
      const VolumeRule one = volume_rule(Domain::disc(), radial, angular);
      out.push_back({Point{}, 1.0});
      for (int k = 0; k < d.dim(); ++k) {
        VolumeRule next;
        next.reserve(out.size() * one.size());
        for (const auto& a : out)
          for (const auto& b : one) {
            Point z = a.z;
            z.push_back(b.z[0]);
            next.push_back({std::move(z), a.weight * b.weight});
          }
        out = std::move(next);
      }
      break;
    }
    case DomainKind::Ball: {
      const int n = d.dim();
      const BoundaryAtlas sphere = boundary_atlas(d, std::max(4, angular));
      const Chart& c = sphere.charts[0];
      std::vector<std::pair<Point, double>> sph;
      quad::for_each_node(c.rule, [&](std::span<const double> p, double w) { sph.emplace_back(c.map(p), w * c.density(p)); });
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double R = rr.nodes[i];
        const double wr = rr.weights[i] * std::pow(R, 2 * n - 1);
        for (const auto& [z, w] : sph) {
          Point p = z;
          for (auto& c2 : p) c2 *= R;
          out.push_back({std::move(p), wr * w});
        }
      }
      break;
    }
    case DomainKind::Ellipsoid: {
      // z2 = rho e^{i t2}, z1 = sqrt(1 - rho^{2m}) u e^{i t1};
      // dV = rho (1 - rho^{2m}) u drho du dt1 dt2.
      const int m = d.param();
      for (std::size_t i = 0; i < rr.size(); ++i) {
        const double rho = rr.nodes[i];
        const double c = 1.0 - std::pow(rho, 2 * m);
        const double sc = std::sqrt(c);
        for (std::size_t k = 0; k < rr.size(); ++k) {
          const double u = rr.nodes[k];
          const double w0 = rr.weights[i] * rr.weights[k] * rho * c * u;
          for (std::size_t a = 0; a < tr.size(); ++a)
            for (std::size_t b = 0; b < tr.size(); ++b)
              out.push_back({Point{std::polar(sc * u, tr.nodes[a]), std::polar(rho, tr.nodes[b])},
                             w0 * tr.weights[a] * tr.weights[b]});
        }
      }
      break;
    }
  }
  return out;
}

template <class F>
auto integrate_volume(const VolumeRule& rule, F&& f) {
  using T = std::decay_t<decltype(f(Point{}))>;
  std::vector<T> terms;
  terms.reserve(rule.size());
  for (const auto& node : rule) {
    const T v = f(node.z);
    if (!quad::detail::finite(v)) throw QuadratureError("non-finite volume integrand");
    terms.push_back(node.weight * v);
  }
  return quad::pairwise_sum(terms);
}

}  // namespace bergman
