#pragma once

// Bergman and Szego kernels of the model domains.
//
// ClosedForm mode uses explicit formulas (disc, polydisc, ball, and the
// ellipsoid {|z1|^2 + |z2|^{2m} < 1}). MomentSeries mode sums
// sum_alpha z^alpha conj(w)^alpha / c_alpha shell by shell in total degree and
// refuses to return a value whose geometric tail bound exceeds tail_tol.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

enum class KernelMode { ClosedForm, MomentSeries };

// Calls fn(alpha) for every multi-index of length n with |alpha| = d, in
// lexicographic order.
template <class Fn>
void for_each_multi_index(int n, int d, Fn&& fn) {
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      alpha[static_cast<std::size_t>(pos)] = left;
      fn(static_cast<const std::vector<int>&>(alpha));
      return;
    }
    for (int a = left; a >= 0; --a) {
      alpha[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, d);
}

namespace detail {

// log c_alpha for every alpha with |alpha| <= degree, grouped by shell in the
// order of for_each_multi_index. Built once per evaluator family.
struct MomentTable {
  std::once_flag once;
  int degree = 0;
  std::vector<std::vector<double>> shells;

  void build(const Domain& d, int max_degree) {
    std::call_once(once, [&] {
      // Cap the table at a few million entries; deeper shells fall back to
      // direct log-Gamma evaluation.
      std::size_t total = 0;
      for (int k = 0; k <= max_degree; ++k) {
        std::size_t count = 0;
        for_each_multi_index(d.dim(), k, [&](const std::vector<int>&) { ++count; });
        if (total + count > 1'000'000) break;
        total += count;
        std::vector<double> shell;
        shell.reserve(count);
        for_each_multi_index(d.dim(), k, [&](const std::vector<int>& a) { shell.push_back(log_monomial_moment(d, a)); });
        shells.push_back(std::move(shell));
        degree = k;
      }
    });
  }
};

// One table per (domain, degree cap), shared by every evaluator in the process.
inline std::shared_ptr<MomentTable> shared_moment_table(const Domain& d, int cap) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<MomentTable>> tables;
  std::lock_guard lk(mu);
  auto& t = tables[{d.name(), cap}];
  if (!t) t = std::make_shared<MomentTable>();
  return t;
}

}  // namespace detail

class KernelEvaluator {
 public:
  explicit KernelEvaluator(Domain d, KernelMode mode = KernelMode::ClosedForm, double tail_tol = 1e-14,
                           int max_degree = 20000)
      : domain_(d), mode_(mode), tail_tol_(tail_tol), max_degree_(max_degree),
        table_(detail::shared_moment_table(d, std::min(max_degree, 4000))) {
    require(tail_tol > 0.0, "kernel: tail_tol must be positive");
  }

  const Domain& domain() const { return domain_; }
  KernelMode mode() const { return mode_; }
  double tail_tol() const { return tail_tol_; }

  cplx bergman(const Point& z, const Point& w) const {
    check(z);
    check(w);
    if (mode_ == KernelMode::MomentSeries) return series(z, w);
    return closed(z, w);
  }

  // K(w, w) as a real positive value.
  double diag(const Point& w) const {
    check(w);
    if (mode_ == KernelMode::MomentSeries) return series(w, w).real();
    return closed_diag(w);
  }

 private:
  void check(const Point& z) const {
    domain_.check_dim(z);
    if (!contains(domain_, z)) throw PreconditionError("kernel: point is not interior to " + domain_.name());
  }

  cplx closed(const Point& z, const Point& w) const {
    switch (domain_.kind()) {
      case DomainKind::UnitDisc: {
        const cplx q = 1.0 - z[0] * std::conj(w[0]);
        return 1.0 / (pi * q * q);
      }
      case DomainKind::Polydisc: {
        cplx v = 1.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
          const cplx q = 1.0 - z[j] * std::conj(w[j]);
          v /= pi * q * q;
        }
        return v;
      }
      case DomainKind::Ball: {
        const int n = domain_.dim();
        const cplx q = 1.0 - inner(z, w);
        return std::exp(std::lgamma(n + 1.0) - n * std::log(pi)) / std::pow(q, n + 1);
      }
      case DomainKind::Ellipsoid: {
        // With a = z1 conj(w1), b = z2 conj(w2), X = b (1-a)^{-1/m}:
        // K = (1-a)^{-2-1/m} [ (1+X)/(1-X)^3 + m/(1-X)^2 ] / (pi^2 m).
        const double m = domain_.param();
        const cplx a = z[0] * std::conj(w[0]);
        const cplx b = z[1] * std::conj(w[1]);
        const cplx oma = 1.0 - a;
        const cplx X = b * std::pow(oma, -1.0 / m);
        const cplx omx = 1.0 - X;
        return std::pow(oma, -2.0 - 1.0 / m) * ((1.0 + X) / (omx * omx * omx) + m / (omx * omx)) / (pi * pi * m);
      }
    }
    return 0.0;
  }

  double closed_diag(const Point& w) const {
    switch (domain_.kind()) {
      case DomainKind::UnitDisc: {
        const double q = one_minus_sq(std::abs(w[0]));
        return 1.0 / (pi * q * q);
      }
      case DomainKind::Polydisc: {
        double v = 1.0;
        for (const auto& c : w) {
          const double q = one_minus_sq(std::abs(c));
          v /= pi * q * q;
        }
        return v;
      }
      case DomainKind::Ball: {
        const int n = domain_.dim();
        const double q = one_minus_sq(norm(w));
        return std::exp(std::lgamma(n + 1.0) - n * std::log(pi) - (n + 1) * std::log(q));
      }
      case DomainKind::Ellipsoid: {
        const double m = domain_.param();
        const double oma = one_minus_sq(std::abs(w[0]));
        const double X = std::norm(w[1]) * std::pow(oma, -1.0 / m);
        const double omx = 1.0 - X;
        return std::pow(oma, -2.0 - 1.0 / m) * ((1.0 + X) / (omx * omx * omx) + m / (omx * omx)) / (pi * pi * m);
      }
    }
    return 0.0;
  }

  cplx series(const Point& z, const Point& w) const {
    table_->build(domain_, std::min(max_degree_, 4000));
    const int n = domain_.dim();
    std::vector<double> logabs(static_cast<std::size_t>(n));
    std::vector<double> arg(static_cast<std::size_t>(n));
    bool all_zero = true;
    for (int j = 0; j < n; ++j) {
      const cplx u = z[static_cast<std::size_t>(j)] * std::conj(w[static_cast<std::size_t>(j)]);
      const double au = std::abs(u);
      logabs[static_cast<std::size_t>(j)] = au > 0.0 ? std::log(au) : -std::numeric_limits<double>::infinity();
      arg[static_cast<std::size_t>(j)] = std::arg(u);
      if (au > 0.0) all_zero = false;
    }
    std::vector<cplx> shells;
    double prev_abs = 0.0, prev_ratio = std::numeric_limits<double>::infinity();
    for (int d = 0; d <= max_degree_; ++d) {
      std::vector<cplx> terms;
      std::vector<double> mags;
      std::size_t idx = 0;
      for_each_multi_index(n, d, [&](const std::vector<int>& a) {
        const double logc = d <= table_->degree ? table_->shells[static_cast<std::size_t>(d)][idx] : log_monomial_moment(domain_, a);
        ++idx;
        double lm = -logc, ph = 0.0;
        for (int j = 0; j < n; ++j) {
          const int aj = a[static_cast<std::size_t>(j)];
          if (aj == 0) continue;
          lm += aj * logabs[static_cast<std::size_t>(j)];
          ph += aj * arg[static_cast<std::size_t>(j)];
        }
        const double mag = std::exp(lm);
        mags.push_back(mag);
        terms.push_back(std::polar(mag, ph));
      });
      shells.push_back(quad::pairwise_sum(terms));
      const double abs_shell = quad::pairwise_sum(mags);
      if (d == 0) {
        if (all_zero) return shells[0];
        prev_abs = abs_shell;
        continue;
      }
      const double ratio = abs_shell / prev_abs;
      const bool settled = d >= 8 && ratio < 1.0 && ratio <= prev_ratio * (1.0 + 1e-12);
      if (settled && abs_shell * ratio / (1.0 - ratio) < tail_tol_) return quad::pairwise_sum(shells);
      prev_abs = abs_shell;
      prev_ratio = ratio;
    }
    throw KernelTailError("moment series on " + domain_.name() + " did not reach tail tolerance within degree " +
                          std::to_string(max_degree_));
  }

  Domain domain_;
  KernelMode mode_;
  double tail_tol_;
  int max_degree_;
  std::shared_ptr<detail::MomentTable> table_;
};

inline cplx bergman_eval(const KernelEvaluator& e, const Point& z, const Point& w) { return e.bergman(z, w); }

inline double kernel_diag(const KernelEvaluator& e, const Point& w) { return e.diag(w); }

inline cplx szego_eval(const Domain& d, const Point& z, const Point& w) {
  d.check_dim(z);
  d.check_dim(w);
  if (!contains(d, z) || !contains(d, w)) throw PreconditionError("szego: points must be interior");
  switch (d.kind()) {
    case DomainKind::UnitDisc: return 1.0 / (2.0 * pi * (1.0 - z[0] * std::conj(w[0])));
    case DomainKind::Ball: {
      const int n = d.dim();
      const double c = std::exp(std::lgamma(static_cast<double>(n)) - n * std::log(pi)) / 2.0;
      return c / std::pow(1.0 - inner(z, w), n);
    }
    default: throw UnsupportedDomain("szego kernel is only available on the disc and balls, not " + d.name());
  }
}

// S(w, w) without cancellation near the boundary.
inline double szego_diag(const Domain& d, const Point& w) {
  if (d.kind() == DomainKind::UnitDisc) return 1.0 / (2.0 * pi * one_minus_sq(std::abs(w[0])));
  if (d.kind() == DomainKind::Ball) {
    const int n = d.dim();
    return std::exp(std::lgamma(static_cast<double>(n)) - n * std::log(pi) - n * std::log(one_minus_sq(norm(w)))) / 2.0;
  }
  throw UnsupportedDomain("szego kernel is only available on the disc and balls, not " + d.name());
}

// |int K(z, w) p(w) dV(w) - p(z)| by volume quadrature with `resolution`
// points per radial and angular direction.
inline double reproduce_check(const KernelEvaluator& e, const HolomorphicPolynomial& p, const Point& z, int resolution) {
  require(p.degree() <= 10, "reproduce_check: polynomial degree must be <= 10");
  const VolumeRule rule = volume_rule(e.domain(), resolution, resolution);
  const cplx integral = integrate_volume(rule, [&](const Point& w) { return e.bergman(z, w) * p(w); });
  return std::abs(integral - p(z));
}

}  // namespace bergman
