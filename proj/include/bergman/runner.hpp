#pragma once

// Batch driver behind the command-line tool: every subcommand expands into a
// list of cases, cases run in parallel, and reports are emitted in case order.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "bergman/boundary.hpp"
#include "bergman/config.hpp"
#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/green.hpp"
#include "bergman/kernel.hpp"
#include "bergman/parallel.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/projection.hpp"
#include "bergman/report.hpp"
#include "bergman/rng.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

using Case = std::function<std::vector<VerificationReport>()>;

struct RunResult {
  std::vector<VerificationReport> reports;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "kernel-eval",  "verify-theorem1", "verify-projection", "verify-sharp-constant", "verify-green", "verify-herbort",
      "verify-hardy", "verify-toeplitz", "verify-infimum",    "verify-szego",          "all"};
  return names;
}

namespace cli {

// Domains a command runs on: the configured one (checked against `allowed`), or the defaults.
inline std::vector<Domain> domains_for(const ExperimentConfig& c, const std::string& cmd,
                                       const std::vector<std::string>& defaults,
                                       const std::function<bool(const Domain&)>& allowed) {
  if (!c.domain) {
    std::vector<Domain> out;
    for (const auto& d : defaults) out.push_back(Domain::parse(d));
    return out;
  }
  const Domain d = Domain::parse(*c.domain);
  if (!allowed(d)) throw UnsupportedDomain(cmd + " does not support domain " + d.name());
  return {d};
}

inline bool disc_or_ball(const Domain& d) { return d.kind() == DomainKind::UnitDisc || d.kind() == DomainKind::Ball; }
inline bool disc_only(const Domain& d) { return d.kind() == DomainKind::UnitDisc; }

inline int pick(int configured, int fallback) { return configured > 0 ? configured : fallback; }

inline std::vector<double> grid_or(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)) ^ (0xbf58476d1ce4e5b9ULL * (index + 1));
}

// Uniform point of the domain with Euclidean norm <= rmax, by rejection.
inline Point random_point(Rng& rng, const Domain& d, double rmax) {
  Point z(static_cast<std::size_t>(d.dim()));
  for (;;) {
    for (auto& c : z) c = rmax * rng.complex_unit_square();
    if (norm(z) <= rmax && contains(d, z)) return z;
  }
}

// ---------------------------------------------------------------------------

inline std::vector<Case> kernel_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "kernel-eval", {"disc", "ball2", "polydisc2", "ellipsoid2"},
                                [](const Domain&) { return true; });
  const int samples = pick(c.samples, 10);
  const int res = pick(c.resolution, 32);
  for (std::size_t di = 0; di < doms.size(); ++di) {
    const Domain d = doms[di];
    for (int i = 0; i < samples; ++i) {
      cases.push_back([=] {
        Rng rng(case_seed(c.seed, 100 + di, static_cast<std::uint64_t>(i)));
        const HolomorphicPolynomial p = random_polynomial(rng, d.dim(), 6);
        const Point z = random_point(rng, d, 0.5);
        const KernelEvaluator k(d);
        const double resid = reproduce_check(k, p, z, res);
        VerificationReport r = upper_bound_report("kernel.reproduce", d.name(), resid, 1e-8, 0.0, 0.0);
        r.input("z", point_string(z)).input("p", p.describe()).input("resolution", static_cast<double>(res));
        return std::vector<VerificationReport>{r};
      });
      cases.push_back([=] {
        Rng rng(case_seed(c.seed, 200 + di, static_cast<std::uint64_t>(i)));
        const Point z = random_point(rng, d, 0.95);
        const Point w = random_point(rng, d, 0.95);
        const cplx closed = KernelEvaluator(d).bergman(z, w);
        const cplx series = KernelEvaluator(d, KernelMode::MomentSeries).bergman(z, w);
        const double rel = std::abs(series - closed) / std::abs(closed);
        VerificationReport r = upper_bound_report("kernel.series_agreement", d.name(), rel, 1e-10, 0.0, 1e-14);
        r.input("z", point_string(z)).input("w", point_string(w)).input("K_re", closed.real()).input("K_im", closed.imag());
        return std::vector<VerificationReport>{r};
      });
    }
  }
  return cases;
}

inline std::vector<Case> theorem1_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "verify-theorem1", {"disc", "ball2", "ellipsoid2"},
                                [](const Domain& d) { return d.smooth_boundary(); });
  const int res = pick(c.resolution, 16);
  for (const Domain& d : doms) {
    const std::vector<double> deltas =
        grid_or(c.deltas, d.kind() == DomainKind::Ellipsoid ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4}
                                                            : std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
    cases.push_back([=] {
      const Point dir = default_direction(d);
      const auto coarse = theorem1_sweep(d, dir, deltas, res);
      const auto fine = theorem1_sweep(d, dir, deltas, 2 * res);
      std::vector<VerificationReport> out;
      for (const auto& r : coarse) out.push_back(to_verification(d, r));
      out.push_back(floor_stability(d, coarse, fine, res));
      return out;
    });
  }
  return cases;
}

inline std::vector<WeightSpec> projection_weights(const ExperimentConfig& c) {
  std::vector<WeightSpec> ws;
  for (double r : grid_or(c.r, {0.3, 0.6})) {
    ws.push_back(WeightSpec::loglog(r));
    ws.push_back(WeightSpec::log_delta(r));
  }
  for (double t : grid_or(c.t, {0.5})) {
    ws.push_back(WeightSpec::df_index(t, 1.0, HDescriptor::Delta));
    ws.push_back(WeightSpec::df_index(t, 1.0, HDescriptor::LogModulus));
  }
  return ws;
}

inline std::vector<Case> projection_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  (void)domains_for(c, "verify-projection", {"disc"}, disc_only);
  const int samples = pick(c.samples, 200);
  const auto weights = projection_weights(c);
  for (int i = 0; i < samples; ++i) {
    cases.push_back([=] {
      Rng rng(case_seed(c.seed, 300, static_cast<std::uint64_t>(i)));
      const DiscFunction f = random_disc_function(rng);
      const std::string label = "random#" + std::to_string(i);
      std::vector<VerificationReport> out;
      for (const auto& w : weights) {
        out.push_back(weighted_ratio_report(f, w, label));
        for (auto& k : kohn_reports(f, w, label)) out.push_back(k);
      }
      return out;
    });
  }
  for (double x : {0.0, 0.5, 0.9})
    for (double r : {0.5, 0.9, 0.99}) cases.push_back([=] { return std::vector<VerificationReport>{sublevel_hardy_report(x, 1.0, r)}; });
  for (double t : grid_or(c.t, {0.5})) {
    if (!(t < 1.0)) throw ConfigError("verify-projection: t must lie in (0, 1)");
    const double qmax = 4.0 / (2.0 - t);
    for (double q : {2.0, 0.5 * (2.0 + qmax)})
      cases.push_back([=] { return std::vector<VerificationReport>{df_lq_check(t, q, c.seed)}; });
  }
  return cases;
}

inline std::vector<Case> sharp_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  (void)domains_for(c, "verify-sharp-constant", {"disc"}, disc_only);
  const auto grid = grid_or(c.r, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  for (double r : grid) cases.push_back([=] { return sharp_example_reports(r); });
  cases.push_back([=] { return blocki_remark_check(grid); });
  return cases;
}

inline std::vector<double> green_poles() {
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(i / 20.0);
  return xs;
}

inline std::vector<Case> green_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "verify-green", {"disc", "ball2"}, disc_or_ball);
  std::vector<double> ts = c.t;
  if (ts.empty())
    for (int j = 1; j <= 10; ++j) ts.push_back(0.25 * j);
  for (const Domain& d : doms) {
    for (double x : green_poles()) {
      cases.push_back([=] {
        Point w(static_cast<std::size_t>(d.dim()), cplx(0.0));
        w[0] = x;
        const GreenEvaluator g(d, w);
        std::vector<VerificationReport> out;
        for (double t : ts) out.push_back(sublevel_inclusion_report(g, t));
        if (d.kind() == DomainKind::UnitDisc)
          for (double t : ts) out.push_back(sublevel_kernel_check(g, t));
        return out;
      });
    }
    const auto deltas = grid_or(c.deltas, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
    cases.push_back([=] { return log_inclusion_check(d, deltas); });
  }
  return cases;
}

inline std::vector<Case> herbort_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "verify-herbort", {"disc", "ball2"}, disc_or_ball);
  const int samples = pick(c.samples, 500);
  const int res = pick(c.resolution, 8);
  for (std::size_t di = 0; di < doms.size(); ++di) {
    const Domain d = doms[di];
    for (int i = 0; i < samples; ++i) {
      cases.push_back([=] {
        Rng rng(case_seed(c.seed, 400 + di, static_cast<std::uint64_t>(i)));
        const Point w = random_point(rng, d, 0.95);
        const double t = c.t.empty() ? rng.uniform(0.1, 3.0) : c.t[static_cast<std::size_t>(i) % c.t.size()];
        const HolomorphicPolynomial f = random_polynomial(rng, d.dim(), 4);
        return std::vector<VerificationReport>{herbort_check(GreenEvaluator(d, w), t, f, res)};
      });
    }
  }
  return cases;
}

inline std::vector<Case> hardy_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  (void)domains_for(c, "verify-hardy", {"disc"}, disc_only);
  const auto rs = grid_or(c.r, default_hardy_schedule());
  if (rs.size() < 2) throw ConfigError("verify-hardy needs at least two r values");
  for (double x : {0.0, 0.5, 0.9}) cases.push_back([=] { return std::vector<VerificationReport>{hardy_identity_check(x, rs)}; });
  cases.push_back([=] { return std::vector<VerificationReport>{hardy_report(hardy_constant_limit(rs), "1")}; });
  return cases;
}

inline std::vector<Case> toeplitz_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "verify-toeplitz", {"disc", "ball2"}, disc_or_ball);
  const int res = pick(c.resolution, 32);
  const auto deltas = grid_or(c.deltas, default_toeplitz_schedule());
  for (const Domain& d : doms) {
    const int n = d.dim();
    const auto alphas = grid_or(c.alpha, n == 1 ? std::vector<double>{0.0, 0.5, 1.0, 3.0}
                                                : std::vector<double>{0.0, 1.0, 2.0, n + 3.0});
    for (double a : alphas) cases.push_back([=] { return std::vector<VerificationReport>{exponent_report(d, exponent_fit(d, a, deltas, res))}; });
    const double p = n == 1 ? 2.0 : 4.0 / 3.0;
    cases.push_back([=] {
      VerificationReport r = exponent_report(d, lp_exponent_fit(d, p, deltas, res));
      r.statement_id = "toeplitz.lp_slope";
      r.inputs[0] = {"p", fmt17(p)};
      return std::vector<VerificationReport>{r};
    });
  }
  return cases;
}

inline std::vector<Case> infimum_cases(const ExperimentConfig& c) {
  if (c.domain) throw UnsupportedDomain("verify-infimum takes a dimension (--n), not a domain");
  std::vector<Case> cases;
  std::vector<int> ns = c.n;
  if (ns.empty()) ns = {1, 2, 3, 4, 5};
  for (int n : ns) cases.push_back([=] { return infimum_reports(n); });
  return cases;
}

inline std::vector<Case> szego_cases(const ExperimentConfig& c) {
  std::vector<Case> cases;
  const auto doms = domains_for(c, "verify-szego", {"disc", "ball2"}, disc_or_ball);
  for (const Domain& d : doms) {
    cases.push_back([=] {
      std::vector<VerificationReport> out;
      for (int i = 0; i < 100; ++i) {
        Point w(static_cast<std::size_t>(d.dim()), cplx(0.0));
        w[0] = 1.0 - std::pow(10.0, -6.0 * i / 99.0);
        out.push_back(szego_bergman_ratio(d, w));
      }
      return out;
    });
  }
  return cases;
}

inline std::vector<Case> cases_for(const std::string& cmd, const ExperimentConfig& c) {
  if (cmd == "kernel-eval") return kernel_cases(c);
  if (cmd == "verify-theorem1") return theorem1_cases(c);
  if (cmd == "verify-projection") return projection_cases(c);
  if (cmd == "verify-sharp-constant") return sharp_cases(c);
  if (cmd == "verify-green") return green_cases(c);
  if (cmd == "verify-herbort") return herbort_cases(c);
  if (cmd == "verify-hardy") return hardy_cases(c);
  if (cmd == "verify-toeplitz") return toeplitz_cases(c);
  if (cmd == "verify-infimum") return infimum_cases(c);
  if (cmd == "verify-szego") return szego_cases(c);
  if (cmd == "all") {
    std::vector<Case> all;
    for (const auto& name : subcommands()) {
      if (name == "all") continue;
      try {
        auto part = cases_for(name, c);
        all.insert(all.end(), part.begin(), part.end());
      } catch (const UnsupportedDomain&) {
        // a configured domain only runs the commands that accept it
        if (!c.domain) throw;
      }
    }
    return all;
  }
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

}  // namespace cli

// Runs every case of `cmd`, applies the tolerance scale, and returns reports in case order.
inline RunResult run(const std::string& cmd, const ExperimentConfig& c) {
  validate(c);
  const std::vector<Case> cases = cli::cases_for(cmd, c);
  std::vector<std::vector<VerificationReport>> slots(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { slots[i] = cases[i](); });
  RunResult out;
  for (auto& s : slots)
    for (auto& r : s) {
      r.tolerance *= c.tolerance_scale;
      r.decide();
      (r.pass ? out.passed : out.failed) += 1;
      out.reports.push_back(std::move(r));
    }
  return out;
}

inline void emit(std::ostream& os, const RunResult& r, ReportFormat fmt) {
  ReportWriter w(os, fmt);
  for (const auto& rep : r.reports) w.write(rep);
  w.finish();
}

}  // namespace bergman
