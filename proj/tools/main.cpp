// bergman: batch verification driver.
//
//   bergman <subcommand> [--domain D] [--deltas 1e-1..1e-6] [--r 0.1..0.9:9] ...
//
// Exit status: 0 when every report passes, 1 when any fails or a computation
// breaks down, 2 on usage and configuration errors.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "bergman/bergman.hpp"

namespace {

struct Flags {
  std::string config, domain, deltas, r, alpha, t, n, format, out;
  int resolution = 0, samples = 0;
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
};

bergman::ExperimentConfig merge(const CLI::App& app, const Flags& f) {
  using namespace bergman;
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--domain")) c.domain = f.domain;
  if (given("--resolution")) c.resolution = f.resolution;
  if (given("--seed")) c.seed = f.seed;
  if (given("--samples")) c.samples = f.samples;
  if (given("--deltas")) c.deltas = parse_grid(f.deltas, true, "deltas");
  if (given("--r")) c.r = parse_grid(f.r, false, "r");
  if (given("--alpha")) c.alpha = parse_grid(f.alpha, false, "alpha");
  if (given("--t")) c.t = parse_grid(f.t, false, "t");
  if (given("--n")) c.n = parse_int_grid(f.n, "n");
  if (given("--format")) c.format = f.format;
  if (given("--out")) c.out = f.out;
  if (given("--tolerance-scale")) c.tolerance_scale = f.tolerance_scale;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Bergman kernel boundary estimates"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON configuration file; flags override its fields");
  app.add_option("--domain", f.domain, "disc, ball<n>, polydisc<n> or ellipsoid<m>");
  app.add_option("--resolution", f.resolution, "quadrature resolution (0: command default)");
  app.add_option("--seed", f.seed, "seed for randomized corpora");
  app.add_option("--samples", f.samples, "size of randomized corpora (0: command default)");
  app.add_option("--deltas", f.deltas, "boundary distances: list or geometric range a..b[:count]");
  app.add_option("--r", f.r, "r values: list or range a..b[:count]");
  app.add_option("--alpha", f.alpha, "weight exponents: list or range");
  app.add_option("--t", f.t, "sublevel / index values: list or range");
  app.add_option("--n", f.n, "dimensions for verify-infimum: list or range");
  app.add_option("--format", f.format, "csv or json");
  app.add_option("--out", f.out, "output path (default stdout)");
  app.add_option("--tolerance-scale", f.tolerance_scale, "multiplies every report tolerance");
  const std::map<std::string, std::string> blurb{
      {"kernel-eval", "reproducing property and series/closed-form agreement of K"},
      {"verify-theorem1", "boundary norm ratio delta ||K(.,w)||^2 / K(w,w) against 4en+1"},
      {"verify-projection", "weighted projection bound, Kohn orthogonality, weighted L^q"},
      {"verify-sharp-constant", "pi r / sin(pi r) example and the improved-constant check"},
      {"verify-green", "sublevel-set annulus, kernel comparison, log-scale inclusion"},
      {"verify-herbort", "sublevel mass lower bound on random polynomials"},
      {"verify-hardy", "(1-r)-weighted volume integrals tending to boundary norms"},
      {"verify-toeplitz", "growth exponents of weighted kernel integrals"},
      {"verify-infimum", "inf over t of (e^t+1) e^{2nt} / (e^t-1) against 4en+1"},
      {"verify-szego", "S(w,w) / K(w,w) against delta(w) / (4en+1)"},
      {"all", "every command above"}};
  for (const auto& name : bergman::subcommands()) app.add_subcommand(name, blurb.count(name) ? blurb.at(name) : "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  bergman::ExperimentConfig c;
  bergman::RunResult result;
  try {
    c = merge(app, f);
    result = bergman::run(cmd, c);
  } catch (const bergman::PreconditionError& e) {
    std::cerr << "bergman " << cmd << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bergman " << cmd << ": numerical failure: " << e.what() << '\n';
    return 1;
  }

  try {
    const auto fmt = bergman::parse_format(c.format);
    if (c.out.empty()) {
      bergman::emit(std::cout, result, fmt);
    } else {
      std::ofstream os(c.out);
      if (!os) throw bergman::Error("cannot open '" + c.out + "' for writing");
      bergman::emit(os, result, fmt);
    }
  } catch (const std::exception& e) {
    std::cerr << "bergman " << cmd << ": " << e.what() << '\n';
    return 2;
  }
  std::cerr << cmd << ": " << result.reports.size() << " reports, " << result.passed << " passed, " << result.failed
            << " failed\n";
  return result.failed == 0 ? 0 : 1;
}
