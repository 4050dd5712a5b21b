#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/rng.hpp"

namespace bergman {

struct Monomial {
  cplx coef;
  std::vector<int> alpha;
};

// Finite sum of coef * z^alpha.
struct HolomorphicPolynomial {
  std::vector<Monomial> terms;

  static HolomorphicPolynomial constant(cplx c, int dim) { return {{{c, std::vector<int>(static_cast<std::size_t>(dim), 0)}}}; }

  static HolomorphicPolynomial monomial(std::vector<int> alpha, cplx c = 1.0) { return {{{c, std::move(alpha)}}}; }

  int degree() const {
    int d = 0;
    for (const auto& t : terms) {
      int s = 0;
      for (int a : t.alpha) s += a;
      d = std::max(d, s);
    }
    return d;
  }

  cplx operator()(const Point& z) const {
    cplx s = 0.0;
    for (const auto& t : terms) {
      if (t.alpha.size() != z.size()) throw PreconditionError("polynomial: dimension mismatch");
      cplx v = t.coef;
      for (std::size_t j = 0; j < z.size(); ++j)
        for (int k = 0; k < t.alpha[j]; ++k) v *= z[j];
      s += v;
    }
    return s;
  }

  std::string describe() const {
    std::string out;
    for (const auto& t : terms) {
      if (!out.empty()) out += "+";
      out += "(" + std::to_string(t.coef.real()) + (t.coef.imag() < 0 ? "" : "+") + std::to_string(t.coef.imag()) + "i)";
      for (std::size_t j = 0; j < t.alpha.size(); ++j)
        if (t.alpha[j] > 0) out += "z" + std::to_string(j + 1) + "^" + std::to_string(t.alpha[j]);
    }
    return out.empty() ? "0" : out;
  }
};

// 1 to 4 random monomials of total degree <= max_degree with coefficients in the
// unit square.
inline HolomorphicPolynomial random_polynomial(Rng& rng, int dim, int max_degree) {
  HolomorphicPolynomial p;
  const int terms = rng.integer(1, 4);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
    int left = rng.integer(0, max_degree);
    for (int j = 0; j < dim && left > 0; ++j) {
      const int a = j + 1 == dim ? left : rng.integer(0, left);
      alpha[static_cast<std::size_t>(j)] = a;
      left -= a;
    }
    p.terms.push_back({rng.complex_unit_square(), std::move(alpha)});
  }
  return p;
}

}  // namespace bergman
