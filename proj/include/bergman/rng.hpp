#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace bergman {

// mt19937_64 with hand-rolled transforms, so the same seed gives the same
// stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1); }

  // Uniform point in the disc of radius r.
  std::complex<double> in_disc(double r = 1.0) {
    const double rho = r * std::sqrt(uniform());
    return std::polar(rho, 2.0 * 3.14159265358979323846 * uniform());
  }

  std::complex<double> complex_unit_square() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bergman
