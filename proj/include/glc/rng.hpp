#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "glc/grid_fn.hpp"

namespace glc {

/// Deterministic random source. Gaussian variates are produced by an
/// explicit Box-Muller transform on top of mt19937_64 so that streams are
/// identical across standard libraries, not just across runs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = m * std::sin(a);
    have_spare_ = true;
    return m * std::cos(a);
  }

  Complex cgaussian() {
    const double re = gaussian();
    return {re, gaussian()};
  }

  /// Derived stream for sweep cell `index`: splitmix64 step of the root
  /// seed. Keeps concurrent cells deterministic and order-independent.
  static uint64_t cell_seed(uint64_t root, uint64_t index) {
    uint64_t z = root + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Complex Gaussian field on a node-set product.
GridFn random_field(Rng& rng, const SpaceMesh& sm, SpaceSet ss,
                    const TimeMesh& tm, TimeSet ts);
GridFn random_field(Rng& rng, const SpaceMesh& sm, SpaceSet ss);

}  // namespace glc
