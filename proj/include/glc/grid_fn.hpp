#pragma once

#include <complex>
#include <vector>

#include "glc/mesh.hpp"

namespace glc {

using Complex = std::complex<double>;

enum class Shift { Minus = -1, Plus = +1 };

/// Complex-valued grid function tagged with the node sets it lives on.
/// Static fields (space only) use TimeSet::None. Storage is time-major:
/// a time slice is contiguous.
class GridFn {
 public:
  GridFn() = default;
  GridFn(const SpaceMesh& sm, SpaceSet ss)
      : GridFn(ss, TimeSet::None, sm.cardinality(ss), 1) {}
  GridFn(const SpaceMesh& sm, SpaceSet ss, const TimeMesh& tm, TimeSet ts)
      : GridFn(ss, ts, sm.cardinality(ss), tm.cardinality(ts)) {}
  GridFn(SpaceSet ss, TimeSet ts, int nx, int nt)
      : space_set_(ss), time_set_(ts), nx_(nx), nt_(ts == TimeSet::None ? 1 : nt),
        v_(static_cast<size_t>(nx_) * nt_, Complex()) {}

  SpaceSet space_set() const { return space_set_; }
  TimeSet time_set() const { return time_set_; }
  int nx() const { return nx_; }
  int nt() const { return nt_; }

  Complex& at(int t, int j) { return v_[static_cast<size_t>(t) * nx_ + j]; }
  const Complex& at(int t, int j) const {
    return v_[static_cast<size_t>(t) * nx_ + j];
  }
  Complex& at(int j) { return v_[j]; }  // static fields
  const Complex& at(int j) const { return v_[j]; }

  std::vector<Complex>& values() { return v_; }
  const std::vector<Complex>& values() const { return v_; }

  /// Copy of time slice t as a plain vector (size nx).
  std::vector<Complex> slice(int t) const {
    return {v_.begin() + static_cast<size_t>(t) * nx_,
            v_.begin() + static_cast<size_t>(t + 1) * nx_};
  }

  /// Largest |value|; the "scale" used by relative residual checks.
  double max_abs() const;

  GridFn conj() const;

 private:
  SpaceSet space_set_ = SpaceSet::Interior;
  TimeSet time_set_ = TimeSet::None;
  int nx_ = 0;
  int nt_ = 1;
  std::vector<Complex> v_;
};

/// Samples f(x) on the given spatial node set (static field).
template <class F>
GridFn sample_space(const SpaceMesh& sm, SpaceSet ss, F&& f) {
  GridFn u(sm, ss);
  for (int j = 0; j < u.nx(); ++j) u.at(j) = Complex(f(sm.position(ss, j)));
  return u;
}

/// Samples f(x, t) on a space-time node set product.
template <class F>
GridFn sample_spacetime(const SpaceMesh& sm, SpaceSet ss, const TimeMesh& tm,
                        TimeSet ts, F&& f) {
  GridFn u(sm, ss, tm, ts);
  for (int n = 0; n < u.nt(); ++n)
    for (int j = 0; j < u.nx(); ++j)
      u.at(n, j) = Complex(f(sm.position(ss, j), tm.position(ts, n)));
  return u;
}

// ---- node-set algebra -------------------------------------------------
//
// Spatial operators act per time slice and move between sets:
//   s_, A_x, D_x : Closure -> Dual,  Dual -> Interior
//   D_x² = D_x ∘ D_x : Closure -> Interior
// Time operators act per space column:
//   t^, D_t : DualClosed -> Primal,  PrimalClosed -> Dual
// Any other source set throws (the shift would leave the mesh).

GridFn shift_space(const GridFn& u, Shift dir, const SpaceMesh& sm);
GridFn avg_x(const GridFn& u, const SpaceMesh& sm);
GridFn diff_x(const GridFn& u, const SpaceMesh& sm);
GridFn diff_x2(const GridFn& u, const SpaceMesh& sm);

GridFn shift_time(const GridFn& u, Shift dir, const TimeMesh& tm);
GridFn diff_t(const GridFn& u, const TimeMesh& tm);

GridFn multiply(const GridFn& a, const GridFn& b);
GridFn add(const GridFn& a, const GridFn& b);
GridFn subtract(const GridFn& a, const GridFn& b);
GridFn scale(const GridFn& a, Complex factor);

// ---- integrals --------------------------------------------------------
//
// Interior/dual sums carry weight dx (and dt in time); boundary sums carry
// weight 1. Closure integrals combine interior (weight dx) and boundary
// (weight 1), matching the L²(closure) norm splitting.

Complex integral_space(const GridFn& u, const SpaceMesh& sm, int time_idx = 0);
Complex integral_time(const GridFn& u, const TimeMesh& tm, int space_idx = 0);
/// Full space-time integral with both weights.
Complex integral_spacetime(const GridFn& u, const SpaceMesh& sm,
                           const TimeMesh& tm);
/// (u, v) = integral of u * conj(v) over the shared node set.
Complex inner_product(const GridFn& u, const GridFn& v, const SpaceMesh& sm,
                      const TimeMesh& tm);
double norm_sq(const GridFn& u, const SpaceMesh& sm, const TimeMesh& tm);

/// Weighted closure pairing over a single slice: dx on interior nodes,
/// 1 on the two boundary nodes. `a`, `b` are closure slices (size M+2).
Complex closure_inner(const std::vector<Complex>& a,
                      const std::vector<Complex>& b, const SpaceMesh& sm);
double closure_norm_sq(const std::vector<Complex>& a, const SpaceMesh& sm);

// ---- traces -----------------------------------------------------------

/// Trace of a dual-set field on the boundary: tr(u)(0) = s_+u(0) = u_{1/2},
/// tr(u)(1) = s_-u(1) = u_{M+1/2}.
struct TraceResult {
  Complex left, right;      // trace values at x = 0 and x = 1
  double normal_left = -1;  // outward normal n_x(0)
  double normal_right = 1;  // n_x(1)
};
TraceResult trace_normal(const GridFn& u, const SpaceMesh& sm,
                         int time_idx = 0);

}  // namespace glc
