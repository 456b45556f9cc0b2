#include "glc/grid_fn.hpp"

#include <algorithm>
#include <cmath>

namespace glc {

namespace {

[[noreturn]] void bad_space_tag(const char* op, SpaceSet s) {
  throw std::invalid_argument(std::string(op) + ": shift leaves the mesh for a " +
                              to_string(s) +
                              " field (valid sources: closure, dual)");
}

[[noreturn]] void bad_time_tag(const char* op, TimeSet t) {
  throw std::invalid_argument(std::string(op) + ": not defined on time set " +
                              to_string(t) +
                              " (valid sources: dual_closed, primal_closed)");
}

void require_same_shape(const GridFn& a, const GridFn& b, const char* op) {
  if (a.space_set() != b.space_set() || a.time_set() != b.time_set() ||
      a.nx() != b.nx() || a.nt() != b.nt())
    throw std::invalid_argument(std::string(op) + ": tag mismatch (" +
                                to_string(a.space_set()) + " x " +
                                to_string(a.time_set()) + " vs " +
                                to_string(b.space_set()) + " x " +
                                to_string(b.time_set()) + ")");
}

SpaceSet space_target(const GridFn& u, const char* op) {
  if (u.space_set() == SpaceSet::Closure) return SpaceSet::Dual;
  if (u.space_set() == SpaceSet::Dual) return SpaceSet::Interior;
  bad_space_tag(op, u.space_set());
}

// out[k] = f(u[k+1], u[k]): on the staggered storage the node one step up
// in index is the +dx/2 neighbour, the same index the -dx/2 neighbour.
template <class F>
GridFn space_stencil(const GridFn& u, const SpaceMesh& sm, const char* op,
                     F&& f) {
  SpaceSet target = space_target(u, op);
  GridFn out(target, u.time_set(), sm.cardinality(target), u.nt());
  for (int n = 0; n < u.nt(); ++n)
    for (int k = 0; k < out.nx(); ++k)
      out.at(n, k) = f(u.at(n, k + 1), u.at(n, k));
  return out;
}

TimeSet time_target(const GridFn& u, const char* op) {
  if (u.time_set() == TimeSet::DualClosed) return TimeSet::Primal;
  if (u.time_set() == TimeSet::PrimalClosed) return TimeSet::Dual;
  bad_time_tag(op, u.time_set());
}

template <class F>
GridFn time_stencil(const GridFn& u, const TimeMesh& tm, const char* op,
                    F&& f) {
  TimeSet target = time_target(u, op);
  GridFn out(u.space_set(), target, u.nx(), tm.cardinality(target));
  for (int n = 0; n < out.nt(); ++n)
    for (int j = 0; j < u.nx(); ++j)
      out.at(n, j) = f(u.at(n + 1, j), u.at(n, j));
  return out;
}

}  // namespace

double GridFn::max_abs() const {
  double m = 0.0;
  for (const auto& z : v_) m = std::max(m, std::abs(z));
  return m;
}

GridFn GridFn::conj() const {
  GridFn out = *this;
  for (auto& z : out.values()) z = std::conj(z);
  return out;
}

GridFn shift_space(const GridFn& u, Shift dir, const SpaceMesh& sm) {
  if (dir == Shift::Plus)
    return space_stencil(u, sm, "shift_space",
                         [](Complex up, Complex) { return up; });
  return space_stencil(u, sm, "shift_space",
                       [](Complex, Complex dn) { return dn; });
}

GridFn avg_x(const GridFn& u, const SpaceMesh& sm) {
  return space_stencil(u, sm, "avg_x",
                       [](Complex up, Complex dn) { return 0.5 * (up + dn); });
}

GridFn diff_x(const GridFn& u, const SpaceMesh& sm) {
  const double inv = 1.0 / sm.dx;
  return space_stencil(
      u, sm, "diff_x", [inv](Complex up, Complex dn) { return (up - dn) * inv; });
}

GridFn diff_x2(const GridFn& u, const SpaceMesh& sm) {
  return diff_x(diff_x(u, sm), sm);
}

GridFn shift_time(const GridFn& u, Shift dir, const TimeMesh& tm) {
  if (dir == Shift::Plus)
    return time_stencil(u, tm, "shift_time",
                        [](Complex up, Complex) { return up; });
  return time_stencil(u, tm, "shift_time",
                      [](Complex, Complex dn) { return dn; });
}

GridFn diff_t(const GridFn& u, const TimeMesh& tm) {
  const double inv = 1.0 / tm.dt;
  return time_stencil(
      u, tm, "diff_t", [inv](Complex up, Complex dn) { return (up - dn) * inv; });
}

GridFn multiply(const GridFn& a, const GridFn& b) {
  require_same_shape(a, b, "multiply");
  GridFn out = a;
  for (size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] *= b.values()[i];
  return out;
}

GridFn add(const GridFn& a, const GridFn& b) {
  require_same_shape(a, b, "add");
  GridFn out = a;
  for (size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] += b.values()[i];
  return out;
}

GridFn subtract(const GridFn& a, const GridFn& b) {
  require_same_shape(a, b, "subtract");
  GridFn out = a;
  for (size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] -= b.values()[i];
  return out;
}

GridFn scale(const GridFn& a, Complex factor) {
  GridFn out = a;
  for (auto& z : out.values()) z *= factor;
  return out;
}

namespace {

double space_weight(SpaceSet s, double dx) {
  return s == SpaceSet::Boundary ? 1.0 : dx;
}

double time_weight(TimeSet t, double dt) {
  return (t == TimeSet::Boundary || t == TimeSet::None) ? 1.0 : dt;
}

}  // namespace

Complex integral_space(const GridFn& u, const SpaceMesh& sm, int time_idx) {
  if (u.space_set() == SpaceSet::Closure) {
    // dx-weighted interior plus unit-weighted boundary.
    Complex acc = u.at(time_idx, 0) + u.at(time_idx, u.nx() - 1);
    Complex interior = 0.0;
    for (int j = 1; j + 1 < u.nx(); ++j) interior += u.at(time_idx, j);
    return acc + interior * sm.dx;
  }
  const double w = space_weight(u.space_set(), sm.dx);
  Complex acc = 0.0;
  for (int j = 0; j < u.nx(); ++j) acc += u.at(time_idx, j);
  return acc * w;
}

Complex integral_time(const GridFn& u, const TimeMesh& tm, int space_idx) {
  const double w = time_weight(u.time_set(), tm.dt);
  Complex acc = 0.0;
  for (int n = 0; n < u.nt(); ++n) acc += u.at(n, space_idx);
  return acc * w;
}

Complex integral_spacetime(const GridFn& u, const SpaceMesh& sm,
                           const TimeMesh& tm) {
  const double wt = time_weight(u.time_set(), tm.dt);
  Complex acc = 0.0;
  for (int n = 0; n < u.nt(); ++n) acc += integral_space(u, sm, n);
  return acc * wt;
}

Complex inner_product(const GridFn& u, const GridFn& v, const SpaceMesh& sm,
                      const TimeMesh& tm) {
  require_same_shape(u, v, "inner_product");
  return integral_spacetime(multiply(u, v.conj()), sm, tm);
}

double norm_sq(const GridFn& u, const SpaceMesh& sm, const TimeMesh& tm) {
  GridFn sq = u;
  for (auto& z : sq.values()) z = Complex(std::norm(z), 0.0);
  return integral_spacetime(sq, sm, tm).real();
}

Complex closure_inner(const std::vector<Complex>& a,
                      const std::vector<Complex>& b, const SpaceMesh& sm) {
  const int n = static_cast<int>(a.size());
  Complex acc = a[0] * std::conj(b[0]) + a[n - 1] * std::conj(b[n - 1]);
  Complex interior = 0.0;
  for (int j = 1; j + 1 < n; ++j) interior += a[j] * std::conj(b[j]);
  return acc + interior * sm.dx;
}

double closure_norm_sq(const std::vector<Complex>& a, const SpaceMesh& sm) {
  const int n = static_cast<int>(a.size());
  double acc = std::norm(a[0]) + std::norm(a[n - 1]);
  double interior = 0.0;
  for (int j = 1; j + 1 < n; ++j) interior += std::norm(a[j]);
  return acc + interior * sm.dx;
}

TraceResult trace_normal(const GridFn& u, const SpaceMesh& sm, int time_idx) {
  if (u.space_set() != SpaceSet::Dual)
    throw std::invalid_argument(
        "trace_normal: trace is defined for dual-set fields, got " +
        std::string(to_string(u.space_set())));
  (void)sm;
  TraceResult tr;
  tr.left = u.at(time_idx, 0);
  tr.right = u.at(time_idx, u.nx() - 1);
  return tr;
}

}  // namespace glc
