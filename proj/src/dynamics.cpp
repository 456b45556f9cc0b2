#include "glc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace glc {

void SystemParams::validate() const {
  if (!(alpha > 0.0))
    throw std::invalid_argument("SystemParams: alpha must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("SystemParams: T must be positive");
  if (!omega.valid_in_unit() || !(omega.a > 0.0 && omega.b < 1.0))
    throw std::invalid_argument(
        "SystemParams: omega must be an open subinterval of (0,1)");
  if (!omega.strictly_contains(omega0))
    throw std::invalid_argument(
        "SystemParams: the closure of omega0 must lie inside omega");
}

std::vector<Complex> Tridiagonal::apply(const std::vector<Complex>& x) const {
  const int n = size();
  std::vector<Complex> y(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = diag[i] * x[i];
    if (i > 0) acc += lower[i] * x[i - 1];
    if (i + 1 < n) acc += upper[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

std::vector<Complex> Tridiagonal::solve(const std::vector<Complex>& rhs) const {
  const int n = size();
  std::vector<Complex> c_prime(n), x(n), d(rhs);

  auto sweep = [&](std::vector<Complex>& b) {
    Complex piv = diag[0];
    if (std::abs(piv) == 0.0)
      throw std::runtime_error("Tridiagonal::solve: zero pivot at row 0");
    c_prime[0] = upper.empty() ? Complex(0) : upper[0] / piv;
    b[0] /= piv;
    for (int i = 1; i < n; ++i) {
      piv = diag[i] - lower[i] * c_prime[i - 1];
      if (std::abs(piv) == 0.0)
        throw std::runtime_error("Tridiagonal::solve: zero pivot at row " +
                                 std::to_string(i));
      c_prime[i] = (i + 1 < n ? upper[i] : Complex(0)) / piv;
      b[i] = (b[i] - lower[i] * b[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) b[i] -= c_prime[i] * b[i + 1];
  };

  std::vector<Complex> b(d);
  sweep(b);
  x = b;

  // One pass of iterative refinement keeps the residual postcondition even
  // when the matrix is far from diagonally dominant.
  std::vector<Complex> r = apply(x);
  double rn = 0.0, bn = 0.0;
  for (int i = 0; i < n; ++i) {
    r[i] = rhs[i] - r[i];
    rn = std::max(rn, std::abs(r[i]));
    bn = std::max(bn, std::abs(rhs[i]));
  }
  if (rn > 1e-14 * bn && bn > 0.0) {
    sweep(r);
    for (int i = 0; i < n; ++i) x[i] += r[i];
  }
  return x;
}

Tridiagonal assemble_step_matrix(const SystemParams& sys, const SpaceMesh& sm,
                                 double dt, StepDirection dir) {
  sys.validate();
  if (!(dt > 0.0))
    throw std::invalid_argument("assemble_step_matrix: dt must be positive");
  if (dt * sys.zeroth_order_bound() >= 1.0)
    throw std::invalid_argument(
        "assemble_step_matrix: dt * max(|c|,|gamma|) must stay below 1");

  const Complex eta = dir == StepDirection::Forward
                          ? Complex(sys.alpha, sys.beta)
                          : Complex(sys.alpha, -sys.beta);
  const Complex zeta = dir == StepDirection::Forward
                           ? Complex(sys.c, sys.gamma)
                           : Complex(sys.c, -sys.gamma);
  const int n = sm.M + 2;
  const double dx = sm.dx;

  Tridiagonal A;
  A.lower.assign(n, Complex(0));
  A.diag.assign(n, Complex(0));
  A.upper.assign(n, Complex(0));

  const Complex lap = eta * dt / (dx * dx);
  for (int j = 1; j <= sm.M; ++j) {
    A.lower[j] = -lap;
    A.diag[j] = Complex(1.0) + dt * zeta + 2.0 * lap;
    A.upper[j] = -lap;
  }
  const Complex flux = eta * dt / dx;
  A.diag[0] = Complex(1.0) + dt * zeta + flux;
  A.upper[0] = -flux;
  A.diag[n - 1] = Complex(1.0) + dt * zeta + flux;
  A.lower[n - 1] = -flux;
  return A;
}

ControlField ControlField::zero(const SystemParams& sys, const SpaceMesh& sm,
                                const TimeMesh& tm) {
  ControlField v;
  for (int j = 1; j <= sm.M; ++j)
    if (sys.omega.contains_node(sm.position(SpaceSet::Closure, j)))
      v.support.push_back(j);
  v.nt = tm.N;
  v.values.assign(static_cast<size_t>(v.nt) * v.support.size(), Complex(0));
  return v;
}

double ControlField::norm_sq(const SpaceMesh& sm, const TimeMesh& tm) const {
  double acc = 0.0;
  for (const Complex& z : values) acc += std::norm(z);
  return acc * sm.dx * tm.dt;
}

std::vector<Complex> ImplicitStepper::step(
    const std::vector<Complex>& prev, const std::vector<Complex>* source) const {
  std::vector<Complex> rhs(prev);
  if (source) {
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += dt_ * (*source)[i];
  }
  return matrix_.solve(rhs);
}

namespace {

void require_step_regime(const SystemParams& sys, const TimeMesh& tm,
                         const char* who) {
  if (tm.dt * sys.zeroth_order_bound() > 0.25)
    throw std::invalid_argument(std::string(who) +
                                ": requires dt * max(|c|,|gamma|) <= 1/4");
}

}  // namespace

StateTrajectory forward_solve(const SystemParams& sys, const SpaceMesh& sm,
                              const TimeMesh& tm,
                              const std::vector<Complex>& g,
                              const ControlField& v) {
  require_step_regime(sys, tm, "forward_solve");
  if (static_cast<int>(g.size()) != sm.M + 2)
    throw std::invalid_argument("forward_solve: g must live on the closure");
  if (v.nt != tm.N)
    throw std::invalid_argument("forward_solve: control time tag mismatch");

  ImplicitStepper stepper(sys, sm, tm.dt, StepDirection::Forward);
  StateTrajectory traj{GridFn(SpaceSet::Closure, TimeSet::PrimalClosed,
                              sm.M + 2, tm.N + 1)};
  std::vector<Complex> cur(g), src(g.size(), Complex(0));
  for (int j = 0; j < sm.M + 2; ++j) traj.y.at(0, j) = cur[j];
  for (int n = 0; n < tm.N; ++n) {
    std::fill(src.begin(), src.end(), Complex(0));
    for (size_t k = 0; k < v.support.size(); ++k)
      src[v.support[k]] = v.at(n, static_cast<int>(k));
    cur = stepper.step(cur, &src);
    for (int j = 0; j < sm.M + 2; ++j) traj.y.at(n + 1, j) = cur[j];
  }
  return traj;
}

AdjointTrajectory adjoint_solve(const SystemParams& sys, const SpaceMesh& sm,
                                const TimeMesh& tm,
                                const std::vector<Complex>& q_T) {
  require_step_regime(sys, tm, "adjoint_solve");
  if (static_cast<int>(q_T.size()) != sm.M + 2)
    throw std::invalid_argument("adjoint_solve: q_T must live on the closure");

  ImplicitStepper stepper(sys, sm, tm.dt, StepDirection::Adjoint);
  AdjointTrajectory traj{GridFn(SpaceSet::Closure, TimeSet::DualClosed,
                                sm.M + 2, tm.N + 1)};
  std::vector<Complex> cur(q_T);
  for (int j = 0; j < sm.M + 2; ++j) traj.q.at(tm.N, j) = cur[j];
  for (int m = tm.N; m >= 1; --m) {
    cur = stepper.step(cur, nullptr);
    for (int j = 0; j < sm.M + 2; ++j) traj.q.at(m - 1, j) = cur[j];
  }
  return traj;
}

namespace {

double scheme_row_scale(const SystemParams& sys, const SpaceMesh& sm,
                        const TimeMesh& tm, double field_scale) {
  const double eta = std::hypot(sys.alpha, sys.beta);
  const double zeta = std::hypot(sys.c, sys.gamma);
  return field_scale *
         (2.0 / tm.dt + 4.0 * eta / (sm.dx * sm.dx) + zeta + 1.0);
}

}  // namespace

ResidualReport residual(const StateTrajectory& traj, const SystemParams& sys,
                        const SpaceMesh& sm, const TimeMesh& tm,
                        const ControlField& v) {
  const Complex eta(sys.alpha, sys.beta);
  const Complex zeta(sys.c, sys.gamma);
  const double dx = sm.dx, dt = tm.dt;
  const GridFn& y = traj.y;
  double worst = 0.0;

  std::vector<Complex> src(sm.M + 2);
  for (int n = 0; n < tm.N; ++n) {
    std::fill(src.begin(), src.end(), Complex(0));
    for (size_t k = 0; k < v.support.size(); ++k)
      src[v.support[k]] = v.at(n, static_cast<int>(k));
    for (int j = 1; j <= sm.M; ++j) {
      Complex res = (y.at(n + 1, j) - y.at(n, j)) / dt -
                    eta * (y.at(n + 1, j + 1) - 2.0 * y.at(n + 1, j) +
                           y.at(n + 1, j - 1)) /
                        (dx * dx) +
                    zeta * y.at(n + 1, j) - src[j];
      worst = std::max(worst, std::abs(res));
    }
    const int R = sm.M + 1;
    Complex res0 = (y.at(n + 1, 0) - y.at(n, 0)) / dt -
                   eta * (y.at(n + 1, 1) - y.at(n + 1, 0)) / dx +
                   zeta * y.at(n + 1, 0);
    Complex resR = (y.at(n + 1, R) - y.at(n, R)) / dt +
                   eta * (y.at(n + 1, R) - y.at(n + 1, R - 1)) / dx +
                   zeta * y.at(n + 1, R);
    worst = std::max({worst, std::abs(res0), std::abs(resR)});
  }
  return {worst, scheme_row_scale(sys, sm, tm, y.max_abs())};
}

ResidualReport residual(const AdjointTrajectory& traj, const SystemParams& sys,
                        const SpaceMesh& sm, const TimeMesh& tm) {
  const Complex eta(sys.alpha, -sys.beta);
  const Complex zeta(sys.c, -sys.gamma);
  const double dx = sm.dx, dt = tm.dt;
  const GridFn& q = traj.q;
  double worst = 0.0;

  for (int m = 1; m <= tm.N; ++m) {
    // equation at t^m: -D_t q - eta D_x^2 t^-(q) + zeta t^-(q) = 0
    for (int j = 1; j <= sm.M; ++j) {
      Complex res = -(q.at(m, j) - q.at(m - 1, j)) / dt -
                    eta * (q.at(m - 1, j + 1) - 2.0 * q.at(m - 1, j) +
                           q.at(m - 1, j - 1)) /
                        (dx * dx) +
                    zeta * q.at(m - 1, j);
      worst = std::max(worst, std::abs(res));
    }
    const int R = sm.M + 1;
    Complex res0 = -(q.at(m, 0) - q.at(m - 1, 0)) / dt -
                   eta * (q.at(m - 1, 1) - q.at(m - 1, 0)) / dx +
                   zeta * q.at(m - 1, 0);
    Complex resR = -(q.at(m, R) - q.at(m - 1, R)) / dt +
                   eta * (q.at(m - 1, R) - q.at(m - 1, R - 1)) / dx +
                   zeta * q.at(m - 1, R);
    worst = std::max({worst, std::abs(res0), std::abs(resR)});
  }
  return {worst, scheme_row_scale(sys, sm, tm, q.max_abs())};
}

DualityReport duality_defect(const SystemParams& sys, const SpaceMesh& sm,
                             const TimeMesh& tm, const std::vector<Complex>& g,
                             const ControlField& v,
                             const std::vector<Complex>& q_T) {
  StateTrajectory y = forward_solve(sys, sm, tm, g, v);
  AdjointTrajectory q = adjoint_solve(sys, sm, tm, q_T);

  Complex lhs = closure_inner(y.y.slice(tm.N), q_T, sm);
  Complex rhs = closure_inner(g, q.q.slice(0), sm);
  Complex ctrl = 0.0;
  for (int n = 0; n < tm.N; ++n)
    for (size_t k = 0; k < v.support.size(); ++k)
      ctrl += v.at(n, static_cast<int>(k)) *
              std::conj(q.q.at(n, v.support[k]));
  ctrl *= sm.dx * tm.dt;

  DualityReport rep;
  rep.defect = std::abs(lhs - rhs - ctrl);
  rep.scale = std::abs(lhs) + std::abs(rhs) + std::abs(ctrl) + 1e-300;
  return rep;
}

}  // namespace glc
