#pragma once

#include <vector>

#include "glc/grid_fn.hpp"
#include "glc/mesh.hpp"

namespace glc {

/// Physical and scheme constants of the controlled system.
struct SystemParams {
  double alpha = 1.0;  // diffusion, must stay positive
  double beta = 1.0;   // dispersion; 0 gives the parabolic limit
  double c = 0.0;      // real zeroth-order coefficient
  double gamma = 1.0;  // imaginary zeroth-order coefficient
  double T = 1.0;
  Interval omega{0.3, 0.6};    // control window
  Interval omega0{0.35, 0.55};  // profile window, closure inside omega

  double zeroth_order_bound() const {
    return std::max(std::abs(c), std::abs(gamma));
  }
  void validate() const;
};

/// Complex tridiagonal system solved by the Thomas algorithm with one pass
/// of iterative refinement. lower[i] multiplies x[i-1], upper[i] x[i+1].
struct Tridiagonal {
  std::vector<Complex> lower, diag, upper;

  int size() const { return static_cast<int>(diag.size()); }
  std::vector<Complex> apply(const std::vector<Complex>& x) const;
  /// Residual postcondition: ||A x - rhs||_inf <= 1e-12 ||rhs||_inf.
  /// Throws on a vanishing pivot (reports its index).
  std::vector<Complex> solve(const std::vector<Complex>& rhs) const;
};

enum class StepDirection { Forward, Adjoint };

/// Implicit-step matrix over all M+2 closure rows. Interior rows carry the
/// centred second difference, the two boundary rows the one-sided flux of
/// the dynamic boundary conditions. The adjoint matrix is the conjugate
/// transpose of the forward matrix under the weighted pairing (dx interior,
/// 1 boundary), which here equals the entrywise conjugate.
Tridiagonal assemble_step_matrix(const SystemParams& sys, const SpaceMesh& sm,
                                 double dt, StepDirection dir);

/// Control supported on the mesh nodes inside omega (half-open membership)
/// crossed with the dual time mesh. Values are stored time-major over the
/// support only.
struct ControlField {
  std::vector<int> support;  // closure indices of nodes in omega
  int nt = 0;                // dual mesh size N
  std::vector<Complex> values;

  static ControlField zero(const SystemParams& sys, const SpaceMesh& sm,
                           const TimeMesh& tm);
  Complex& at(int n, int k) { return values[static_cast<size_t>(n) * support.size() + k]; }
  const Complex& at(int n, int k) const {
    return values[static_cast<size_t>(n) * support.size() + k];
  }
  double norm_sq(const SpaceMesh& sm, const TimeMesh& tm) const;
};

/// Closure-by-primal-closed trajectory of the controlled system,
/// y^0..y^N including the boundary rows.
struct StateTrajectory {
  GridFn y;  // Closure x PrimalClosed
};

/// Closure-by-extended-dual trajectory of the adjoint system,
/// slices q^{1/2}..q^{N+1/2}.
struct AdjointTrajectory {
  GridFn q;  // Closure x DualClosed
};

/// Low-level stepper: solves A x = prev + dt * source for one implicit
/// step, with `source` covering all closure rows (so manufactured-solution
/// drivers can feed interior and boundary forcings alike).
class ImplicitStepper {
 public:
  ImplicitStepper(const SystemParams& sys, const SpaceMesh& sm, double dt,
                  StepDirection dir)
      : matrix_(assemble_step_matrix(sys, sm, dt, dir)), dt_(dt) {}

  const Tridiagonal& matrix() const { return matrix_; }
  std::vector<Complex> step(const std::vector<Complex>& prev,
                            const std::vector<Complex>* source = nullptr) const;

 private:
  Tridiagonal matrix_;
  double dt_;
};

/// Implicit solve of the forward controlled system from initial data g.
/// Requires dt * max(|c|, |gamma|) <= 1/4.
StateTrajectory forward_solve(const SystemParams& sys, const SpaceMesh& sm,
                              const TimeMesh& tm,
                              const std::vector<Complex>& g,
                              const ControlField& v);

/// Backward implicit solve of the adjoint system from terminal data q_T
/// (given at T + dt/2).
AdjointTrajectory adjoint_solve(const SystemParams& sys, const SpaceMesh& sm,
                                const TimeMesh& tm,
                                const std::vector<Complex>& q_T);

struct ResidualReport {
  double max_residual = 0.0;
  /// Natural magnitude of one scheme row; residuals should be compared
  /// against 1e-12 * scale.
  double scale = 0.0;
};

ResidualReport residual(const StateTrajectory& traj, const SystemParams& sys,
                        const SpaceMesh& sm, const TimeMesh& tm,
                        const ControlField& v);
ResidualReport residual(const AdjointTrajectory& traj, const SystemParams& sys,
                        const SpaceMesh& sm, const TimeMesh& tm);

struct DualityReport {
  double defect = 0.0;
  double scale = 0.0;  // sum of the magnitudes of the three pairing terms
};

/// |<y^N, q_T>_w - <g, q^{1/2}>_w - sum dx dt v conj(q)|; zero to roundoff
/// because the adjoint matrix is the exact conjugate transpose of the
/// forward matrix under the weighted pairing.
DualityReport duality_defect(const SystemParams& sys, const SpaceMesh& sm,
                             const TimeMesh& tm, const std::vector<Complex>& g,
                             const ControlField& v,
                             const std::vector<Complex>& q_T);

}  // namespace glc
