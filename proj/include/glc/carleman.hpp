#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "glc/dynamics.hpp"
#include "glc/weights.hpp"

namespace glc {

/// Labeled per-term values of both sides of the weighted estimate for one
/// adjoint field, plus their ratio. The right side is evaluated with unit
/// constants, so the measured ratio is itself the empirical constant.
struct CarlemanBreakdown {
  // left side: eight integrals and their sum
  // 0 interior_dxx      s^-1 r^2 |Dxx q|^2        over interior x dual
  // 1 interior_dt       lag(s^-1 r^2) |Dt q|^2    over interior x primal
  // 2 interior_axdx     s r^2 |AxDx q|^2          over interior x dual
  // 3 dual_dx           s r^2 |Dx q|^2            over dual x dual
  // 4 interior_q        s^3 r^2 |q|^2             over interior x dual
  // 5 boundary_dt       lag(s^-1 r^2) |Dt q|^2    over boundary x primal
  // 6 boundary_tr_dx    s r^2 tr(|Dx q|^2)        over boundary x dual
  // 7 boundary_q        s^3 r^2 |q|^2             over boundary x dual
  // 8 sum
  std::array<double, 9> lhs{};
  // right side: five sources and their sum
  // 0 interior_source   lag(r^2) |P q|^2          over interior x primal
  // 1 boundary_source_left   lag(r^2) |B0 q|^2    at x = 0 over primal
  // 2 boundary_source_right  lag(r^2) |B1 q|^2    at x = 1 over primal
  // 3 local_window      s^3 r^2 |q|^2             over (omega cap M) x dual
  // 4 terminal_layer    dx^-2 lead(r^2) lead(|q|^2) at t in {0, T}
  // 5 sum (with the local term scaled by the configured local constant)
  std::array<double, 6> rhs{};
  double ratio = 0.0;  // lhs sum / rhs sum

  static const std::array<const char*, 9>& lhs_names();
  static const std::array<const char*, 6>& rhs_names();
};

/// Interior operator applied to an adjoint field:
/// P(q) = -Dt q - (alpha - i beta) Dxx lag(q), on interior x primal.
GridFn apply_P(const AdjointTrajectory& q, const SystemParams& sys,
               const SpaceMesh& sm, const TimeMesh& tm);

/// Boundary operators on the primal time mesh (index n <-> t^{n+1}):
/// left  B0(q) = Dt q(0) + (alpha - i beta) Dx lag(shift_+ q)(0)
/// right B1(q) = Dt q(1) - (alpha - i beta) Dx lag(shift_- q)(1)
struct BoundaryOps {
  std::vector<Complex> left, right;
};
BoundaryOps apply_boundary_ops(const AdjointTrajectory& q,
                               const SystemParams& sys, const SpaceMesh& sm,
                               const TimeMesh& tm);

struct ConjugationReport {
  double max_residual = 0.0;
  double scale = 0.0;
};

/// Exact change-of-variables identity for z = r q, in its pre-substitution
/// form: lag(r) P(q) = -Dt z - lag(r) Dt(rho) lead(z)
///   - (alpha - i beta) lag( r Dxx(rho) AxAx z + 2 r AxDx(rho) AxDx z
///                           + r AxAx(rho) Dxx z ).
/// Pure discrete Leibniz algebra; the residual is roundoff for any q.
ConjugationReport conjugation_residual(const AdjointTrajectory& q,
                                       const WeightSet& w,
                                       const SystemParams& sys,
                                       const SpaceMesh& sm,
                                       const TimeMesh& tm);

/// Evaluates every term of the estimate. Requires the primary weight
/// regime (tau floor and both smallness conditions); throws otherwise.
/// `local_constant` scales the window term inside the right-side sum
/// (1 keeps unit constants).
CarlemanBreakdown evaluate_carleman(const AdjointTrajectory& q,
                                    const WeightSet& w,
                                    const SystemParams& sys,
                                    const SpaceMesh& sm, const TimeMesh& tm,
                                    double local_constant = 1.0);

/// Terminal-data sample family used by sweeps: pseudorandom Gaussian
/// fields, boundary-concentrated mass, and the highest-frequency mode of
/// the mesh.
std::vector<std::pair<std::string, std::vector<Complex>>>
carleman_sample_family(const SpaceMesh& sm, int random_count, uint64_t seed);

struct CarlemanSweepConfig {
  SystemParams sys;
  WeightParams weights;  // tau and lambda overridden per cell
  std::vector<double> taus;
  std::vector<double> lambdas;
  std::vector<std::pair<int, int>> meshes;  // (M, N)
  int random_samples = 5;
  uint64_t seed = 1;
  double local_constant = 1.0;
};

struct CarlemanSweepRow {
  double tau = 0.0, lambda = 0.0, dx = 0.0, dt = 0.0;
  int M = 0, N = 0;
  std::string sample;
  CarlemanBreakdown breakdown;
  bool in_regime = true;
  std::string skip_reason;
  double wall_seconds = 0.0;
};

/// Runs the per-cell sample family over the (tau, lambda, mesh) grid;
/// out-of-regime cells are emitted with a skip reason instead of values.
std::vector<CarlemanSweepRow> sweep_carleman(const CarlemanSweepConfig& cfg);

}  // namespace glc
