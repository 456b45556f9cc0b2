#include "glc/carleman.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "glc/rng.hpp"

namespace glc {

const std::array<const char*, 9>& CarlemanBreakdown::lhs_names() {
  static const std::array<const char*, 9> names = {
      "interior_dxx",  "interior_dt",    "interior_axdx",
      "dual_dx",       "interior_q",     "boundary_dt",
      "boundary_tr_dx", "boundary_q",    "lhs_sum"};
  return names;
}

const std::array<const char*, 6>& CarlemanBreakdown::rhs_names() {
  static const std::array<const char*, 6> names = {
      "interior_source", "boundary_source_left", "boundary_source_right",
      "local_window",    "terminal_layer",       "rhs_sum"};
  return names;
}

GridFn apply_P(const AdjointTrajectory& q, const SystemParams& sys,
               const SpaceMesh& sm, const TimeMesh& tm) {
  if (q.q.space_set() != SpaceSet::Closure ||
      q.q.time_set() != TimeSet::DualClosed)
    throw std::invalid_argument("apply_P: expects a closure x dual_closed field");
  const Complex eta(sys.alpha, -sys.beta);
  const double dx2 = sm.dx * sm.dx;
  GridFn out(SpaceSet::Interior, TimeSet::Primal, sm.M, tm.N);
  for (int m = 1; m <= tm.N; ++m) {
    for (int j = 1; j <= sm.M; ++j) {
      const Complex dtq = (q.q.at(m, j) - q.q.at(m - 1, j)) / tm.dt;
      const Complex dxx = (q.q.at(m - 1, j + 1) - 2.0 * q.q.at(m - 1, j) +
                           q.q.at(m - 1, j - 1)) /
                          dx2;
      out.at(m - 1, j - 1) = -dtq - eta * dxx;
    }
  }
  return out;
}

BoundaryOps apply_boundary_ops(const AdjointTrajectory& q,
                               const SystemParams& sys, const SpaceMesh& sm,
                               const TimeMesh& tm) {
  const Complex eta(sys.alpha, -sys.beta);
  const int R = sm.M + 1;
  BoundaryOps b;
  b.left.resize(tm.N);
  b.right.resize(tm.N);
  for (int m = 1; m <= tm.N; ++m) {
    const Complex dt0 = (q.q.at(m, 0) - q.q.at(m - 1, 0)) / tm.dt;
    const Complex dtR = (q.q.at(m, R) - q.q.at(m - 1, R)) / tm.dt;
    const Complex flux0 = (q.q.at(m - 1, 1) - q.q.at(m - 1, 0)) / sm.dx;
    const Complex fluxR = (q.q.at(m - 1, R) - q.q.at(m - 1, R - 1)) / sm.dx;
    b.left[m - 1] = dt0 + eta * flux0;
    b.right[m - 1] = dtR - eta * fluxR;
  }
  return b;
}

namespace {

// Weighted spatial combinations r * op(rho) on the interior nodes of one
// time slice, from closure samples of rho.
struct SliceWeights {
  std::vector<double> r_dxx_rho, r_axdx_rho, r_axax_rho;  // interior
};

SliceWeights weight_combos(const WeightSet& w, const SpaceMesh& sm, int n) {
  SliceWeights out;
  const int M = sm.M;
  out.r_dxx_rho.resize(M);
  out.r_axdx_rho.resize(M);
  out.r_axax_rho.resize(M);
  const double dx2 = sm.dx * sm.dx;
  for (int j = 1; j <= M; ++j) {
    const double rho_m = w.rho_closure(n, j - 1);
    const double rho_0 = w.rho_closure(n, j);
    const double rho_p = w.rho_closure(n, j + 1);
    const double r = w.r_closure(n, j);
    out.r_dxx_rho[j - 1] = r * (rho_p - 2.0 * rho_0 + rho_m) / dx2;
    out.r_axdx_rho[j - 1] = r * (rho_p - rho_m) / (2.0 * sm.dx);
    out.r_axax_rho[j - 1] = r * (rho_p + 2.0 * rho_0 + rho_m) / 4.0;
  }
  return out;
}

}  // namespace

ConjugationReport conjugation_residual(const AdjointTrajectory& q,
                                       const WeightSet& w,
                                       const SystemParams& sys,
                                       const SpaceMesh& sm,
                                       const TimeMesh& tm) {
  const Complex eta(sys.alpha, -sys.beta);
  const int M = sm.M;
  const double dx2 = sm.dx * sm.dx;

  GridFn P = apply_P(q, sys, sm, tm);

  // z = r q on the closure, two live slices at a time.
  auto z_slice = [&](int n) {
    std::vector<Complex> z(M + 2);
    for (int j = 0; j < M + 2; ++j) z[j] = w.r_closure(n, j) * q.q.at(n, j);
    return z;
  };

  ConjugationReport rep;
  std::vector<Complex> z_prev = z_slice(0);
  SliceWeights cw_prev = weight_combos(w, sm, 0);
  for (int m = 1; m <= tm.N; ++m) {
    std::vector<Complex> z_cur = z_slice(m);
    for (int j = 1; j <= M; ++j) {
      const Complex lhs = w.r_closure(m - 1, j) * P.at(m - 1, j - 1);

      const Complex dtz = (z_cur[j] - z_prev[j]) / tm.dt;
      const double drift = w.r_closure(m - 1, j) *
                           (w.rho_closure(m, j) - w.rho_closure(m - 1, j)) /
                           tm.dt;
      const Complex axax_z =
          (z_prev[j + 1] + 2.0 * z_prev[j] + z_prev[j - 1]) / 4.0;
      const Complex axdx_z = (z_prev[j + 1] - z_prev[j - 1]) / (2.0 * sm.dx);
      const Complex dxx_z =
          (z_prev[j + 1] - 2.0 * z_prev[j] + z_prev[j - 1]) / dx2;
      const Complex spatial = cw_prev.r_dxx_rho[j - 1] * axax_z +
                              2.0 * cw_prev.r_axdx_rho[j - 1] * axdx_z +
                              cw_prev.r_axax_rho[j - 1] * dxx_z;
      const Complex rhs = -dtz - drift * z_cur[j] - eta * spatial;

      rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
      rep.scale = std::max(rep.scale, std::abs(lhs) + std::abs(dtz) +
                                          std::abs(drift * z_cur[j]) +
                                          std::abs(eta * spatial));
    }
    z_prev = std::move(z_cur);
    cw_prev = weight_combos(w, sm, m);
  }
  if (rep.scale == 0.0) rep.scale = 1e-300;
  return rep;
}

CarlemanBreakdown evaluate_carleman(const AdjointTrajectory& q,
                                    const WeightSet& w,
                                    const SystemParams& sys,
                                    const SpaceMesh& sm, const TimeMesh& tm,
                                    double local_constant) {
  RegimeReport regime = validate_regime(w.params(), sm, tm);
  if (!regime.primary_pass) {
    std::string why;
    for (const auto& c : regime.conditions)
      if (!c.pass) why += (why.empty() ? "" : ", ") + c.name;
    throw std::invalid_argument(
        "evaluate_carleman: weight regime violated (" + why + ")");
  }

  const Complex eta(sys.alpha, -sys.beta);
  const int M = sm.M, N = tm.N, R = sm.M + 1;
  const double dx = sm.dx, dt = tm.dt, dx2 = dx * dx;

  CarlemanBreakdown b;
  std::vector<double> r2c(M + 2), r2d(M + 1), r2c_prev(M + 2);

  for (int n = 0; n <= N; ++n) {
    const double s = w.s(n);
    for (int j = 0; j < M + 2; ++j) r2c[j] = w.r2_closure(n, j);
    for (int k = 0; k < M + 1; ++k) r2d[k] = w.r2_dual(n, k);

    if (n < N) {
      // dual-time terms on the slice q^{n+1/2}
      double t_dxx = 0, t_axdx = 0, t_q = 0, t_dual = 0, t_local = 0;
      for (int j = 1; j <= M; ++j) {
        const Complex qm = q.q.at(n, j - 1), q0 = q.q.at(n, j),
                      qp = q.q.at(n, j + 1);
        const double dxx = std::norm((qp - 2.0 * q0 + qm) / dx2);
        const double axdx = std::norm((qp - qm) / (2.0 * dx));
        const double qq = std::norm(q0);
        t_dxx += r2c[j] * dxx;
        t_axdx += r2c[j] * axdx;
        t_q += r2c[j] * qq;
        if (sys.omega.contains_node(sm.position(SpaceSet::Closure, j)))
          t_local += r2c[j] * qq;
      }
      for (int k = 0; k <= M; ++k)
        t_dual += r2d[k] * std::norm((q.q.at(n, k + 1) - q.q.at(n, k)) / dx);

      b.lhs[0] += dx * dt / s * t_dxx;
      b.lhs[2] += dx * dt * s * t_axdx;
      b.lhs[3] += dx * dt * s * t_dual;
      b.lhs[4] += dx * dt * s * s * s * t_q;
      b.rhs[3] += dx * dt * s * s * s * t_local;

      // boundary dual-time terms (weight 1 in space)
      const double dq_left = std::norm((q.q.at(n, 1) - q.q.at(n, 0)) / dx);
      const double dq_right = std::norm((q.q.at(n, R) - q.q.at(n, R - 1)) / dx);
      b.lhs[6] += dt * s * (r2c[0] * dq_left + r2c[R] * dq_right);
      b.lhs[7] += dt * s * s * s *
                  (r2c[0] * std::norm(q.q.at(n, 0)) +
                   r2c[R] * std::norm(q.q.at(n, R)));
    }

    if (n > 0) {
      // primal-time terms at t^n with lagged weights (slice n-1)
      const double s_lag = w.s(n - 1);
      double t_dt = 0, t_src = 0;
      for (int j = 1; j <= M; ++j) {
        const Complex dtq = (q.q.at(n, j) - q.q.at(n - 1, j)) / dt;
        const Complex dxx = (q.q.at(n - 1, j + 1) - 2.0 * q.q.at(n - 1, j) +
                             q.q.at(n - 1, j - 1)) /
                            dx2;
        const Complex Pq = -dtq - eta * dxx;
        t_dt += r2c_prev[j] * std::norm(dtq);
        t_src += r2c_prev[j] * std::norm(Pq);
      }
      b.lhs[1] += dx * dt / s_lag * t_dt;
      b.rhs[0] += dx * dt * t_src;

      const Complex dt0 = (q.q.at(n, 0) - q.q.at(n - 1, 0)) / dt;
      const Complex dtR = (q.q.at(n, R) - q.q.at(n - 1, R)) / dt;
      b.lhs[5] += dt / s_lag *
                  (r2c_prev[0] * std::norm(dt0) + r2c_prev[R] * std::norm(dtR));

      const Complex b0 =
          dt0 + eta * (q.q.at(n - 1, 1) - q.q.at(n - 1, 0)) / dx;
      const Complex b1 =
          dtR - eta * (q.q.at(n - 1, R) - q.q.at(n - 1, R - 1)) / dx;
      b.rhs[1] += dt * r2c_prev[0] * std::norm(b0);
      b.rhs[2] += dt * r2c_prev[R] * std::norm(b1);
    }

    // terminal layers: lead weights and values at t in {0, T} are the
    // first and last extended-dual samples.
    if (n == 0 || n == N) {
      double layer = 0.0;
      for (int j = 1; j <= M; ++j) layer += dx * r2c[j] * std::norm(q.q.at(n, j));
      layer += r2c[0] * std::norm(q.q.at(n, 0)) +
               r2c[R] * std::norm(q.q.at(n, R));
      b.rhs[4] += layer / dx2;
    }

    std::swap(r2c, r2c_prev);
  }

  b.lhs[8] = 0.0;
  for (int i = 0; i < 8; ++i) b.lhs[8] += b.lhs[i];
  b.rhs[5] = b.rhs[0] + b.rhs[1] + b.rhs[2] + local_constant * b.rhs[3] +
             b.rhs[4];
  b.ratio = b.rhs[5] > 0.0 ? b.lhs[8] / b.rhs[5] : 0.0;
  return b;
}

std::vector<std::pair<std::string, std::vector<Complex>>>
carleman_sample_family(const SpaceMesh& sm, int random_count, uint64_t seed) {
  std::vector<std::pair<std::string, std::vector<Complex>>> family;
  const int n = sm.M + 2;
  for (int k = 0; k < random_count; ++k) {
    Rng rng(Rng::cell_seed(seed, static_cast<uint64_t>(k)));
    std::vector<Complex> qT(n);
    for (auto& z : qT) z = rng.cgaussian();
    family.emplace_back("random_" + std::to_string(k), std::move(qT));
  }
  {
    std::vector<Complex> qT(n, Complex(0));
    qT[0] = Complex(1.0, 0.5);
    qT[n - 1] = Complex(-0.5, 1.0);
    family.emplace_back("boundary_mass", std::move(qT));
  }
  {
    // highest-frequency mode of the closure
    std::vector<Complex> qT(n);
    for (int j = 0; j < n; ++j) qT[j] = Complex(j % 2 == 0 ? 1.0 : -1.0, 0.0);
    family.emplace_back("high_mode", std::move(qT));
  }
  return family;
}

std::vector<CarlemanSweepRow> sweep_carleman(const CarlemanSweepConfig& cfg) {
  std::vector<CarlemanSweepRow> rows;
  uint64_t cell = 0;
  for (double tau : cfg.taus)
    for (double lambda : cfg.lambdas)
      for (auto [M, N] : cfg.meshes) {
        ++cell;
        auto [sm, tm] = build_meshes(M, N, cfg.sys.T);
        WeightParams wp = cfg.weights;
        wp.tau = tau;
        wp.lambda = lambda;
        RegimeReport regime = validate_regime(wp, sm, tm);

        CarlemanSweepRow proto;
        proto.tau = tau;
        proto.lambda = lambda;
        proto.dx = sm.dx;
        proto.dt = tm.dt;
        proto.M = M;
        proto.N = N;

        if (!regime.primary_pass) {
          CarlemanSweepRow row = proto;
          row.in_regime = false;
          for (const auto& c : regime.conditions)
            if (!c.pass)
              row.skip_reason +=
                  (row.skip_reason.empty() ? "" : ", ") + c.name;
          rows.push_back(row);
          continue;
        }

        PsiField psi = build_psi(sm, cfg.sys.omega0, wp.c0);
        WeightSet w(wp, psi, sm, tm);
        auto family = carleman_sample_family(
            sm, cfg.random_samples, Rng::cell_seed(cfg.seed, cell));
        for (auto& [name, qT] : family) {
          const auto start = std::chrono::steady_clock::now();
          AdjointTrajectory q = adjoint_solve(cfg.sys, sm, tm, qT);
          CarlemanSweepRow row = proto;
          row.sample = name;
          row.breakdown =
              evaluate_carleman(q, w, cfg.sys, sm, tm, cfg.local_constant);
          row.wall_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
          rows.push_back(std::move(row));
        }
      }
  return rows;
}

}  // namespace glc
