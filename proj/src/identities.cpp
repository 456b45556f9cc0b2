#include "glc/identities.hpp"

#include <algorithm>
#include <cmath>

#include "glc/rng.hpp"

namespace glc {

namespace {

double max_abs_diff(const GridFn& a, const GridFn& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

IdentityResidual pointwise(const std::string& name, const GridFn& lhs,
                           const GridFn& rhs) {
  IdentityResidual r;
  r.name = name;
  r.max_residual = max_abs_diff(lhs, rhs);
  r.scale = std::max({lhs.max_abs(), rhs.max_abs(), 1e-300});
  return r;
}

IdentityResidual scalar(const std::string& name, Complex lhs, Complex rhs) {
  IdentityResidual r;
  r.name = name;
  r.max_residual = std::abs(lhs - rhs);
  r.scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return r;
}

}  // namespace

GridFn random_field(Rng& rng, const SpaceMesh& sm, SpaceSet ss,
                    const TimeMesh& tm, TimeSet ts) {
  GridFn u(sm, ss, tm, ts);
  for (auto& z : u.values()) z = rng.cgaussian();
  return u;
}

GridFn random_field(Rng& rng, const SpaceMesh& sm, SpaceSet ss) {
  GridFn u(sm, ss);
  for (auto& z : u.values()) z = rng.cgaussian();
  return u;
}

std::vector<IdentityResidual> check_identities(int M, int N, double T,
                                               uint64_t seed) {
  auto [sm, tm] = build_meshes(M, N, T);
  Rng rng(seed);
  std::vector<IdentityResidual> out;

  // -- spatial product rules, closure -> dual ---------------------------
  {
    GridFn u = random_field(rng, sm, SpaceSet::Closure);
    GridFn v = random_field(rng, sm, SpaceSet::Closure);
    GridFn uv = multiply(u, v);

    out.push_back(pointwise(
        "space_product_diff", diff_x(uv, sm),
        add(multiply(diff_x(u, sm), avg_x(v, sm)),
            multiply(avg_x(u, sm), diff_x(v, sm)))));

    GridFn quarter = scale(multiply(diff_x(u, sm), diff_x(v, sm)),
                           Complex(0.25 * sm.dx * sm.dx));
    out.push_back(pointwise("space_product_avg", avg_x(uv, sm),
                            add(multiply(avg_x(u, sm), avg_x(v, sm)), quarter)));

    // A_x²u = u + (dx²/4) D_x²u on the interior.
    GridFn axx = avg_x(avg_x(u, sm), sm);
    GridFn u_interior(SpaceSet::Interior, TimeSet::None, sm.M, 1);
    for (int j = 0; j < sm.M; ++j) u_interior.at(j) = u.at(j + 1);
    out.push_back(pointwise(
        "space_avg_square", axx,
        add(u_interior, scale(diff_x2(u, sm), Complex(0.25 * sm.dx * sm.dx)))));
  }

  // -- spatial product rule, dual -> interior ----------------------------
  {
    GridFn u = random_field(rng, sm, SpaceSet::Dual);
    GridFn v = random_field(rng, sm, SpaceSet::Dual);
    out.push_back(pointwise(
        "space_product_diff_dual", diff_x(multiply(u, v), sm),
        add(multiply(diff_x(u, sm), avg_x(v, sm)),
            multiply(avg_x(u, sm), diff_x(v, sm)))));
  }

  // -- spatial summation by parts ----------------------------------------
  {
    GridFn u = random_field(rng, sm, SpaceSet::Closure);
    GridFn v = random_field(rng, sm, SpaceSet::Dual);
    GridFn dxv = diff_x(v, sm);           // interior
    GridFn dxu = diff_x(u, sm);           // dual
    TraceResult tv = trace_normal(v, sm);

    Complex lhs = 0.0, rhs_int = 0.0;
    for (int j = 0; j < sm.M; ++j) lhs += u.at(j + 1) * dxv.at(j);
    lhs *= sm.dx;
    for (int k = 0; k <= sm.M; ++k) rhs_int += v.at(k) * dxu.at(k);
    rhs_int *= sm.dx;
    Complex bnd = u.at(0) * tv.left * tv.normal_left +
                  u.at(sm.M + 1) * tv.right * tv.normal_right;
    out.push_back(scalar("space_ibp_diff", lhs, -rhs_int + bnd));

    GridFn axv = avg_x(v, sm);
    GridFn axu = avg_x(u, sm);
    Complex lhs2 = 0.0, rhs2 = 0.0;
    for (int j = 0; j < sm.M; ++j) lhs2 += u.at(j + 1) * axv.at(j);
    lhs2 *= sm.dx;
    for (int k = 0; k <= sm.M; ++k) rhs2 += v.at(k) * axu.at(k);
    rhs2 *= sm.dx;
    Complex bnd2 = u.at(0) * tv.left + u.at(sm.M + 1) * tv.right;
    out.push_back(scalar("space_ibp_avg", lhs2, rhs2 - 0.5 * sm.dx * bnd2));
  }

  // -- time product rules -------------------------------------------------
  {
    GridFn f = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::DualClosed);
    GridFn g = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::DualClosed);
    GridFn fg = multiply(f, g);

    out.push_back(pointwise(
        "time_product_lag", diff_t(fg, tm),
        add(multiply(diff_t(f, tm), shift_time(g, Shift::Minus, tm)),
            multiply(shift_time(f, Shift::Plus, tm), diff_t(g, tm)))));

    out.push_back(pointwise(
        "time_product_lead", diff_t(fg, tm),
        add(multiply(diff_t(f, tm), shift_time(g, Shift::Plus, tm)),
            multiply(shift_time(f, Shift::Minus, tm), diff_t(g, tm)))));

    // |f|² forms: t^±(f) D_t f* + t^±(f*) D_t f = D_t|f|² ± dt |D_t f|².
    GridFn fc = f.conj();
    GridFn dtf = diff_t(f, tm);
    GridFn dtfc = diff_t(fc, tm);
    GridFn abs2(f.space_set(), f.time_set(), f.nx(), f.nt());
    for (size_t i = 0; i < abs2.values().size(); ++i)
      abs2.values()[i] = Complex(std::norm(f.values()[i]), 0.0);
    GridFn dtabs2 = diff_t(abs2, tm);
    GridFn dtf_sq(dtf.space_set(), dtf.time_set(), dtf.nx(), dtf.nt());
    for (size_t i = 0; i < dtf_sq.values().size(); ++i)
      dtf_sq.values()[i] = Complex(std::norm(dtf.values()[i]), 0.0);

    out.push_back(pointwise(
        "time_square_lead",
        add(multiply(shift_time(f, Shift::Plus, tm), dtfc),
            multiply(shift_time(fc, Shift::Plus, tm), dtf)),
        add(dtabs2, scale(dtf_sq, Complex(tm.dt)))));
    out.push_back(pointwise(
        "time_square_lag",
        add(multiply(shift_time(f, Shift::Minus, tm), dtfc),
            multiply(shift_time(fc, Shift::Minus, tm), dtf)),
        subtract(dtabs2, scale(dtf_sq, Complex(tm.dt)))));
  }

  // -- time pairing and summation by parts --------------------------------
  // Evaluated per space column of interior fields; residual is the max
  // over columns.
  {
    GridFn f = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::PrimalClosed);
    GridFn g = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::DualClosed);

    IdentityResidual pair{"time_shift_pairing", 0.0, 1e-300};
    IdentityResidual ibp{"time_ibp_diff", 0.0, 1e-300};
    GridFn tmg = shift_time(g, Shift::Minus, tm);  // primal
    GridFn tpf = shift_time(f, Shift::Plus, tm);   // dual
    GridFn dtg = diff_t(g, tm);                    // primal
    GridFn dtf = diff_t(f, tm);                    // dual
    for (int j = 0; j < sm.M; ++j) {
      Complex lhs = 0.0, rhs = 0.0, lhs2 = 0.0, rhs2 = 0.0;
      for (int n = 0; n < tm.N; ++n) {
        lhs += f.at(n + 1, j) * tmg.at(n, j);
        rhs += tpf.at(n, j) * g.at(n, j);
        lhs2 += f.at(n + 1, j) * dtg.at(n, j);
        rhs2 += -g.at(n, j) * dtf.at(n, j);
      }
      lhs *= tm.dt;
      rhs *= tm.dt;
      lhs2 *= tm.dt;
      rhs2 *= tm.dt;
      // n_t = +1 at T, -1 at 0; t^+(g)(T) and t^+(g)(0) are the last and
      // first dual-closed samples.
      rhs2 += f.at(tm.N, j) * g.at(tm.N, j) - f.at(0, j) * g.at(0, j);
      pair.max_residual = std::max(pair.max_residual, std::abs(lhs - rhs));
      pair.scale = std::max({pair.scale, std::abs(lhs), std::abs(rhs)});
      ibp.max_residual = std::max(ibp.max_residual, std::abs(lhs2 - rhs2));
      ibp.scale = std::max({ibp.scale, std::abs(lhs2), std::abs(rhs2)});
    }
    out.push_back(pair);
    out.push_back(ibp);
  }

  {
    // Both fields on the extended dual mesh.
    GridFn f = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::DualClosed);
    GridFn g = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::DualClosed);
    GridFn tmf = shift_time(f, Shift::Minus, tm);
    GridFn tpg = shift_time(g, Shift::Plus, tm);
    GridFn dtf = diff_t(f, tm);
    GridFn dtg = diff_t(g, tm);
    IdentityResidual ibp{"time_ibp_lagged", 0.0, 1e-300};
    for (int j = 0; j < sm.M; ++j) {
      Complex lhs = 0.0, rhs = 0.0;
      for (int n = 0; n < tm.N; ++n) {
        lhs += tmf.at(n, j) * dtg.at(n, j);
        rhs += -dtf.at(n, j) * tpg.at(n, j);
      }
      lhs *= tm.dt;
      rhs *= tm.dt;
      rhs += f.at(tm.N, j) * g.at(tm.N, j) - f.at(0, j) * g.at(0, j);
      ibp.max_residual = std::max(ibp.max_residual, std::abs(lhs - rhs));
      ibp.scale = std::max({ibp.scale, std::abs(lhs), std::abs(rhs)});
    }
    out.push_back(ibp);
  }

  {
    // Both fields on the closed primal mesh.
    GridFn f = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::PrimalClosed);
    GridFn g = random_field(rng, sm, SpaceSet::Interior, tm, TimeSet::PrimalClosed);
    GridFn tpf = shift_time(f, Shift::Plus, tm);
    GridFn tmg = shift_time(g, Shift::Minus, tm);
    GridFn dtf = diff_t(f, tm);
    GridFn dtg = diff_t(g, tm);
    IdentityResidual ibp{"time_ibp_dual", 0.0, 1e-300};
    for (int j = 0; j < sm.M; ++j) {
      Complex lhs = 0.0, rhs = 0.0;
      for (int n = 0; n < tm.N; ++n) {
        lhs += tpf.at(n, j) * dtg.at(n, j);
        rhs += -tmg.at(n, j) * dtf.at(n, j);
      }
      lhs *= tm.dt;
      rhs *= tm.dt;
      rhs += f.at(tm.N, j) * g.at(tm.N, j) - f.at(0, j) * g.at(0, j);
      ibp.max_residual = std::max(ibp.max_residual, std::abs(lhs - rhs));
      ibp.scale = std::max({ibp.scale, std::abs(lhs), std::abs(rhs)});
    }
    out.push_back(ibp);
  }

  return out;
}

}  // namespace glc
