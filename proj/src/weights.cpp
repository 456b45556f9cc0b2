#include "glc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glc {

namespace {

constexpr double kExpLimit = 700.0;  // stay clear of double overflow in exp

std::string fmt_node(double x) {
  std::ostringstream os;
  os << "x = " << x;
  return os.str();
}

}  // namespace

void WeightParams::validate() const {
  if (!(lambda >= 1.0))
    throw std::invalid_argument("weights: lambda must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("weights: tau must be > 0");
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("weights: delta must lie in (0, 1/2]");
  if (!(c0 > 0.0)) throw std::invalid_argument("weights: c0 must be > 0");
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
    throw std::invalid_argument("weights: epsilon0 must lie in (0, 1)");
  if (!(tau0 >= 1.0)) throw std::invalid_argument("weights: tau0 must be >= 1");
}

PsiValidation validate_psi(const PsiField& psi, const SpaceMesh& sm,
                           const Interval& omega0, double c0) {
  PsiValidation v;
  v.largest_admissible_c0 = std::numeric_limits<double>::infinity();

  auto check_set = [&](SpaceSet set, const std::vector<double>& ps,
                       const std::vector<double>& pxs) {
    for (int j = 0; j < static_cast<int>(ps.size()); ++j) {
      const double x = sm.position(set, j);
      if (!(ps[j] > 0.0)) {
        v.ok = false;
        if (v.failure.empty())
          v.failure = "psi must be positive; violated at " + fmt_node(x);
      }
      const bool outside = x < omega0.a || x > omega0.b;
      if (outside) {
        v.largest_admissible_c0 =
            std::min(v.largest_admissible_c0, std::abs(pxs[j]));
        if (!(std::abs(pxs[j]) > c0)) {
          v.ok = false;
          if (v.failure.empty())
            v.failure = "|psi_x| must exceed c0 outside the window; violated at " +
                        fmt_node(x);
        }
      }
    }
  };
  check_set(SpaceSet::Closure, psi.psi_closure, psi.psi_x_closure);
  check_set(SpaceSet::Dual, psi.psi_dual, psi.psi_x_dual);

  if (!(psi.psi_x_closure.front() > 0.0)) {
    v.ok = false;
    if (v.failure.empty()) v.failure = "psi_x(0) must be positive";
  }
  if (!(psi.psi_x_closure.back() < 0.0)) {
    v.ok = false;
    if (v.failure.empty()) v.failure = "psi_x(1) must be negative";
  }
  return v;
}

PsiField build_psi(const SpaceMesh& sm, const Interval& omega0, double c0,
                   double margin) {
  if (!omega0.valid_in_unit())
    throw std::invalid_argument("build_psi: omega0 must be a subinterval of (0,1)");
  PsiField psi;
  psi.x_star = omega0.midpoint();
  psi.offset = 1.0 + psi.x_star * psi.x_star;
  psi.has_closed_form = true;

  const int nc = sm.cardinality(SpaceSet::Closure);
  const int nd = sm.cardinality(SpaceSet::Dual);
  psi.psi_closure.resize(nc);
  psi.psi_x_closure.resize(nc);
  psi.psi_dual.resize(nd);
  psi.psi_x_dual.resize(nd);
  for (int j = 0; j < nc; ++j) {
    const double x = sm.position(SpaceSet::Closure, j);
    psi.psi_closure[j] = psi.psi(x);
    psi.psi_x_closure[j] = psi.psi_x(x);
  }
  for (int k = 0; k < nd; ++k) {
    const double x = sm.position(SpaceSet::Dual, k);
    psi.psi_dual[k] = psi.psi(x);
    psi.psi_x_dual[k] = psi.psi_x(x);
  }

  PsiValidation v = validate_psi(psi, sm, omega0, c0 + margin);
  psi.largest_admissible_c0 = v.largest_admissible_c0;
  if (!v.ok) throw std::invalid_argument("build_psi: " + v.failure);
  return psi;
}

WeightSet::WeightSet(const WeightParams& p, const PsiField& psi,
                     const SpaceMesh& sm, const TimeMesh& tm)
    : params_(p), psi_(psi) {
  params_.validate();
  const int nc = sm.cardinality(SpaceSet::Closure);
  const int nd = sm.cardinality(SpaceSet::Dual);
  if (static_cast<int>(psi.psi_closure.size()) != nc ||
      static_cast<int>(psi.psi_dual.size()) != nd)
    throw std::invalid_argument("WeightSet: psi samples do not match the mesh");

  const double psi_max = std::max(
      *std::max_element(psi.psi_closure.begin(), psi.psi_closure.end()),
      *std::max_element(psi.psi_dual.begin(), psi.psi_dual.end()));
  K_ = p.K > 0.0 ? p.K : psi_max + p.k_margin;
  if (!(K_ > psi_max))
    throw std::invalid_argument(
        "WeightSet: K must exceed the maximum of psi (K = " +
        std::to_string(K_) + ", max psi = " + std::to_string(psi_max) + ")");
  if (p.lambda * K_ > kExpLimit)
    throw std::invalid_argument(
        "WeightSet: e^{lambda K} overflows the double range; use a smaller "
        "lambda*K");

  // theta on the extended dual mesh, sampled in the index-symmetric
  // two-factor form so theta(t) == theta(T - t) bitwise.
  const int N = tm.N;
  const double dT = params_.delta * tm.T;
  theta_.resize(N + 1);
  theta_prime_.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double t_fwd = (n + 0.5) * tm.dt;
    const double t_bwd = (N - n - 0.5) * tm.dt;
    const double denom = (t_fwd + dT) * (t_bwd + dT);
    if (!(denom > 0.0))
      throw std::invalid_argument(
          "WeightSet: theta is not positive at the extended dual node; "
          "decrease dt below delta*T");
    theta_[n] = 1.0 / denom;
    theta_prime_[n] = (2.0 * t_fwd - tm.T) * theta_[n] * theta_[n];
  }
  const double theta_max = *std::max_element(theta_.begin(), theta_.end());
  if (theta_max > 2.0 / (dT * tm.T) + 1e-12 * theta_max)
    throw std::invalid_argument(
        "WeightSet: max theta exceeds 2/(delta T^2); decrease dt below "
        "delta*T");

  const double elK = std::exp(p.lambda * K_);
  phi_c_.resize(nc);
  varphi_c_.resize(nc);
  for (int j = 0; j < nc; ++j) {
    phi_c_[j] = std::exp(p.lambda * psi.psi_closure[j]);
    varphi_c_[j] = phi_c_[j] - elK;
  }
  phi_d_.resize(nd);
  varphi_d_.resize(nd);
  for (int k = 0; k < nd; ++k) {
    phi_d_[k] = std::exp(p.lambda * psi.psi_dual[k]);
    varphi_d_[k] = phi_d_[k] - elK;
  }

  double varphi_min = varphi_c_[0], varphi_max = varphi_c_[0];
  for (double v : varphi_c_) {
    varphi_min = std::min(varphi_min, v);
    varphi_max = std::max(varphi_max, v);
  }
  for (double v : varphi_d_) {
    varphi_min = std::min(varphi_min, v);
    varphi_max = std::max(varphi_max, v);
  }
  if (!(varphi_max < 0.0))
    throw std::invalid_argument("WeightSet: varphi must be negative everywhere");
  K0_ = -varphi_min;
  k0_ = -varphi_max;

  const double s_max = params_.tau * theta_max;
  if (s_max * K0_ > kExpLimit)
    throw std::invalid_argument(
        "WeightSet: rho = exp(-s varphi) overflows the double range; use a "
        "smaller tau or lambda*K");
}

RegimeReport validate_regime(const WeightParams& p, const SpaceMesh& sm,
                             const TimeMesh& tm) {
  p.validate();
  RegimeReport rep;
  const double T = tm.T;
  auto push = [&rep](const std::string& name, double value, double bound) {
    RegimeCondition c;
    c.name = name;
    c.value = value;
    c.bound = bound;
    c.pass = value <= bound;
    c.margin = bound - value;
    rep.conditions.push_back(c);
  };
  // tau floor is a lower bound; encode as -tau <= -tau0(T+T^2).
  push("tau_floor", p.tau0 * (T + T * T), p.tau);
  rep.conditions.back().margin = p.tau - p.tau0 * (T + T * T);
  push("dx_smallness", p.tau * sm.dx / (p.delta * T * T), p.epsilon0);
  push("dt_smallness",
       std::pow(p.tau, 4) * tm.dt / (std::pow(p.delta, 4) * std::pow(T, 6)),
       p.epsilon0);
  push("aux_dx", p.tau * sm.dx / (p.delta * T * T), 1.0);
  push("aux_dt", p.tau * tm.dt / (p.delta * p.delta * T * T * T), 0.5);

  rep.primary_pass = rep.conditions[0].pass && rep.conditions[1].pass &&
                     rep.conditions[2].pass;
  rep.all_pass = rep.primary_pass && rep.conditions[3].pass &&
                 rep.conditions[4].pass;
  return rep;
}

namespace {

// Weights evaluated on the half-step lattice x_p = p dx/2, p = 0..2(M+1).
// One difference/average application moves the valid window in by one.
struct HalfLattice {
  double dx = 0.0;
  std::vector<double> x;  // position per half index

  explicit HalfLattice(const SpaceMesh& sm) : dx(sm.dx) {
    const int P = 2 * (sm.M + 1);
    x.resize(P + 1);
    for (int p = 0; p <= P; ++p) x[p] = 0.5 * p * dx;
  }
  int top() const { return static_cast<int>(x.size()) - 1; }
};

std::vector<double> lattice_diff(const std::vector<double>& u, double dx) {
  std::vector<double> out(u.size(), 0.0);
  for (size_t p = 1; p + 1 < u.size(); ++p)
    out[p] = (u[p + 1] - u[p - 1]) / dx;
  return out;
}

std::vector<double> lattice_avg(const std::vector<double>& u) {
  std::vector<double> out(u.size(), 0.0);
  for (size_t p = 1; p + 1 < u.size(); ++p)
    out[p] = 0.5 * (u[p + 1] + u[p - 1]);
  return out;
}

struct AuditAccum {
  double ratio = 0.0;
  void take(double num, double den) {
    if (den > 0.0) ratio = std::max(ratio, num / den);
  }
};

}  // namespace

std::vector<WeightAuditRow> audit_weight_lemmas(
    const WeightParams& p, const Interval& omega0,
    const std::vector<std::pair<int, int>>& mesh_family, double T) {
  std::vector<WeightAuditRow> rows;

  for (auto [M, N] : mesh_family) {
    auto [sm, tm] = build_meshes(M, N, T);
    RegimeReport regime = validate_regime(p, sm, tm);
    if (!regime.conditions[3].pass || !regime.conditions[4].pass)
      throw std::invalid_argument(
          "audit_weight_lemmas: mesh (" + std::to_string(M) + ", " +
          std::to_string(N) + ") violates the auxiliary weight regime");

    PsiField psi = build_psi(sm, omega0, p.c0);
    WeightSet w(p, psi, sm, tm);
    const double lambda = p.lambda;
    const double elK = std::exp(lambda * w.K());
    const double dx = sm.dx, dt = tm.dt;
    const double delta = p.delta, tau = p.tau;

    HalfLattice lat(sm);
    const int P = lat.top();

    auto phi_at = [&](double x) { return std::exp(lambda * psi.psi(x)); };
    auto varphi_at = [&](double x) { return phi_at(x) - elK; };

    AuditAccum a_identity, a_avg2, a_diff_dual, a_avgdiff, a_diff2,
        a_prod_diff, a_prod_sq;
    AuditAccum a_recip, a_th1, a_th2, a_thp, a_d2, a_a2, a_ad;

    // Space expansions, swept over every extended-dual time sample.
    std::vector<double> rho(P + 1), r(P + 1);
    std::vector<double> r_ad_rho_prev;  // for the mixed-drift audits
    std::vector<double> r_d2_prev, r_a2_prev, r_ad_prev;
    for (int n = 0; n < w.nt(); ++n) {
      const double s = w.s(n);
      for (int q = 0; q <= P; ++q) {
        const double e = s * varphi_at(lat.x[q]);
        rho[q] = std::exp(-e);
        r[q] = std::exp(e);
      }
      std::vector<double> d_rho = lattice_diff(rho, dx);
      std::vector<double> a_rho = lattice_avg(rho);
      std::vector<double> d2_rho = lattice_diff(d_rho, dx);
      std::vector<double> ad_rho = lattice_avg(d_rho);
      std::vector<double> a2_rho = lattice_avg(a_rho);

      const double sdx2 = (s * dx) * (s * dx);
      std::vector<double> r_ad(P + 1, 0.0), r_d2(P + 1, 0.0), r_a2(P + 1, 0.0);
      for (int q = 2; q <= P - 2; ++q) {
        const double x = lat.x[q];
        const double phi = phi_at(x);
        const double px = psi.psi_x(x);
        const double r_drho_exact = -s * lambda * phi * px;
        const double r_d2rho_exact =
            s * s * lambda * lambda * phi * phi * px * px -
            s * lambda * phi * (lambda * px * px + PsiField::psi_xx());

        a_identity.take(std::abs(r[q] * rho[q] - 1.0), sdx2);
        a_avg2.take(std::abs(r[q] * a2_rho[q] - 1.0), sdx2);
        a_diff_dual.take(std::abs(r[q] * d_rho[q] - r_drho_exact), s * sdx2);
        a_avgdiff.take(std::abs(r[q] * ad_rho[q] - r_drho_exact), s * sdx2);
        a_diff2.take(std::abs(r[q] * d2_rho[q] - r_d2rho_exact), s * s * sdx2);

        const double sq_exact = r_drho_exact * r_drho_exact;
        a_prod_sq.take(std::abs(r[q] * r[q] * d_rho[q] * d_rho[q] - sq_exact),
                       s * s * sdx2);

        r_ad[q] = r[q] * ad_rho[q];
        r_d2[q] = r[q] * d2_rho[q];
        r_a2[q] = r[q] * a2_rho[q];
      }
      std::vector<double> d_r_ad = lattice_diff(r_ad, dx);
      for (int q = 4; q <= P - 4; ++q) {
        const double x = lat.x[q];
        const double phi = phi_at(x);
        const double px = psi.psi_x(x);
        // d/dx of (r d rho/dx) = -s lambda (lambda phi psi_x^2 + phi psi_xx)
        const double exact =
            -s * lambda * (lambda * phi * px * px + phi * PsiField::psi_xx());
        a_prod_diff.take(std::abs(d_r_ad[q] - exact), s * sdx2);
      }

      // Mixed space-time drifts against the previous slice.
      if (n > 0) {
        const double sm1 = w.s(n - 1);
        const double th_m1 = w.theta(n - 1);
        const double sdx_m1 = sm1 * dx;
        const double sigma1 =
            T * sm1 * sm1 * th_m1 +
            tau * tau * dt / (std::pow(delta, 4) * std::pow(T, 6)) +
            (tau * dt / (std::pow(delta, 3) * std::pow(T, 4))) *
                std::pow(tau * dx / (delta * T * T), 3);
        const double sigma2 =
            T * sdx_m1 * sdx_m1 * th_m1 +
            (tau * dt / (std::pow(delta, 3) * std::pow(T, 4))) *
                (tau * dx / (delta * T * T));
        const double sigma3 = T * sm1 * th_m1 + T * sm1 * sdx_m1 * sdx_m1 * th_m1 +
                              dt * T * T * sm1 * th_m1 * th_m1 +
                              dt * T * T * sm1 * sdx_m1 * sdx_m1 * th_m1 * th_m1;
        for (int q = 2; q <= P - 2; ++q) {
          a_d2.take(std::abs((r_d2[q] - r_d2_prev[q]) / dt), sigma1);
          a_a2.take(std::abs((r_a2[q] - r_a2_prev[q]) / dt), sigma2);
          a_ad.take(std::abs((r_ad[q] - r_ad_prev[q]) / dt), sigma3);
        }
      }
      r_d2_prev = r_d2;
      r_a2_prev = r_a2;
      r_ad_prev = r_ad;
      (void)r_ad_rho_prev;
    }

    // Pure time audits.
    const double drift_bound =
        dt * (tau / (std::pow(delta, 3) * std::pow(T, 4)) +
              tau * tau / (std::pow(delta, 4) * std::pow(T, 6)));
    for (int m = 1; m < w.nt(); ++m) {
      const double th = w.theta(m), th_m1 = w.theta(m - 1);
      const double dth = (th - th_m1) / dt;
      a_th1.take(std::max(0.0, std::abs(dth) - T * th_m1 * th_m1),
                 dt / (std::pow(delta, 3) * std::pow(T, 4)));
      const double dth2 = (th * th - th_m1 * th_m1) / dt;
      a_th2.take(std::max(0.0, std::abs(dth2) - 2.0 * T * th_m1 * th_m1 * th_m1),
                 dt / (std::pow(delta, 4) * std::pow(T, 6)));
      const double dthp = (w.theta_prime(m) - w.theta_prime(m - 1)) / dt;
      a_thp.take(std::max(0.0, dthp),
                 T * T * th_m1 * th_m1 * th_m1 +
                     dt / (std::pow(delta, 4) * std::pow(T, 5)));

      // reciprocal drift at every closure node
      for (int j = 0; j < sm.cardinality(SpaceSet::Closure); ++j) {
        const double vph = w.varphi_closure(j);
        const double rho_m = std::exp(-w.s(m) * vph);
        const double rho_m1 = std::exp(-w.s(m - 1) * vph);
        const double r_m1 = std::exp(w.s(m - 1) * vph);
        const double lhs =
            r_m1 * (rho_m - rho_m1) / dt + tau * w.theta_prime(m - 1) * vph;
        a_recip.take(std::abs(lhs), drift_bound);
      }
    }

    auto emit = [&](const std::string& name, const AuditAccum& acc) {
      rows.push_back({name, dx, dt, tau, lambda, acc.ratio});
    };
    emit("expand_identity", a_identity);
    emit("expand_avg2", a_avg2);
    emit("expand_diff_dual", a_diff_dual);
    emit("expand_avgdiff", a_avgdiff);
    emit("expand_diff2", a_diff2);
    emit("product_diff", a_prod_diff);
    emit("product_square", a_prod_sq);
    emit("reciprocal_drift", a_recip);
    emit("theta_power_1", a_th1);
    emit("theta_power_2", a_th2);
    emit("theta_prime_growth", a_thp);
    emit("drift_diff2", a_d2);
    emit("drift_avg2", a_a2);
    emit("drift_avgdiff", a_ad);
  }
  return rows;
}

}  // namespace glc
