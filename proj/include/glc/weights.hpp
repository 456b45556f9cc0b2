#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glc/grid_fn.hpp"
#include "glc/mesh.hpp"

namespace glc {

/// Parameters of the Carleman weight family.
struct WeightParams {
  double lambda = 2.0;    // >= 1
  double tau = 2.0;       // > 0
  double delta = 0.25;    // in (0, 1/2]
  double K = 0.0;         // > max psi; 0 means "max psi + k_margin"
  double k_margin = 0.1;  // used when K == 0
  double c0 = 0.5;        // > 0, gradient floor for psi outside omega0
  double epsilon0 = 0.5;  // in (0, 1)
  double tau0 = 1.0;      // >= 1

  void validate() const;
};

/// The spatial profile psi: a concave quadratic peaking at the midpoint of
/// omega0,  psi(x) = 1 + x*^2 - (x - x*)^2,  with exact derivative
/// psi_x(x) = 2 (x* - x). Positive on [0,1], increasing at 0, decreasing
/// at 1, and |psi_x| > c0 away from omega0.
struct PsiField {
  double x_star = 0.45;
  double offset = 0.0;  // psi(x) = offset - (x - x_star)^2
  bool has_closed_form = true;

  std::vector<double> psi_closure, psi_x_closure;
  std::vector<double> psi_dual, psi_x_dual;
  double largest_admissible_c0 = 0.0;

  double psi(double x) const { return offset - (x - x_star) * (x - x_star); }
  double psi_x(double x) const { return 2.0 * (x_star - x); }
  static constexpr double psi_xx() { return -2.0; }
};

struct PsiValidation {
  bool ok = true;
  std::string failure;  // names the violated condition and node
  double largest_admissible_c0 = 0.0;
};

/// Checks the three profile conditions on the sampled nodes: positivity,
/// gradient floor c0 outside the closure of omega0, and the boundary signs
/// psi_x(0) > 0 > psi_x(1).
PsiValidation validate_psi(const PsiField& psi, const SpaceMesh& sm,
                           const Interval& omega0, double c0);

/// Builds the quadratic profile for the window omega0 and validates it for
/// the requested c0 with headroom `margin`. Throws with the failing
/// condition and node on violation.
PsiField build_psi(const SpaceMesh& sm, const Interval& omega0, double c0,
                   double margin = 0.0);

/// Sampled Carleman weights. Time samples live on the extended dual mesh
/// (index n <-> t^{n+1/2}, n = 0..N, the last node past T); space samples
/// on the closure and dual node sets. r and rho are exposed through
/// accessors that exponentiate the stored log-weight once per call, so r
/// spans many orders of magnitude without intermediate overflow.
class WeightSet {
 public:
  WeightSet() = default;
  WeightSet(const WeightParams& p, const PsiField& psi, const SpaceMesh& sm,
            const TimeMesh& tm);

  const WeightParams& params() const { return params_; }
  const PsiField& psi() const { return psi_; }
  double K() const { return K_; }

  // time samples, n = 0..N over the extended dual mesh
  double theta(int n) const { return theta_[n]; }
  double s(int n) const { return params_.tau * theta_[n]; }
  double theta_prime(int n) const { return theta_prime_[n]; }
  int nt() const { return static_cast<int>(theta_.size()); }

  // space samples
  double phi_closure(int j) const { return phi_c_[j]; }
  double phi_dual(int k) const { return phi_d_[k]; }
  double varphi_closure(int j) const { return varphi_c_[j]; }
  double varphi_dual(int k) const { return varphi_d_[k]; }

  // weights r = exp(s varphi), rho = 1/r
  double log_r_closure(int n, int j) const { return s(n) * varphi_c_[j]; }
  double log_r_dual(int n, int k) const { return s(n) * varphi_d_[k]; }
  double r_closure(int n, int j) const { return std::exp(log_r_closure(n, j)); }
  double rho_closure(int n, int j) const { return std::exp(-log_r_closure(n, j)); }
  double r_dual(int n, int k) const { return std::exp(log_r_dual(n, k)); }
  double rho_dual(int n, int k) const { return std::exp(-log_r_dual(n, k)); }
  double r2_closure(int n, int j) const {
    return std::exp(2.0 * log_r_closure(n, j));
  }
  double r2_dual(int n, int k) const { return std::exp(2.0 * log_r_dual(n, k)); }

  /// max over the closure of -varphi (and min), diagnostics used by the
  /// observability reports.
  double K0() const { return K0_; }
  double k0() const { return k0_; }

 private:
  WeightParams params_;
  PsiField psi_;
  double K_ = 0.0;
  std::vector<double> theta_, theta_prime_;
  std::vector<double> phi_c_, phi_d_, varphi_c_, varphi_d_;
  double K0_ = 0.0, k0_ = 0.0;
};

/// One regime condition with its measured value, bound and margin.
struct RegimeCondition {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  double margin = 0.0;  // bound - value
};

struct RegimeReport {
  std::vector<RegimeCondition> conditions;
  bool primary_pass = false;  // tau floor and the two smallness conditions
  bool all_pass = false;      // including the auxiliary audit regimes
};

/// Checks tau >= tau0 (T + T^2), tau dx/(delta T^2) <= eps0,
/// tau^4 dt/(delta^4 T^6) <= eps0, plus the auxiliary regimes used by the
/// weight-lemma audits: tau dx/(delta T^2) <= 1 and
/// tau dt/(delta^2 T^3) <= 1/2.
RegimeReport validate_regime(const WeightParams& p, const SpaceMesh& sm,
                             const TimeMesh& tm);

/// One row of the asymptotic-lemma audit: the measured remainder ratio for
/// a named lemma instance at one mesh. Ratios must stay bounded as the
/// mesh refines inside the regime.
struct WeightAuditRow {
  std::string lemma;
  double dx = 0.0, dt = 0.0, tau = 0.0, lambda = 0.0;
  double ratio = 0.0;
};

/// Audits the discrete-operator expansions of the weights against their
/// closed-form leading terms over a family of meshes. Throws if a mesh
/// violates the auxiliary regime.
std::vector<WeightAuditRow> audit_weight_lemmas(
    const WeightParams& p, const Interval& omega0,
    const std::vector<std::pair<int, int>>& mesh_family, double T);

}  // namespace glc
