#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "cosim/model_core.hpp"

namespace cosim {

/// Inputs of the closed-form stability diagnostics for the coupled pair:
/// conduction times tau_i = rho_i cp_i L_i^2 / lambda_i and the stiffness
/// ratio hbar = (lambda_1/L_1)/(lambda_2/L_2).
struct StabilityInputs {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double hbar = 0.0;
  double dt = 0.0;

  void validate() const {
    if (!(tau1 > 0.0 && tau2 > 0.0 && hbar > 0.0 && dt > 0.0))
      throw ValidationError("StabilityInputs: all fields must be > 0");
  }
};

/// Pseudo-CFL indicator of the explicit coupling:
///   r12 = |1 - 6 dt/tau2| / |1 + 6 dt/tau1| * hbar;  stable iff r12 < 1.
double r12(const StabilityInputs& in);

/// Signed variant (no absolute values); enters the iteration-error law of the
/// relaxed implicit coupling.
double r12_signed(const StabilityInputs& in);

/// Stability boundary in hbar. Returns +inf at dt = tau2/6.
double hbar_crit(double dt, double tau1, double tau2);

struct OmegaBounds {
  double omega_max = 0.0;  // 2 / (1 + r12)
  double omega_opt = 0.0;  // 1 / (1 + r12)
};
OmegaBounds omega_bounds(const StabilityInputs& in);

/// Both roots of (1 + 6 dt/tau1) x^2 - (1 + (1 - 6 dt/tau2) hbar) x + hbar = 0,
/// computed cancellation-free (larger-magnitude root first, the other via the
/// product of roots). Explicit coupling is stable iff max |x| < 1.
std::pair<std::complex<double>, std::complex<double>> ecs_characteristic_roots(
    const StabilityInputs& in);

double ecs_growth_rate(const StabilityInputs& in);  // max root modulus

/// Per-step and cumulative interface energy imbalance, normalized by the melt
/// energy budget E* fixed at scenario start.
class EnergyLedger {
 public:
  explicit EnergyLedger(double e_star);

  struct Row {
    long step = 0;
    double t = 0.0;
    double dE_local = 0.0;
    double dE_cumulative = 0.0;
    double eps_local = 0.0;
    double eps_cumulative = 0.0;
  };

  /// Appends the local imbalance phi12 + phi21 - dh*mdot21 integrated over dt
  /// (areas folded into the fluxes by the caller when not unit). The caller
  /// passes scheme-appropriate snapshots: the explicit scheme mixes t^{n+1}
  /// and t^n values, the implicit scheme uses converged end-of-step values.
  void update(long step, double t, double phi12, double phi21, double mdot21,
              double fusion_enthalpy, double area, double dt);

  double e_star() const { return e_star_; }
  double cumulative() const { return cumulative_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Exact recomputation of the cumulative sum; used to assert the ledger
  /// never drifts from the running value.
  double resummed() const;

 private:
  double e_star_;
  double cumulative_ = 0.0;
  double comp_ = 0.0;  // Kahan carry
  std::vector<Row> rows_;
};

/// Melt energy budget E* = m0 cp (T_fus - T0) + dh m0.
double melt_energy_budget(double mass0, double heat_capacity, double t_fus, double t0,
                          double fusion_enthalpy);

/// Growth detector for oscillating series: peak-to-peak amplitude ratio over
/// the last extrema after discarding the leading transient. Returns the
/// geometric per-extremum growth factor; > 1 means a growing envelope.
double envelope_growth(const std::vector<double>& samples, double discard_fraction = 0.2,
                       int extrema = 10);

}  // namespace cosim
