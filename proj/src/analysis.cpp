#include "cosim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cosim {

double r12(const StabilityInputs& in) {
  in.validate();
  return std::abs(1.0 - 6.0 * in.dt / in.tau2) / std::abs(1.0 + 6.0 * in.dt / in.tau1) * in.hbar;
}

double r12_signed(const StabilityInputs& in) {
  in.validate();
  return (1.0 - 6.0 * in.dt / in.tau2) / (1.0 + 6.0 * in.dt / in.tau1) * in.hbar;
}

double hbar_crit(double dt, double tau1, double tau2) {
  const double denom = 1.0 - 6.0 * dt / tau2;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs((1.0 + 6.0 * dt / tau1) / denom);
}

OmegaBounds omega_bounds(const StabilityInputs& in) {
  const double r = r12(in);
  return {2.0 / (1.0 + r), 1.0 / (1.0 + r)};
}

std::pair<std::complex<double>, std::complex<double>> ecs_characteristic_roots(
    const StabilityInputs& in) {
  in.validate();
  const double a = 1.0 + 6.0 * in.dt / in.tau1;
  const double b = -(1.0 + (1.0 - 6.0 * in.dt / in.tau2) * in.hbar);
  const double c = in.hbar;
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    // q = -(b + sign(b) sqrt(disc))/2 avoids cancellation in the smaller root.
    const double s = b >= 0.0 ? 1.0 : -1.0;
    const double q = -0.5 * (b + s * std::sqrt(disc));
    std::complex<double> x1(q / a, 0.0);
    std::complex<double> x2(q != 0.0 ? c / q : 0.0, 0.0);
    return {x1, x2};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  return {{re, im}, {re, -im}};
}

double ecs_growth_rate(const StabilityInputs& in) {
  auto [x1, x2] = ecs_characteristic_roots(in);
  return std::max(std::abs(x1), std::abs(x2));
}

EnergyLedger::EnergyLedger(double e_star) : e_star_(e_star) {
  if (!(e_star > 0.0)) throw ValidationError("EnergyLedger: E* must be > 0");
}

void EnergyLedger::update(long step, double t, double phi12, double phi21, double mdot21,
                          double fusion_enthalpy, double area, double dt) {
  const double dE = (phi12 * area + phi21 * area - fusion_enthalpy * mdot21) * dt;
  // Kahan update keeps the running sum exactly re-summable.
  const double y = dE - comp_;
  const double s = cumulative_ + y;
  comp_ = (s - cumulative_) - y;
  cumulative_ = s;
  rows_.push_back({step, t, dE, cumulative_, dE / e_star_, cumulative_ / e_star_});
}

double EnergyLedger::resummed() const {
  double s = 0.0, c = 0.0;
  for (const auto& r : rows_) {
    const double y = r.dE_local - c;
    const double v = s + y;
    c = (v - s) - y;
    s = v;
  }
  return s;
}

double melt_energy_budget(double mass0, double heat_capacity, double t_fus, double t0,
                          double fusion_enthalpy) {
  return mass0 * heat_capacity * (t_fus - t0) + fusion_enthalpy * mass0;
}

double envelope_growth(const std::vector<double>& samples, double discard_fraction,
                       int extrema) {
  if (samples.size() < 8) throw ValidationError("envelope_growth: series too short");
  const std::size_t begin = static_cast<std::size_t>(samples.size() * discard_fraction);
  std::vector<double> ex;
  for (std::size_t i = std::max<std::size_t>(begin, 1); i + 1 < samples.size(); ++i) {
    const double a = samples[i] - samples[i - 1];
    const double b = samples[i + 1] - samples[i];
    if ((a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0)) ex.push_back(samples[i]);
  }
  if (ex.size() < 3) return 0.0;  // no sustained oscillation: treat as damped
  if (static_cast<int>(ex.size()) > extrema) ex.erase(ex.begin(), ex.end() - extrema);
  std::vector<double> amp;
  for (std::size_t i = 0; i + 1 < ex.size(); ++i) amp.push_back(std::abs(ex[i + 1] - ex[i]));
  if (amp.front() == 0.0) return amp.back() > 0.0 ? 2.0 : 1.0;
  const double ratio = amp.back() / amp.front();
  return std::pow(ratio, 1.0 / static_cast<double>(amp.size() - 1));
}

}  // namespace cosim
