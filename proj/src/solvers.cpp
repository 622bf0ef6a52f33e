#include "cosim/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cosim {

namespace {

constexpr double kTimeEps = 1e-9;

void check_input(const SolverInput& in) {
  if (!in.start.finite() || !in.end.finite() || !std::isfinite(in.mass_increment))
    throw ValidationError("solver input: non-finite interface data");
}

double areal_heat_capacity(double mass, double cp, double area) { return mass * cp / area; }

}  // namespace

const char* to_string(DomainState s) {
  switch (s) {
    case DomainState::heating: return "heating";
    case DomainState::melting: return "melting";
    case DomainState::empty: return "empty";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ToyDirichletSolver

ToyDirichletSolver::ToyDirichletSolver(DomainId id, SolverConfig cfg, SubdomainState init)
    : id_(id), cfg_(std::move(cfg)), state_(init) {
  cfg_.validate();
  state_.validate();
}

SolverOutcome ToyDirichletSolver::advance(double t0, double t1, const SolverInput& in,
                                          EventHandling) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  const double span = t1 - t0;
  const double L = cfg_.geometry.characteristic_length;
  const double k = cfg_.material.thermal_conductivity / L;
  const double H = cfg_.material.density * cfg_.material.heat_capacity * L;
  double t = t0;
  double T = state_.avg_temperature;
  while (t < t1 - kTimeEps) {
    const double h = std::min(cfg_.micro_step, t1 - t);
    const double tb = cfg_.boundary.at(t + h);
    if (cfg_.integration == Integration::implicit_euler) {
      const double th = in.at((t + h - t0) / span).temperature;
      const double beta = h * k / H;
      T = (T + beta * (2.0 * tb + 4.0 * th)) / (1.0 + 6.0 * beta);
    } else {
      const double th = in.at((t - t0) / span).temperature;
      const double phi = k * (6.0 * T - 2.0 * cfg_.boundary.at(t) - 4.0 * th);
      T = T - h * phi / H;
    }
    t += h;
  }
  state_.avg_temperature = T;

  SolverOutcome out;
  const double th_end = in.end.temperature;
  out.output.heat_flux = k * (6.0 * T - 2.0 * cfg_.boundary.at(t1) - 4.0 * th_end);
  out.output.temperature = th_end;  // temperature continuity across the contact
  out.output.mass_flow_rate = -in.end.mass_flow_rate;
  out.output.area = cfg_.geometry.cross_section_area;
  out.new_state = state_;
  out.integrated_to = t1;
  return out;
}

std::vector<double> ToyDirichletSolver::checkpoint() const {
  return {state_.mass, state_.avg_temperature};
}
void ToyDirichletSolver::restore(const std::vector<double>& snap) {
  state_.mass = snap.at(0);
  state_.avg_temperature = snap.at(1);
}

// ---------------------------------------------------------------------------
// ToyNeumannSolver

ToyNeumannSolver::ToyNeumannSolver(DomainId id, SolverConfig cfg, SubdomainState init)
    : id_(id), cfg_(std::move(cfg)), state_(init) {
  cfg_.validate();
  state_.validate();
}

SolverOutcome ToyNeumannSolver::advance(double t0, double t1, const SolverInput& in,
                                        EventHandling) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  const double span = t1 - t0;
  const double L = cfg_.geometry.characteristic_length;
  const double k = cfg_.material.thermal_conductivity / L;
  const double H = cfg_.material.density * cfg_.material.heat_capacity * L;
  const bool implicit = cfg_.integration == Integration::implicit_euler;
  double t = t0;
  double T = state_.avg_temperature;
  double phi_end = in.end.heat_flux;
  while (t < t1 - kTimeEps) {
    const double h = std::min(cfg_.micro_step, t1 - t);
    if (implicit) {
      const double phi = in.at((t + h - t0) / span).heat_flux;
      T = T - h * phi / H;
      phi_end = phi;
    } else {
      const double phi = in.at((t - t0) / span).heat_flux;
      T = T + h * phi / H;
      phi_end = phi;
    }
    t += h;
  }
  state_.avg_temperature = T;

  const double tb = cfg_.boundary.at(t1);
  SolverOutcome out;
  if (implicit) {
    out.output.temperature = 1.5 * T - 0.5 * tb + phi_end / (4.0 * k);
  } else {
    out.output.temperature = 1.5 * T - 0.5 * tb - phi_end / (4.0 * k);
  }
  out.output.heat_flux = -in.end.heat_flux;  // flux continuity echo
  out.output.mass_flow_rate = 0.0;
  out.output.area = cfg_.geometry.cross_section_area;
  out.new_state = state_;
  out.integrated_to = t1;
  return out;
}

std::vector<double> ToyNeumannSolver::checkpoint() const {
  return {state_.mass, state_.avg_temperature};
}
void ToyNeumannSolver::restore(const std::vector<double>& snap) {
  state_.mass = snap.at(0);
  state_.avg_temperature = snap.at(1);
}

// ---------------------------------------------------------------------------
// LpDirichletSolver

LpDirichletSolver::LpDirichletSolver(DomainId id, SolverConfig cfg, SubdomainState init)
    : id_(id), cfg_(std::move(cfg)), state_(init) {
  cfg_.validate();
  state_.validate();
}

SolverOutcome LpDirichletSolver::advance(double t0, double t1, const SolverInput& in,
                                         EventHandling) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  const double span = t1 - t0;
  const double area = cfg_.geometry.cross_section_area;
  const double rho = cfg_.material.density;
  const double lam = cfg_.material.thermal_conductivity;
  const double cp = cfg_.material.heat_capacity;
  const double rate = in.mass_increment / span;

  double t = t0;
  double T = state_.avg_temperature;
  double m = state_.mass;
  while (t < t1 - kTimeEps) {
    const double h = std::min(cfg_.micro_step, t1 - t);
    const double s_end = (t + h - t0) / span;
    const double th = in.at(s_end).temperature;
    const double tb = cfg_.boundary.at(t + h);
    const double m_new = m + h * rate;
    const double k = lam / cylinder_length(m_new, rho, area);
    const double H = areal_heat_capacity(m_new, cp, area);
    const double q = m_new * cfg_.material.residual_mass_power / area;
    if (cfg_.include_boundary_face) {
      // H dT/dt = -(phi_interface + phi_boundary) + q
      //         = -k (12 T - 6 th - 6 tb) + q
      T = (H * T / h + 6.0 * k * (th + tb) + q) / (H / h + 12.0 * k);
    } else {
      T = (T + (h * k / H) * (2.0 * tb + 4.0 * th) + h * q / H) / (1.0 + 6.0 * h * k / H);
    }
    m = m_new;
    t += h;
  }
  state_.avg_temperature = T;
  state_.mass = m;

  const double k = lam / cylinder_length(m, rho, area);
  SolverOutcome out;
  out.output.heat_flux = k * (6.0 * T - 4.0 * in.end.temperature - 2.0 * cfg_.boundary.at(t1));
  out.output.temperature = in.end.temperature;
  out.output.mass_flow_rate = -in.end.mass_flow_rate;
  out.output.area = area;
  out.new_state = state_;
  out.integrated_to = t1;
  out.mass_shed = -in.mass_increment;
  return out;
}

std::vector<double> LpDirichletSolver::checkpoint() const {
  return {state_.mass, state_.avg_temperature};
}
void LpDirichletSolver::restore(const std::vector<double>& snap) {
  state_.mass = snap.at(0);
  state_.avg_temperature = snap.at(1);
}

// ---------------------------------------------------------------------------
// LpStateMachineSolver

LpStateMachineSolver::LpStateMachineSolver(DomainId id, SolverConfig cfg, SubdomainState init,
                                           DomainState initial)
    : id_(id), cfg_(std::move(cfg)), state_(init), machine_state_(initial) {
  cfg_.validate();
  state_.validate();
}

double LpStateMachineSolver::conductance() const {
  return cfg_.material.thermal_conductivity /
         cylinder_length(state_.mass, cfg_.material.density, cfg_.geometry.cross_section_area);
}

double LpStateMachineSolver::theta_from_flux(double phi_own, double boundary_temp) const {
  // Inverted stationary closure at the interface face.
  return (6.0 * state_.avg_temperature - 2.0 * boundary_temp - phi_own / conductance()) / 4.0;
}

struct LpStateMachineSolver::MicroResult {
  double theta = 0.0;
  double mdot = 0.0;
  double phi_own = 0.0;
};

SolverOutcome LpStateMachineSolver::advance(double t0, double t1, const SolverInput& in,
                                            EventHandling mode) {
  switch (machine_state_) {
    case DomainState::heating: return advance_heating(t0, t1, in, mode);
    case DomainState::melting: return advance_melting(t0, t1, in, mode);
    case DomainState::empty: return advance_empty(t0, t1, in, mode);
  }
  throw std::logic_error("unreachable");
}

SolverOutcome LpStateMachineSolver::advance_heating(double t0, double t1, const SolverInput& in,
                                                    EventHandling mode) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  const double span = t1 - t0;
  const double area = cfg_.geometry.cross_section_area;
  const double cp = cfg_.material.heat_capacity;
  const double tstar = cfg_.thresholds.melt_trigger;
  const bool empty_mode = machine_state_ == DomainState::empty;

  double t = t0;
  double t_int = t1;
  std::optional<EventReport> event;
  double theta_prev = theta_from_flux(-in.at(0.0).heat_flux, cfg_.boundary.at(t0));
  while (t < t1 - kTimeEps) {
    double h = std::min(cfg_.micro_step, t1 - t);
    const double T_saved = state_.avg_temperature;
    double s_end = (t + h - t0) / span;
    double phi_own = -in.at(s_end).heat_flux;  // own outward flux at the contact
    double tb = cfg_.boundary.at(t + h);
    const double k = conductance();
    const double H = areal_heat_capacity(state_.mass, cp, area);
    const double q = state_.mass * cfg_.material.residual_mass_power / area;
    // Boundary face flux with the interface face eliminated through its own
    // closure: H dT/dt = -(phi_own + 3 k (T - tb) + phi_own/2) + q.
    state_.avg_temperature =
        (H * T_saved / h + 3.0 * k * tb - 1.5 * phi_own + q) / (H / h + 3.0 * k);
    double theta = theta_from_flux(phi_own, tb);
    if (!empty_mode && theta_prev < tstar && theta >= tstar) {
      if (mode == EventHandling::truncate) {
        const double te = t + (tstar - theta_prev) / (theta - theta_prev) * h;
        state_.avg_temperature = T_saved;
        const double hh = te - t;
        if (hh > kTimeEps) {
          s_end = (te - t0) / span;
          phi_own = -in.at(s_end).heat_flux;
          tb = cfg_.boundary.at(te);
          const double k2 = conductance();
          const double q2 = state_.mass * cfg_.material.residual_mass_power / area;
          state_.avg_temperature =
              (H * T_saved / hh + 3.0 * k2 * tb - 1.5 * phi_own + q2) / (H / hh + 3.0 * k2);
        }
        event = EventReport{te, {DomainState::heating, DomainState::melting}};
        t_int = te;
        break;
      }
      if (!event)
        event = EventReport{t1, {DomainState::heating, DomainState::melting}};
    }
    theta_prev = theta;
    t += h;
  }

  const double s_out = (t_int - t0) / span;
  const double phi_in_end = in.at(s_out).heat_flux;
  const double tb_end = cfg_.boundary.at(t_int);
  SolverOutcome out;
  out.output.temperature = theta_from_flux(-phi_in_end, tb_end);
  out.output.heat_flux = -phi_in_end;
  out.output.mass_flow_rate = 0.0;
  out.output.area = area;
  out.new_state = state_;
  out.event = event;
  out.integrated_to = t_int;
  return out;
}

SolverOutcome LpStateMachineSolver::advance_melting(double t0, double t1, const SolverInput& in,
                                                    EventHandling mode) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  if (!(state_.mass > cfg_.thresholds.residual_mass))
    throw ValidationError("advance_melting: mass already at or below the residual threshold");
  const double span = t1 - t0;
  const double area = cfg_.geometry.cross_section_area;
  const double cp = cfg_.material.heat_capacity;
  const double tfus = cfg_.material.fusion_temperature;
  const double dh = cfg_.material.fusion_enthalpy;
  const double m_eps = cfg_.thresholds.residual_mass;
  const double m_start = state_.mass;

  double t = t0;
  double t_int = t1;
  std::optional<EventReport> event;
  bool have_prev_mdot = false;
  double mdot_prev = 0.0;

  auto melt_micro = [&](double h, double s_end) -> MicroResult {
    // Semi-implicit: temperature implicit with the front pinned at T_fus,
    // melt rate explicit in the fresh fluxes.
    const double phi12 = in.at(s_end).heat_flux;
    const double tb = cfg_.boundary.at(t0 + s_end * span);
    const double k = conductance();
    const double H = areal_heat_capacity(state_.mass, cp, area);
    const double q = state_.mass * cfg_.material.residual_mass_power / area;
    state_.avg_temperature =
        (H * state_.avg_temperature / h + k * (6.0 * tfus + 6.0 * tb) + q) / (H / h + 12.0 * k);
    MicroResult r;
    r.phi_own = conductance() * (6.0 * state_.avg_temperature - 4.0 * tfus - 2.0 * tb);
    r.mdot = stefan_balance(phi12, r.phi_own, area, area, dh);
    return r;
  };

  while (t < t1 - kTimeEps) {
    double h = std::min(cfg_.micro_step, t1 - t);
    const double m_saved = state_.mass;
    const double T_saved = state_.avg_temperature;
    const double s_end = (t + h - t0) / span;
    MicroResult r = melt_micro(h, s_end);
    double m_new = state_.mass - h * r.mdot;
    double te = -1.0;
    StateTransition tr;
    if (mode == EventHandling::truncate && have_prev_mdot && mdot_prev >= 0.0 && r.mdot < 0.0) {
      te = t + (0.0 - mdot_prev) / (r.mdot - mdot_prev) * h;
      tr = {DomainState::melting, DomainState::heating};
    } else if (m_new <= m_eps) {
      const double tx = t + (state_.mass - m_eps) / std::max(state_.mass - m_new, 1e-300) * h;
      if (mode == EventHandling::truncate) {
        te = tx;
        tr = {DomainState::melting, DomainState::empty};
      } else {
        m_new = std::max(m_new, m_eps);
        if (!event) event = EventReport{t1, {DomainState::melting, DomainState::empty}};
      }
    } else if (mode == EventHandling::clamp && have_prev_mdot && mdot_prev >= 0.0 &&
               r.mdot < 0.0 && !event) {
      event = EventReport{t1, {DomainState::melting, DomainState::heating}};
    }
    if (te >= 0.0) {
      state_.mass = m_saved;
      state_.avg_temperature = T_saved;
      const double hh = te - t;
      if (hh > kTimeEps) {
        MicroResult rr = melt_micro(hh, (te - t0) / span);
        state_.mass = std::max(m_eps, state_.mass - hh * rr.mdot);
      }
      event = EventReport{te, tr};
      t_int = te;
      break;
    }
    state_.mass = m_new;
    mdot_prev = r.mdot;
    have_prev_mdot = true;
    t += h;
  }

  const double s_out = (t_int - t0) / span;
  const double tb_end = cfg_.boundary.at(t_int);
  const double k_end = conductance();
  const double phi_own = k_end * (6.0 * state_.avg_temperature - 4.0 * tfus - 2.0 * tb_end);
  SolverOutcome out;
  out.output.temperature = tfus;
  out.output.heat_flux = phi_own;
  out.output.mass_flow_rate = stefan_balance(in.at(s_out).heat_flux, phi_own, area, area, dh);
  out.output.area = area;
  out.new_state = state_;
  out.event = event;
  out.integrated_to = t_int;
  out.mass_shed = m_start - state_.mass;
  return out;
}

SolverOutcome LpStateMachineSolver::advance_empty(double t0, double t1, const SolverInput& in,
                                                  EventHandling mode) {
  // Inert residue: the fixed-contact conduction of the heating path with the
  // mass frozen; never reports an event.
  return advance_heating(t0, t1, in, mode);
}

void LpStateMachineSolver::apply_transition(const StateTransition& tr) {
  const bool legal = (tr.from == DomainState::heating && tr.to == DomainState::melting) ||
                     (tr.from == DomainState::melting && tr.to == DomainState::heating) ||
                     (tr.from == DomainState::melting && tr.to == DomainState::empty);
  if (!legal || tr.from != machine_state_)
    throw std::logic_error("illegal state transition");
  machine_state_ = tr.to;
}

std::vector<double> LpStateMachineSolver::checkpoint() const {
  return {state_.mass, state_.avg_temperature, static_cast<double>(machine_state_)};
}
void LpStateMachineSolver::restore(const std::vector<double>& snap) {
  state_.mass = snap.at(0);
  state_.avg_temperature = snap.at(1);
  machine_state_ = static_cast<DomainState>(static_cast<int>(snap.at(2)));
}

// ---------------------------------------------------------------------------
// OneDReferenceSolver

OneDReferenceSolver::OneDReferenceSolver(DomainId id, SolverConfig cfg, CouplingRole role,
                                         int nodes, double init_temperature)
    : id_(id), cfg_(std::move(cfg)), role_(role) {
  cfg_.validate();
  if (nodes < 3)
    throw ValidationError("OneDReferenceSolver: at least 3 nodes required");
  temp_.assign(static_cast<std::size_t>(nodes), init_temperature);
  dz_ = cfg_.geometry.characteristic_length / (nodes - 1);
  const double alpha =
      cfg_.material.thermal_conductivity / (cfg_.material.density * cfg_.material.heat_capacity);
  micro_ = 0.4 * dz_ * dz_ / alpha;  // mesh Fourier limit for the explicit update
  if (!(micro_ > 0.0))
    throw ValidationError("OneDReferenceSolver: unstable explicit configuration");
}

SolverOutcome OneDReferenceSolver::advance(double t0, double t1, const SolverInput& in,
                                           EventHandling) {
  check_input(in);
  if (!(t1 > t0)) throw ValidationError("advance: empty window");
  const double span = t1 - t0;
  const double lam = cfg_.material.thermal_conductivity;
  const double alpha = lam / (cfg_.material.density * cfg_.material.heat_capacity);
  const std::size_t n = temp_.size();
  std::vector<double> next(temp_);

  double t = t0;
  while (t < t1 - kTimeEps) {
    const double h = std::min(micro_, t1 - t);
    const double s = (t + h - t0) / span;
    const double tb = cfg_.boundary.at(t + h);
    temp_[0] = tb;
    if (role_ == CouplingRole::dirichlet_receiver) temp_[n - 1] = in.at(s).temperature;
    for (std::size_t i = 1; i + 1 < n; ++i)
      next[i] = temp_[i] + h * alpha * (temp_[i + 1] - 2.0 * temp_[i] + temp_[i - 1]) / (dz_ * dz_);
    for (std::size_t i = 1; i + 1 < n; ++i) temp_[i] = next[i];
    if (role_ == CouplingRole::dirichlet_receiver) {
      temp_[n - 1] = in.at(s).temperature;
    } else {
      // Imposed flux enters the interface face: own outward one-sided flux
      // -lam (3 T_N - 4 T_{N-1} + T_{N-2})/(2 dz) equals -phi_received.
      const double phi = in.at(s).heat_flux;
      temp_[n - 1] = (phi * 2.0 * dz_ / lam + 4.0 * temp_[n - 2] - temp_[n - 3]) / 3.0;
    }
    t += h;
  }

  SolverOutcome out;
  if (role_ == CouplingRole::dirichlet_receiver) {
    out.output.heat_flux =
        -lam * (3.0 * temp_[n - 1] - 4.0 * temp_[n - 2] + temp_[n - 3]) / (2.0 * dz_);
    out.output.temperature = temp_[n - 1];
  } else {
    out.output.temperature = temp_[n - 1];
    out.output.heat_flux = -in.end.heat_flux;
  }
  out.output.area = cfg_.geometry.cross_section_area;
  out.new_state = subdomain_state();
  out.integrated_to = t1;
  return out;
}

std::vector<double> OneDReferenceSolver::checkpoint() const { return temp_; }
void OneDReferenceSolver::restore(const std::vector<double>& snap) {
  if (snap.size() != temp_.size()) throw std::logic_error("checkpoint size mismatch");
  temp_ = snap;
}

SubdomainState OneDReferenceSolver::subdomain_state() const {
  SubdomainState s;
  s.mass = cfg_.material.density * cfg_.geometry.cross_section_area *
           cfg_.geometry.characteristic_length;
  s.avg_temperature = std::accumulate(temp_.begin(), temp_.end(), 0.0) / temp_.size();
  return s;
}

}  // namespace cosim
