#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cosim/closures.hpp"
#include "cosim/model_core.hpp"

namespace cosim {

enum class Integration { implicit_euler, explicit_euler };
enum class CouplingRole { dirichlet_receiver, neumann_receiver };
enum class DomainState { heating, melting, empty };

const char* to_string(DomainState s);

struct ThresholdParams {
  double melt_trigger = 0.0;   // K, interface temperature that starts melting
  double residual_mass = 0.0;  // kg, mass at which the domain is spent

  void validate() const {
    if (!(melt_trigger > 0.0)) throw ValidationError("ThresholdParams: melt_trigger must be > 0");
    if (!(residual_mass >= 0.0))
      throw ValidationError("ThresholdParams: residual_mass must be >= 0");
  }
};

struct StateTransition {
  DomainState from = DomainState::heating;
  DomainState to = DomainState::heating;
};

struct EventReport {
  double time = 0.0;  // t* in (t^n, t^n + dt]
  StateTransition transition;
};

struct SolverConfig {
  double micro_step = 1.0;  // s
  Integration integration = Integration::implicit_euler;
  MaterialProps material;
  GeometrySpec geometry;
  BoundarySchedule boundary;
  ThresholdParams thresholds{1.0, 0.0};
  // The reduced single-flux energy balance keeps only the interface term;
  // the full balance adds the external-boundary closure flux as well.
  bool include_boundary_face = false;

  void validate() const {
    if (!(micro_step > 0.0)) throw ValidationError("SolverConfig: micro_step must be > 0");
    material.validate();
    geometry.validate();
    boundary.validate();
    thresholds.validate();
  }
};

/// Interface data a solver consumes over one coupling window. `start` holds
/// the committed values at t^n; `end` the candidate/fresh values at the window
/// end. Implicit micro steps sample the linear interpolant at their own end
/// time, so a window with start == end behaves as a constant exchange.
struct SolverInput {
  InterfaceVariables start;
  InterfaceVariables end;
  /// Mass transferred through the interface over the window (receiver side,
  /// positive into the solver). Carried separately from the instantaneous
  /// rate so mass bookkeeping between solvers stays exact.
  double mass_increment = 0.0;

  static SolverInput constant(const InterfaceVariables& v, double dm = 0.0) {
    return SolverInput{v, v, dm};
  }
  InterfaceVariables at(double s) const {
    InterfaceVariables v;
    v.heat_flux = start.heat_flux + (end.heat_flux - start.heat_flux) * s;
    v.temperature = start.temperature + (end.temperature - start.temperature) * s;
    v.mass_flow_rate = start.mass_flow_rate + (end.mass_flow_rate - start.mass_flow_rate) * s;
    v.area = end.area;
    return v;
  }
};

/// How internal events interact with the coupling window. `truncate` stops
/// the integration at the located event time (implicit drivers re-solve the
/// shortened horizon); `clamp` runs the whole window, holding state bounds,
/// and leaves the transition to the commit at the window end.
enum class EventHandling { truncate, clamp };

struct SolverOutcome {
  InterfaceVariables output;   // outgoing directed variables at the end of integration
  SubdomainState new_state;
  std::optional<EventReport> event;
  double integrated_to = 0.0;  // horizon, or the event time when truncated
  double mass_shed = 0.0;      // mass pushed through the interface this window
};

/// A black-box time-advancing unit. The coupling drivers see only interface
/// variables in and out plus the checkpoint hooks used to restart iterations
/// from the committed state.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual DomainId id() const = 0;
  virtual CouplingRole role() const = 0;
  virtual SolverOutcome advance(double t0, double t1, const SolverInput& in,
                                EventHandling mode) = 0;
  virtual std::vector<double> checkpoint() const = 0;
  virtual void restore(const std::vector<double>& snap) = 0;
  /// Applies a committed transition (no-op for solvers without states).
  virtual void apply_transition(const StateTransition&) {}
  virtual DomainState state() const { return DomainState::heating; }
  virtual SubdomainState subdomain_state() const = 0;
};

/// Reduced single-flux conduction prototype, Dirichlet receiver: consumes the
/// interface temperature, advances rho cp L dT/dt = -phi with the stationary
/// closure (opposite face at the boundary temperature), returns the flux.
/// Implicit Euler; the last micro step is shortened to land on the horizon.
class ToyDirichletSolver final : public Solver {
 public:
  ToyDirichletSolver(DomainId id, SolverConfig cfg, SubdomainState init);
  DomainId id() const override { return id_; }
  CouplingRole role() const override { return CouplingRole::dirichlet_receiver; }
  SolverOutcome advance(double t0, double t1, const SolverInput& in,
                        EventHandling mode) override;
  std::vector<double> checkpoint() const override;
  void restore(const std::vector<double>& snap) override;
  SubdomainState subdomain_state() const override { return state_; }

 private:
  DomainId id_;
  SolverConfig cfg_;
  SubdomainState state_;
};

/// Reduced single-flux prototype, Neumann receiver: consumes the interface
/// flux and returns the interface temperature from the inverted closure.
///
/// The two integration modes realize the two discrete couplings analyzed in
/// closed form: the explicit variant is the staggered partner whose coupled
/// flux sequence obeys the second-order linear difference equation, the
/// implicit variant the relaxed fixed-point partner whose iteration error
/// contracts by |1 - (1 + r12) w| per sweep. Their flux sign structure
/// differs accordingly; see DECISIONS in the repository notes.
class ToyNeumannSolver final : public Solver {
 public:
  ToyNeumannSolver(DomainId id, SolverConfig cfg, SubdomainState init);
  DomainId id() const override { return id_; }
  CouplingRole role() const override { return CouplingRole::neumann_receiver; }
  SolverOutcome advance(double t0, double t1, const SolverInput& in,
                        EventHandling mode) override;
  std::vector<double> checkpoint() const override;
  void restore(const std::vector<double>& snap) override;
  SubdomainState subdomain_state() const override { return state_; }

 private:
  DomainId id_;
  SolverConfig cfg_;
  SubdomainState state_;
};

/// Full lumped conduction solver, Dirichlet receiver. Both closure faces
/// enter the energy balance; mass arriving through the interface is folded in
/// thermalized (it adopts the pool temperature on arrival) and the geometry
/// follows the mass.
class LpDirichletSolver final : public Solver {
 public:
  LpDirichletSolver(DomainId id, SolverConfig cfg, SubdomainState init);
  DomainId id() const override { return id_; }
  CouplingRole role() const override { return CouplingRole::dirichlet_receiver; }
  SolverOutcome advance(double t0, double t1, const SolverInput& in,
                        EventHandling mode) override;
  std::vector<double> checkpoint() const override;
  void restore(const std::vector<double>& snap) override;
  SubdomainState subdomain_state() const override { return state_; }

 private:
  DomainId id_;
  SolverConfig cfg_;
  SubdomainState state_;
};

/// Full lumped solver with the Heating/Melting/Empty state machine, Neumann
/// receiver. Guards are checked after each micro step; crossings are located
/// by linear interpolation of the guard between micro nodes and the step is
/// re-truncated to that time (truncate mode) or state bounds are held and the
/// transition deferred to the commit (clamp mode).
class LpStateMachineSolver final : public Solver {
 public:
  LpStateMachineSolver(DomainId id, SolverConfig cfg, SubdomainState init,
                       DomainState initial = DomainState::heating);
  DomainId id() const override { return id_; }
  CouplingRole role() const override { return CouplingRole::neumann_receiver; }
  SolverOutcome advance(double t0, double t1, const SolverInput& in,
                        EventHandling mode) override;
  std::vector<double> checkpoint() const override;
  void restore(const std::vector<double>& snap) override;
  void apply_transition(const StateTransition& tr) override;
  DomainState state() const override { return machine_state_; }
  SubdomainState subdomain_state() const override { return state_; }

  /// Single-state advances; step_state_machine (= advance) dispatches on the
  /// current state and owns guard detection.
  SolverOutcome advance_heating(double t0, double t1, const SolverInput& in, EventHandling mode);
  SolverOutcome advance_melting(double t0, double t1, const SolverInput& in, EventHandling mode);
  SolverOutcome advance_empty(double t0, double t1, const SolverInput& in, EventHandling mode);

 private:
  struct MicroResult;
  double conductance() const;  // lambda / L(m)
  double theta_from_flux(double phi_own, double boundary_temp) const;

  DomainId id_;
  SolverConfig cfg_;
  SubdomainState state_;
  DomainState machine_state_ = DomainState::heating;
};

/// One-dimensional finite-difference reference solver (uniform grid, explicit
/// scheme with the micro step taken from the mesh Fourier limit). Node 0 is
/// the external boundary, the last node the coupled interface.
class OneDReferenceSolver final : public Solver {
 public:
  OneDReferenceSolver(DomainId id, SolverConfig cfg, CouplingRole role, int nodes,
                      double init_temperature);
  DomainId id() const override { return id_; }
  CouplingRole role() const override { return role_; }
  SolverOutcome advance(double t0, double t1, const SolverInput& in,
                        EventHandling mode) override;
  std::vector<double> checkpoint() const override;
  void restore(const std::vector<double>& snap) override;
  SubdomainState subdomain_state() const override;
  const std::vector<double>& profile() const { return temp_; }

 private:
  DomainId id_;
  SolverConfig cfg_;
  CouplingRole role_;
  std::vector<double> temp_;
  double dz_;
  double micro_;
};

}  // namespace cosim
