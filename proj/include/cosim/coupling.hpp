#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "cosim/solvers.hpp"

namespace cosim {

enum class Scheme { ecs_gauss_seidel, ecs_jacobi, ics };

const char* to_string(Scheme s);

struct RelaxationStrategy {
  enum class Kind { constant, secant, aitken };
  Kind kind = Kind::constant;
  double omega = 1.0;       // constant value, or initial omega for the dynamic kinds
  double omega_max = 2.0;   // clamp for the aitken kind

  static RelaxationStrategy constant(double w) { return {Kind::constant, w, 2.0}; }
  static RelaxationStrategy secant(double w0) { return {Kind::secant, w0, 2.0}; }
  static RelaxationStrategy aitken(double w0, double wmax) { return {Kind::aitken, w0, wmax}; }
};

/// Secant update for the relaxation factor:
///   w_k = -w_{k-1} <r_k - r_{k-1}, r_{k-1}> / <r_k - r_{k-1}, r_k - r_{k-1}>.
/// A vanishing denominator (stagnated residual) keeps the previous factor.
double secant_omega(double omega_prev, const std::vector<double>& r_k,
                    const std::vector<double>& r_km1);

struct CouplingConfig {
  Scheme scheme = Scheme::ics;
  double macro_step = 1.0;         // s
  double eps_rel = 1e-4;           // relative interface tolerance
  int max_iterations = 100;
  RelaxationStrategy relaxation = RelaxationStrategy::constant(1.0);
  double event_relaxation = 0.5;   // alpha in (0,1) of the horizon update
  std::vector<DomainId> solver_order;
  bool synchronize_events = false; // run the event-synchronizing horizon loop
  /// The interface iteration stops once ||r||/||b|| <= eps_rel * margin
  /// (floored by eps_rel itself being reported as met). margin < 1 converges
  /// past the reporting tolerance so committed trajectories do not inherit
  /// stopping noise at the eps_rel level.
  double convergence_margin = 1.0;

  void validate() const {
    if (!(eps_rel > 0.0)) throw ValidationError("CouplingConfig: eps_rel must be > 0");
    if (!(macro_step > 0.0)) throw ValidationError("CouplingConfig: macro_step must be > 0");
    if (max_iterations < 1) throw ValidationError("CouplingConfig: max_iterations must be >= 1");
    if (!(event_relaxation > 0.0 && event_relaxation < 1.0))
      throw ValidationError("CouplingConfig: event_relaxation must lie in (0,1)");
    if (!(convergence_margin > 0.0) || convergence_margin > 1.0)
      throw ValidationError("CouplingConfig: convergence_margin must lie in (0,1]");
  }
};

struct TraceRow {
  long step = 0;
  int k = 0;
  double t_candidate = 0.0;    // end of the horizon this iteration solved to
  double residual_norm = 0.0;  // ||r||/||b|| (or absolute near ||b|| = 0)
  double omega = 0.0;
  double event_time = std::numeric_limits<double>::quiet_NaN();
  InterfaceVariables candidate;
};

struct IterationTrace {
  std::vector<TraceRow> rows;
};

struct CommittedEvent {
  DomainId solver = 0;
  StateTransition transition;
  double time = 0.0;
};

struct StepReport {
  double t_begin = 0.0;
  double t_end = 0.0;
  int iterations = 1;
  std::vector<CommittedEvent> events;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& msg, IterationTrace trace)
      : std::runtime_error(msg), trace(std::move(trace)) {}
  IterationTrace trace;
};

/// Which components of the incoming directed interface variables a solver
/// actually consumes; the fixed point iterates exactly on this subset.
struct ExchangeSpec {
  bool flux = false;
  bool temperature = false;
  bool mass_flow = false;
};

ExchangeSpec default_reads(const Solver& s);

/// Master driver for one coupled pair. Owns the exchange policy: explicit
/// staggered sweeps (Gauss-Seidel or Jacobi ordering) or the relaxed interface
/// fixed point, optionally synchronized on the first internal event.
class CoupledDriver {
 public:
  CoupledDriver(std::vector<Solver*> solvers, InterfaceRegistry registry, CouplingConfig cfg);

  /// Advances one macro step starting at t; returns the committed step report.
  /// The committed step always satisfies t < t_end <= t + macro_step.
  StepReport step(double t);

  const InterfaceRegistry& registry() const { return registry_; }
  InterfaceRegistry& registry() { return registry_; }
  const IterationTrace& trace() const { return trace_; }
  const CouplingConfig& config() const { return cfg_; }
  long advance_calls(DomainId id) const;

 private:
  StepReport ecs_step(double t);
  StepReport ics_step(double t);

  Solver* by_id(DomainId id) const;
  void count(DomainId id);

  std::vector<Solver*> solvers_;
  InterfaceRegistry registry_;
  CouplingConfig cfg_;
  IterationTrace trace_;
  long step_index_ = 0;
  std::map<DomainId, long> calls_;
};

}  // namespace cosim
