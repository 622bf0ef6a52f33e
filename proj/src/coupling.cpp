#include "cosim/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace cosim {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ecs_gauss_seidel: return "ecs";
    case Scheme::ecs_jacobi: return "ecs-jacobi";
    case Scheme::ics: return "ics";
  }
  return "?";
}

double secant_omega(double omega_prev, const std::vector<double>& r_k,
                    const std::vector<double>& r_km1) {
  if (r_k.size() != r_km1.size()) throw ValidationError("secant_omega: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r_k.size(); ++i) {
    const double d = r_k[i] - r_km1[i];
    num += d * r_km1[i];
    den += d * d;
  }
  if (den == 0.0) return omega_prev;  // stagnation guard
  return -omega_prev * num / den;
}

ExchangeSpec default_reads(const Solver& s) {
  ExchangeSpec e;
  if (s.role() == CouplingRole::dirichlet_receiver) {
    e.temperature = true;
    e.mass_flow = true;
  } else {
    e.flux = true;
  }
  return e;
}

namespace {

std::vector<double> pick(const InterfaceVariables& b, const ExchangeSpec& e) {
  std::vector<double> v;
  if (e.flux) v.push_back(b.heat_flux);
  if (e.temperature) v.push_back(b.temperature);
  if (e.mass_flow) v.push_back(b.mass_flow_rate);
  return v;
}

void place(InterfaceVariables& b, const ExchangeSpec& e, const std::vector<double>& v) {
  std::size_t i = 0;
  if (e.flux) b.heat_flux = v[i++];
  if (e.temperature) b.temperature = v[i++];
  if (e.mass_flow) b.mass_flow_rate = v[i++];
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

CoupledDriver::CoupledDriver(std::vector<Solver*> solvers, InterfaceRegistry registry,
                             CouplingConfig cfg)
    : solvers_(std::move(solvers)), registry_(std::move(registry)), cfg_(std::move(cfg)) {
  cfg_.validate();
  if (cfg_.solver_order.empty())
    for (const auto* s : solvers_) cfg_.solver_order.push_back(s->id());
  if (cfg_.solver_order.size() != solvers_.size())
    throw ValidationError("CoupledDriver: solver_order must cover all solvers exactly once");
  for (DomainId id : cfg_.solver_order) by_id(id);
}

Solver* CoupledDriver::by_id(DomainId id) const {
  for (auto* s : solvers_)
    if (s->id() == id) return s;
  throw ValidationError("CoupledDriver: unknown solver id " + std::to_string(id));
}

void CoupledDriver::count(DomainId id) { ++calls_[id]; }
long CoupledDriver::advance_calls(DomainId id) const {
  auto it = calls_.find(id);
  return it == calls_.end() ? 0 : it->second;
}

StepReport CoupledDriver::step(double t) {
  ++step_index_;
  switch (cfg_.scheme) {
    case Scheme::ecs_gauss_seidel:
    case Scheme::ecs_jacobi:
      return ecs_step(t);
    case Scheme::ics:
      return ics_step(t);
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Explicit staggered step: exactly one advance per solver. Gauss-Seidel hands
// already-advanced neighbors' fresh outputs to later solvers; Jacobi gives
// every solver the committed values and may fan the advances out in parallel.

StepReport CoupledDriver::ecs_step(double t) {
  const double dt = cfg_.macro_step;
  StepReport rep;
  rep.t_begin = t;
  rep.t_end = t + dt;
  rep.iterations = 1;

  const bool jacobi = cfg_.scheme == Scheme::ecs_jacobi;
  std::map<DomainId, SolverOutcome> outcomes;

  auto make_input = [&](Solver* s, DomainId other) {
    InterfaceVariables b_in = registry_.project(other, s->id());
    if (!jacobi && outcomes.count(other)) b_in = outcomes.at(other).output;
    SolverInput in = SolverInput::constant(b_in);
    // Explicit exchange: mass arrives at the last reported flow rate held
    // over the whole window. This is where the scheme's time-lag shows up in
    // the mass bookkeeping.
    in.mass_increment = b_in.mass_flow_rate * dt;
    return in;
  };
  auto other_of = [&](Solver* s) -> DomainId {
    for (const auto* q : solvers_)
      if (q->id() != s->id()) return q->id();
    throw std::logic_error("coupled pair expected");
  };

  if (jacobi) {
    std::vector<std::future<SolverOutcome>> futs;
    std::vector<Solver*> order;
    for (DomainId id : cfg_.solver_order) order.push_back(by_id(id));
    for (Solver* s : order) {
      SolverInput in = make_input(s, other_of(s));
      futs.push_back(std::async(std::launch::async, [s, t, dt, in]() {
        return s->advance(t, t + dt, in, EventHandling::clamp);
      }));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      outcomes[order[i]->id()] = futs[i].get();
      count(order[i]->id());
    }
  } else {
    for (DomainId id : cfg_.solver_order) {
      Solver* s = by_id(id);
      SolverInput in = make_input(s, other_of(s));
      try {
        outcomes[id] = s->advance(t, t + dt, in, EventHandling::clamp);
      } catch (const ValidationError& e) {
        throw ValidationError("solver " + std::to_string(id) + " failed: " + e.what());
      }
      count(id);
    }
  }

  for (Solver* s : solvers_) {
    const auto& out = outcomes.at(s->id());
    registry_.set_interface(s->id(), other_of(s), out.output);
    if (out.event) {
      s->apply_transition(out.event->transition);
      rep.events.push_back({s->id(), out.event->transition, t + dt});
    }
  }
  trace_.rows.push_back({step_index_, 0, t + dt, 0.0, 1.0,
                         std::numeric_limits<double>::quiet_NaN(),
                         registry_.project(cfg_.solver_order.back(),
                                           cfg_.solver_order.front())});
  return rep;
}

// ---------------------------------------------------------------------------
// Implicit step: relaxed fixed point on the directed variables entering the
// first solver of the order, each pass restarted from the committed states.
// With event synchronization on, the horizon is relaxed toward the first
// reported event until both the time and the interface criteria hold.

StepReport CoupledDriver::ics_step(double t) {
  if (solvers_.size() != 2)
    throw ValidationError("ics_step: implemented for one coupled pair");
  const double dt = cfg_.macro_step;
  const double eps = cfg_.eps_rel;
  Solver* first = by_id(cfg_.solver_order[0]);
  Solver* second = by_id(cfg_.solver_order[1]);
  const ExchangeSpec comps = default_reads(*first);

  const InterfaceVariables b_fb_n = registry_.project(second->id(), first->id());
  const InterfaceVariables b_fwd_n = registry_.project(first->id(), second->id());
  const auto chk1 = first->checkpoint();
  const auto chk2 = second->checkpoint();

  InterfaceVariables cand = b_fb_n;
  double horizon = dt;
  double omega = cfg_.relaxation.omega;
  double omega_prev = omega;
  std::vector<double> r_prev;
  bool have_prev = false;

  SolverOutcome out1, out2;
  double t_tilde = t + dt;
  bool converged = false;
  int k = 0;

  auto run_pass = [&](double hor, EventHandling mode) {
    first->restore(chk1);
    second->restore(chk2);
    SolverInput in1{b_fb_n, cand, cand.mass_flow_rate * hor};
    out1 = first->advance(t, t + hor, in1, mode);
    count(first->id());
    const double t_stop = std::min(t + hor, out1.integrated_to);
    SolverInput in2{b_fwd_n, out1.output, out1.mass_shed};
    out2 = second->advance(t, t_stop, in2, mode);
    count(second->id());
  };

  for (k = 0; k < cfg_.max_iterations; ++k) {
    run_pass(horizon, cfg_.synchronize_events ? EventHandling::truncate : EventHandling::clamp);

    double t_first = t + dt;
    if (cfg_.synchronize_events) {
      if (out1.event) t_first = std::min(t_first, out1.event->time);
      if (out2.event) t_first = std::min(t_first, out2.event->time);
    }
    t_tilde = t_first;

    const std::vector<double> g = pick(out2.output, comps);
    const std::vector<double> b = pick(cand, comps);
    std::vector<double> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[i] - b[i];
    const double nb = norm2(b);
    const double nr = norm2(r);
    const double rel = nb > 1e-12 ? nr / nb : nr;
    const bool iface_met = rel <= eps * cfg_.convergence_margin;
    const bool time_met =
        !cfg_.synchronize_events || std::abs(t_tilde - (t + horizon)) / dt < eps;

    trace_.rows.push_back({step_index_, k, t + horizon, rel, omega,
                           cfg_.synchronize_events
                               ? t_tilde
                               : std::numeric_limits<double>::quiet_NaN(),
                           cand});

    if (iface_met && time_met) {
      converged = true;
      break;
    }

    // Relaxation of the exchanged components; passthrough for the rest.
    switch (cfg_.relaxation.kind) {
      case RelaxationStrategy::Kind::constant:
        break;
      case RelaxationStrategy::Kind::secant:
        if (have_prev) omega = secant_omega(omega_prev, r, r_prev);
        break;
      case RelaxationStrategy::Kind::aitken:
        if (have_prev) {
          omega = secant_omega(omega_prev, r, r_prev);
          omega = std::min(std::max(omega, 1e-2), cfg_.relaxation.omega_max);
        }
        break;
    }
    omega_prev = omega;
    r_prev = r;
    have_prev = true;

    std::vector<double> next(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) next[i] = omega * g[i] + (1.0 - omega) * b[i];
    InterfaceVariables updated = out2.output;  // passthrough components follow the image
    place(updated, comps, next);
    cand = updated;

    if (cfg_.synchronize_events)
      horizon = cfg_.event_relaxation * (t_tilde - t) + (1.0 - cfg_.event_relaxation) * horizon;
  }

  if (!converged)
    throw NonConvergenceError("implicit coupling did not converge in " +
                                  std::to_string(cfg_.max_iterations) + " iterations at t = " +
                                  std::to_string(t),
                              trace_);

  StepReport rep;
  rep.t_begin = t;
  rep.iterations = k + 1;

  if (cfg_.synchronize_events) {
    // Remember the event times located by the converged pass, then land the
    // states exactly on the committed horizon with one commit pass (counted
    // as a final iteration; events apply at the commit, not inside it).
    const std::optional<EventReport> ev1 = out1.event;
    const std::optional<EventReport> ev2 = out2.event;
    const double t_end = t_tilde;
    if (!(t_end > t)) throw std::logic_error("committed step does not advance time");
    run_pass(t_end - t, EventHandling::clamp);
    rep.iterations = k + 2;
    trace_.rows.push_back({step_index_, k + 1, t_end, 0.0, omega, t_tilde, cand});
    rep.t_end = t_end;

    const double tie = eps * dt;
    auto consider = [&](Solver* s, const std::optional<EventReport>& ev) {
      if (ev && std::abs(ev->time - t_end) <= tie * 1.0000001) {
        s->apply_transition(ev->transition);
        rep.events.push_back({s->id(), ev->transition, t_end});
      }
    };
    consider(first, ev1);
    consider(second, ev2);
  } else {
    // The converged pass already integrated the whole window from the
    // committed state; its results are the commit.
    rep.t_end = t + dt;
    if (out1.event) {
      first->apply_transition(out1.event->transition);
      rep.events.push_back({first->id(), out1.event->transition, rep.t_end});
    }
    if (out2.event) {
      second->apply_transition(out2.event->transition);
      rep.events.push_back({second->id(), out2.event->transition, rep.t_end});
    }
  }

  registry_.set_interface(first->id(), second->id(), out1.output);
  registry_.set_interface(second->id(), first->id(), out2.output);
  return rep;
}

}  // namespace cosim
