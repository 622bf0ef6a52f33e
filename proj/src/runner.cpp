#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

#include "cosim/harness.hpp"

namespace cosim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::unique_ptr<Solver> build_solver(const Scenario& s, const DomainSpec& d) {
  switch (s.kind) {
    case ScenarioKind::toy:
      if (d.role == CouplingRole::dirichlet_receiver)
        return std::make_unique<ToyDirichletSolver>(d.id, d.config, d.initial);
      return std::make_unique<ToyNeumannSolver>(d.id, d.config, d.initial);
    case ScenarioKind::lp_events:
      if (d.role == CouplingRole::dirichlet_receiver)
        return std::make_unique<LpDirichletSolver>(d.id, d.config, d.initial);
      else {
        SolverConfig cfg = d.config;
        if (!d.state_machine) cfg.thresholds.melt_trigger = 1e300;
        return std::make_unique<LpStateMachineSolver>(d.id, cfg, d.initial);
      }
    case ScenarioKind::oned:
      return std::make_unique<OneDReferenceSolver>(d.id, d.config, d.role, d.nodes,
                                                   d.initial.avg_temperature);
  }
  throw std::logic_error("unreachable");
}

double conductance_of(const DomainSpec& d) {
  return d.config.material.thermal_conductivity /
         cylinder_length(d.initial.mass, d.config.material.density,
                         d.config.geometry.cross_section_area);
}

InterfaceRegistry initial_registry(const Scenario& s) {
  const double area = s.domain1.config.geometry.cross_section_area;
  double ti = s.interface_init.temperature;
  double phi = s.interface_init.flux;
  if (s.interface_init.slaved) {
    // Strong-coupling equilibrium of the two stationary closures against the
    // t = 0+ boundary values; removes the startup transient of the exchange.
    const double k1 = conductance_of(s.domain1);
    const double k2 = conductance_of(s.domain2);
    const double tb1 = s.domain1.config.boundary.at(0.0);
    const double tb2 = s.domain2.config.boundary.at(0.0);
    const double T1 = s.domain1.initial.avg_temperature;
    const double T2 = s.domain2.initial.avg_temperature;
    ti = (6.0 * (k1 * T1 + k2 * T2) - 2.0 * (k1 * tb1 + k2 * tb2)) / (4.0 * (k1 + k2));
    phi = k1 * (6.0 * T1 - 4.0 * ti - 2.0 * tb1);
  }
  InterfaceVariables b12{phi, ti, 0.0, area};
  InterfaceVariables b21{-phi, ti, 0.0, area};
  InterfaceRegistry reg;
  reg.add_pair(s.domain1.id, s.domain2.id, b12, b21);
  return reg;
}

double default_e_star(const Scenario& s) {
  if (s.e_star > 0.0) return s.e_star;
  const auto& m = s.domain2.config.material;
  const double b = melt_energy_budget(s.domain2.initial.mass, m.heat_capacity,
                                      m.fusion_temperature, s.domain2.initial.avg_temperature,
                                      m.fusion_enthalpy);
  return b > 0.0 ? b : 1.0;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace

RunReport run_scenario(const Scenario& s, const std::string& outdir) {
  s.validate();
  auto s1 = build_solver(s, s.domain1);
  auto s2 = build_solver(s, s.domain2);
  CoupledDriver driver({s1.get(), s2.get()}, initial_registry(s), s.coupling);

  RunReport rep;
  rep.scenario = s.name;
  rep.scheme = s.coupling.scheme;
  rep.ledger = EnergyLedger(default_e_star(s));

  const DomainId id1 = s.domain1.id, id2 = s.domain2.id;
  const double area = s.domain1.config.geometry.cross_section_area;
  const double dh = s.domain2.config.material.fusion_enthalpy;

  double t = 0.0;
  long step = 0;
  int still = 0;
  double prev_T1 = s.domain1.initial.avg_temperature;
  while (t < s.t_end - 1e-9) {
    const InterfaceVariables b21_prev = driver.registry().project(id2, id1);
    StepReport sr = driver.step(t);
    ++step;
    const double h = sr.t_end - sr.t_begin;
    const InterfaceVariables b12 = driver.registry().project(id1, id2);
    const InterfaceVariables b21 = driver.registry().project(id2, id1);

    if (s.coupling.scheme == Scheme::ics) {
      rep.ledger.update(step, sr.t_end, b12.heat_flux, b21.heat_flux, b21.mass_flow_rate, dh,
                        area, h);
    } else {
      // Explicit exchange: the two sides of the balance are one step apart.
      rep.ledger.update(step, sr.t_end, b12.heat_flux, b21_prev.heat_flux,
                        b21_prev.mass_flow_rate, dh, area, h);
    }
    const auto& lrow = rep.ledger.rows().back();
    rep.max_abs_eps_local = std::max(rep.max_abs_eps_local, std::abs(lrow.eps_local));
    rep.max_abs_eps_global = std::max(rep.max_abs_eps_global, std::abs(lrow.eps_cumulative));

    const SubdomainState st1 = s1->subdomain_state();
    const SubdomainState st2 = s2->subdomain_state();
    rep.series.push_back({sr.t_end, st1.avg_temperature, st2.avg_temperature, b21.temperature,
                          b12.heat_flux, st2.mass, static_cast<int>(s2->state()),
                          sr.iterations});
    rep.max_abs_phi12 = std::max(rep.max_abs_phi12, std::abs(b12.heat_flux));
    rep.max_abs_phi21 = std::max(rep.max_abs_phi21, std::abs(b21.heat_flux));
    rep.max_iterations_seen = std::max(rep.max_iterations_seen, sr.iterations);

    for (const auto& ev : sr.events) {
      rep.events.push_back(ev);
      if (ev.transition.from == DomainState::heating &&
          ev.transition.to == DomainState::melting && !rep.t_heating_to_melting)
        rep.t_heating_to_melting = ev.time;
      if (ev.transition.from == DomainState::melting &&
          ev.transition.to == DomainState::empty && !rep.t_melting_to_empty)
        rep.t_melting_to_empty = ev.time;
    }

    t = sr.t_end;
    if (s.end_condition == EndCondition::stationarity && t > s.stationarity_after) {
      if (std::abs(st1.avg_temperature - prev_T1) / h < s.stationarity_threshold) {
        if (++still >= s.stationarity_window) {
          rep.stationary = true;
          prev_T1 = st1.avg_temperature;
          break;
        }
      } else {
        still = 0;
      }
    }
    prev_T1 = st1.avg_temperature;
  }

  rep.t_final = t;
  rep.steps = step;
  rep.m1_final = s1->subdomain_state().mass;
  rep.T1_final = s1->subdomain_state().avg_temperature;
  rep.m2_final = s2->subdomain_state().mass;
  rep.T2_final = s2->subdomain_state().avg_temperature;
  rep.trace = driver.trace();

  if (!outdir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    {
      std::string csv = "t,T1,T2,T21,phi12,m2,state2,iters\n";
      for (const auto& r : rep.series)
        csv += fmt(r.t) + "," + fmt(r.T1) + "," + fmt(r.T2) + "," + fmt(r.T21) + "," +
               fmt(r.phi12) + "," + fmt(r.m2) + "," + std::to_string(r.state2) + "," +
               std::to_string(r.iters) + "\n";
      write_file(outdir + "/series.csv", csv);
    }
    {
      std::string csv = "step,k,t_candidate,residual_norm,omega,event_time\n";
      for (const auto& r : rep.trace.rows)
        csv += std::to_string(r.step) + "," + std::to_string(r.k) + "," + fmt(r.t_candidate) +
               "," + fmt(r.residual_norm) + "," + fmt(r.omega) + "," + fmt(r.event_time) + "\n";
      write_file(outdir + "/trace.csv", csv);
    }
    {
      std::string csv = "step,t,dE_local,dE_cumulative,eps_local,eps_cumulative\n";
      for (const auto& r : rep.ledger.rows())
        csv += std::to_string(r.step) + "," + fmt(r.t) + "," + fmt(r.dE_local) + "," +
               fmt(r.dE_cumulative) + "," + fmt(r.eps_local) + "," + fmt(r.eps_cumulative) +
               "\n";
      write_file(outdir + "/ledger.csv", csv);
    }
    {
      std::string csv = "transition,t_star\n";
      for (const auto& e : rep.events)
        csv += std::string(to_string(e.transition.from)) + "->" + to_string(e.transition.to) +
               "," + fmt(e.time) + "\n";
      write_file(outdir + "/events.csv", csv);
    }
    {
      std::string csv = "key,value\n";
      csv += "scenario," + s.name + "\n";
      csv += std::string("scheme,") + to_string(s.coupling.scheme) + "\n";
      csv += "dt," + fmt(s.coupling.macro_step) + "\n";
      csv += "t_final," + fmt(rep.t_final) + "\n";
      csv += "steps," + std::to_string(rep.steps) + "\n";
      csv += "stationary," + std::to_string(rep.stationary ? 1 : 0) + "\n";
      csv += "m1_inf," + fmt(rep.m1_final) + "\n";
      csv += "T1_inf," + fmt(rep.T1_final) + "\n";
      csv += "m2_inf," + fmt(rep.m2_final) + "\n";
      csv += "T2_inf," + fmt(rep.T2_final) + "\n";
      if (rep.t_heating_to_melting) csv += "t_HM," + fmt(*rep.t_heating_to_melting) + "\n";
      if (rep.t_melting_to_empty) csv += "t_ME," + fmt(*rep.t_melting_to_empty) + "\n";
      csv += "max_abs_phi12," + fmt(rep.max_abs_phi12) + "\n";
      csv += "max_abs_phi21," + fmt(rep.max_abs_phi21) + "\n";
      csv += "max_abs_eps_local," + fmt(rep.max_abs_eps_local) + "\n";
      csv += "max_abs_eps_global," + fmt(rep.max_abs_eps_global) + "\n";
      csv += "max_iterations," + std::to_string(rep.max_iterations_seen) + "\n";
      csv += "E_star," + fmt(rep.ledger.e_star()) + "\n";
      write_file(outdir + "/summary.csv", csv);
    }
    write_file(outdir + "/scenario.ini", serialize_scenario(s));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Parameter sweeps.

namespace {

Scenario apply_parameter(const Scenario& base, const std::string& parameter, double v) {
  Scenario s = base;
  if (parameter == "dt") {
    s.coupling.macro_step = v;
    if (s.kind == ScenarioKind::toy) {
      // The coupled prototype keeps one micro step per coupling step.
      s.domain1.config.micro_step = v;
      s.domain2.config.micro_step = v;
    }
  } else if (parameter == "omega") {
    s.coupling.relaxation.omega = v;
  } else if (parameter == "hbar") {
    // Rescale the first domain's conductivity to the requested stiffness
    // ratio, holding its conduction time fixed.
    const double k2 = conductance_of(s.domain2);
    const double L1 = s.domain1.config.geometry.characteristic_length;
    const double rho1 = s.domain1.config.material.density;
    const double tau1 = rho1 * s.domain1.config.material.heat_capacity * L1 * L1 /
                        s.domain1.config.material.thermal_conductivity;
    s.domain1.config.material.thermal_conductivity = v * k2 * L1;
    s.domain1.config.material.heat_capacity =
        tau1 * s.domain1.config.material.thermal_conductivity / (rho1 * L1 * L1);
  } else {
    throw ValidationError("sweep: unknown parameter '" + parameter + "'");
  }
  return s;
}

}  // namespace

std::vector<SweepPoint> sweep_scenario(const Scenario& base, const std::string& parameter,
                                       const std::vector<double>& grid,
                                       const std::string& outdir, bool parallel) {
  if (grid.empty()) throw ValidationError("sweep: empty grid");
  if (parameter != "dt" && parameter != "omega" && parameter != "hbar")
    throw ValidationError("sweep: unknown parameter '" + parameter + "'");
  std::vector<SweepPoint> out(grid.size());
  auto run_point = [&](std::size_t i) {
    SweepPoint p;
    p.value = grid[i];
    try {
      Scenario s = apply_parameter(base, parameter, grid[i]);
      std::string dir;
      if (!outdir.empty()) dir = outdir + "/" + parameter + "_" + std::to_string(i);
      p.report = run_scenario(s, dir);
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
    return p;
  };
  if (parallel) {
    std::vector<std::future<SweepPoint>> futs;
    futs.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      futs.push_back(std::async(std::launch::async, run_point, i));
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = run_point(i);
  }
  if (!outdir.empty()) {
    std::filesystem::create_directories(outdir);
    write_sweep_table(out, parameter, base, outdir + "/sweep.csv");
  }
  return out;
}

void write_sweep_table(const std::vector<SweepPoint>& points, const std::string& parameter,
                       const Scenario& base, const std::string& path) {
  std::string csv =
      "parameter,value,status,t_HM,t_ME,m1_inf,T1_inf,max_iterations,r12,dt_window,error\n";
  for (const auto& p : points) {
    const double dt = parameter == "dt" ? p.value : base.coupling.macro_step;
    const double k1 = parameter == "hbar"
                          ? p.value * conductance_of(base.domain2)
                          : conductance_of(base.domain1);
    const double k2 = conductance_of(base.domain2);
    const auto& m1 = base.domain1.config.material;
    const auto& m2 = base.domain2.config.material;
    const double L1 = base.domain1.config.geometry.characteristic_length;
    const double L2 = base.domain2.config.geometry.characteristic_length;
    const double tau1 = m1.density * m1.heat_capacity * L1 * L1 / m1.thermal_conductivity;
    const double tau2 = m2.density * m2.heat_capacity * L2 * L2 / m2.thermal_conductivity;
    double r = std::numeric_limits<double>::quiet_NaN();
    try {
      r = r12({tau1, tau2, k1 / k2, dt});
    } catch (const ValidationError&) {
    }
    const double tau = std::min(tau1, tau2);
    const bool inside = dt <= tau / 10.0 && dt >= tau / 100.0;
    csv += parameter + "," + fmt(p.value) + "," + (p.ok ? "ok" : "failed") + ",";
    csv += (p.ok && p.report.t_heating_to_melting ? fmt(*p.report.t_heating_to_melting) : "") +
           std::string(",");
    csv += (p.ok && p.report.t_melting_to_empty ? fmt(*p.report.t_melting_to_empty) : "") +
           std::string(",");
    csv += (p.ok ? fmt(p.report.m1_final) : "") + std::string(",");
    csv += (p.ok ? fmt(p.report.T1_final) : "") + std::string(",");
    csv += (p.ok ? std::to_string(p.report.max_iterations_seen) : "") + std::string(",");
    csv += fmt(r) + "," + (inside ? "inside" : "outside") + "," + p.error + "\n";
  }
  std::ofstream out(path, std::ios::binary);
  out << csv;
}

}  // namespace cosim
