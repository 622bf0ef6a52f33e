// Command-line harness: runs coupled scenarios, parameter sweeps and the
// closed-form stability diagnostics. Exit codes: 0 success, 2 validation
// error, 3 non-convergence of an implicit scheme.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cosim/harness.hpp"

namespace {

struct CommonOpts {
  std::string scenario;
  std::string scheme;
  double dt = 0.0;
  double omega = 0.0;
  std::string relaxation;
  double eps_rel = 0.0;
  double alpha = 0.0;
  std::string out;
  unsigned seed = 0;  // reserved; runs are deterministic
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario, "built-in name or scenario file path")->required();
  cmd->add_option("--scheme", o.scheme, "ecs | ecs-jacobi | ics");
  cmd->add_option("--dt", o.dt, "macro time step [s]");
  cmd->add_option("--omega", o.omega, "relaxation factor (constant) or initial value");
  cmd->add_option("--relaxation", o.relaxation, "constant | secant | aitken");
  cmd->add_option("--eps-rel", o.eps_rel, "relative interface tolerance");
  cmd->add_option("--alpha", o.alpha, "event-horizon relaxation in (0,1)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "reserved (runs are deterministic)");
}

cosim::Scenario apply_overrides(const CommonOpts& o) {
  cosim::Scenario s = cosim::resolve_scenario(o.scenario);
  if (!o.scheme.empty()) {
    if (o.scheme == "ecs") s.coupling.scheme = cosim::Scheme::ecs_gauss_seidel;
    else if (o.scheme == "ecs-jacobi") s.coupling.scheme = cosim::Scheme::ecs_jacobi;
    else if (o.scheme == "ics") s.coupling.scheme = cosim::Scheme::ics;
    else throw cosim::ValidationError("unknown scheme '" + o.scheme + "'");
  }
  if (o.dt > 0.0) {
    s.coupling.macro_step = o.dt;
    if (s.kind == cosim::ScenarioKind::toy) {
      s.domain1.config.micro_step = o.dt;
      s.domain2.config.micro_step = o.dt;
    }
  }
  if (o.omega > 0.0) s.coupling.relaxation.omega = o.omega;
  if (!o.relaxation.empty()) {
    using K = cosim::RelaxationStrategy::Kind;
    if (o.relaxation == "constant") s.coupling.relaxation.kind = K::constant;
    else if (o.relaxation == "secant") s.coupling.relaxation.kind = K::secant;
    else if (o.relaxation == "aitken") s.coupling.relaxation.kind = K::aitken;
    else throw cosim::ValidationError("unknown relaxation '" + o.relaxation + "'");
  }
  if (o.eps_rel > 0.0) s.coupling.eps_rel = o.eps_rel;
  if (o.alpha > 0.0) s.coupling.event_relaxation = o.alpha;
  return s;
}

void print_report(const cosim::RunReport& r) {
  std::printf("scenario %s  scheme %s\n", r.scenario.c_str(), cosim::to_string(r.scheme));
  std::printf("  t_final   %.6g s  (%ld steps%s)\n", r.t_final, r.steps,
              r.stationary ? ", stationary" : "");
  std::printf("  domain 1  m = %.6g kg  T = %.6g K\n", r.m1_final, r.T1_final);
  std::printf("  domain 2  m = %.6g kg  T = %.6g K\n", r.m2_final, r.T2_final);
  if (r.t_heating_to_melting) std::printf("  t_HM      %.6f s\n", *r.t_heating_to_melting);
  if (r.t_melting_to_empty) std::printf("  t_ME      %.6f s\n", *r.t_melting_to_empty);
  std::printf("  max |phi12| %.6g  max |phi21| %.6g W/m^2\n", r.max_abs_phi12, r.max_abs_phi21);
  std::printf("  max |eps(dE)| local %.3e  global %.3e\n", r.max_abs_eps_local,
              r.max_abs_eps_global);
  std::printf("  max iterations per step %d\n", r.max_iterations_seen);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled lumped-parameter co-simulation harness"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts;
  auto* run_cmd = app.add_subcommand("run", "run one scenario");
  add_common(run_cmd, run_opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep_cmd, sweep_opts);
  std::string sweep_param;
  std::vector<double> sweep_grid;
  sweep_cmd->add_option("--parameter", sweep_param, "dt | omega | hbar")->required();
  sweep_cmd->add_option("--grid", sweep_grid, "grid values")->required()->expected(-1);

  auto* an_cmd = app.add_subcommand("analyze", "closed-form coupling diagnostics");
  double an_tau1 = 0.0, an_tau2 = 0.0, an_hbar = 0.0, an_dt = 0.0;
  an_cmd->add_option("--tau1", an_tau1)->required();
  an_cmd->add_option("--tau2", an_tau2)->required();
  an_cmd->add_option("--hbar", an_hbar)->required();
  an_cmd->add_option("--dt", an_dt)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      cosim::Scenario s = apply_overrides(run_opts);
      print_report(cosim::run_scenario(s, run_opts.out));
    } else if (sweep_cmd->parsed()) {
      cosim::Scenario s = apply_overrides(sweep_opts);
      auto pts = cosim::sweep_scenario(s, sweep_param, sweep_grid, sweep_opts.out);
      std::printf("%-10s %-10s %-8s %-12s %-12s %-10s %-10s\n", "param", "value", "status",
                  "t_HM", "t_ME", "m1_inf", "T1_inf");
      for (const auto& p : pts) {
        std::printf("%-10s %-10.5g %-8s ", sweep_param.c_str(), p.value,
                    p.ok ? "ok" : "failed");
        if (p.ok) {
          std::printf("%-12.4f %-12.4f %-10.4f %-10.4f\n",
                      p.report.t_heating_to_melting.value_or(0.0),
                      p.report.t_melting_to_empty.value_or(0.0), p.report.m1_final,
                      p.report.T1_final);
        } else {
          std::printf("%s\n", p.error.c_str());
        }
      }
    } else if (an_cmd->parsed()) {
      cosim::StabilityInputs in{an_tau1, an_tau2, an_hbar, an_dt};
      const double r = cosim::r12(in);
      const auto w = cosim::omega_bounds(in);
      const auto roots = cosim::ecs_characteristic_roots(in);
      std::printf("r12        %.9g  (explicit coupling %s)\n", r,
                  r < 1.0 ? "stable" : "unstable");
      std::printf("hbar_crit  %.9g\n", cosim::hbar_crit(an_dt, an_tau1, an_tau2));
      std::printf("omega_max  %.9g\nomega_opt  %.9g\n", w.omega_max, w.omega_opt);
      std::printf("roots      (%.9g%+.9gi), (%.9g%+.9gi)  max|x| = %.9g\n",
                  roots.first.real(), roots.first.imag(), roots.second.real(),
                  roots.second.imag(), cosim::ecs_growth_rate(in));
    }
  } catch (const cosim::NonConvergenceError& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    if (!e.trace.rows.empty()) {
      std::fprintf(stderr, "last iterations (k, residual, omega):\n");
      const std::size_t n = e.trace.rows.size();
      for (std::size_t i = n > 5 ? n - 5 : 0; i < n; ++i)
        std::fprintf(stderr, "  %d  %.6e  %.4f\n", e.trace.rows[i].k,
                     e.trace.rows[i].residual_norm, e.trace.rows[i].omega);
    }
    return 3;
  } catch (const cosim::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
