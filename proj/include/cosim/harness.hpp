#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cosim/analysis.hpp"
#include "cosim/coupling.hpp"
#include "cosim/solvers.hpp"

namespace cosim {

enum class ScenarioKind { toy, lp_events, oned };
enum class EndCondition { t_end, stationarity };

const char* to_string(ScenarioKind k);

struct DomainSpec {
  DomainId id = 0;
  CouplingRole role = CouplingRole::dirichlet_receiver;
  SolverConfig config;
  SubdomainState initial;
  bool state_machine = false;  // heating/melting/empty wrapper (lp_events only)
  int nodes = 50;              // oned only
};

/// Interface initialization: explicit values, or the algebraic strong-coupling
/// equilibrium of the two closures evaluated against the t = 0+ schedules.
struct InterfaceInit {
  bool slaved = false;
  double temperature = 0.0;
  double flux = 0.0;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::toy;
  DomainSpec domain1;
  DomainSpec domain2;
  CouplingConfig coupling;
  InterfaceInit interface_init;
  EndCondition end_condition = EndCondition::t_end;
  double t_end = 1.0;
  double stationarity_threshold = 1e-4;  // K/s
  int stationarity_window = 10;          // consecutive steps
  double stationarity_after = 0.0;       // ignore the rule before this time
  double e_star = 0.0;                   // 0: derive from domain 2 at start

  void validate() const;
};

/// Exact key=value grammar documented in the README; parse(serialize(s))
/// reproduces s.
std::string serialize_scenario(const Scenario& s);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Built-in scenarios: "events", "stability-ecs", "stability-ics",
/// "conduction-1d".
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Resolves a CLI --scenario argument: an existing file path is parsed,
/// otherwise the name must be a built-in.
Scenario resolve_scenario(const std::string& name_or_path);

struct RunReport {
  std::string scenario;
  Scheme scheme = Scheme::ics;
  double t_final = 0.0;
  long steps = 0;
  bool stationary = false;
  double m1_final = 0.0, T1_final = 0.0;
  double m2_final = 0.0, T2_final = 0.0;
  std::optional<double> t_heating_to_melting;
  std::optional<double> t_melting_to_empty;
  double max_abs_phi12 = 0.0;
  double max_abs_phi21 = 0.0;
  double max_abs_eps_local = 0.0;
  double max_abs_eps_global = 0.0;
  int max_iterations_seen = 0;
  std::vector<CommittedEvent> events;
  EnergyLedger ledger{1.0};
  IterationTrace trace;
  /// series rows: t, T1, T2, T21, phi12, m2, state2, iters
  struct SeriesRow {
    double t, T1, T2, T21, phi12, m2;
    int state2, iters;
  };
  std::vector<SeriesRow> series;
};

/// Runs the scenario to its end condition. When outdir is nonempty, writes
/// series.csv, trace.csv, ledger.csv, events.csv, summary.csv and the
/// resolved scenario file into it.
RunReport run_scenario(const Scenario& s, const std::string& outdir = "");

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  std::string error;
  RunReport report;
};

/// One run per grid value of the given parameter ("dt", "omega" or "hbar");
/// individual failures are recorded and the sweep continues.
std::vector<SweepPoint> sweep_scenario(const Scenario& base, const std::string& parameter,
                                       const std::vector<double>& grid,
                                       const std::string& outdir = "", bool parallel = true);

void write_sweep_table(const std::vector<SweepPoint>& points, const std::string& parameter,
                       const Scenario& base, const std::string& path);

}  // namespace cosim
