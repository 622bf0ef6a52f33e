#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cosim/harness.hpp"

namespace cosim {

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::toy: return "toy";
    case ScenarioKind::lp_events: return "lp-events";
    case ScenarioKind::oned: return "oned";
  }
  return "?";
}

void Scenario::validate() const {
  if (name.empty()) throw ValidationError("scenario: name missing");
  domain1.config.validate();
  domain2.config.validate();
  domain1.initial.validate();
  domain2.initial.validate();
  coupling.validate();
  if (!(t_end > 0.0)) throw ValidationError("scenario: t_end must be > 0");
  if (domain1.id == domain2.id) throw ValidationError("scenario: domain ids must differ");
}

// ---------------------------------------------------------------------------
// Serialization. Flat [section] / key = value file; doubles are written with
// enough digits to round-trip exactly.

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_schedule(const BoundarySchedule& b) {
  std::string out;
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    if (i) out += ", ";
    out += fmt(b.points[i].first) + ":" + fmt(b.points[i].second);
  }
  return out;
}

const char* role_name(CouplingRole r) {
  return r == CouplingRole::dirichlet_receiver ? "dirichlet" : "neumann";
}
const char* integ_name(Integration i) {
  return i == Integration::implicit_euler ? "implicit" : "explicit";
}
const char* relax_name(RelaxationStrategy::Kind k) {
  switch (k) {
    case RelaxationStrategy::Kind::constant: return "constant";
    case RelaxationStrategy::Kind::secant: return "secant";
    case RelaxationStrategy::Kind::aitken: return "aitken";
  }
  return "?";
}

void write_domain(std::ostream& os, const char* section, const DomainSpec& d) {
  os << "[" << section << "]\n";
  os << "id = " << d.id << "\n";
  os << "role = " << role_name(d.role) << "\n";
  os << "density = " << fmt(d.config.material.density) << "\n";
  os << "heat_capacity = " << fmt(d.config.material.heat_capacity) << "\n";
  os << "conductivity = " << fmt(d.config.material.thermal_conductivity) << "\n";
  os << "fusion_enthalpy = " << fmt(d.config.material.fusion_enthalpy) << "\n";
  os << "fusion_temperature = " << fmt(d.config.material.fusion_temperature) << "\n";
  os << "residual_mass_power = " << fmt(d.config.material.residual_mass_power) << "\n";
  os << "length = " << fmt(d.config.geometry.characteristic_length) << "\n";
  os << "area = " << fmt(d.config.geometry.cross_section_area) << "\n";
  os << "mass = " << fmt(d.initial.mass) << "\n";
  os << "temperature = " << fmt(d.initial.avg_temperature) << "\n";
  os << "micro_step = " << fmt(d.config.micro_step) << "\n";
  os << "integration = " << integ_name(d.config.integration) << "\n";
  os << "include_boundary_face = " << (d.config.include_boundary_face ? 1 : 0) << "\n";
  os << "boundary = " << fmt_schedule(d.config.boundary) << "\n";
  os << "boundary_sign = " << fmt(d.config.boundary.sign) << "\n";
  os << "melt_trigger = " << fmt(d.config.thresholds.melt_trigger) << "\n";
  os << "residual_mass = " << fmt(d.config.thresholds.residual_mass) << "\n";
  os << "state_machine = " << (d.state_machine ? 1 : 0) << "\n";
  os << "nodes = " << d.nodes << "\n";
}

struct IniData {
  std::map<std::string, std::map<std::string, std::string>> sections;
  const std::string& get(const std::string& sec, const std::string& key) const {
    auto s = sections.find(sec);
    if (s == sections.end()) throw ValidationError("scenario: missing section [" + sec + "]");
    auto k = s->second.find(key);
    if (k == s->second.end())
      throw ValidationError("scenario: missing key '" + key + "' in [" + sec + "]");
    return k->second;
  }
  std::string get_or(const std::string& sec, const std::string& key,
                     const std::string& dflt) const {
    auto s = sections.find(sec);
    if (s == sections.end()) return dflt;
    auto k = s->second.find(key);
    return k == s->second.end() ? dflt : k->second;
  }
};

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("scenario: bad number for " + what + ": '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

BoundarySchedule parse_schedule(const std::string& text, double sign) {
  BoundarySchedule b;
  b.sign = sign;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ValidationError("scenario: schedule entries are time:value, got '" + item + "'");
    b.points.emplace_back(to_double(trim(item.substr(0, colon)), "schedule time"),
                          to_double(trim(item.substr(colon + 1)), "schedule value"));
  }
  b.validate();
  return b;
}

DomainSpec parse_domain(const IniData& ini, const std::string& sec) {
  DomainSpec d;
  d.id = static_cast<DomainId>(to_double(ini.get(sec, "id"), "id"));
  const std::string role = ini.get(sec, "role");
  if (role == "dirichlet") d.role = CouplingRole::dirichlet_receiver;
  else if (role == "neumann") d.role = CouplingRole::neumann_receiver;
  else throw ValidationError("scenario: role must be dirichlet or neumann");
  auto& m = d.config.material;
  m.density = to_double(ini.get(sec, "density"), "density");
  m.heat_capacity = to_double(ini.get(sec, "heat_capacity"), "heat_capacity");
  m.thermal_conductivity = to_double(ini.get(sec, "conductivity"), "conductivity");
  m.fusion_enthalpy = to_double(ini.get(sec, "fusion_enthalpy"), "fusion_enthalpy");
  m.fusion_temperature = to_double(ini.get(sec, "fusion_temperature"), "fusion_temperature");
  m.residual_mass_power = to_double(ini.get(sec, "residual_mass_power"), "residual_mass_power");
  auto& g = d.config.geometry;
  g.characteristic_length = to_double(ini.get(sec, "length"), "length");
  g.cross_section_area = to_double(ini.get(sec, "area"), "area");
  g.volume = g.characteristic_length * g.cross_section_area;
  d.initial.mass = to_double(ini.get(sec, "mass"), "mass");
  d.initial.avg_temperature = to_double(ini.get(sec, "temperature"), "temperature");
  d.config.micro_step = to_double(ini.get(sec, "micro_step"), "micro_step");
  const std::string integ = ini.get(sec, "integration");
  if (integ == "implicit") d.config.integration = Integration::implicit_euler;
  else if (integ == "explicit") d.config.integration = Integration::explicit_euler;
  else throw ValidationError("scenario: integration must be implicit or explicit");
  d.config.include_boundary_face = ini.get(sec, "include_boundary_face") == "1";
  d.config.boundary =
      parse_schedule(ini.get(sec, "boundary"),
                     to_double(ini.get_or(sec, "boundary_sign", "1"), "boundary_sign"));
  d.config.thresholds.melt_trigger = to_double(ini.get(sec, "melt_trigger"), "melt_trigger");
  d.config.thresholds.residual_mass = to_double(ini.get(sec, "residual_mass"), "residual_mass");
  d.state_machine = ini.get(sec, "state_machine") == "1";
  d.nodes = static_cast<int>(to_double(ini.get(sec, "nodes"), "nodes"));
  return d;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[scenario]\n";
  os << "name = " << s.name << "\n";
  os << "kind = " << to_string(s.kind) << "\n";
  os << "t_end = " << fmt(s.t_end) << "\n";
  os << "end_condition = " << (s.end_condition == EndCondition::stationarity ? "stationarity" : "t_end")
     << "\n";
  os << "stationarity_threshold = " << fmt(s.stationarity_threshold) << "\n";
  os << "stationarity_window = " << s.stationarity_window << "\n";
  os << "stationarity_after = " << fmt(s.stationarity_after) << "\n";
  os << "e_star = " << fmt(s.e_star) << "\n";
  os << "\n[coupling]\n";
  os << "scheme = " << to_string(s.coupling.scheme) << "\n";
  os << "dt = " << fmt(s.coupling.macro_step) << "\n";
  os << "eps_rel = " << fmt(s.coupling.eps_rel) << "\n";
  os << "max_iterations = " << s.coupling.max_iterations << "\n";
  os << "relaxation = " << relax_name(s.coupling.relaxation.kind) << "\n";
  os << "omega = " << fmt(s.coupling.relaxation.omega) << "\n";
  os << "omega_max = " << fmt(s.coupling.relaxation.omega_max) << "\n";
  os << "alpha = " << fmt(s.coupling.event_relaxation) << "\n";
  os << "synchronize_events = " << (s.coupling.synchronize_events ? 1 : 0) << "\n";
  os << "convergence_margin = " << fmt(s.coupling.convergence_margin) << "\n";
  os << "order = " << s.coupling.solver_order.at(0) << ", " << s.coupling.solver_order.at(1)
     << "\n";
  os << "\n";
  write_domain(os, "domain1", s.domain1);
  os << "\n";
  write_domain(os, "domain2", s.domain2);
  os << "\n[interface]\n";
  os << "slaved = " << (s.interface_init.slaved ? 1 : 0) << "\n";
  os << "temperature = " << fmt(s.interface_init.temperature) << "\n";
  os << "flux = " << fmt(s.interface_init.flux) << "\n";
  return os.str();
}

Scenario parse_scenario(const std::string& text) {
  IniData ini;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("scenario: bad section line '" + line + "'");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("scenario: expected key = value, got '" + line + "'");
    ini.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  Scenario s;
  s.name = ini.get("scenario", "name");
  const std::string kind = ini.get("scenario", "kind");
  if (kind == "toy") s.kind = ScenarioKind::toy;
  else if (kind == "lp-events") s.kind = ScenarioKind::lp_events;
  else if (kind == "oned") s.kind = ScenarioKind::oned;
  else throw ValidationError("scenario: unknown kind '" + kind + "'");
  s.t_end = to_double(ini.get("scenario", "t_end"), "t_end");
  s.end_condition = ini.get("scenario", "end_condition") == "stationarity"
                        ? EndCondition::stationarity
                        : EndCondition::t_end;
  s.stationarity_threshold =
      to_double(ini.get("scenario", "stationarity_threshold"), "stationarity_threshold");
  s.stationarity_window =
      static_cast<int>(to_double(ini.get("scenario", "stationarity_window"), "window"));
  s.stationarity_after = to_double(ini.get("scenario", "stationarity_after"), "after");
  s.e_star = to_double(ini.get("scenario", "e_star"), "e_star");

  auto& c = s.coupling;
  const std::string scheme = ini.get("coupling", "scheme");
  if (scheme == "ecs") c.scheme = Scheme::ecs_gauss_seidel;
  else if (scheme == "ecs-jacobi") c.scheme = Scheme::ecs_jacobi;
  else if (scheme == "ics") c.scheme = Scheme::ics;
  else throw ValidationError("scenario: unknown scheme '" + scheme + "'");
  c.macro_step = to_double(ini.get("coupling", "dt"), "dt");
  c.eps_rel = to_double(ini.get("coupling", "eps_rel"), "eps_rel");
  c.max_iterations = static_cast<int>(to_double(ini.get("coupling", "max_iterations"), "max_it"));
  const std::string relax = ini.get("coupling", "relaxation");
  if (relax == "constant") c.relaxation.kind = RelaxationStrategy::Kind::constant;
  else if (relax == "secant") c.relaxation.kind = RelaxationStrategy::Kind::secant;
  else if (relax == "aitken") c.relaxation.kind = RelaxationStrategy::Kind::aitken;
  else throw ValidationError("scenario: unknown relaxation '" + relax + "'");
  c.relaxation.omega = to_double(ini.get("coupling", "omega"), "omega");
  c.relaxation.omega_max = to_double(ini.get("coupling", "omega_max"), "omega_max");
  c.event_relaxation = to_double(ini.get("coupling", "alpha"), "alpha");
  c.synchronize_events = ini.get("coupling", "synchronize_events") == "1";
  c.convergence_margin = to_double(ini.get("coupling", "convergence_margin"), "margin");
  {
    std::stringstream os(ini.get("coupling", "order"));
    std::string tok;
    c.solver_order.clear();
    while (std::getline(os, tok, ','))
      c.solver_order.push_back(static_cast<DomainId>(to_double(trim(tok), "order")));
  }

  s.domain1 = parse_domain(ini, "domain1");
  s.domain2 = parse_domain(ini, "domain2");
  s.interface_init.slaved = ini.get("interface", "slaved") == "1";
  s.interface_init.temperature = to_double(ini.get("interface", "temperature"), "temperature");
  s.interface_init.flux = to_double(ini.get("interface", "flux"), "flux");
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// Built-in scenarios.

namespace {

// Two-domain melt problem. Material data is chosen to satisfy every published
// constraint of the experiment at once: tau1 = 8e3 s, tau2 = 1e4 s at t = 0,
// unit cross section with rho = 1e4 kg/m^3 (150 kg of residue <-> 1.5 cm),
// melt budget E* = 1e8 J, r12(dt) < 1 for the whole dt sweep, and the
// stationary pool mass 1255 kg. The boundary drive steps to 3000 K at t = 0+
// and settles to 1700 K once the second domain is spent.
Scenario make_events() {
  constexpr double rho = 1.0e4;
  constexpr double area = 1.0;
  constexpr double m1_0 = 580.0, m2_0 = 825.0;
  constexpr double k1_0 = 16.0, k2_0 = 32.0;  // lambda/L at t = 0
  constexpr double tau1 = 8.0e3, tau2 = 1.0e4;
  constexpr double t_fus = 2100.0, t0 = 2000.0;
  constexpr double e_star = 1.0e8;

  const double L1 = m1_0 / rho, L2 = m2_0 / rho;
  const double lam1 = k1_0 * L1, lam2 = k2_0 * L2;
  const double c1 = tau1 * lam1 / (rho * L1 * L1);
  const double c2 = tau2 * lam2 / (rho * L2 * L2);
  const double dh = e_star / m2_0 - c2 * (t_fus - t0);

  Scenario s;
  s.name = "events";
  s.kind = ScenarioKind::lp_events;
  s.t_end = 40000.0;
  s.end_condition = EndCondition::stationarity;
  s.stationarity_after = 4000.0;
  s.e_star = e_star;

  s.domain1.id = 1;
  s.domain1.role = CouplingRole::dirichlet_receiver;
  s.domain1.config.material = {rho, c1, lam1, 0.0, t_fus, 0.0};
  s.domain1.config.geometry = {L1, L1 * area, area, false};
  s.domain1.config.boundary = {{{0.0, 3000.0}, {4000.0, 1700.0}}, +1.0};
  s.domain1.config.micro_step = 1.0;
  s.domain1.config.include_boundary_face = true;
  s.domain1.config.thresholds = {t_fus, 0.0};
  s.domain1.initial = {m1_0, t0};

  s.domain2.id = 2;
  s.domain2.role = CouplingRole::neumann_receiver;
  s.domain2.config.material = {rho, c2, lam2, dh, t_fus, 0.0};
  s.domain2.config.geometry = {L2, L2 * area, area, false};
  s.domain2.config.boundary = {{{0.0, 3000.0}, {4000.0, 1700.0}}, +1.0};
  s.domain2.config.micro_step = 1.0;
  s.domain2.config.include_boundary_face = true;
  s.domain2.config.thresholds = {t_fus, 150.0};
  s.domain2.initial = {m2_0, t0};
  s.domain2.state_machine = true;

  s.coupling.scheme = Scheme::ics;
  s.coupling.macro_step = 100.0;
  s.coupling.eps_rel = 1e-4;
  s.coupling.max_iterations = 400;
  s.coupling.relaxation = RelaxationStrategy::aitken(0.5, 1.2);
  s.coupling.event_relaxation = 0.5;
  s.coupling.solver_order = {2, 1};
  s.coupling.synchronize_events = true;
  s.coupling.convergence_margin = 1e-4;

  s.interface_init.slaved = true;
  s.interface_init.temperature = t0;
  return s;
}

// Coupled conduction prototype with one call per solver and one micro step
// per coupling step: implicit partner with the imposed contact temperature,
// explicit partner with the imposed flux.
Scenario make_stability(bool implicit_pair) {
  constexpr double tau1 = 1.0e3, tau2 = 1.0e4, dt = 100.0;
  constexpr double hbar = 1.6;
  constexpr double rho = 1.0e3;

  Scenario s;
  s.name = implicit_pair ? "stability-ics" : "stability-ecs";
  s.kind = ScenarioKind::toy;
  s.t_end = 3000.0;  // three conduction times of the fast domain
  s.end_condition = EndCondition::t_end;

  s.domain1.id = 1;
  s.domain1.role = CouplingRole::dirichlet_receiver;
  // L = 1, lambda = hbar, rho c L = tau1 * lambda / L.
  s.domain1.config.material = {rho, tau1 * hbar / rho, hbar, 0.0, 5000.0, 0.0};
  s.domain1.config.geometry = {1.0, 1.0, 1.0, false};
  s.domain1.config.boundary = {{{0.0, 3000.0}, {3000.0, 2000.0}}, +1.0};
  s.domain1.config.micro_step = dt;
  s.domain1.config.integration = Integration::implicit_euler;
  s.domain1.initial = {rho, 2000.0};

  s.domain2.id = 2;
  s.domain2.role = CouplingRole::neumann_receiver;
  s.domain2.config.material = {rho, tau2 * 1.0 / rho, 1.0, 0.0, 5000.0, 0.0};
  s.domain2.config.geometry = {1.0, 1.0, 1.0, false};
  s.domain2.config.boundary = {{{0.0, 400.0}, {3000.0, 2000.0}}, +1.0};
  s.domain2.config.micro_step = dt;
  s.domain2.config.integration =
      implicit_pair ? Integration::implicit_euler : Integration::explicit_euler;
  s.domain2.initial = {rho, 2000.0};

  s.coupling.scheme = implicit_pair ? Scheme::ics : Scheme::ecs_gauss_seidel;
  s.coupling.macro_step = dt;
  s.coupling.eps_rel = 1e-4;
  s.coupling.max_iterations = 200;
  s.coupling.relaxation = RelaxationStrategy::constant(1.0);
  s.coupling.solver_order = {1, 2};
  s.coupling.synchronize_events = false;

  s.interface_init.temperature = 2000.0;
  s.interface_init.flux = 0.0;
  return s;
}

// Space-resolved counterpart of the stability pair: same conduction times and
// stiffness ratio, fifty nodes per slab.
Scenario make_oned() {
  constexpr double tau1 = 8.0e3, tau2 = 1.0e4;
  constexpr double hbar = 1.6;
  constexpr double rho = 1.0e3;

  Scenario s;
  s.name = "conduction-1d";
  s.kind = ScenarioKind::oned;
  s.t_end = 1500.0;
  s.end_condition = EndCondition::t_end;

  s.domain1.id = 1;
  s.domain1.role = CouplingRole::dirichlet_receiver;
  s.domain1.config.material = {rho, tau1 * hbar / rho, hbar, 0.0, 5000.0, 0.0};
  s.domain1.config.geometry = {1.0, 1.0, 1.0, false};
  s.domain1.config.boundary = {{{0.0, 3000.0}}, +1.0};
  s.domain1.config.micro_step = 1.0;
  s.domain1.initial = {rho, 2000.0};
  s.domain1.nodes = 50;

  s.domain2.id = 2;
  s.domain2.role = CouplingRole::neumann_receiver;
  s.domain2.config.material = {rho, tau2 * 1.0 / rho, 1.0, 0.0, 5000.0, 0.0};
  s.domain2.config.geometry = {1.0, 1.0, 1.0, false};
  s.domain2.config.boundary = {{{0.0, 400.0}}, +1.0};
  s.domain2.config.micro_step = 1.0;
  s.domain2.initial = {rho, 2000.0};
  s.domain2.nodes = 50;

  s.coupling.scheme = Scheme::ecs_gauss_seidel;
  s.coupling.macro_step = 100.0;
  s.coupling.eps_rel = 1e-4;
  s.coupling.max_iterations = 50;
  s.coupling.solver_order = {1, 2};

  s.interface_init.temperature = 2000.0;
  s.interface_init.flux = 0.0;
  return s;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"events", "stability-ecs", "stability-ics", "conduction-1d"};
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "events") return make_events();
  if (name == "stability-ecs") return make_stability(false);
  if (name == "stability-ics") return make_stability(true);
  if (name == "conduction-1d") return make_oned();
  throw ValidationError("unknown built-in scenario '" + name + "'");
}

Scenario resolve_scenario(const std::string& name_or_path) {
  std::ifstream probe(name_or_path);
  if (probe.good()) return load_scenario_file(name_or_path);
  return builtin_scenario(name_or_path);
}

}  // namespace cosim
