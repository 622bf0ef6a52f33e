#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cosim {

using DomainId = int;

/// Thrown when an input value or configuration violates a documented
/// precondition. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// State vector of one lumped subdomain: mass and volume-averaged temperature.
struct SubdomainState {
  double mass = 0.0;              // kg
  double avg_temperature = 0.0;   // K

  void validate() const {
    if (!(mass >= 0.0) || !std::isfinite(mass))
      throw ValidationError("SubdomainState: mass must be finite and >= 0");
    if (!(avg_temperature > 0.0) || !std::isfinite(avg_temperature))
      throw ValidationError("SubdomainState: avg_temperature must be finite and > 0");
  }
};

struct MaterialProps {
  double density = 0.0;              // kg/m^3
  double heat_capacity = 0.0;        // J/(kg K)
  double thermal_conductivity = 0.0; // W/(m K)
  double fusion_enthalpy = 0.0;      // J/kg
  double fusion_temperature = 0.0;   // K
  double residual_mass_power = 0.0;  // W/kg

  void validate() const {
    if (!(density > 0.0)) throw ValidationError("MaterialProps: density must be > 0");
    if (!(heat_capacity > 0.0)) throw ValidationError("MaterialProps: heat_capacity must be > 0");
    if (!(thermal_conductivity > 0.0))
      throw ValidationError("MaterialProps: thermal_conductivity must be > 0");
    if (!(fusion_enthalpy >= 0.0))
      throw ValidationError("MaterialProps: fusion_enthalpy must be >= 0");
    if (!(fusion_temperature > 0.0))
      throw ValidationError("MaterialProps: fusion_temperature must be > 0");
  }
};

struct GeometrySpec {
  double characteristic_length = 0.0; // m
  double volume = 0.0;                // m^3
  double cross_section_area = 0.0;    // m^2
  bool cylindrical = false;           // when set, V = A*L is enforced

  void validate() const {
    if (!(characteristic_length > 0.0) || !(volume > 0.0) || !(cross_section_area > 0.0))
      throw ValidationError("GeometrySpec: L, V, A must all be > 0");
    if (cylindrical) {
      const double v = cross_section_area * characteristic_length;
      if (std::abs(v - volume) > 1e-9 * std::max(1.0, std::abs(volume)))
        throw ValidationError("GeometrySpec: cylindrical consistency V = A*L violated");
    }
  }
};

/// Piecewise-constant boundary temperature schedule. The value at time t is
/// the last scheduled value with time <= t (right-continuous steps).
struct BoundarySchedule {
  std::vector<std::pair<double, double>> points;  // (time, temperature)
  double sign = +1.0;                             // heating (+1) or cooling (-1)

  void validate() const {
    if (points.empty()) throw ValidationError("BoundarySchedule: empty schedule");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (!(points[i].first > points[i - 1].first))
        throw ValidationError("BoundarySchedule: times must be strictly increasing");
    if (sign != 1.0 && sign != -1.0)
      throw ValidationError("BoundarySchedule: sign must be +1 or -1");
  }

  double at(double t) const {
    double v = points.front().second;
    for (const auto& [tp, vp] : points) {
      if (tp <= t) v = vp;
      else break;
    }
    return v;
  }
};

/// Directed interface variables b_ij exchanged from domain i toward domain j.
struct InterfaceVariables {
  double heat_flux = 0.0;       // W/m^2, positive when leaving domain i
  double temperature = 0.0;     // K
  double mass_flow_rate = 0.0;  // kg/s
  double area = 1.0;            // m^2

  bool finite() const {
    return std::isfinite(heat_flux) && std::isfinite(temperature) &&
           std::isfinite(mass_flow_rate) && std::isfinite(area);
  }
  void validate() const {
    if (!finite()) throw ValidationError("InterfaceVariables: non-finite field");
    if (!(area > 0.0)) throw ValidationError("InterfaceVariables: area must be > 0");
  }
};

/// Registry of directed interface variables. Both directions of a coupled
/// pair are stored separately: schemes are free to leave them out of
/// equilibrium mid-step, so equilibrium is never a storage invariant.
class InterfaceRegistry {
 public:
  /// Registers the pair (i,j) in both directions.
  void add_pair(DomainId i, DomainId j, const InterfaceVariables& b_ij,
                const InterfaceVariables& b_ji);

  bool has(DomainId i, DomainId j) const;

  /// Returns b_ij. Unknown pairs are an error naming the pair.
  const InterfaceVariables& project(DomainId i, DomainId j) const;

  /// Overwrites b_ij; the opposite slot b_ji is untouched.
  void set_interface(DomainId i, DomainId j, const InterfaceVariables& value);

  /// Neighbor set N_i.
  std::set<DomainId> neighbors(DomainId i) const;
  std::size_t neighbor_count(DomainId i) const { return neighbors(i).size(); }

  const std::map<std::pair<DomainId, DomainId>, InterfaceVariables>& slots() const {
    return slots_;
  }

 private:
  std::map<std::pair<DomainId, DomainId>, InterfaceVariables> slots_;
};

}  // namespace cosim
