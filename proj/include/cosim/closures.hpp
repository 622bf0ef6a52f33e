#pragma once

#include "cosim/model_core.hpp"

namespace cosim {

/// Inputs of the stationary conduction closure: one cylindrical slab with a
/// quadratic through-thickness temperature profile, evaluated at one face.
struct StationaryClosureInput {
  double avg_temperature = 0.0;            // K, slab average
  double face_temperature = 0.0;           // K, the face the flux crosses
  double opposite_face_temperature = 0.0;  // K, the other face
  double conductivity = 0.0;               // W/(m K)
  double length = 0.0;                     // m

  void validate() const {
    if (!(length > 0.0)) throw ValidationError("StationaryClosureInput: length must be > 0");
    if (!(conductivity > 0.0))
      throw ValidationError("StationaryClosureInput: conductivity must be > 0");
  }
};

/// Outward conduction heat flux at the given face:
///   phi = lambda * (6 T_avg - 4 T_face - 2 T_opposite) / L.
/// The opposite face enters directly, so boundary data propagates to the
/// other face within a single evaluation.
double stationary_flux(const StationaryClosureInput& in);

/// Extension point for alternative interface flux laws (convective,
/// radiative). Only the stationary law above is provided.
class ClosureLaw {
 public:
  virtual ~ClosureLaw() = default;
  virtual double flux(const StationaryClosureInput& in) const = 0;
};

class StationaryClosure final : public ClosureLaw {
 public:
  double flux(const StationaryClosureInput& in) const override { return stationary_flux(in); }
};

/// Slab height of a cylinder of fixed cross section holding mass m: L = m/(rho A).
double cylinder_length(double mass, double density, double area);

/// Recomputes the length of a unit-cylinder geometry from the current mass so
/// that m = rho * A * L holds; the cross section is unchanged.
GeometrySpec cylinder_update(const GeometrySpec& geom, double density, double mass);

/// Melting mass rate from the front heat balance:
///   mdot_ij = (phi_ij A_ij + phi_ji A_ji) / dh_fus.
/// The caller closes the remaining front relations: mdot_ji = -mdot_ij and
/// T_ij = T_ji = T_fus.
double stefan_balance(double phi_ij, double phi_ji, double area_ij, double area_ji,
                      double fusion_enthalpy);

struct InterfaceResiduals {
  double mass = 0.0;         // |mdot_ij| + |mdot_ji|
  double temperature = 0.0;  // T_ij - T_ji
  double energy = 0.0;       // phi_ij A_ij + phi_ji A_ji
};

/// Residuals of the fixed-contact equilibrium conditions; all zero at a
/// strongly coupled fixed interface.
InterfaceResiduals fixed_interface_residuals(const InterfaceVariables& b_ij,
                                             const InterfaceVariables& b_ji);

}  // namespace cosim
