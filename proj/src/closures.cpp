#include "cosim/closures.hpp"

#include <cmath>

namespace cosim {

double stationary_flux(const StationaryClosureInput& in) {
  in.validate();
  return in.conductivity *
         (6.0 * in.avg_temperature - 4.0 * in.face_temperature -
          2.0 * in.opposite_face_temperature) /
         in.length;
}

double cylinder_length(double mass, double density, double area) {
  if (mass < 0.0) throw ValidationError("cylinder_length: mass must be >= 0");
  if (!(density > 0.0) || !(area > 0.0))
    throw ValidationError("cylinder_length: density and area must be > 0");
  return mass / (density * area);
}

GeometrySpec cylinder_update(const GeometrySpec& geom, double density, double mass) {
  GeometrySpec out = geom;
  out.characteristic_length = cylinder_length(mass, density, geom.cross_section_area);
  out.volume = out.cross_section_area * out.characteristic_length;
  return out;
}

double stefan_balance(double phi_ij, double phi_ji, double area_ij, double area_ji,
                      double fusion_enthalpy) {
  if (!(fusion_enthalpy > 0.0))
    throw ValidationError("stefan_balance: fusion enthalpy must be > 0 at a mobile front");
  return (phi_ij * area_ij + phi_ji * area_ji) / fusion_enthalpy;
}

InterfaceResiduals fixed_interface_residuals(const InterfaceVariables& b_ij,
                                             const InterfaceVariables& b_ji) {
  InterfaceResiduals r;
  r.mass = std::abs(b_ij.mass_flow_rate) + std::abs(b_ji.mass_flow_rate);
  r.temperature = b_ij.temperature - b_ji.temperature;
  r.energy = b_ij.heat_flux * b_ij.area + b_ji.heat_flux * b_ji.area;
  return r;
}

}  // namespace cosim
