#include "cosim/model_core.hpp"

namespace cosim {

void InterfaceRegistry::add_pair(DomainId i, DomainId j, const InterfaceVariables& b_ij,
                                 const InterfaceVariables& b_ji) {
  b_ij.validate();
  b_ji.validate();
  slots_[{i, j}] = b_ij;
  slots_[{j, i}] = b_ji;
}

bool InterfaceRegistry::has(DomainId i, DomainId j) const {
  return slots_.count({i, j}) > 0;
}

const InterfaceVariables& InterfaceRegistry::project(DomainId i, DomainId j) const {
  auto it = slots_.find({i, j});
  if (it == slots_.end())
    throw ValidationError("InterfaceRegistry: unknown directed pair (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
  return it->second;
}

void InterfaceRegistry::set_interface(DomainId i, DomainId j, const InterfaceVariables& value) {
  auto it = slots_.find({i, j});
  if (it == slots_.end())
    throw ValidationError("InterfaceRegistry: unknown directed pair (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
  value.validate();
  it->second = value;
}

std::set<DomainId> InterfaceRegistry::neighbors(DomainId i) const {
  std::set<DomainId> out;
  for (const auto& [key, _] : slots_)
    if (key.first == i) out.insert(key.second);
  return out;
}

}  // namespace cosim
