#include "kitaev/layer.hpp"

#include "kitaev/error.hpp"

namespace kitaev {

using qsim::Gate;

void append_layer(qsim::Circuit& circuit, int n_sites, model::Boundary boundary,
                  std::span<const double> bond_angles,
                  std::span<const double> site_angles,
                  std::vector<LayerSlot>* slots, int slot_offset) {
  const auto bonds = model::bonds(n_sites, boundary);
  const auto nb = static_cast<int>(bonds.size());
  if (bond_angles.size() != static_cast<std::size_t>(3 * nb) ||
      site_angles.size() != static_cast<std::size_t>(n_sites)) {
    throw InvalidArgument("append_layer: angle count does not match the chain");
  }
  auto bond = [&](int b) {
    const auto [p, q] = bonds[static_cast<std::size_t>(b)];
    circuit.push_back(Gate::zz(p, q, bond_angles[3 * b + 2]));
    circuit.push_back(Gate::xx_minus_yy(p, q, bond_angles[3 * b + 1]));
    circuit.push_back(Gate::xx_plus_yy(p, q, bond_angles[3 * b + 0]));
    if (slots) {
      slots->push_back({slot_offset + 3 * b + 2, 1.0});
      slots->push_back({slot_offset + 3 * b + 1, 1.0});
      slots->push_back({slot_offset + 3 * b + 0, 1.0});
    }
  };
  // bond b joins sites b+1 and b+2; odd site-bonds have even b
  for (int b = 0; b < nb; b += 2) {
    if (bonds[static_cast<std::size_t>(b)].second != 0) bond(b);
  }
  for (int b = 1; b < nb; b += 2) bond(b);
  // periodic wrap bond goes with the even group
  if (boundary == model::Boundary::Periodic && nb % 2 == 1) bond(nb - 1);
  for (int q = 0; q < n_sites; ++q) {
    circuit.push_back(Gate::rz(q, 2.0 * site_angles[static_cast<size_t>(q)]));
    if (slots) slots->push_back({slot_offset + 3 * nb + q, 2.0});
  }
}

}  // namespace kitaev
