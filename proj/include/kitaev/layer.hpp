#pragma once

#include <span>
#include <vector>

#include "kitaev/model.hpp"
#include "kitaev/qsim/gate.hpp"

namespace kitaev {

/// Gate produced by append_layer together with the angle slot that drives it.
/// scale is d(gate angle)/d(slot value): 1 for two-qubit gates, 2 for the
/// single-site Rz(2*theta).
struct LayerSlot {
  int index;
  double scale;
};

/// Appends one brick layer to `circuit`:
///   odd bonds (1-2, 3-4, ...), then even bonds (2-3, ..., plus the wrap bond
///   for periodic boundary), then Rz(2 theta_j) on every site.
/// Each bond contributes ZZ(c) XX-YY(b) XX+YY(a) (mutually commuting).
///
/// bond_angles holds (a, b, c) per bond in model::bonds order; site_angles one
/// value per site. If `slots` is non-null, a LayerSlot is appended per gate
/// with indices offset by `slot_offset` (bond b, kind k -> 3b + k; site q ->
/// 3 * n_bonds + q).
void append_layer(qsim::Circuit& circuit, int n_sites, model::Boundary boundary,
                  std::span<const double> bond_angles,
                  std::span<const double> site_angles,
                  std::vector<LayerSlot>* slots = nullptr, int slot_offset = 0);

}  // namespace kitaev
