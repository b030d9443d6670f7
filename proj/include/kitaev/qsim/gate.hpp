#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kitaev/qsim/pauli.hpp"
#include "kitaev/qsim/state.hpp"

namespace kitaev::qsim {

enum class GateKind {
  PauliX,
  Hadamard,
  Rotation,   // exp[i (angle/2) sigma^axis]
  Phase,      // diag(1, e^{i angle})
  CNOT,
  CZ,
  CY,
  XXPlusYY,   // exp[i angle (s+s- + s-s+)] = exp[i angle (XX+YY)/2]
  XXMinusYY,  // exp[i angle (s+s+ + s-s-)] = exp[i angle (XX-YY)/2]
  ZZ,         // exp[i angle ZZ]
  ControlledPauli,
};

enum class Axis { X, Y, Z };

/// One gate of a circuit. Built only through the named factories, which check
/// indices and unitarity.
///
/// Two-qubit gates act on (targets[0], targets[1]); for CNOT/CZ/CY and
/// ControlledPauli the control is stored separately and is active when the
/// control qubit equals control_value.
class Gate {
 public:
  static Gate x(int q);
  static Gate h(int q);
  static Gate rotation(Axis axis, int q, double angle);
  static Gate rx(int q, double angle) { return rotation(Axis::X, q, angle); }
  static Gate ry(int q, double angle) { return rotation(Axis::Y, q, angle); }
  static Gate rz(int q, double angle) { return rotation(Axis::Z, q, angle); }
  static Gate phase(int q, double angle);
  static Gate cnot(int control, int target);
  static Gate cz(int control, int target);
  static Gate cy(int control, int target);
  static Gate xx_plus_yy(int q0, int q1, double angle);
  static Gate xx_minus_yy(int q0, int q1, double angle);
  static Gate zz(int q0, int q1, double angle);
  /// Applies p (coefficient must have unit modulus) when the control qubit
  /// reads control_value.
  static Gate controlled_pauli(int control, const PauliString& p,
                               int control_value = 1);

  GateKind kind() const { return kind_; }
  Axis axis() const { return axis_; }
  double angle() const { return angle_; }
  int control() const { return control_; }
  int control_value() const { return control_value_; }
  std::span<const int> targets() const {
    return {targets_.data(), static_cast<std::size_t>(n_targets_)};
  }
  const PauliString* pauli() const { return pauli_.get(); }

  /// All qubits touched, controls first.
  std::vector<int> qubits() const;
  int max_qubit() const;

  /// Dense matrix over qubits() in little-endian order (qubits()[0] is the
  /// lowest bit). Row-major, dimension 2^k.
  std::vector<Complex> matrix() const;

  Gate inverse() const;
  std::string name() const;

 private:
  Gate() = default;
  void check_unitary() const;

  GateKind kind_ = GateKind::PauliX;
  Axis axis_ = Axis::Z;
  double angle_ = 0.0;
  int control_ = -1;
  int control_value_ = 1;
  std::array<int, 2> targets_{-1, -1};
  int n_targets_ = 0;
  std::shared_ptr<const PauliString> pauli_;
};

using Circuit = std::vector<Gate>;

/// In-place application. Throws InvalidArgument for indices >= n_qubits.
void apply(StateVector& state, const Gate& gate);
void apply(StateVector& state, std::span<const Gate> gates);

/// Inverse circuit: reversed order, each gate inverted.
Circuit inverse(std::span<const Gate> gates);

/// Hermitian generator G with dU/d(angle) = i G U for the parametrized
/// kinds (Rotation, Phase excluded, XXPlusYY, XXMinusYY, ZZ).
PauliSum generator(const Gate& gate, int n_qubits);

/// Control-P as a sequence of CX / CY / CZ gates plus a phase gate on the
/// control for the coefficient. Anti-control (control_value 0) is wrapped in
/// X gates on the control.
Circuit decompose_controlled_pauli(int control, const PauliString& p,
                                   int control_value = 1);

}  // namespace kitaev::qsim
