#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kitaev::qsim {

using Complex = std::complex<double>;

/// Dense statevector over n qubits.
///
/// Basis index is little-endian in the qubit index: bit q of the index is the
/// state of qubit q. Qubit q hosts lattice site q + 1. |0> is the
/// sigma^z = +1 eigenstate.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amp_.size(); }

  std::span<const Complex> amplitudes() const { return amp_; }
  std::span<Complex> amplitudes() { return amp_; }

  const Complex& operator[](std::size_t i) const { return amp_[i]; }
  Complex& operator[](std::size_t i) { return amp_[i]; }

  double norm() const;
  void normalize();

 private:
  int n_qubits_;
  std::vector<Complex> amp_;
};

/// Computational basis state from a bitstring where character q is qubit q.
StateVector init_basis(int n_qubits, std::string_view bits);

/// Index of a bitstring (character q -> bit q).
std::uint64_t bits_to_index(std::string_view bits);
std::string index_to_bits(std::uint64_t index, int n_qubits);

/// <a|b>.
Complex inner(const StateVector& a, const StateVector& b);

/// |<bits|state>|^2.
double prob_basis(const StateVector& state, std::string_view bits);

/// Draws `shots` computational-basis outcomes. Keys are basis indices.
std::map<std::uint64_t, std::size_t> sample(const StateVector& state,
                                            std::size_t shots,
                                            std::uint64_t seed);

}  // namespace kitaev::qsim
