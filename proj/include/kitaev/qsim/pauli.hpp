#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kitaev/qsim/state.hpp"

namespace kitaev::qsim {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// coefficient * P_0 (x) P_1 (x) ... (x) P_{n-1}, letters stored as bit masks.
///
/// x_mask has bit q set for X or Y on qubit q; z_mask for Z or Y. The letter Y
/// is Y itself (not XZ), so a string with unit coefficient is Hermitian.
class PauliString {
 public:
  explicit PauliString(int n_qubits, Complex coefficient = 1.0);
  /// Letters from text: character q is the letter on qubit q ("XIZY").
  PauliString(std::string_view letters, Complex coefficient = 1.0);

  int n_qubits() const { return n_; }
  Complex coefficient() const { return coeff_; }
  void set_coefficient(Complex c) { coeff_ = c; }

  Pauli letter(int qubit) const;
  PauliString& set(int qubit, Pauli p);

  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int y_count() const;

  /// Letter product, ignoring coefficients' equality.
  bool same_letters(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  /// Phase picked up by P acting on basis state b: P|b> = phase(b) |b ^ x>.
  /// Excludes the coefficient.
  Complex phase_on(std::uint64_t basis) const;

  std::string letters() const;
  std::string to_string() const;

  PauliString& operator*=(Complex c) {
    coeff_ *= c;
    return *this;
  }

 private:
  int n_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  Complex coeff_;
};

PauliString operator*(const PauliString& a, const PauliString& b);
PauliString operator*(Complex c, PauliString p);

/// Commutation test for Pauli products: true if [a, b] = 0.
bool commutes(const PauliString& a, const PauliString& b);

class PauliSum {
 public:
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  PauliSum& add(PauliString p);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex c);

  /// Merge equal letter strings and drop terms with |coefficient| < tol.
  PauliSum canonical(double tol = 1e-14) const;

  /// After canonicalization every coefficient has |Im| <= tol.
  bool is_hermitian(double tol = 1e-12) const;

 private:
  int n_;
  std::vector<PauliString> terms_;
};

PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator+(PauliSum a, const PauliSum& b);

/// state <- coefficient * P * state.
void apply_pauli(StateVector& state, const PauliString& p);

/// Returns h|state>.
StateVector apply_sum(const PauliSum& h, const StateVector& state);

/// <state|P|state> including the coefficient.
Complex expect_pauli(const StateVector& state, const PauliString& p);

/// Re<state|h|state>. Throws InvalidArgument for non-Hermitian h; asserts the
/// imaginary part is below 1e-9.
double expect(const StateVector& state, const PauliSum& h);

}  // namespace kitaev::qsim
