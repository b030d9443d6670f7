#include "kitaev/qsim/pauli.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <utility>

#include "kitaev/error.hpp"

namespace kitaev::qsim {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Single-qubit letter product a*b = i^k * c, returns {c, k}.
std::pair<Pauli, int> letter_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<Pauli>(6 - ia - ib);
  // Cyclic X->Y->Z gives +i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {c, cyclic ? 1 : 3};
}

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) {
    throw InvalidArgument("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(n) +
                          " qubits");
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, Complex coefficient)
    : n_(n_qubits), coeff_(coefficient) {
  if (n_qubits < 1 || n_qubits > 63) {
    throw InvalidArgument("PauliString supports 1..63 qubits");
  }
}

PauliString::PauliString(std::string_view letters, Complex coefficient)
    : PauliString(static_cast<int>(letters.size()), coefficient) {
  for (int q = 0; q < n_; ++q) {
    switch (letters[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': set(q, Pauli::X); break;
      case 'Y': set(q, Pauli::Y); break;
      case 'Z': set(q, Pauli::Z); break;
      default: throw InvalidArgument("Pauli letters must be in {I,X,Y,Z}");
    }
  }
}

Pauli PauliString::letter(int qubit) const {
  check_qubit(n_, qubit);
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

PauliString& PauliString::set(int qubit, Pauli p) {
  check_qubit(n_, qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
  return *this;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

Complex PauliString::phase_on(std::uint64_t basis) const {
  Complex ph = kIPow[y_count() & 3];
  if (std::popcount(basis & z_) & 1) ph = -ph;
  return ph;
}

std::string PauliString::letters() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  for (int q = 0; q < n_; ++q) {
    s[static_cast<std::size_t>(q)] = kChars[static_cast<int>(letter(q))];
  }
  return s;
}

std::string PauliString::to_string() const {
  return "(" + std::to_string(coeff_.real()) + "," +
         std::to_string(coeff_.imag()) + ")*" + letters();
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InvalidArgument("PauliString product: sizes differ");
  }
  PauliString out(a.n_qubits(), a.coefficient() * b.coefficient());
  int k = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    auto [c, ph] = letter_product(a.letter(q), b.letter(q));
    out.set(q, c);
    k += ph;
  }
  out *= kIPow[k & 3];
  return out;
}

PauliString operator*(Complex c, PauliString p) {
  p *= c;
  return p;
}

bool commutes(const PauliString& a, const PauliString& b) {
  const int anti = std::popcount(a.x_mask() & b.z_mask()) +
                   std::popcount(a.z_mask() & b.x_mask());
  return anti % 2 == 0;
}

PauliSum& PauliSum::add(PauliString p) {
  if (p.n_qubits() != n_) throw InvalidArgument("PauliSum: size mismatch");
  terms_.push_back(std::move(p));
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw InvalidArgument("PauliSum: size mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto& t : terms_) t *= c;
  return *this;
}

PauliSum PauliSum::canonical(double tol) const {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Complex> merged;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
  for (const auto& t : terms_) {
    const auto key = std::make_pair(t.x_mask(), t.z_mask());
    auto [it, inserted] = merged.try_emplace(key, Complex{0.0, 0.0});
    if (inserted) order.push_back(key);
    it->second += t.coefficient();
  }
  PauliSum out(n_);
  for (const auto& key : order) {
    const Complex c = merged[key];
    if (std::abs(c) < tol) continue;
    PauliString p(n_, c);
    for (int q = 0; q < n_; ++q) {
      const bool x = (key.first >> q) & 1U;
      const bool z = (key.second >> q) & 1U;
      p.set(q, x && z ? Pauli::Y : x ? Pauli::X : z ? Pauli::Z : Pauli::I);
    }
    out.add(std::move(p));
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : canonical().terms()) {
    if (std::abs(t.coefficient().imag()) > tol) return false;
  }
  return true;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InvalidArgument("PauliSum product: sizes differ");
  }
  PauliSum out(a.n_qubits());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) out.add(ta * tb);
  }
  return out.canonical();
}

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a;
}

void apply_pauli(StateVector& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits()) {
    throw InvalidArgument("apply_pauli: string length does not match register");
  }
  auto amp = state.amplitudes();
  const std::uint64_t x = p.x_mask();
  const Complex c = p.coefficient();
  if (x == 0) {
    for (std::uint64_t b = 0; b < amp.size(); ++b) amp[b] *= c * p.phase_on(b);
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << std::countr_zero(x);
  for (std::uint64_t b = 0; b < amp.size(); ++b) {
    if (b & pivot) continue;
    const std::uint64_t f = b ^ x;
    const Complex a0 = amp[b];
    const Complex a1 = amp[f];
    amp[f] = c * p.phase_on(b) * a0;
    amp[b] = c * p.phase_on(f) * a1;
  }
}

StateVector apply_sum(const PauliSum& h, const StateVector& state) {
  if (h.n_qubits() != state.n_qubits()) {
    throw InvalidArgument("apply_sum: operator size does not match register");
  }
  std::vector<Complex> out(state.size(), Complex{0.0, 0.0});
  const auto amp = state.amplitudes();
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.x_mask();
    const Complex c = t.coefficient();
    for (std::uint64_t b = 0; b < amp.size(); ++b) {
      out[b ^ x] += c * t.phase_on(b) * amp[b];
    }
  }
  return StateVector(state.n_qubits(), std::move(out));
}

Complex expect_pauli(const StateVector& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits()) {
    throw InvalidArgument("expect_pauli: size mismatch");
  }
  const auto amp = state.amplitudes();
  const std::uint64_t x = p.x_mask();
  Complex s{0.0, 0.0};
  for (std::uint64_t b = 0; b < amp.size(); ++b) {
    s += std::conj(amp[b ^ x]) * p.phase_on(b) * amp[b];
  }
  return p.coefficient() * s;
}

double expect(const StateVector& state, const PauliSum& h) {
  if (!h.is_hermitian()) {
    throw InvalidArgument("expect: operator is not Hermitian");
  }
  Complex s{0.0, 0.0};
  for (const auto& t : h.terms()) s += expect_pauli(state, t);
  if (std::abs(s.imag()) >= 1e-9) {
    throw std::logic_error("expect: imaginary part " +
                           std::to_string(s.imag()) + " exceeds 1e-9");
  }
  return s.real();
}

}  // namespace kitaev::qsim
