#include "kitaev/qsim/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kitaev/error.hpp"

namespace kitaev::qsim {

namespace {

using Mat2 = std::array<Complex, 4>;

constexpr Complex kI{0.0, 1.0};

void check_index(int q) {
  if (q < 0 || q > 62) {
    throw InvalidArgument("qubit index " + std::to_string(q) + " is invalid");
  }
}

void check_distinct(int a, int b) {
  check_index(a);
  check_index(b);
  if (a == b) throw InvalidArgument("gate qubits must be pairwise distinct");
}

// Index with zero bits inserted at positions lo < hi.
inline std::uint64_t insert_two_zeros(std::uint64_t k, int lo, int hi) {
  const std::uint64_t lo_mask = (std::uint64_t{1} << lo) - 1;
  k = ((k & ~lo_mask) << 1) | (k & lo_mask);
  const std::uint64_t hi_mask = (std::uint64_t{1} << hi) - 1;
  return ((k & ~hi_mask) << 1) | (k & hi_mask);
}

void apply_1q(std::span<Complex> amp, int q, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t hi = 0; hi < amp.size(); hi += 2 * stride) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const std::size_t i0 = hi + lo;
      const std::size_t i1 = i0 + stride;
      const Complex a0 = amp[i0];
      const Complex a1 = amp[i1];
      amp[i0] = m[0] * a0 + m[1] * a1;
      amp[i1] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_diag_1q(std::span<Complex> amp, int q, Complex d0, Complex d1) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t hi = 0; hi < amp.size(); hi += 2 * stride) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      amp[hi + lo] *= d0;
      amp[hi + lo + stride] *= d1;
    }
  }
}

// Calls f(i00, i01, i10, i11) for every 2-qubit block; i01 has bit qa set.
template <class F>
void for_pairs(std::size_t size, int qa, int qb, F&& f) {
  const int lo = std::min(qa, qb);
  const int hi = std::max(qa, qb);
  const std::uint64_t ba = std::uint64_t{1} << qa;
  const std::uint64_t bb = std::uint64_t{1} << qb;
  const std::size_t blocks = size >> 2;
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::uint64_t i00 = insert_two_zeros(k, lo, hi);
    f(i00, i00 | ba, i00 | bb, i00 | ba | bb);
  }
}

Mat2 rotation_matrix(Axis axis, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  switch (axis) {
    case Axis::X: return {c, kI * s, kI * s, c};
    case Axis::Y: return {c, s, -s, c};
    case Axis::Z: return {std::polar(1.0, angle / 2), 0.0, 0.0,
                          std::polar(1.0, -angle / 2)};
  }
  return {};
}

}  // namespace

Gate Gate::x(int q) {
  check_index(q);
  Gate g;
  g.kind_ = GateKind::PauliX;
  g.targets_ = {q, -1};
  g.n_targets_ = 1;
  return g;
}

Gate Gate::h(int q) {
  Gate g = x(q);
  g.kind_ = GateKind::Hadamard;
  return g;
}

Gate Gate::rotation(Axis axis, int q, double angle) {
  Gate g = x(q);
  g.kind_ = GateKind::Rotation;
  g.axis_ = axis;
  g.angle_ = angle;
  g.check_unitary();
  return g;
}

Gate Gate::phase(int q, double angle) {
  Gate g = x(q);
  g.kind_ = GateKind::Phase;
  g.angle_ = angle;
  g.check_unitary();
  return g;
}

Gate Gate::cnot(int control, int target) {
  check_distinct(control, target);
  Gate g;
  g.kind_ = GateKind::CNOT;
  g.control_ = control;
  g.targets_ = {target, -1};
  g.n_targets_ = 1;
  return g;
}

Gate Gate::cz(int control, int target) {
  Gate g = cnot(control, target);
  g.kind_ = GateKind::CZ;
  return g;
}

Gate Gate::cy(int control, int target) {
  Gate g = cnot(control, target);
  g.kind_ = GateKind::CY;
  return g;
}

Gate Gate::xx_plus_yy(int q0, int q1, double angle) {
  check_distinct(q0, q1);
  Gate g;
  g.kind_ = GateKind::XXPlusYY;
  g.targets_ = {q0, q1};
  g.n_targets_ = 2;
  g.angle_ = angle;
  g.check_unitary();
  return g;
}

Gate Gate::xx_minus_yy(int q0, int q1, double angle) {
  Gate g = xx_plus_yy(q0, q1, angle);
  g.kind_ = GateKind::XXMinusYY;
  return g;
}

Gate Gate::zz(int q0, int q1, double angle) {
  Gate g = xx_plus_yy(q0, q1, angle);
  g.kind_ = GateKind::ZZ;
  g.check_unitary();
  return g;
}

Gate Gate::controlled_pauli(int control, const PauliString& p,
                            int control_value) {
  check_index(control);
  if (control >= p.n_qubits()) {
    throw InvalidArgument("controlled_pauli: control outside the register");
  }
  if (p.letter(control) != Pauli::I) {
    throw InvalidArgument("controlled_pauli: string acts on the control qubit");
  }
  if (control_value != 0 && control_value != 1) {
    throw InvalidArgument("controlled_pauli: control value must be 0 or 1");
  }
  if (std::abs(std::abs(p.coefficient()) - 1.0) > 1e-12) {
    throw InvalidArgument("controlled_pauli: coefficient must have modulus 1");
  }
  Gate g;
  g.kind_ = GateKind::ControlledPauli;
  g.control_ = control;
  g.control_value_ = control_value;
  g.pauli_ = std::make_shared<const PauliString>(p);
  return g;
}

std::vector<int> Gate::qubits() const {
  std::vector<int> qs;
  if (control_ >= 0) qs.push_back(control_);
  if (kind_ == GateKind::ControlledPauli) {
    for (int q = 0; q < pauli_->n_qubits(); ++q) {
      if (pauli_->letter(q) != Pauli::I) qs.push_back(q);
    }
  } else {
    for (int i = 0; i < n_targets_; ++i) qs.push_back(targets_[i]);
  }
  return qs;
}

int Gate::max_qubit() const {
  if (kind_ == GateKind::ControlledPauli) {
    return std::max(control_, pauli_->n_qubits() - 1);
  }
  const auto qs = qubits();
  return *std::max_element(qs.begin(), qs.end());
}

std::vector<Complex> Gate::matrix() const {
  const double c = std::cos(angle_);
  const double s = std::sin(angle_);
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind_) {
    case GateKind::PauliX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Hadamard: return {r, r, r, -r};
    case GateKind::Rotation: {
      const Mat2 m = rotation_matrix(axis_, angle_);
      return {m.begin(), m.end()};
    }
    case GateKind::Phase: return {1.0, 0.0, 0.0, std::polar(1.0, angle_)};
    case GateKind::CNOT:
      return {1, 0, 0, 0,  0, 0, 0, 1,  0, 0, 1, 0,  0, 1, 0, 0};
    case GateKind::CZ:
      return {1, 0, 0, 0,  0, 1, 0, 0,  0, 0, 1, 0,  0, 0, 0, -1};
    case GateKind::CY:
      return {1, 0, 0, 0,  0, 0, 0, -kI,  0, 0, 1, 0,  0, kI, 0, 0};
    case GateKind::XXPlusYY:
      return {1, 0, 0, 0,  0, c, kI * s, 0,  0, kI * s, c, 0,  0, 0, 0, 1};
    case GateKind::XXMinusYY:
      return {c, 0, 0, kI * s,  0, 1, 0, 0,  0, 0, 1, 0,  kI * s, 0, 0, c};
    case GateKind::ZZ: {
      const Complex p = std::polar(1.0, angle_);
      const Complex m = std::conj(p);
      return {p, 0, 0, 0,  0, m, 0, 0,  0, 0, m, 0,  0, 0, 0, p};
    }
    case GateKind::ControlledPauli: {
      // Local register: qubits()[i] -> i.
      const auto qs = qubits();
      const int k = static_cast<int>(qs.size());
      PauliString local(k, pauli_->coefficient());
      for (int i = 1; i < k; ++i) local.set(i, pauli_->letter(qs[i]));
      const Gate lg = controlled_pauli(0, local, control_value_);
      const std::size_t dim = std::size_t{1} << k;
      std::vector<Complex> m(dim * dim);
      for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Complex> e(dim, 0.0);
        e[col] = 1.0;
        StateVector sv(k, std::move(e));
        apply(sv, lg);
        for (std::size_t row = 0; row < dim; ++row) m[row * dim + col] = sv[row];
      }
      return m;
    }
  }
  return {};
}

void Gate::check_unitary() const {
  const auto m = matrix();
  const auto dim = static_cast<std::size_t>(std::lround(std::sqrt(m.size())));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) {
        s += std::conj(m[k * dim + i]) * m[k * dim + j];
      }
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(s - want) > 1e-12) {
        throw InvalidArgument("gate " + name() + " is not unitary");
      }
    }
  }
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind_) {
    case GateKind::Rotation:
    case GateKind::Phase:
    case GateKind::XXPlusYY:
    case GateKind::XXMinusYY:
    case GateKind::ZZ:
      g.angle_ = -angle_;
      break;
    case GateKind::ControlledPauli: {
      PauliString p = *pauli_;
      p.set_coefficient(std::conj(p.coefficient()));
      g.pauli_ = std::make_shared<const PauliString>(std::move(p));
      break;
    }
    default:
      break;
  }
  return g;
}

std::string Gate::name() const {
  switch (kind_) {
    case GateKind::PauliX: return "x";
    case GateKind::Hadamard: return "h";
    case GateKind::Rotation:
      return axis_ == Axis::X ? "rx" : axis_ == Axis::Y ? "ry" : "rz";
    case GateKind::Phase: return "phase";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::CY: return "cy";
    case GateKind::XXPlusYY: return "xx+yy";
    case GateKind::XXMinusYY: return "xx-yy";
    case GateKind::ZZ: return "zz";
    case GateKind::ControlledPauli: return "c-pauli";
  }
  return "?";
}

void apply(StateVector& state, const Gate& gate) {
  if (gate.max_qubit() >= state.n_qubits()) {
    throw InvalidArgument("gate " + gate.name() +
                          " addresses a qubit outside the register");
  }
  auto amp = state.amplitudes();
  const auto t = gate.targets();
  const double c = std::cos(gate.angle());
  const double s = std::sin(gate.angle());
  switch (gate.kind()) {
    case GateKind::PauliX:
      apply_1q(amp, t[0], {0.0, 1.0, 1.0, 0.0});
      return;
    case GateKind::Hadamard: {
      const double r = 1.0 / std::numbers::sqrt2;
      apply_1q(amp, t[0], {r, r, r, -r});
      return;
    }
    case GateKind::Rotation:
      if (gate.axis() == Axis::Z) {
        apply_diag_1q(amp, t[0], std::polar(1.0, gate.angle() / 2),
                      std::polar(1.0, -gate.angle() / 2));
      } else {
        apply_1q(amp, t[0], rotation_matrix(gate.axis(), gate.angle()));
      }
      return;
    case GateKind::Phase:
      apply_diag_1q(amp, t[0], 1.0, std::polar(1.0, gate.angle()));
      return;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CY: {
      const GateKind kind = gate.kind();
      for_pairs(amp.size(), gate.control(), t[0],
                [&](std::uint64_t, std::uint64_t i10, std::uint64_t,
                    std::uint64_t i11) {
                  // i10: control set, target clear.
                  const Complex a0 = amp[i10];
                  const Complex a1 = amp[i11];
                  if (kind == GateKind::CNOT) {
                    amp[i10] = a1;
                    amp[i11] = a0;
                  } else if (kind == GateKind::CZ) {
                    amp[i11] = -a1;
                  } else {
                    amp[i10] = -kI * a1;
                    amp[i11] = kI * a0;
                  }
                });
      return;
    }
    case GateKind::XXPlusYY:
      for_pairs(amp.size(), t[0], t[1],
                [&](std::uint64_t, std::uint64_t i01, std::uint64_t i10,
                    std::uint64_t) {
                  const Complex a = amp[i01];
                  const Complex b = amp[i10];
                  amp[i01] = c * a + kI * s * b;
                  amp[i10] = kI * s * a + c * b;
                });
      return;
    case GateKind::XXMinusYY:
      for_pairs(amp.size(), t[0], t[1],
                [&](std::uint64_t i00, std::uint64_t, std::uint64_t,
                    std::uint64_t i11) {
                  const Complex a = amp[i00];
                  const Complex b = amp[i11];
                  amp[i00] = c * a + kI * s * b;
                  amp[i11] = kI * s * a + c * b;
                });
      return;
    case GateKind::ZZ: {
      const Complex p{c, s};
      const Complex m{c, -s};
      for_pairs(amp.size(), t[0], t[1],
                [&](std::uint64_t i00, std::uint64_t i01, std::uint64_t i10,
                    std::uint64_t i11) {
                  amp[i00] *= p;
                  amp[i11] *= p;
                  amp[i01] *= m;
                  amp[i10] *= m;
                });
      return;
    }
    case GateKind::ControlledPauli: {
      const PauliString& p = *gate.pauli();
      if (p.n_qubits() != state.n_qubits()) {
        throw InvalidArgument("controlled_pauli: string length mismatch");
      }
      const std::uint64_t cbit = std::uint64_t{1} << gate.control();
      const std::uint64_t want = gate.control_value() ? cbit : 0;
      const std::uint64_t x = p.x_mask();
      const Complex coef = p.coefficient();
      if (x == 0) {
        for (std::uint64_t b = 0; b < amp.size(); ++b) {
          if ((b & cbit) == want) amp[b] *= coef * p.phase_on(b);
        }
        return;
      }
      const std::uint64_t pivot = std::uint64_t{1} << std::countr_zero(x);
      for (std::uint64_t b = 0; b < amp.size(); ++b) {
        if ((b & pivot) || (b & cbit) != want) continue;
        const std::uint64_t f = b ^ x;
        const Complex a0 = amp[b];
        const Complex a1 = amp[f];
        amp[f] = coef * p.phase_on(b) * a0;
        amp[b] = coef * p.phase_on(f) * a1;
      }
      return;
    }
  }
}

void apply(StateVector& state, std::span<const Gate> gates) {
  for (const auto& g : gates) apply(state, g);
}

Circuit inverse(std::span<const Gate> gates) {
  Circuit out;
  out.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return out;
}

PauliSum generator(const Gate& gate, int n_qubits) {
  PauliSum g(n_qubits);
  const auto t = gate.targets();
  auto single = [&](int q, Pauli p, Complex c) {
    PauliString s(n_qubits, c);
    s.set(q, p);
    return s;
  };
  auto pair = [&](Pauli p, Complex c) {
    PauliString s(n_qubits, c);
    s.set(t[0], p).set(t[1], p);
    return s;
  };
  switch (gate.kind()) {
    case GateKind::Rotation: {
      const Pauli p = gate.axis() == Axis::X   ? Pauli::X
                      : gate.axis() == Axis::Y ? Pauli::Y
                                               : Pauli::Z;
      g.add(single(t[0], p, 0.5));
      break;
    }
    case GateKind::Phase:
      g.add(PauliString(n_qubits, 0.5));
      g.add(single(t[0], Pauli::Z, -0.5));
      break;
    case GateKind::XXPlusYY:
      g.add(pair(Pauli::X, 0.5));
      g.add(pair(Pauli::Y, 0.5));
      break;
    case GateKind::XXMinusYY:
      g.add(pair(Pauli::X, 0.5));
      g.add(pair(Pauli::Y, -0.5));
      break;
    case GateKind::ZZ:
      g.add(pair(Pauli::Z, 1.0));
      break;
    default:
      throw InvalidArgument("gate " + gate.name() + " has no angle parameter");
  }
  return g;
}

Circuit decompose_controlled_pauli(int control, const PauliString& p,
                                   int control_value) {
  // Validates arguments.
  (void)Gate::controlled_pauli(control, p, control_value);
  Circuit out;
  if (control_value == 0) out.push_back(Gate::x(control));
  for (int q = 0; q < p.n_qubits(); ++q) {
    switch (p.letter(q)) {
      case Pauli::X: out.push_back(Gate::cnot(control, q)); break;
      case Pauli::Y: out.push_back(Gate::cy(control, q)); break;
      case Pauli::Z: out.push_back(Gate::cz(control, q)); break;
      case Pauli::I: break;
    }
  }
  const double arg = std::arg(p.coefficient());
  if (arg != 0.0) out.push_back(Gate::phase(control, arg));
  if (control_value == 0) out.push_back(Gate::x(control));
  return out;
}

}  // namespace kitaev::qsim
