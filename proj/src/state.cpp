#include "kitaev/qsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kitaev/error.hpp"

namespace kitaev::qsim {

namespace {

constexpr int kMaxQubits = 30;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InvalidArgument("qubit count must be in [1, 30], got " +
                          std::to_string(n));
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amp_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amp_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amp_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amp_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("amplitude count must equal 2^n_qubits");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  for (auto& a : amp_) a /= nrm;
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      idx |= std::uint64_t{1} << q;
    } else if (bits[q] != '0') {
      throw InvalidArgument("bitstring may contain only '0' and '1'");
    }
  }
  return idx;
}

std::string index_to_bits(std::uint64_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

StateVector init_basis(int n_qubits, std::string_view bits) {
  if (static_cast<int>(bits.size()) != n_qubits) {
    throw InvalidArgument("bitstring length " + std::to_string(bits.size()) +
                          " does not match n_qubits " +
                          std::to_string(n_qubits));
  }
  StateVector s(n_qubits);
  s[0] = 0.0;
  s[bits_to_index(bits)] = 1.0;
  return s;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InvalidArgument("inner: register sizes differ");
  }
  Complex s{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double prob_basis(const StateVector& state, std::string_view bits) {
  if (static_cast<int>(bits.size()) != state.n_qubits()) {
    throw InvalidArgument("prob_basis: bitstring length mismatch");
  }
  return std::norm(state[bits_to_index(bits)]);
}

std::map<std::uint64_t, std::size_t> sample(const StateVector& state,
                                            std::size_t shots,
                                            std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("sample: shots must be >= 1");
  std::vector<double> cdf(state.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += std::norm(state[i]);
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::map<std::uint64_t, std::size_t> counts;
  for (std::size_t s = 0; s < shots; ++s) {
    const double r = uni(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return counts;
}

}  // namespace kitaev::qsim
