#include "glqk/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "glqk/errors.hpp"

namespace glqk {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("state dimension " + std::to_string(dim) + " is not a power of two");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  if (n > kMaxQubits) {
    throw InvalidArgument(std::to_string(n) + " qubits exceed the simulator cap of " +
                          std::to_string(kMaxQubits));
  }
  return n;
}

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InvalidArgument("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  }
}

cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amps_(std::move(amplitudes)), n_(qubits_for_dim(amps_.size())) {}

StateVector StateVector::basis(int n, std::uint64_t index) {
  check_qubits(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  if (index >= static_cast<std::uint64_t>(v.size())) throw InvalidArgument("basis index out of range");
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::product(const std::vector<Eigen::Vector2cd>& sites) {
  const int n = static_cast<int>(sites.size());
  check_qubits(n);
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  v[0] = 1.0;
  Eigen::Index len = 1;
  for (int i = 0; i < n; ++i) {
    // Site i is bit i: the new upper half carries the |1> amplitude.
    for (Eigen::Index k = 0; k < len; ++k) {
      v[k + len] = v[k] * sites[i][1];
      v[k] *= sites[i][0];
    }
    len *= 2;
  }
  return StateVector(std::move(v));
}

void StateVector::normalize() {
  const double nrm = amps_.norm();
  if (!(nrm > 0.0)) throw NumericFailure("cannot normalize a zero state");
  amps_ /= nrm;
}

void StateVector::apply(int site, const Eigen::Matrix2cd& u) {
  if (site < 0 || site >= n_) throw InvalidArgument("site out of range");
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t dim = this->dim();
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * bit) {
    for (std::uint64_t k = hi; k < hi + bit; ++k) {
      const cplx a0 = amps_[k];
      const cplx a1 = amps_[k | bit];
      amps_[k] = u(0, 0) * a0 + u(0, 1) * a1;
      amps_[k | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

Eigen::Vector2cd haar_qubit_state(Rng& rng) {
  Eigen::Vector2cd v(rng.complex_normal(), rng.complex_normal());
  return v / v.norm();
}

Eigen::Matrix2cd haar_unitary(Rng& rng) {
  Eigen::Matrix2cd z;
  z << rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal();
  // Gram-Schmidt on the columns leaves R with a positive real diagonal.
  Eigen::Vector2cd q0 = z.col(0) / z.col(0).norm();
  Eigen::Vector2cd q1 = z.col(1) - q0.dot(z.col(1)) * q0;
  q1 /= q1.norm();
  Eigen::Matrix2cd u;
  u.col(0) = q0;
  u.col(1) = q1;
  return u;
}

StateVector random_product_state(int n, bool symmetric, std::uint64_t seed) {
  check_qubits(n);
  Rng rng(seed);
  std::vector<Eigen::Vector2cd> sites;
  sites.reserve(n);
  if (symmetric) {
    sites.assign(n, haar_qubit_state(rng));
  } else {
    for (int i = 0; i < n; ++i) sites.push_back(haar_qubit_state(rng));
  }
  return StateVector::product(sites);
}

StateVector disturb_inversion_symmetric(const StateVector& state, std::uint64_t seed) {
  const int n = state.qubits();
  if (n % 2 != 0) throw InvalidArgument("inversion-symmetric disturbance needs even n");
  Rng rng(seed);
  StateVector out = state;
  for (int j = 0; j < n / 2; ++j) {
    const Eigen::Matrix2cd u = haar_unitary(rng);
    out.apply(j, u);
    out.apply(n - 1 - j, u);
  }
  return out;
}

PauliMasks pauli_masks(const PauliString& p) {
  PauliMasks m;
  for (const auto& [site, letter] : p.entries()) {
    if (site >= 64) throw InvalidArgument("site index beyond 64-bit mask");
    const std::uint64_t bit = std::uint64_t{1} << site;
    if (letter != Pauli::Z) m.flip |= bit;
    if (letter != Pauli::X) m.phase |= bit;
    if (letter == Pauli::Y) ++m.y_count;
  }
  return m;
}

double pauli_expectation(const StateVector& state, const PauliString& p) {
  const auto& e = p.entries();
  if (!e.empty() && e.back().first >= state.qubits()) {
    throw InvalidArgument("Pauli string " + p.to_string() + " acts outside a " +
                          std::to_string(state.qubits()) + "-qubit state");
  }
  const PauliMasks m = pauli_masks(p);
  const auto& a = state.amplitudes();
  const std::uint64_t dim = state.dim();
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const cplx term = std::conj(a[k ^ m.flip]) * a[k];
    acc += (std::popcount(k & m.phase) & 1) ? -term : term;
  }
  return (acc * i_pow(m.y_count)).real();
}

ExpectationOracle expectation_oracle(const StateVector& state) {
  return [&state](const PauliString& p) { return pauli_expectation(state, p); };
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, const std::vector<int>& sites) {
  const int n = state.qubits();
  const int k = static_cast<int>(sites.size());
  if (k > kMaxRdmSites) {
    throw ResourceLimit("reduced density matrix on " + std::to_string(k) +
                        " sites exceeds the cap of " + std::to_string(kMaxRdmSites));
  }
  std::uint64_t sub_mask = 0;
  for (int s : sites) {
    if (s < 0 || s >= n) throw InvalidArgument("RDM site out of range");
    const std::uint64_t bit = std::uint64_t{1} << s;
    if (sub_mask & bit) throw InvalidArgument("RDM site listed twice");
    sub_mask |= bit;
  }
  std::vector<int> env;
  for (int s = 0; s < n; ++s)
    if (!(sub_mask >> s & 1)) env.push_back(s);

  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = Eigen::Index{1} << (n - k);
  Eigen::MatrixXcd m(rows, cols);
  const auto& a = state.amplitudes();
  for (std::uint64_t x = 0; x < state.dim(); ++x) {
    Eigen::Index r = 0;
    for (int j = 0; j < k; ++j) r = (r << 1) | static_cast<Eigen::Index>(x >> sites[j] & 1);
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < env.size(); ++j)
      c |= static_cast<Eigen::Index>(x >> env[j] & 1) << j;
    m(r, c) = a[static_cast<Eigen::Index>(x)];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  return rho;
}

}  // namespace glqk
