#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "glqk/pauli.hpp"
#include "glqk/rng.hpp"

namespace glqk {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 20;
inline constexpr int kMaxRdmSites = 12;

/// Pure n-qubit state. Site i is bit i of the amplitude index.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int n, std::uint64_t index = 0);
  /// |u_0> (x) |u_1> (x) ... with u_i the state of site i.
  static StateVector product(const std::vector<Eigen::Vector2cd>& sites);

  int qubits() const { return n_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }
  void normalize();

  /// Apply a 2x2 unitary to one site in place.
  void apply(int site, const Eigen::Matrix2cd& u);

 private:
  Eigen::VectorXcd amps_;
  int n_ = 0;
};

/// Haar-random single-qubit state.
Eigen::Vector2cd haar_qubit_state(Rng& rng);
/// Haar-random 2x2 unitary (QR of a complex Gaussian matrix, phases fixed).
Eigen::Matrix2cd haar_unitary(Rng& rng);

/// symmetric: the same Haar state on every site; otherwise independent ones.
StateVector random_product_state(int n, bool symmetric, std::uint64_t seed);

/// Applies independent Haar unitaries U_j to sites j and n-1-j, j < n/2.
StateVector disturb_inversion_symmetric(const StateVector& state, std::uint64_t seed);

/// Bit masks of a Pauli string: flip = X|Y sites, phase = Z|Y sites.
struct PauliMasks {
  std::uint64_t flip = 0;
  std::uint64_t phase = 0;
  int y_count = 0;
};
PauliMasks pauli_masks(const PauliString& p);

/// <psi|P|psi>.
double pauli_expectation(const StateVector& state, const PauliString& p);
ExpectationOracle expectation_oracle(const StateVector& state);

/// Reduced density matrix on `sites` in Kronecker order (sites[0] is the most
/// significant index bit).
Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, const std::vector<int>& sites);

}  // namespace glqk
