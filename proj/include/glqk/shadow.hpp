#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "glqk/cluster.hpp"
#include "glqk/lattice.hpp"
#include "glqk/pauli.hpp"
#include "glqk/statevector.hpp"

namespace glqk {

/// Random-Pauli measurement record of T shots on n qubits.
///
/// One byte per (shot, qubit), shot-major: bits 0-1 hold the basis
/// (0=X, 1=Y, 2=Z) and bit 2 the outcome (0 for +1, 1 for -1).
struct ClassicalShadow {
  int n = 0;
  int T = 0;
  std::vector<std::uint8_t> records;
  std::uint64_t seed = 0;

  static std::uint8_t encode(Pauli basis, int outcome) {
    return static_cast<std::uint8_t>(static_cast<int>(basis) | (outcome < 0 ? 4 : 0));
  }
  static Pauli basis_of(std::uint8_t r) { return static_cast<Pauli>(r & 3); }
  static int outcome_of(std::uint8_t r) { return (r & 4) ? -1 : 1; }

  std::uint8_t at(int t, int i) const { return records[static_cast<std::size_t>(t) * n + i]; }
  /// Throws InvalidArgument on a malformed record array.
  void validate() const;
  /// Relabel sites by a lattice translation (record of site s moves to shift(s)).
  ClassicalShadow translated(const Lattice& lat, int axis, int offset) const;

  bool operator==(const ClassicalShadow& o) const {
    return n == o.n && T == o.T && records == o.records;
  }
};

ClassicalShadow sample_shadow(const StateVector& state, int T, std::uint64_t seed);

/// (1/T) sum_t prod_{i in supp P} 3 o_i [W_i = P_i].
double estimate_pauli(const ClassicalShadow& shadow, const PauliString& p);
/// g(sigma): every factor is estimated from the same shots.
double estimate_polynomial(const ClassicalShadow& shadow, const ObservablePolynomial& g);
double estimate_polynomial(const ClassicalShadow& shadow, const ClusterDecomposition& dec);

inline constexpr int kMaxShadowRdmSites = 8;

/// (1/T) sum_t sigma_{i1} (x) ... (x) sigma_{ir}; sites[0] is the most significant index.
Eigen::MatrixXcd estimate_rdm(const ClassicalShadow& shadow, const std::vector<int>& sites);

}  // namespace glqk
