#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glqk/statevector.hpp"

namespace glqk {

enum class HamiltonianKind { kRandomSymmetric, kRandomGeneral, kXxzBondAlternating };

std::string to_string(HamiltonianKind kind);
HamiltonianKind hamiltonian_kind_from_string(const std::string& s);

/// H1 (kRandomSymmetric): sum_j sum_{mu,nu} J^{mu nu} s^mu_j s^nu_{j+1} on a ring.
/// H2 (kRandomGeneral): the same with bond-dependent J_j^{mu nu}.
/// XXZ: open chain, intra bonds (2k, 2k+1) with unit strength, inter bonds
/// (2k+1, 2k+2) scaled by J.
struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::kRandomSymmetric;
  int n = 0;
  /// Per bond j (n entries for H2, one entry for H1), row-major 3x3 in (mu, nu).
  std::vector<std::array<double, 9>> couplings;
  double J = 1.0;
  double Delta = 0.5;
  std::uint64_t seed = 0;

  static HamiltonianSpec random(int n, bool symmetric, std::uint64_t seed);
  static HamiltonianSpec xxz(int n, double J, double Delta = 0.5);

  nlohmann::json to_json() const;
};

/// A Hermitian operator stored as real-weighted Pauli strings, grouped by flip
/// mask for fast application.
class PauliOperator {
 public:
  struct Group {
    std::uint64_t flip = 0;
    std::vector<std::uint64_t> phase;
    std::vector<cplx> weight;  // coefficient * i^{#Y}
  };

  explicit PauliOperator(int n) : n_(n) {}
  void add(double coefficient, const PauliString& p);

  int qubits() const { return n_; }
  std::size_t term_count() const;
  /// out = H in.
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  double expectation(const StateVector& s) const;
  Eigen::MatrixXcd dense() const;

 private:
  int n_;
  std::vector<Group> groups_;
};

PauliOperator build_operator(const HamiltonianSpec& spec);

}  // namespace glqk
