#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "glqk/lattice.hpp"

namespace glqk {

/// Single-qubit Pauli letter. The numeric values double as the shadow
/// measurement-basis encoding.
enum class Pauli : std::uint8_t { X = 0, Y = 1, Z = 2 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Sparse Pauli string: (site, letter) pairs sorted by site, identity sites
/// never stored. The empty string is the identity.
class PauliString {
 public:
  using Entry = std::pair<int, Pauli>;

  PauliString() = default;
  /// Entries may arrive in any order; duplicate sites are rejected.
  explicit PauliString(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  int weight() const { return static_cast<int>(entries_.size()); }
  bool is_identity() const { return entries_.empty(); }
  std::vector<int> support() const;
  /// Letter at `site`; nullopt when the site carries the identity.
  std::optional<Pauli> letter_at(int site) const;

  /// Throws InvalidArgument when a site lies outside the lattice.
  void check_on(const Lattice& lat) const;
  /// Apply a lattice translation to every site.
  PauliString translated(const Lattice& lat, int axis, int offset) const;

  std::string to_string() const;

  auto operator<=>(const PauliString&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// One term c * prod_j tr(P_j rho).
struct Term {
  double coefficient = 0.0;
  std::vector<PauliString> factors;

  bool operator==(const Term&) const = default;
};

/// g(rho) = sum_i c_i prod_j tr(P_ij rho).
class ObservablePolynomial {
 public:
  ObservablePolynomial() = default;
  explicit ObservablePolynomial(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Max Pauli weight over all factors.
  int body() const;
  /// Max number of factors per term.
  int degree() const;
  double l1_norm() const;
  double l2_norm() const;

  void check_on(const Lattice& lat) const;

  nlohmann::json to_json() const;
  static ObservablePolynomial from_json(const nlohmann::json& j);
  static ObservablePolynomial parse(const std::string& text);
  std::string dump() const;

  bool operator==(const ObservablePolynomial&) const = default;

 private:
  std::vector<Term> terms_;
};

/// Anything that returns tr(P rho) for a Pauli string.
using ExpectationOracle = std::function<double(const PauliString&)>;

/// Exact value of g given exact Pauli expectations.
double evaluate_exact(const ObservablePolynomial& g, const ExpectationOracle& expect);

/// The three regression targets used in the dynamics experiments (0-based sites):
/// g1 = <X0 Y1>, g2 = <X0 X1><Y0 Y1>, g3 = <X0 Y_{n/2}>.
ObservablePolynomial target_polynomial(const std::string& id, int n);

}  // namespace glqk
