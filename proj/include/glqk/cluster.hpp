#pragma once

#include <vector>

#include "glqk/lattice.hpp"
#include "glqk/pauli.hpp"

namespace glqk {

/// A term of the merged cluster approximation: c_hat * prod_{P in clusters} tr(P rho).
/// Cluster strings are kept in canonical (site-lexicographic) order.
struct ClusterTerm {
  double coefficient = 0.0;
  std::vector<PauliString> clusters;

  int factor_count() const { return static_cast<int>(clusters.size()); }
};

/// delta-cluster approximation of a polynomial.
struct ClusterDecomposition {
  int delta = 1;
  /// m and p of the source polynomial.
  int body = 0;
  int degree = 0;
  /// Per source term, per factor: the clusters the factor splits into
  /// (identity factors yield an empty list).
  std::vector<std::vector<std::vector<PauliString>>> per_term;
  /// Duplicate-free merged terms, in order of first appearance.
  std::vector<ClusterTerm> terms;

  double l1_norm() const;
  /// Each cluster string becomes its own factor.
  ObservablePolynomial flattened() const;
};

/// Connected components of the graph on supp(P) with edges dist <= delta.
std::vector<PauliString> split_into_clusters(const Lattice& lat, const PauliString& p, int delta);

ClusterDecomposition cluster_approximation(const ObservablePolynomial& g, const Lattice& lat,
                                           int delta);

struct CoverResult {
  int value = 0;
  /// False when some term exceeded the exhaustive-search limit and the
  /// greedy upper bound was used instead.
  bool exact = true;
  /// Index of the merged term attaining the maximum.
  int argmax_term = -1;
};

/// Largest term size solved by exhaustive partition search.
inline constexpr int kExactCoverLimit = 8;

/// Minimum number of windows of A_GL(zeta) needed so that every cluster lies
/// inside one of them. Throws LocalityViolation when a cluster fits nowhere.
int cover_count_exact(const Lattice& lat, const std::vector<PauliString>& clusters, int zeta);
/// Multi-start greedy upper bound on cover_count_exact.
int cover_count_greedy(const Lattice& lat, const std::vector<PauliString>& clusters, int zeta);

/// alpha_g = max_i a_i.
CoverResult local_cover_number(const ClusterDecomposition& dec, const Lattice& lat, int zeta);

/// beta_g = max(p, min_i b_i).
int local_factor_count(const ClusterDecomposition& dec);

}  // namespace glqk
