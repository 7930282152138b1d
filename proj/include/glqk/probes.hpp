#pragma once

#include <string>

#include "glqk/pauli.hpp"
#include "glqk/statevector.hpp"

namespace glqk {

/// z = sqrt(2) tr(R_I rho_I) / sqrt(tr rho_I1^2 + tr rho_I2^2) with I1, I2 the
/// width-a blocks left and right of the chain center and R_I the reflection
/// swapping them.
double order_parameter_z(const StateVector& state, int a);

/// max |<P> - <shift(P)>| over single-site letters at site 0 and adjacent
/// letter pairs on sites (0,1), shifted by one site along the ring.
double translation_symmetry_defect(const StateVector& state);

struct CorrelationFit {
  double xi = 0.0;
  /// "ok", "uncorrelated" or "non-decaying".
  std::string quality = "ok";
  int points = 0;
  double slope = 0.0;
};

/// Fits log|<P_0 Q_d> - <P_0><Q_d>| = c - d/xi over d = 1..n/2 where the
/// connected correlator exceeds 1e-8.
CorrelationFit correlation_length_probe(const StateVector& state, Pauli a, Pauli b);

}  // namespace glqk
