#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glqk/lattice.hpp"
#include "glqk/pauli.hpp"

namespace glqk {

/// Number of shots that suffices to estimate g(rho) from a shadow with error
/// epsilon. With clustered=true, p is replaced by m*p and 3^{mp} by 3^{m^2 p}
/// (the bound used for the cluster approximation). Requires 0 < eps < |g|_1.
std::uint64_t shadow_budget(const ObservablePolynomial& g, double epsilon, bool clustered);

enum class KernelFamily { kGlqk, kShadow };

struct ResourcePlan {
  KernelFamily kernel = KernelFamily::kGlqk;
  bool symmetric = false;
  int n = 0;
  int m = 0;
  int p = 0;
  double l1 = 0.0;
  double delta_real = 0.0;
  int delta = 1;
  int zeta = 1;
  /// Power in the polynomial GLQK; 0 for the shadow kernel.
  int h = 0;
  int alpha_g = 0;
  bool alpha_exact = true;
  int beta_g = 0;
  /// N is exp(log prefactor) * n^k, so ratios across n are exact powers.
  double N = 0.0;
  double log10_N = 0.0;
  std::uint64_t T = 0;
  double B2 = 0.0;
  double lambda = 0.0;
  std::vector<std::string> warnings;

  std::string regime() const;
  nlohmann::json to_json() const;
};

/// Explicit resource formulas of the four learning guarantees (GLQK or shadow
/// kernel, general or translation-symmetric data).
ResourcePlan plan_resources(const ObservablePolynomial& g, const Lattice& lat, double xi,
                            double epsilon, bool symmetric, KernelFamily kernel,
                            double tau = 1.0, double gamma = 1.0);

}  // namespace glqk
