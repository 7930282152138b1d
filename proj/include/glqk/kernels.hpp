#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glqk/lattice.hpp"
#include "glqk/shadow.hpp"

namespace glqk {

enum class KernelKind { kShadow, kGlqk };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& s);

struct KernelConfig {
  KernelKind kind = KernelKind::kGlqk;
  double tau = 1.0;
  double gamma = 1.0;
  /// GLQK only.
  int h = 1;
  int zeta = 2;

  void validate() const;
  nlohmann::json to_json() const;
  static KernelConfig from_json(const nlohmann::json& j);
  bool operator==(const KernelConfig&) const = default;
};

/// tr(sigma sigma~) of two single-qubit snapshots: 5, -4 or 0.5.
double qubit_overlap(std::uint8_t a, std::uint8_t b);

/// Instrumentation for the direct kernel paths.
struct KernelOpCount {
  std::uint64_t shot_pairs = 0;
  std::uint64_t qubit_factors = 0;
};

/// exp( tau/(Ta Tb) sum_{t,t'} prod_{i in A} [1 + (gamma/|A|) tr(sigma_i^t sigma~_i^t')] ).
double truncated_shadow_kernel(const ClassicalShadow& a, const ClassicalShadow& b,
                               const Subsystem& A, double tau, double gamma,
                               KernelOpCount* ops = nullptr);

/// [ (1/n) sum_{A in A_GL(zeta)} TSK_A ]^h, evaluated directly from a
/// Ta x Tb x n table of overlap classes. Window values are summed in sorted
/// order so the result does not depend on the anchor order.
double glqk_polynomial(const ClassicalShadow& a, const ClassicalShadow& b, const Lattice& lat,
                       const KernelConfig& cfg, KernelOpCount* ops = nullptr);

/// exp( tau/(Ta Tb) sum_{t,t'} exp( (gamma/n) sum_i tr(sigma_i^t sigma~_i^t') ) ).
double shadow_kernel(const ClassicalShadow& a, const ClassicalShadow& b, double tau,
                     double gamma);

double kernel_value(const ClassicalShadow& a, const ClassicalShadow& b, const Lattice& lat,
                    const KernelConfig& cfg);

/// Upper bounds exp(tau e^{5 gamma}) and exp(h tau e^{5 gamma}).
double kernel_bound(const KernelConfig& cfg);

}  // namespace glqk
