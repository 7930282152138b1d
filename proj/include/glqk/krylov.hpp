#pragma once

#include "glqk/hamiltonian.hpp"
#include "glqk/statevector.hpp"

namespace glqk {

struct KrylovOptions {
  int dimension = 30;
  double tolerance = 1e-12;  // per-substep error estimate
  int max_substeps = 100000;
};

/// exp(-i H t) |psi> by Lanczos-Krylov propagation with adaptive substeps.
StateVector evolve(const PauliOperator& h, const StateVector& initial, double t,
                   const KrylovOptions& opts = {});
StateVector evolve(const HamiltonianSpec& spec, const StateVector& initial, double t,
                   const KrylovOptions& opts = {});

struct GroundState {
  StateVector state;
  double energy = 0.0;
  double residual = 0.0;
  int restarts = 0;
};

struct LanczosOptions {
  int subspace = 80;
  int max_restarts = 200;
  double residual_tol = 1e-8;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// The phase is fixed so that the largest-magnitude amplitude is real positive.
GroundState ground_state(const PauliOperator& h, std::uint64_t seed,
                         const LanczosOptions& opts = {});
GroundState ground_state(const HamiltonianSpec& spec, std::uint64_t seed,
                         const LanczosOptions& opts = {});

}  // namespace glqk
