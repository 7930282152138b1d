#pragma once

#include <Eigen/Dense>

#include "glqk/lattice.hpp"
#include "glqk/shadow.hpp"

namespace glqk {

/// Explicit truncated feature vector of the truncated shadow kernel on A:
/// blocks sqrt(tau^d/d!) v^{(x)d} for d = 0..degree_cap, where
/// v = (+)_{r <= size_cap} sqrt((gamma/|A|)^r) (+)_{S subset A, |S|=r} vec(sigma_S)
/// and vec(sigma_S)_P = tr(P sigma_S)/sqrt(2^r). Test oracle only.
Eigen::VectorXd truncated_feature_oracle(const ClassicalShadow& shadow, const Subsystem& A,
                                         double tau, double gamma, int degree_cap, int size_cap);

/// M = (1/(Ta Tb)) sum_{t,t'} prod_{i in A} [1 + (gamma/|A|) tr(sigma sigma~)], the
/// exponent of the truncated shadow kernel divided by tau.
double tsk_inner_sum(const ClassicalShadow& a, const ClassicalShadow& b, const Subsystem& A,
                     double gamma);

/// sum_{d > cap} |x|^d / d!.
double exp_series_tail(double x, int cap);

}  // namespace glqk
