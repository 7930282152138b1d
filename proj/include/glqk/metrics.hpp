#pragma once

#include <vector>

#include <Eigen/Dense>

#include "glqk/pauli.hpp"
#include "glqk/shadow.hpp"

namespace glqk {

/// 1 - sum (y - f)^2 / sum (y - mean y)^2. Throws UndefinedMetric for fewer
/// than two samples or constant y_true.
double r_squared(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Fraction of matching signs.
double accuracy(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// sqrt(mean (g(rho_i) - g(sigma_i))^2).
double shadow_noise_floor(const Eigen::VectorXd& exact, const Eigen::VectorXd& estimated);
double shadow_noise_floor(const ObservablePolynomial& g, const Eigen::VectorXd& exact,
                          const std::vector<const ClassicalShadow*>& shadows);

}  // namespace glqk
