#pragma once

#include <Eigen/Dense>

#include "glqk/model.hpp"

namespace glqk {

/// Solves (K + 2 N lambda I) alpha = y by LDL^T Cholesky, escalating a diagonal
/// jitter 1e-12 -> 1e-6 (x10) when the factorization fails, followed by
/// iterative refinement until the residual is below 1e-8 |y|.
TrainedModel krr_fit(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda);

/// K_test^T alpha with K_test of shape (train x test).
Eigen::VectorXd krr_predict(const TrainedModel& model, const Eigen::MatrixXd& k_test);

}  // namespace glqk
