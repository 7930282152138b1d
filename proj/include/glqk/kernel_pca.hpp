#pragma once

#include <Eigen/Dense>

namespace glqk {

struct KernelPcaResult {
  /// N x k coordinates, k <= requested components.
  Eigen::MatrixXd coordinates;
  Eigen::VectorXd eigenvalues;
  /// False when fewer positive eigenvalues than requested components exist.
  bool complete = true;
};

/// Double-centres K, keeps the top eigenvectors scaled by sqrt(eigenvalue)
/// and flips each component so its largest-|coordinate| entry is positive.
KernelPcaResult kernel_pca(const Eigen::MatrixXd& k, int components = 2);

}  // namespace glqk
