#pragma once

#include <Eigen/Dense>

#include "glqk/model.hpp"

namespace glqk {

struct SvmOptions {
  double tolerance = 1e-5;  // stop when the maximal KKT violation pair gap falls below this
  long max_iterations = 10000000;
};

/// C-SVM dual solved by SMO with second-order working-set selection. Labels
/// must be +-1 with both classes present. The problem is always solved in
/// the orientation where the first label is +1, so negating every label
/// negates the decision function exactly.
TrainedModel svm_fit(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double C,
                     const SvmOptions& opts = {});

}  // namespace glqk
