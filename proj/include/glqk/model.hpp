#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glqk/kernels.hpp"

namespace glqk {

enum class Task { kRegression, kClassification };

std::string to_string(Task task);
Task task_from_string(const std::string& s);

/// Dual-form model h(x) = sum_i alpha_i k(x_i, x) + bias. For classifiers
/// alpha_i already carries the label sign (alpha_i = a_i y_i).
struct TrainedModel {
  Task task = Task::kRegression;
  Eigen::VectorXd alpha;
  double bias = 0.0;
  KernelConfig kernel;
  /// Regularization: lambda for KRR, C for the SVM.
  double regularization = 0.0;
  bool standardized = true;
  std::vector<std::size_t> train_indices;
  /// k(x_i, x_i) of the training points, for standardizing test grams.
  Eigen::VectorXd train_diag;

  // Diagnostics.
  double b2 = 0.0;              // alpha^T K alpha
  double residual = 0.0;        // KRR: |(K + 2 N lambda) alpha - y|
  double stationarity = 0.0;    // KRR: |(1/N) K (K alpha - y) + 2 lambda K alpha|
  double jitter = 0.0;
  double kkt_violation = 0.0;   // SVM
  long iterations = 0;

  /// Decision values K_test^T alpha + bias; K_test is (train x test).
  Eigen::VectorXd decision(const Eigen::MatrixXd& k_test) const;
  /// Regression values, or +-1 class labels for classifiers.
  Eigen::VectorXd predict(const Eigen::MatrixXd& k_test) const;

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& j);
};

}  // namespace glqk
