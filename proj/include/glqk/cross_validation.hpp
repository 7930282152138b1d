#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glqk/kernels.hpp"
#include "glqk/model.hpp"

namespace glqk {

struct GridSpec {
  std::vector<double> lambdas = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4};
  std::vector<int> hs = {1, 2};
  std::vector<int> zetas = {2, 4, 6};
  /// SVM box constraints; lambda is not used for classification.
  std::vector<double> Cs = {0.1, 1.0, 10.0};

  nlohmann::json to_json() const;
  static GridSpec from_json(const nlohmann::json& j);
};

struct CVCell {
  double reg = 0.0;  // lambda or C
  int h = 0;         // 0 for the shadow kernel
  int zeta = 0;      // 0 for the shadow kernel
  double score = 0.0;
  std::vector<double> fold_scores;
  bool skipped = false;
  std::string note;
};

struct CVReport {
  Task task = Task::kRegression;
  KernelKind kernel = KernelKind::kGlqk;
  int folds = 5;
  std::uint64_t seed = 0;
  std::vector<int> fold_of;
  /// Canonical order: reg ascending, then h, then zeta.
  std::vector<CVCell> cells;
  int selected = -1;

  const CVCell& best() const;
  nlohmann::json to_json() const;
};

/// Supplies the (standardized) N x N training gram for a (h, zeta) cell, or
/// nullptr when the cell is not realizable (e.g. zeta beyond the lattice).
using GramProvider = std::function<const Eigen::MatrixXd*(int h, int zeta)>;

struct CVOutcome {
  CVReport report;
  TrainedModel model;  // refit on all N at the selected cell
};

/// Assigns folds: seeded shuffle, stratified by label sign for classification.
std::vector<int> assign_folds(const Eigen::VectorXd& y, Task task, int folds, std::uint64_t seed);

CVOutcome grid_search_cv(const GramProvider& grams, const Eigen::VectorXd& y, Task task,
                         KernelKind kernel, const GridSpec& grid, int folds, std::uint64_t seed);

}  // namespace glqk
