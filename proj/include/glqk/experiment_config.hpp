#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glqk/cross_validation.hpp"
#include "glqk/kernels.hpp"
#include "glqk/pauli.hpp"

namespace glqk {

enum class DataTask { kRandomDynamics, kQpr };

struct PlanSection {
  nlohmann::json polynomial;  // inline polynomial or a path string
  double xi = 1.0;
  double epsilon = 0.05;
  std::vector<int> n_values = {10, 20};
  double tau = 1.0;
  double gamma = 1.0;
};

struct AnalyzeSection {
  nlohmann::json polynomial;
  std::vector<int> dims;  // empty: ring of the top-level n
  int delta = 1;
  int zeta = 2;
};

struct PcaSection {
  KernelConfig kernel;
  int count = 200;
};

/// Batch experiment description. Defaults follow the published protocol where
/// it states them (T=500, t=0.5, Delta=0.5, J in [0.1, 1.9], 10 repeats,
/// 5 folds) and a desk-scale pool otherwise.
struct ExperimentConfig {
  DataTask task = DataTask::kRandomDynamics;
  std::vector<int> dims = {10};
  bool symmetric = true;
  std::string target = "g1";
  int N_pool = 600;
  int T = 500;
  double t_evolve = 0.5;
  double Delta = 0.5;
  double J_min = 0.1;
  double J_max = 1.9;
  double J_exclusion = 0.05;
  int order_width = 2;
  std::vector<int> N_train = {60};
  int M_test = 100;
  std::vector<KernelKind> kernels = {KernelKind::kGlqk, KernelKind::kShadow};
  double tau = 1.0;
  double gamma = 1.0;
  GridSpec grid;
  int folds = 5;
  int repeats = 10;
  std::uint64_t seed = 1;
  bool standardize = true;

  PlanSection plan;
  AnalyzeSection analyze;
  PcaSection pca;

  /// Directory that relative polynomial paths are resolved against.
  std::string base_dir = ".";

  int qubits() const;
  Task learning_task() const {
    return task == DataTask::kQpr ? Task::kClassification : Task::kRegression;
  }

  static ExperimentConfig from_json(const nlohmann::json& j, const std::string& base_dir = ".");
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;
  /// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
  std::string hash() const;
};

/// Reads an inline polynomial object or a path (relative to base_dir).
ObservablePolynomial load_polynomial(const nlohmann::json& spec, const std::string& base_dir);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace glqk
