#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glqk/cross_validation.hpp"
#include "glqk/experiment_config.hpp"
#include "glqk/pool_io.hpp"

namespace glqk {

std::string version_string();
/// "# config_hash=<hex> version=<git describe>"
std::string provenance_line(const ExperimentConfig& cfg);

// ---- generate ----

/// Builds the pool in memory. `manifest` (optional) receives per-entry seeds,
/// parameters, exact labels and probe values.
ShadowPool generate_pool(const ExperimentConfig& cfg, nlohmann::json* manifest = nullptr);
/// Writes the pool to `pool_path` and the manifest to `pool_path`.manifest.json.
void cmd_generate(const ExperimentConfig& cfg, const std::string& pool_path, std::ostream& log);

// ---- experiment ----

struct RunRow {
  KernelKind kernel = KernelKind::kGlqk;
  int N_train = 0;
  int repeat = 0;
  double score = 0.0;  // R^2 or accuracy, NaN if undefined
  double reg = 0.0;
  int h = 0;
  int zeta = 0;
  double cv_score = 0.0;
  double noise_floor = 0.0;  // NaN for classification
  double b2 = 0.0;
};

struct SummaryRow {
  KernelKind kernel = KernelKind::kGlqk;
  int N_train = 0;
  double mean = 0.0;
  double std = 0.0;  // population std over finite scores
  int runs = 0;
  double noise_floor = 0.0;
};

struct ScatterRow {
  KernelKind kernel = KernelKind::kGlqk;
  int N_train = 0;
  int repeat = 0;
  std::size_t index = 0;  // pool index
  double y_true = 0.0;
  double y_pred = 0.0;
};

struct ExperimentResult {
  int n = 0;
  std::vector<RunRow> rows;  // ordered kernel, N_train, repeat
  std::vector<SummaryRow> summary;
  std::vector<ScatterRow> scatter;
  std::vector<CVReport> cv;
  std::vector<TrainedModel> models;

  /// Mean score for a kernel at an N_train value.
  double mean_score(KernelKind kernel, int N_train) const;
};

/// Labels for the configured task: metadata labels[target] for regression,
/// the stored phase label for QPR.
Eigen::VectorXd pool_labels(const ShadowPool& pool, const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ShadowPool& pool);
/// Writes results.csv, summary.csv, scatter.csv, cv_reports.json, models.json.
void cmd_experiment(const ExperimentConfig& cfg, const std::string& pool_path,
                    const std::string& out_dir, std::ostream& log);

// ---- plan / analyze ----

nlohmann::json plan_report(const ExperimentConfig& cfg);
void cmd_plan(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log);

nlohmann::json analyze_report(const ExperimentConfig& cfg);
void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log);

// ---- pca ----

struct PcaOutput {
  std::vector<std::size_t> index;
  Eigen::VectorXd labels;
  Eigen::MatrixXd coordinates;  // count x 2 (zero-padded if fewer components)
  /// |mean pc1 of class +1 - mean pc1 of class -1| and pooled within-class std.
  double gap = 0.0;
  double pooled_std = 0.0;
};

PcaOutput run_pca(const ExperimentConfig& cfg, const ShadowPool& pool);
/// Class-mean gap and pooled within-class std of one coordinate column.
void class_separation(const Eigen::VectorXd& x, const Eigen::VectorXd& labels, double& gap,
                      double& pooled_std);
void cmd_pca(const ExperimentConfig& cfg, const std::string& pool_path, const std::string& out_dir,
             std::ostream& log);

}  // namespace glqk
