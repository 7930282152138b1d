#include "glqk/krr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "glqk/errors.hpp"

namespace glqk {

std::string to_string(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

Task task_from_string(const std::string& s) {
  if (s == "regression" || s == "krr") return Task::kRegression;
  if (s == "classification" || s == "svm") return Task::kClassification;
  throw InvalidArgument("unknown task '" + s + "'");
}

Eigen::VectorXd TrainedModel::decision(const Eigen::MatrixXd& k_test) const {
  if (k_test.rows() != alpha.size()) {
    throw InvalidArgument("test gram has " + std::to_string(k_test.rows()) +
                          " rows, model has " + std::to_string(alpha.size()) +
                          " training points");
  }
  Eigen::VectorXd f = k_test.transpose() * alpha;
  f.array() += bias;
  return f;
}

Eigen::VectorXd TrainedModel::predict(const Eigen::MatrixXd& k_test) const {
  Eigen::VectorXd f = decision(k_test);
  if (task == Task::kClassification) {
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = f[i] >= 0.0 ? 1.0 : -1.0;
  }
  return f;
}

nlohmann::json TrainedModel::to_json() const {
  return {{"task", to_string(task)},
          {"alpha", std::vector<double>(alpha.data(), alpha.data() + alpha.size())},
          {"bias", bias},
          {"kernel", kernel.to_json()},
          {"regularization", regularization},
          {"standardized", standardized},
          {"train_indices", train_indices},
          {"train_diag", std::vector<double>(train_diag.data(), train_diag.data() + train_diag.size())},
          {"diagnostics",
           {{"b2", b2},
            {"residual", residual},
            {"stationarity", stationarity},
            {"jitter", jitter},
            {"kkt_violation", kkt_violation},
            {"iterations", iterations}}}};
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j) {
  TrainedModel m;
  try {
    m.task = task_from_string(j.at("task").get<std::string>());
    const auto a = j.at("alpha").get<std::vector<double>>();
    m.alpha = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    m.bias = j.at("bias").get<double>();
    m.kernel = KernelConfig::from_json(j.at("kernel"));
    m.regularization = j.at("regularization").get<double>();
    m.standardized = j.value("standardized", true);
    m.train_indices = j.value("train_indices", std::vector<std::size_t>{});
    const auto d = j.value("train_diag", std::vector<double>{});
    m.train_diag = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    if (j.contains("diagnostics")) {
      const auto& g = j["diagnostics"];
      m.b2 = g.value("b2", 0.0);
      m.residual = g.value("residual", 0.0);
      m.stationarity = g.value("stationarity", 0.0);
      m.jitter = g.value("jitter", 0.0);
      m.kkt_violation = g.value("kkt_violation", 0.0);
      m.iterations = g.value("iterations", 0L);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed model JSON: ") + e.what());
  }
  return m;
}

TrainedModel krr_fit(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw InvalidArgument("KRR needs a square gram");
  if (y.size() != n) throw InvalidArgument("label count does not match the gram");
  if (n == 0) throw InvalidArgument("KRR needs at least one training point");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");

  Eigen::MatrixXd a = k;
  a.diagonal().array() += 2.0 * static_cast<double>(n) * lambda;
  const double ynorm = y.norm();
  const double tol = 1e-8 * ynorm;
  const double scale = std::max(1.0, k.diagonal().cwiseAbs().maxCoeff());

  double jitter = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 7; ++step) {
    if (step > 0) jitter = 1e-12 * std::pow(10.0, step - 1) * scale;
    Eigen::MatrixXd aj = a;
    aj.diagonal().array() += jitter;
    // LDL^T keeps the diagonal unsquared, so K = Id solves to y/2 exactly.
    Eigen::LDLT<Eigen::MatrixXd> llt(aj);
    if (llt.info() != Eigen::Success || !(llt.vectorD().minCoeff() > 0.0)) continue;
    Eigen::VectorXd alpha = llt.solve(y);
    Eigen::VectorXd r = y - a * alpha;
    for (int it = 0; it < 10 && r.norm() > tol; ++it) {
      alpha += llt.solve(r);
      r = y - a * alpha;
    }
    const double res = r.norm();
    best_residual = std::min(best_residual, res);
    if (!(res <= tol)) continue;

    TrainedModel m;
    m.task = Task::kRegression;
    m.alpha = std::move(alpha);
    m.regularization = lambda;
    m.residual = res;
    m.jitter = jitter;
    m.b2 = m.alpha.dot(k * m.alpha);
    m.stationarity = (k * (a * m.alpha - y) / static_cast<double>(n)).norm();
    return m;
  }
  throw NumericFailure("KRR solve failed after jitter escalation to 1e-6 (best residual " +
                       std::to_string(best_residual) + ")");
}

Eigen::VectorXd krr_predict(const TrainedModel& model, const Eigen::MatrixXd& k_test) {
  return model.decision(k_test);
}

}  // namespace glqk
