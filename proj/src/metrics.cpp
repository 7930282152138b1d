#include "glqk/metrics.hpp"

#include <cmath>
#include <string>

#include "glqk/errors.hpp"

namespace glqk {

double r_squared(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
  if (y_true.size() != y_pred.size()) throw InvalidArgument("R^2 inputs differ in length");
  if (y_true.size() < 2) throw UndefinedMetric("R^2 needs at least two samples");
  const double mean = y_true.mean();
  const double ss_tot = (y_true.array() - mean).square().sum();
  if (!(ss_tot > 0.0)) throw UndefinedMetric("R^2 is undefined for constant targets");
  const double ss_res = (y_true - y_pred).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

double accuracy(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
  if (y_true.size() != y_pred.size()) throw InvalidArgument("accuracy inputs differ in length");
  if (y_true.size() == 0) throw UndefinedMetric("accuracy of an empty set");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < y_true.size(); ++i)
    if ((y_true[i] >= 0) == (y_pred[i] >= 0)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

double shadow_noise_floor(const Eigen::VectorXd& exact, const Eigen::VectorXd& estimated) {
  if (exact.size() != estimated.size()) throw InvalidArgument("noise floor inputs differ in length");
  if (exact.size() == 0) throw UndefinedMetric("noise floor of an empty set");
  return std::sqrt((exact - estimated).squaredNorm() / static_cast<double>(exact.size()));
}

double shadow_noise_floor(const ObservablePolynomial& g, const Eigen::VectorXd& exact,
                          const std::vector<const ClassicalShadow*>& shadows) {
  if (static_cast<std::size_t>(exact.size()) != shadows.size()) {
    throw InvalidArgument("one shadow per exact label is required");
  }
  Eigen::VectorXd est(exact.size());
  for (std::size_t i = 0; i < shadows.size(); ++i) est[static_cast<Eigen::Index>(i)] = estimate_polynomial(*shadows[i], g);
  return shadow_noise_floor(exact, est);
}

}  // namespace glqk
