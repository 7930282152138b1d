#include "glqk/svm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "glqk/errors.hpp"

namespace glqk {

namespace {

struct SmoResult {
  Eigen::VectorXd a;
  double rho = 0.0;
  double gap = 0.0;
  long iterations = 0;
};

SmoResult smo(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double C, const SvmOptions& opts) {
  const Eigen::Index n = k.rows();
  constexpr double kTau = 1e-12;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g = Eigen::VectorXd::Constant(n, -1.0);  // gradient of the dual objective
  auto up = [&](Eigen::Index t) { return (y[t] > 0 && a[t] < C) || (y[t] < 0 && a[t] > 0); };
  auto low = [&](Eigen::Index t) { return (y[t] > 0 && a[t] > 0) || (y[t] < 0 && a[t] < C); };

  SmoResult res;
  long it = 0;
  double gap = 0.0;
  for (; it < opts.max_iterations; ++it) {
    double gmax = -std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (up(t) && -y[t] * g[t] > gmax) {
        gmax = -y[t] * g[t];
        i = t;
      }
    }
    double gmin = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (!low(t)) continue;
      const double v = -y[t] * g[t];
      gmin = std::min(gmin, v);
      const double b = gmax - v;
      if (i >= 0 && b > 0) {
        double quad = k(i, i) + k(t, t) - 2.0 * k(i, t);
        if (quad <= 0) quad = kTau;
        const double obj = -b * b / quad;
        if (obj < best) {
          best = obj;
          j = t;
        }
      }
    }
    gap = gmax - gmin;
    if (i < 0 || j < 0 || gap < opts.tolerance) break;

    const double ai = a[i], aj = a[j];
    double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (quad <= 0) quad = kTau;
    if (y[i] != y[j]) {
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0) {
        if (a[j] < 0) { a[j] = 0; a[i] = diff; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = -diff; }
      }
      if (diff > 0) {
        if (a[i] > C) { a[i] = C; a[j] = C - diff; }
      } else {
        if (a[j] > C) { a[j] = C; a[i] = C + diff; }
      }
    } else {
      const double delta = (g[i] - g[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) { a[i] = C; a[j] = sum - C; }
      } else {
        if (a[j] < 0) { a[j] = 0; a[i] = sum; }
      }
      if (sum > C) {
        if (a[j] > C) { a[j] = C; a[i] = sum - C; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = sum; }
      }
    }
    const double di = a[i] - ai, dj = a[j] - aj;
    for (Eigen::Index t = 0; t < n; ++t) {
      g[t] += y[t] * (y[i] * k(t, i) * di + y[j] * k(t, j) * dj);
    }
  }
  if (it >= opts.max_iterations) {
    throw NumericFailure("SMO did not converge (KKT gap " + std::to_string(gap) + ")");
  }

  // rho from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * g[t];
    if (a[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (a[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free;
      sum_free += yg;
    }
  }
  res.rho = free > 0 ? sum_free / free : (ub + lb) / 2.0;
  res.a = std::move(a);
  res.gap = gap;
  res.iterations = it;
  return res;
}

}  // namespace

TrainedModel svm_fit(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double C,
                     const SvmOptions& opts) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw InvalidArgument("SVM needs a square gram");
  if (y.size() != n) throw InvalidArgument("label count does not match the gram");
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidArgument("C must be positive");
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (y[i] == 1.0) pos = true;
    else if (y[i] == -1.0) neg = true;
    else throw InvalidArgument("SVM labels must be +1 or -1");
  }
  if (!pos || !neg) throw InvalidArgument("SVM training needs both classes");

  const double orient = y[0] > 0 ? 1.0 : -1.0;
  const Eigen::VectorXd yc = orient * y;
  const SmoResult r = smo(k, yc, C, opts);

  TrainedModel m;
  m.task = Task::kClassification;
  m.alpha = orient * r.a.cwiseProduct(yc);
  m.bias = -orient * r.rho;
  m.regularization = C;
  m.kkt_violation = r.gap;
  m.iterations = r.iterations;
  m.b2 = m.alpha.dot(k * m.alpha);
  return m;
}

}  // namespace glqk
