#include "glqk/kernel_pca.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "glqk/errors.hpp"

namespace glqk {

KernelPcaResult kernel_pca(const Eigen::MatrixXd& k, int components) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw InvalidArgument("kernel PCA needs a square gram");
  if (components < 1) throw InvalidArgument("at least one component is required");
  if (n == 0) throw InvalidArgument("kernel PCA of an empty gram");

  const Eigen::VectorXd row_mean = k.rowwise().mean();
  const Eigen::RowVectorXd col_mean = k.colwise().mean();
  const double total = k.mean();
  Eigen::MatrixXd c = k;
  c.colwise() -= row_mean;
  c.rowwise() -= col_mean;
  c.array() += total;
  c = (0.5 * (c + c.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed in kernel PCA");
  const Eigen::VectorXd& w = es.eigenvalues();  // ascending
  const double floor = 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff());

  KernelPcaResult out;
  int kept = 0;
  for (Eigen::Index idx = n - 1; idx >= 0 && kept < components; --idx) {
    if (w[idx] > floor) ++kept;
    else break;
  }
  out.complete = kept == components;
  out.coordinates.resize(n, kept);
  out.eigenvalues.resize(kept);
  for (int m = 0; m < kept; ++m) {
    const Eigen::Index idx = n - 1 - m;
    Eigen::VectorXd v = es.eigenvectors().col(idx) * std::sqrt(w[idx]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    out.coordinates.col(m) = v;
    out.eigenvalues[m] = w[idx];
  }
  return out;
}

}  // namespace glqk
