#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "glqk/cross_validation.hpp"
#include "glqk/errors.hpp"
#include "glqk/kernel_pca.hpp"
#include "glqk/krr.hpp"
#include "glqk/metrics.hpp"
#include "glqk/rng.hpp"
#include "glqk/svm.hpp"

using namespace glqk;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_psd(Rng& rng, int n, int rank) {
  MatrixXd f(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) f(i, j) = rng.normal();
  return f * f.transpose() / rank;
}

VectorXd random_vec(Rng& rng, int n) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

// Block gram: two clusters, in-block ~1, off-block ~0.
MatrixXd block_gram(const VectorXd& y, double in = 0.9, double off = 0.05) {
  const int n = static_cast<int>(y.size());
  MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = i == j ? 1.0 : (y(i) == y(j) ? in : off);
  return k;
}

}  // namespace

TEST(Krr, IdentityGram) {
  const VectorXd y = (VectorXd(4) << 1, -2, 3, 0.5).finished();
  const auto m = krr_fit(MatrixXd::Identity(4, 4), y, 1.0 / 8.0);  // 2 N lambda = 1
  EXPECT_LT((m.alpha - y / 2).norm(), 1e-15);
}

TEST(Krr, StationarityAndResidual) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10 + static_cast<int>(rng.index(150));
    const MatrixXd k = random_psd(rng, n, 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n))));
    const VectorXd y = random_vec(rng, n);
    const double lambda = std::pow(10.0, rng.uniform(-4, 2));
    const auto m = krr_fit(k, y, lambda);
    const VectorXd lhs = (k + 2 * n * lambda * MatrixXd::Identity(n, n)) * m.alpha - y;
    EXPECT_LE(lhs.norm(), 1e-8 * y.norm());
    const VectorXd grad = k * (k * m.alpha - y) / n + 2 * lambda * k * m.alpha;
    EXPECT_LE(grad.norm(), 1e-8 * y.norm() * std::max(1.0, k.norm()));
    EXPECT_NEAR(m.b2, m.alpha.dot(k * m.alpha), 1e-9 * std::max(1.0, m.b2));
  }
}

TEST(Krr, RegularizationShrinksAlpha) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd k = random_psd(rng, 30, 10);
    const VectorXd y = random_vec(rng, 30);
    double prev = INFINITY;
    for (double lambda : {1e-4, 1e-2, 1.0, 1e2, 1e6}) {
      const double a = krr_fit(k, y, lambda).alpha.norm();
      EXPECT_LE(a, prev * (1 + 1e-12));
      prev = a;
    }
    EXPECT_LT(prev, 1e-5);
  }
}

TEST(Krr, Predict) {
  Rng rng(3);
  const MatrixXd k = random_psd(rng, 8, 8);
  const VectorXd y = random_vec(rng, 8);
  const auto m = krr_fit(k, y, 0.01);
  EXPECT_LT((krr_predict(m, k) - k * m.alpha).norm(), 1e-12);
  TrainedModel zero = m;
  zero.alpha.setZero();
  EXPECT_EQ(krr_predict(zero, k), VectorXd::Zero(8));
  TrainedModel one;
  one.alpha = VectorXd::Constant(1, 2.0);
  EXPECT_EQ(krr_predict(one, MatrixXd::Constant(1, 1, 3.0))(0), 6.0);
  EXPECT_THROW(krr_predict(m, MatrixXd::Zero(7, 2)), InvalidArgument);
  EXPECT_THROW(krr_fit(k, VectorXd::Zero(7), 0.1), InvalidArgument);
  EXPECT_THROW(krr_fit(k, y, 0.0), InvalidArgument);
}

TEST(Svm, TwoPoints) {
  const MatrixXd k = (MatrixXd(2, 2) << 1, 0.2, 0.2, 1).finished();
  const VectorXd y = (VectorXd(2) << 1, -1).finished();
  const auto m = svm_fit(k, y, 10.0);
  const VectorXd f = m.decision(k);
  EXPECT_GT(f(0), 0.5);
  EXPECT_LT(f(1), -0.5);
  EXPECT_LE(m.kkt_violation, 1e-3);
}

TEST(Svm, LabelFlipNegatesDecision) {
  Rng rng(4);
  const MatrixXd k = random_psd(rng, 25, 6) + 0.1 * MatrixXd::Identity(25, 25);
  VectorXd y(25);
  for (int i = 0; i < 25; ++i) y(i) = rng.index(2) ? 1 : -1;
  y(0) = 1;
  y(1) = -1;
  const auto a = svm_fit(k, y, 1.0), b = svm_fit(k, -y, 1.0);
  EXPECT_EQ(a.decision(k), (-b.decision(k)).eval());
}

TEST(Svm, SeparableBlocksAndKkt) {
  VectorXd y(40);
  for (int i = 0; i < 40; ++i) y(i) = i % 3 == 0 ? 1 : -1;
  const MatrixXd k = block_gram(y);
  for (double C : {0.1, 1.0, 10.0}) {
    const auto m = svm_fit(k, y, C);
    EXPECT_EQ(m.predict(k), y);
    EXPECT_LE(m.kkt_violation, 1e-3);
    const VectorXd f = m.decision(k);
    for (int i = 0; i < 40; ++i) {
      const double a = m.alpha(i) * y(i);
      EXPECT_GE(a, -1e-12);
      EXPECT_LE(a, C + 1e-12);
      if (a > 1e-8 && a < C - 1e-8) EXPECT_NEAR(y(i) * f(i), 1.0, 1e-3);
    }
  }
  EXPECT_THROW(svm_fit(k, VectorXd::Ones(40), 1.0), InvalidArgument);
  EXPECT_THROW(svm_fit(k, VectorXd::Constant(40, 0.5), 1.0), InvalidArgument);
}

TEST(Metrics, RSquared) {
  const VectorXd y = (VectorXd(3) << 1, 2, 4).finished();
  EXPECT_EQ(r_squared(y, y), 1.0);
  EXPECT_NEAR(r_squared(y, VectorXd::Constant(3, y.mean())), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(r_squared((VectorXd(2) << 0, 1).finished(), (VectorXd(2) << 1, 0).finished()), -3.0);
  EXPECT_THROW(r_squared(VectorXd::Ones(3), y), UndefinedMetric);
  EXPECT_THROW(r_squared(VectorXd::Ones(1), VectorXd::Ones(1)), UndefinedMetric);
  EXPECT_DOUBLE_EQ(accuracy(y, (VectorXd(3) << 1, -2, 4).finished()), 2.0 / 3.0);
}

TEST(Metrics, NoiseFloor) {
  const VectorXd e = (VectorXd(3) << 0.1, 0.2, 0.3).finished();
  EXPECT_EQ(shadow_noise_floor(e, e), 0.0);
  EXPECT_NEAR(shadow_noise_floor(e, e + VectorXd::Constant(3, 0.5)), 0.5, 1e-15);
  // <Z0> on |0...> from all-Z shots is exact
  ClassicalShadow s{2, 3, std::vector<std::uint8_t>(6, ClassicalShadow::encode(Pauli::Z, 1)), 0};
  ObservablePolynomial g({Term{1.0, {PauliString({PauliString::Entry{0, Pauli::Z}})}}});
  // estimate 3 per shot: exact label for this synthetic estimator is 3
  EXPECT_EQ(shadow_noise_floor(g, VectorXd::Constant(1, 3.0), {&s}), 0.0);
}

TEST(KernelPca, AllOnesCollapses) {
  const auto r = kernel_pca(MatrixXd::Ones(6, 6), 2);
  EXPECT_LT(r.coordinates.norm(), 1e-12);
  EXPECT_FALSE(r.complete);
}

TEST(KernelPca, BlocksSeparateOnFirstComponent) {
  VectorXd y(20);
  for (int i = 0; i < 20; ++i) y(i) = i < 8 ? 1 : -1;
  const auto r = kernel_pca(block_gram(y), 2);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      if (y(i) != y(j)) EXPECT_GT(std::abs(r.coordinates(i, 0) - r.coordinates(j, 0)), 0.5);
}

TEST(KernelPca, ReproducesCenteredGram) {
  Rng rng(5);
  const int n = 15;
  const MatrixXd k = random_psd(rng, n, n);
  const auto r = kernel_pca(k, n);
  const MatrixXd H = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / n);
  const MatrixXd kc = H * k * H;
  EXPECT_LT((r.coordinates * r.coordinates.transpose() - kc).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(KernelPca, PermutationInvariant) {
  Rng rng(6);
  const int n = 10;
  const MatrixXd k = random_psd(rng, n, 4);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(n);
  p.setIdentity();
  for (int i = n - 1; i > 0; --i) std::swap(p.indices()(i), p.indices()(static_cast<int>(rng.index(i + 1))));
  const auto a = kernel_pca(k, 2);
  const auto b = kernel_pca(p * k * p.transpose(), 2);
  EXPECT_LT((p * a.coordinates - b.coordinates).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Folds, StratifiedAndDeterministic) {
  VectorXd y(23);
  for (int i = 0; i < 23; ++i) y(i) = i % 4 == 0 ? 1 : -1;
  const auto f = assign_folds(y, Task::kClassification, 5, 9);
  EXPECT_EQ(f, assign_folds(y, Task::kClassification, 5, 9));
  for (int k = 0; k < 5; ++k) {
    int pos = 0, all = 0;
    for (int i = 0; i < 23; ++i)
      if (f[i] == k) {
        ++all;
        pos += y(i) > 0;
      }
    EXPECT_GE(all, 4);
    EXPECT_GE(pos, 1);
  }
  EXPECT_THROW(assign_folds(VectorXd::Zero(3), Task::kRegression, 5, 1), InvalidArgument);
}

TEST(GridSearch, SingleCellAndDedup) {
  Rng rng(7);
  const MatrixXd k = random_psd(rng, 20, 5) + 0.1 * MatrixXd::Identity(20, 20);
  const VectorXd y = random_vec(rng, 20);
  GridSpec g;
  g.lambdas = {0.1, 0.1, 0.1};
  g.hs = {1};
  g.zetas = {2};
  const auto out = grid_search_cv([&](int, int) { return &k; }, y, Task::kRegression, KernelKind::kGlqk, g, 5, 3);
  ASSERT_EQ(out.report.cells.size(), 1u);
  EXPECT_EQ(out.report.selected, 0);
  const auto again = grid_search_cv([&](int, int) { return &k; }, y, Task::kRegression, KernelKind::kGlqk, g, 5, 3);
  EXPECT_EQ(again.report.to_json(), out.report.to_json());
}

TEST(GridSearch, LeakedKernelWins) {
  Rng rng(8);
  const int n = 30;
  const VectorXd y = random_vec(rng, n);
  const MatrixXd noise = random_psd(rng, n, 3) + 0.01 * MatrixXd::Identity(n, n);
  const MatrixXd oracle = y * y.transpose() + 1e-3 * MatrixXd::Identity(n, n);
  GridSpec g;
  g.lambdas = {1e-4, 1e-2};
  g.hs = {1, 2};
  g.zetas = {2, 4};
  const auto out = grid_search_cv([&](int h, int zeta) { return h == 2 && zeta == 4 ? &oracle : &noise; }, y,
                                  Task::kRegression, KernelKind::kGlqk, g, 5, 1);
  const auto& best = out.report.best();
  EXPECT_EQ(best.h, 2);
  EXPECT_EQ(best.zeta, 4);
  for (const auto& c : out.report.cells) EXPECT_LE(c.score, best.score);
  // canonical order: reg, then h, then zeta
  ASSERT_EQ(out.report.cells.size(), 8u);
  EXPECT_EQ(out.report.cells[1].zeta, 4);
  EXPECT_EQ(out.report.cells[2].h, 2);
  EXPECT_EQ(out.report.cells[4].reg, 1e-2);
}

TEST(GridSearch, SkippedCellsMarked) {
  Rng rng(9);
  const MatrixXd k = random_psd(rng, 15, 5) + 0.1 * MatrixXd::Identity(15, 15);
  const VectorXd y = random_vec(rng, 15);
  GridSpec g;
  g.lambdas = {0.01};
  g.hs = {1};
  g.zetas = {2, 6};
  const auto out = grid_search_cv([&](int, int zeta) { return zeta == 6 ? nullptr : &k; }, y, Task::kRegression,
                                  KernelKind::kGlqk, g, 5, 2);
  ASSERT_EQ(out.report.cells.size(), 2u);
  EXPECT_TRUE(out.report.cells[1].skipped);
  EXPECT_EQ(out.report.best().zeta, 2);
}

TEST(GridSearch, ShadowKernelUsesRegOnlyAndSvm) {
  VectorXd y(30);
  for (int i = 0; i < 30; ++i) y(i) = i % 2 ? 1 : -1;
  const MatrixXd k = block_gram(y);
  GridSpec g;
  const auto out = grid_search_cv([&](int, int) { return &k; }, y, Task::kClassification, KernelKind::kShadow, g, 5, 4);
  EXPECT_EQ(out.report.cells.size(), g.Cs.size());
  for (const auto& c : out.report.cells) {
    EXPECT_EQ(c.h, 0);
    EXPECT_EQ(c.zeta, 0);
  }
  EXPECT_EQ(out.report.best().score, 1.0);
  EXPECT_EQ(out.model.predict(k), y);
}

TEST(Model, JsonRoundTrip) {
  Rng rng(10);
  const MatrixXd k = random_psd(rng, 6, 6);
  auto m = krr_fit(k, random_vec(rng, 6), 0.1);
  m.train_indices = {4, 8, 15, 16, 23, 42};
  m.train_diag = k.diagonal();
  const auto back = TrainedModel::from_json(m.to_json());
  EXPECT_EQ(back.alpha, m.alpha);
  EXPECT_EQ(back.train_indices, m.train_indices);
  EXPECT_EQ(back.train_diag, m.train_diag);
  EXPECT_EQ(back.to_json(), m.to_json());
}
