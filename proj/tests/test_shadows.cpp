#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "glqk/errors.hpp"
#include "glqk/hamiltonian.hpp"
#include "glqk/krylov.hpp"
#include "glqk/planner.hpp"
#include "glqk/pool_io.hpp"
#include "glqk/shadow.hpp"

using namespace glqk;
using E = PauliString::Entry;

namespace {

ClassicalShadow single_shot(std::vector<std::pair<Pauli, int>> recs) {
  ClassicalShadow s;
  s.n = static_cast<int>(recs.size());
  s.T = 1;
  for (auto [b, o] : recs) s.records.push_back(ClassicalShadow::encode(b, o));
  return s;
}

StateVector ghz(int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
  v(0) = v((1 << n) - 1) = 1 / std::sqrt(2.0);
  return StateVector(v);
}

}  // namespace

TEST(Encoding, RecordBits) {
  EXPECT_EQ(ClassicalShadow::encode(Pauli::X, 1), 0);
  EXPECT_EQ(ClassicalShadow::encode(Pauli::Z, -1), 6);
  EXPECT_EQ(ClassicalShadow::basis_of(5), Pauli::Y);
  EXPECT_EQ(ClassicalShadow::outcome_of(5), -1);
  ClassicalShadow bad{2, 1, {0, 3}, 0};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  ClassicalShadow short_{2, 2, {0, 1, 2}, 0};
  EXPECT_THROW(short_.validate(), InvalidArgument);
}

TEST(Sample, ZeroStateZOutcomes) {
  const auto s = sample_shadow(StateVector::basis(5), 400, 3);
  s.validate();
  int z = 0;
  for (int t = 0; t < s.T; ++t)
    for (int i = 0; i < s.n; ++i)
      if (ClassicalShadow::basis_of(s.at(t, i)) == Pauli::Z) {
        ++z;
        EXPECT_EQ(ClassicalShadow::outcome_of(s.at(t, i)), 1);
      }
  EXPECT_GT(z, 0);
}

TEST(Sample, BasisMarginalsUniform) {
  const int n = 6, T = 5000;
  const auto s = sample_shadow(random_product_state(n, false, 1), T, 11);
  int count[3] = {0, 0, 0};
  for (auto r : s.records) ++count[r & 3];
  const double total = n * T, sigma = std::sqrt(total * (1.0 / 3) * (2.0 / 3));
  for (int c : count) EXPECT_LE(std::abs(c - total / 3), 5 * sigma);
}

TEST(Sample, GhzXXCorrelated) {
  const auto s = sample_shadow(ghz(2), 3000, 5);
  int both = 0;
  for (int t = 0; t < s.T; ++t) {
    if (ClassicalShadow::basis_of(s.at(t, 0)) == Pauli::X && ClassicalShadow::basis_of(s.at(t, 1)) == Pauli::X) {
      ++both;
      EXPECT_EQ(ClassicalShadow::outcome_of(s.at(t, 0)), ClassicalShadow::outcome_of(s.at(t, 1)));
    }
  }
  EXPECT_GT(both, 100);
}

TEST(Sample, Deterministic) {
  const auto st = random_product_state(4, false, 2);
  EXPECT_EQ(sample_shadow(st, 50, 9).records, sample_shadow(st, 50, 9).records);
  EXPECT_NE(sample_shadow(st, 50, 9).records, sample_shadow(st, 50, 10).records);
}

TEST(EstimatePauli, SingleShotExamples) {
  const auto zp = single_shot({{Pauli::Z, 1}, {Pauli::X, -1}});
  EXPECT_EQ(estimate_pauli(zp, PauliString({E{0, Pauli::Z}})), 3.0);
  EXPECT_EQ(estimate_pauli(zp, PauliString({E{0, Pauli::X}})), 0.0);
  EXPECT_EQ(estimate_pauli(zp, PauliString({E{0, Pauli::Z}, E{1, Pauli::X}})), -9.0);
  EXPECT_EQ(estimate_pauli(zp, PauliString()), 1.0);
  EXPECT_THROW(estimate_pauli(zp, PauliString({E{2, Pauli::Z}})), InvalidArgument);
}

TEST(EstimatePauli, RangeBound) {
  const auto s = sample_shadow(random_product_state(5, false, 3), 30, 1);
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    std::vector<E> e;
    for (int i = 0; i < 5; ++i)
      if (rng.uniform() < 0.5) e.emplace_back(i, static_cast<Pauli>(rng.index(3)));
    const double v = estimate_pauli(s, PauliString(e));
    EXPECT_LE(std::abs(v), std::pow(3.0, static_cast<double>(e.size())));
  }
}

TEST(EstimatePauli, Unbiased) {
  const auto st = evolve(HamiltonianSpec::random(4, false, 2), random_product_state(4, false, 2), 0.5);
  const int T = 60000;
  const auto s = sample_shadow(st, T, 77);
  for (const auto& p : {PauliString({E{0, Pauli::Z}}), PauliString({E{1, Pauli::X}, E{2, Pauli::Y}}),
                        PauliString({E{0, Pauli::Y}, E{3, Pauli::Z}})}) {
    const double tol = 3 * std::sqrt(std::pow(3.0, p.weight()) / T);
    EXPECT_NEAR(estimate_pauli(s, p), pauli_expectation(st, p), tol) << p.to_string();
  }
}

TEST(EstimatePolynomial, Examples) {
  const auto s = sample_shadow(StateVector::basis(3), 200, 1);
  ObservablePolynomial c({Term{2.5, {PauliString()}}});
  EXPECT_DOUBLE_EQ(estimate_polynomial(s, c), 2.5);
  // same shots for both factors: <Z0><Z0> = (mean)^2
  const PauliString z0({E{0, Pauli::Z}});
  ObservablePolynomial sq({Term{1.0, {z0, z0}}});
  const double m = estimate_pauli(s, z0);
  EXPECT_DOUBLE_EQ(estimate_polynomial(s, sq), m * m);
  double mean = 0.0;
  const int reps = 200;
  ObservablePolynomial zpoly({Term{1.0, {z0}}});
  for (int r = 0; r < reps; ++r) mean += estimate_polynomial(sample_shadow(StateVector::basis(3), 20, 1000 + r), zpoly);
  mean /= reps;
  EXPECT_NEAR(mean, 1.0, 3 * std::sqrt(2.0 / (20.0 * reps)));
}

TEST(EstimateRdm, Examples) {
  const auto zp = single_shot({{Pauli::Z, 1}});
  const auto r = estimate_rdm(zp, {0});
  EXPECT_NEAR((r - (Eigen::Matrix2cd() << 2, 0, 0, -1).finished()).norm(), 0.0, 1e-15);
  const auto s = sample_shadow(random_product_state(5, false, 6), 20, 2);
  const auto r3 = estimate_rdm(s, {4, 1, 2});
  EXPECT_NEAR(r3.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(r3.trace().imag(), 0.0, 1e-12);
  EXPECT_LT((r3 - r3.adjoint()).norm(), 1e-12);
  EXPECT_THROW(estimate_rdm(sample_shadow(StateVector::basis(9), 2, 1), {0, 1, 2, 3, 4, 5, 6, 7, 8}), ResourceLimit);
}

TEST(EstimateRdm, ConvergesToExact) {
  // Bell pair on sites 1,2 plus two ancillas in |0>
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(0) = v(0b0110) = 1 / std::sqrt(2.0);
  const StateVector st(v);
  const int T = 40000;
  const auto s = sample_shadow(st, T, 8);
  const auto est = estimate_rdm(s, {1, 2});
  const auto ref = reduced_density_matrix(st, {1, 2});
  // entry std is at most (5/2)^... crude bound 3 per shot for two-site tensor
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(est(a, b) - ref(a, b)), 0.0, 3 * 5.0 / std::sqrt(T));
}

TEST(Shadow, TranslationRelabelsSites) {
  const auto lat = Lattice::ring(4);
  const auto s = sample_shadow(random_product_state(4, false, 1), 10, 1);
  const auto t = s.translated(lat, 0, 1);
  for (int k = 0; k < s.T; ++k)
    for (int i = 0; i < 4; ++i) EXPECT_EQ(t.at(k, (i + 1) % 4), s.at(k, i));
}

TEST(Pool, RoundTripBitExact) {
  ShadowPool pool;
  pool.dims = {2, 3};
  pool.T = 7;
  for (int i = 0; i < 5; ++i) {
    PoolEntry e;
    e.shadow = sample_shadow(random_product_state(6, false, i), 7, 100 + i);
    e.shadow.seed = 100 + i;
    e.label = 0.1 * i - 0.3;
    e.metadata = {{"index", i}, {"shadow_seed", 100 + i}, {"note", "x"}};
    pool.entries.push_back(e);
  }
  const auto bytes = serialize_pool(pool);
  EXPECT_EQ(bytes.substr(0, 4), "GLQS");
  const auto back = deserialize_pool(bytes);
  EXPECT_EQ(serialize_pool(back), bytes);
  ASSERT_EQ(back.size(), 5u);
  EXPECT_EQ(back.dims, pool.dims);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(back.entries[i].shadow, pool.entries[i].shadow);
    EXPECT_EQ(back.entries[i].label, pool.entries[i].label);
    EXPECT_EQ(back.entries[i].metadata, pool.entries[i].metadata);
    EXPECT_EQ(back.entries[i].shadow.seed, pool.entries[i].shadow.seed);
  }
  const auto path = (std::filesystem::temp_directory_path() / "glqk_pool_test.glqs").string();
  write_pool(pool, path);
  EXPECT_EQ(serialize_pool(read_pool(path)), bytes);
  std::filesystem::remove(path);

  EXPECT_THROW(deserialize_pool(bytes.substr(0, bytes.size() - 1)), InvalidArgument);
  EXPECT_THROW(deserialize_pool(bytes + "x"), InvalidArgument);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize_pool(bad), InvalidArgument);
  pool.entries[1].shadow.T = 3;
  EXPECT_THROW(pool.validate(), InvalidArgument);
}

TEST(ShotBudget, MeetsMeanSquareError) {
  // one-sided check with a cheap polynomial at n=6
  const auto st = evolve(HamiltonianSpec::random(6, true, 1), random_product_state(6, true, 1), 0.5);
  ObservablePolynomial g({Term{0.5, {PauliString({E{0, Pauli::Z}})}}, Term{0.3, {PauliString({E{2, Pauli::X}})}}});
  const double eps = 0.2;
  const auto T = shadow_budget(g, eps, false);
  ASSERT_LT(T, 200000u);
  const double exact = evaluate_exact(g, expectation_oracle(st));
  double mse = 0.0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    const double d = estimate_polynomial(sample_shadow(st, static_cast<int>(T), 500 + r), g) - exact;
    mse += d * d;
  }
  EXPECT_LE(mse / reps, eps * eps);
}
