#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "glqk/errors.hpp"
#include "glqk/hamiltonian.hpp"
#include "glqk/krylov.hpp"
#include "glqk/probes.hpp"
#include "glqk/statevector.hpp"

using namespace glqk;
using E = PauliString::Entry;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

const cplx I(0, 1);

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -I, I, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Dense operator by Kronecker products; site i is bit i, so site n-1 is leftmost.
MatrixXcd dense_pauli(int n, const PauliString& p) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (int site = n - 1; site >= 0; --site) {
    const auto l = p.letter_at(site);
    const Eigen::Matrix2cd f = l ? pauli_matrix(*l) : Eigen::Matrix2cd::Identity();
    MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < out.rows(); ++a)
      for (int b = 0; b < out.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = out(a, b) * f;
    out = next;
  }
  return out;
}

MatrixXcd dense_hamiltonian(const HamiltonianSpec& s) {
  const Pauli L[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  const int n = s.n;
  MatrixXcd h = MatrixXcd::Zero(1 << n, 1 << n);
  auto bond = [&](int i, int j, Pauli a, Pauli b, double c) { h += c * dense_pauli(n, PauliString({E{i, a}, E{j, b}})); };
  if (s.kind == HamiltonianKind::kXxzBondAlternating) {
    for (int k = 0; k < n / 2; ++k) {
      bond(2 * k, 2 * k + 1, Pauli::X, Pauli::X, 1);
      bond(2 * k, 2 * k + 1, Pauli::Y, Pauli::Y, 1);
      bond(2 * k, 2 * k + 1, Pauli::Z, Pauli::Z, s.Delta);
    }
    for (int k = 0; k + 1 < n / 2; ++k) {
      bond(2 * k + 1, 2 * k + 2, Pauli::X, Pauli::X, s.J);
      bond(2 * k + 1, 2 * k + 2, Pauli::Y, Pauli::Y, s.J);
      bond(2 * k + 1, 2 * k + 2, Pauli::Z, Pauli::Z, s.J * s.Delta);
    }
  } else {
    for (int j = 0; j < n; ++j) {
      const auto& c = s.couplings[s.kind == HamiltonianKind::kRandomSymmetric ? 0 : j];
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) bond(j, (j + 1) % n, L[mu], L[nu], c[3 * mu + nu]);
    }
  }
  return h;
}

VectorXcd dense_evolve(const MatrixXcd& h, const VectorXcd& v, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  const VectorXcd phase = (es.eigenvalues().cast<cplx>() * (-I * t)).array().exp();
  return es.eigenvectors() * (phase.asDiagonal() * (es.eigenvectors().adjoint() * v));
}

StateVector bell() {
  VectorXcd v = VectorXcd::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return StateVector(v);
}

StateVector ghz(int n) {
  VectorXcd v = VectorXcd::Zero(1 << n);
  v(0) = v((1 << n) - 1) = 1 / std::sqrt(2.0);
  return StateVector(v);
}

PauliString random_string(Rng& rng, int n) {
  std::vector<E> e;
  for (int s = 0; s < n; ++s) {
    const auto k = rng.index(4);
    if (k) e.emplace_back(s, static_cast<Pauli>(k - 1));
  }
  return PauliString(e);
}

}  // namespace

TEST(StateVector, Validation) {
  EXPECT_THROW(StateVector(VectorXcd::Ones(3)), InvalidArgument);
  EXPECT_THROW(StateVector::basis(21), InvalidArgument);
  EXPECT_THROW(StateVector::basis(2, 4), InvalidArgument);
  StateVector z(VectorXcd::Zero(4));
  EXPECT_THROW(z.normalize(), NumericFailure);
}

TEST(PauliExpectation, Examples) {
  const auto zero = StateVector::basis(3);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, PauliString({E{0, Pauli::Z}})), 1.0);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, PauliString({E{0, Pauli::X}})), 0.0);
  EXPECT_NEAR(pauli_expectation(bell(), PauliString({E{0, Pauli::X}, E{1, Pauli::X}})), 1.0, 1e-15);
  EXPECT_NEAR(pauli_expectation(bell(), PauliString({E{0, Pauli::Y}, E{1, Pauli::Y}})), -1.0, 1e-15);
  EXPECT_THROW(pauli_expectation(zero, PauliString({E{3, Pauli::Z}})), InvalidArgument);
}

TEST(PauliExpectation, MatchesDenseOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4;
    VectorXcd v(1 << n);
    for (auto& a : v) a = rng.complex_normal();
    StateVector s(v);
    s.normalize();
    const auto p = random_string(rng, n);
    const cplx ref = s.amplitudes().dot(dense_pauli(n, p) * s.amplitudes());
    EXPECT_NEAR(pauli_expectation(s, p), ref.real(), 1e-12);
    EXPECT_NEAR(ref.imag(), 0.0, 1e-12);
  }
}

TEST(PauliOperator, MatchesDenseHamiltonian) {
  for (bool sym : {true, false}) {
    const auto spec = HamiltonianSpec::random(5, sym, 42);
    EXPECT_LT((build_operator(spec).dense() - dense_hamiltonian(spec)).norm(), 1e-12);
  }
  const auto x = HamiltonianSpec::xxz(6, 1.3);
  EXPECT_LT((build_operator(x).dense() - dense_hamiltonian(x)).norm(), 1e-12);
}

TEST(HamiltonianSpec, RandomCouplingsInRange) {
  const auto s = HamiltonianSpec::random(8, false, 3);
  ASSERT_EQ(s.couplings.size(), 8u);
  for (const auto& c : s.couplings)
    for (double v : c) {
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
    }
  EXPECT_EQ(HamiltonianSpec::random(8, true, 3).couplings.size(), 1u);
  EXPECT_EQ(hamiltonian_kind_from_string(to_string(HamiltonianKind::kXxzBondAlternating)),
            HamiltonianKind::kXxzBondAlternating);
}

TEST(Evolve, ZeroTimeIsIdentity) {
  const auto s = random_product_state(5, false, 9);
  const auto out = evolve(HamiltonianSpec::random(5, false, 1), s, 0.0);
  EXPECT_LT((out.amplitudes() - s.amplitudes()).norm(), 1e-14);
}

TEST(Evolve, EigenstateOnlyGainsPhase) {
  PauliOperator h(2);
  h.add(1.0, PauliString({E{0, Pauli::Z}, E{1, Pauli::Z}}));
  const auto s = StateVector::basis(2, 0);
  const auto out = evolve(h, s, 0.7);
  EXPECT_NEAR(std::abs(out.amplitudes()(0)), 1.0, 1e-12);
  EXPECT_NEAR(std::arg(out.amplitudes()(0)), -0.7, 1e-12);
}

TEST(Evolve, MatchesDenseExponential) {
  for (int n = 2; n <= 6; ++n) {
    for (bool sym : {true, false}) {
      const auto spec = HamiltonianSpec::random(n, sym, 100 + n);
      const auto init = random_product_state(n, sym, 7 + n);
      for (double t : {0.1, 0.5, 2.0}) {
        const auto out = evolve(spec, init, t);
        const VectorXcd ref = dense_evolve(dense_hamiltonian(spec), init.amplitudes(), t);
        const double fid = std::norm(ref.dot(out.amplitudes()));
        EXPECT_NEAR(fid, 1.0, 1e-8) << "n=" << n << " t=" << t;
      }
    }
  }
}

TEST(Evolve, PreservesNorm) {
  const auto out = evolve(HamiltonianSpec::random(8, true, 5), random_product_state(8, true, 5), 0.5);
  EXPECT_NEAR(out.norm(), 1.0, 1e-9);
}

TEST(GroundState, DecoupledSinglets) {
  for (int n : {4, 8}) {
    const auto gs = ground_state(HamiltonianSpec::xxz(n, 0.0, 0.5), 1);
    EXPECT_NEAR(gs.energy, -2.5 * (n / 2), 1e-8);
    EXPECT_LE(gs.residual, 1e-8);
  }
}

TEST(GroundState, MatchesDenseMinimum) {
  for (double J : {0.1, 0.8, 1.2, 1.9}) {
    const auto spec = HamiltonianSpec::xxz(8, J);
    const auto gs = ground_state(spec, 3);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(dense_hamiltonian(spec), Eigen::EigenvaluesOnly);
    EXPECT_NEAR(gs.energy, es.eigenvalues()(0), 1e-8) << "J=" << J;
    EXPECT_NEAR(build_operator(spec).expectation(gs.state), gs.energy, 1e-8);
    EXPECT_LE(gs.residual, 1e-8);
    // phase convention
    Eigen::Index k;
    gs.state.amplitudes().cwiseAbs().maxCoeff(&k);
    EXPECT_NEAR(gs.state.amplitudes()(k).imag(), 0.0, 1e-12);
    EXPECT_GT(gs.state.amplitudes()(k).real(), 0.0);
  }
}

TEST(GroundState, EnergyDecreasesWithJ) {
  double prev = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double J = 0.1 + 0.2 * k;
    const double e = ground_state(HamiltonianSpec::xxz(8, J), 2).energy;
    if (k) EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(ProductState, SymmetricSitesEqual) {
  const auto s = random_product_state(5, true, 17);
  const auto r0 = reduced_density_matrix(s, {0});
  for (int i = 1; i < 5; ++i) EXPECT_LT((reduced_density_matrix(s, {i}) - r0).norm(), 1e-10);
  EXPECT_LE(translation_symmetry_defect(s), 1e-10);
  const auto a = random_product_state(3, false, 1), b = random_product_state(3, false, 2);
  EXPECT_LT(std::abs(a.amplitudes().dot(b.amplitudes())), 1.0 - 1e-6);
  EXPECT_NEAR(random_product_state(1, false, 4).norm(), 1.0, 1e-14);
}

TEST(HaarUnitary, IsUnitary) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto u = haar_unitary(rng);
    EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-13);
    EXPECT_NEAR(haar_qubit_state(rng).norm(), 1.0, 1e-14);
  }
}

TEST(Disturbance, MirroredAndNormPreserving) {
  EXPECT_THROW(disturb_inversion_symmetric(StateVector::basis(3), 1), InvalidArgument);
  // R commutes with site inversion: <P> after R on an inversion-invariant
  // state equals <inverted P>.
  const auto s = disturb_inversion_symmetric(StateVector::basis(4, 0), 5);
  EXPECT_NEAR(s.norm(), 1.0, 1e-14);
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_string(rng, 4);
    std::vector<E> inv;
    for (auto [site, l] : p.entries()) inv.emplace_back(3 - site, l);
    EXPECT_NEAR(pauli_expectation(s, p), pauli_expectation(s, PauliString(inv)), 1e-12);
  }
}

TEST(OrderParameter, InvariantUnderDisturbanceAndSeparatesPhases) {
  const auto trivial = ground_state(HamiltonianSpec::xxz(8, 0.1), 1).state;
  const auto spt = ground_state(HamiltonianSpec::xxz(8, 1.9), 1).state;
  const double z0 = order_parameter_z(trivial, 2);
  const double z1 = order_parameter_z(spt, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_NEAR(order_parameter_z(disturb_inversion_symmetric(trivial, seed), 2), z0, 1e-6);
    EXPECT_NEAR(order_parameter_z(disturb_inversion_symmetric(spt, seed), 2), z1, 1e-6);
  }
  EXPECT_LT(z0 * z1, 0.0) << "z0=" << z0 << " z1=" << z1;
  EXPECT_THROW(order_parameter_z(trivial, 5), InvalidArgument);
}

TEST(Symmetry, H1PreservesTranslationInvariance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = evolve(HamiltonianSpec::random(8, true, seed), random_product_state(8, true, seed + 50), 0.5);
    EXPECT_LE(translation_symmetry_defect(s), 1e-8);
  }
}

TEST(Symmetry, H2StatesAreNotSymmetric) {
  int above = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = evolve(HamiltonianSpec::random(8, false, seed), random_product_state(8, false, seed + 50), 0.5);
    if (translation_symmetry_defect(s) > 0.01) ++above;
  }
  EXPECT_GE(above, 9);
}

TEST(Rdm, Examples) {
  const auto r = reduced_density_matrix(StateVector::basis(3), {1});
  EXPECT_NEAR((r - (Eigen::Matrix2cd() << 1, 0, 0, 0).finished()).norm(), 0.0, 1e-15);
  const auto half = reduced_density_matrix(bell(), {0});
  EXPECT_NEAR((half - 0.5 * Eigen::Matrix2cd::Identity()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((half * half).trace().real(), 0.5, 1e-15);
  EXPECT_THROW(reduced_density_matrix(StateVector::basis(13), std::vector<int>(13, 0)), ResourceLimit);
}

TEST(Rdm, PhysicalAndConsistent) {
  const auto s = evolve(HamiltonianSpec::random(6, false, 4), random_product_state(6, false, 4), 0.5);
  const auto r2 = reduced_density_matrix(s, {2, 4});
  EXPECT_NEAR(r2.trace().real(), 1.0, 1e-12);
  EXPECT_LT((r2 - r2.adjoint()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(r2);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  // trace out site 4 (least significant index bit)
  MatrixXcd r1 = MatrixXcd::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) r1(a, b) += r2(2 * a + k, 2 * b + k);
  EXPECT_LT((r1 - reduced_density_matrix(s, {2})).norm(), 1e-10);
  // RDM reproduces a two-site expectation: tr(rho (Z2 X4))
  const MatrixXcd zx = dense_pauli(2, PauliString({E{1, Pauli::Z}, E{0, Pauli::X}}));
  EXPECT_NEAR((r2 * zx).trace().real(), pauli_expectation(s, PauliString({E{2, Pauli::Z}, E{4, Pauli::X}})), 1e-12);
}

TEST(CorrelationProbe, Flags) {
  const auto prod = correlation_length_probe(random_product_state(8, false, 3), Pauli::Z, Pauli::Z);
  EXPECT_EQ(prod.quality, "uncorrelated");
  EXPECT_EQ(prod.xi, 0.0);
  const auto g = correlation_length_probe(ghz(8), Pauli::Z, Pauli::Z);
  EXPECT_EQ(g.quality, "non-decaying");
  const auto s = evolve(HamiltonianSpec::random(12, true, 8), random_product_state(12, true, 8), 0.5);
  const auto fit = correlation_length_probe(s, Pauli::Z, Pauli::Z);
  EXPECT_TRUE(std::isfinite(fit.xi));
  EXPECT_GT(fit.xi, 0.0);
}
