#include <cmath>

#include <gtest/gtest.h>

#include "glqk/errors.hpp"
#include "glqk/pauli.hpp"
#include "glqk/rng.hpp"
#include "glqk/statevector.hpp"

using namespace glqk;
using E = PauliString::Entry;

TEST(PauliString, SupportAndWeight) {
  PauliString p({E{3, Pauli::Z}, E{1, Pauli::X}});
  EXPECT_EQ(p.weight(), 2);
  EXPECT_EQ(p.support(), (std::vector<int>{1, 3}));
  EXPECT_EQ(p.letter_at(1), Pauli::X);
  EXPECT_FALSE(p.letter_at(2).has_value());
  EXPECT_TRUE(PauliString().is_identity());
  EXPECT_EQ(p.to_string(), "X1 Z3");
  EXPECT_THROW(PauliString({E{1, Pauli::X}, E{1, Pauli::Y}}), InvalidArgument);
  EXPECT_THROW(PauliString({E{-1, Pauli::X}}), InvalidArgument);
  EXPECT_THROW(p.check_on(Lattice::ring(3)), InvalidArgument);
}

TEST(PauliString, Translation) {
  const auto lat = Lattice::ring(5);
  PauliString p({E{4, Pauli::X}, E{0, Pauli::Y}});
  const auto q = p.translated(lat, 0, 1);
  EXPECT_EQ(q, PauliString({E{0, Pauli::X}, E{1, Pauli::Y}}));
}

TEST(Polynomial, MetricsAndNorms) {
  ObservablePolynomial g({Term{-0.5, {PauliString({E{0, Pauli::X}, E{1, Pauli::Y}}), PauliString({E{3, Pauli::Z}})}},
                          Term{2.0, {PauliString({E{2, Pauli::Z}})}}});
  EXPECT_EQ(g.body(), 2);
  EXPECT_EQ(g.degree(), 2);
  EXPECT_DOUBLE_EQ(g.l1_norm(), 2.5);
  EXPECT_DOUBLE_EQ(g.l2_norm(), std::sqrt(4.25));
  EXPECT_THROW(ObservablePolynomial({Term{1.0, {}}}), InvalidArgument);
  EXPECT_THROW(ObservablePolynomial({Term{NAN, {PauliString()}}}), InvalidArgument);
}

TEST(Polynomial, JsonRoundTripBitExact) {
  const std::string text = R"({"terms":[{"c":-0.5,"factors":[[[0,"X"],[1,"Y"]],[[3,"Z"]]]}]})";
  const auto g = ObservablePolynomial::parse(text);
  EXPECT_EQ(g.dump(), text);
  EXPECT_EQ(ObservablePolynomial::parse(g.dump()), g);

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Term> terms;
    for (int i = 0; i < 3; ++i) {
      Term t;
      t.coefficient = rng.normal() * std::pow(10.0, rng.uniform(-8, 8));
      for (int j = 0; j < 2; ++j) t.factors.emplace_back(std::vector<E>{E{static_cast<int>(rng.index(20)), Pauli::Z}});
      terms.push_back(t);
    }
    const ObservablePolynomial p(terms);
    EXPECT_EQ(ObservablePolynomial::parse(p.dump()), p);
  }
}

TEST(Polynomial, MalformedJson) {
  EXPECT_THROW(ObservablePolynomial::parse("not json"), InvalidArgument);
  EXPECT_THROW(ObservablePolynomial::parse(R"({"terms":[{"c":1,"factors":[[[0,"Q"]]]}]})"), InvalidArgument);
  EXPECT_THROW(ObservablePolynomial::parse(R"({"terms":[{"c":1,"factors":[[[0]]]}]})"), InvalidArgument);
  EXPECT_THROW(ObservablePolynomial::parse(R"({"terms":[{"factors":[]}]})"), InvalidArgument);
}

TEST(EvaluateExact, Examples) {
  const auto zero = StateVector::basis(3, 0);
  ObservablePolynomial z1({Term{1.0, {PauliString({E{0, Pauli::Z}})}}});
  EXPECT_DOUBLE_EQ(evaluate_exact(z1, expectation_oracle(zero)), 1.0);

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const StateVector b(bell);
  const auto g2 = target_polynomial("g2", 2);
  EXPECT_NEAR(evaluate_exact(g2, expectation_oracle(b)), -1.0, 1e-14);

  EXPECT_EQ(evaluate_exact(ObservablePolynomial(), expectation_oracle(zero)), 0.0);
}

TEST(EvaluateExact, BoundedByL1) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_product_state(5, false, seed);
    Rng rng(seed);
    std::vector<Term> terms;
    for (int i = 0; i < 4; ++i) {
      Term t{rng.uniform(-1, 1), {}};
      for (int j = 0; j < 2; ++j) {
        std::vector<E> e;
        for (int site = 0; site < 5; ++site)
          if (rng.uniform() < 0.4) e.emplace_back(site, static_cast<Pauli>(rng.index(3)));
        t.factors.emplace_back(e);
      }
      terms.push_back(t);
    }
    const ObservablePolynomial g(terms);
    EXPECT_LE(std::abs(evaluate_exact(g, expectation_oracle(s))), g.l1_norm() + 1e-12);
  }
}

TEST(TargetPolynomials, Definitions) {
  const auto g1 = target_polynomial("g1", 10);
  EXPECT_EQ(g1.terms()[0].factors[0].to_string(), "X0 Y1");
  const auto g3 = target_polynomial("g3", 12);
  EXPECT_EQ(g3.terms()[0].factors[0].to_string(), "X0 Y6");
  EXPECT_EQ(target_polynomial("g2", 4).degree(), 2);
  EXPECT_THROW(target_polynomial("g4", 4), InvalidArgument);
}
