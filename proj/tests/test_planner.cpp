#include <cmath>

#include <gtest/gtest.h>

#include "glqk/errors.hpp"
#include "glqk/planner.hpp"

using namespace glqk;
using E = PauliString::Entry;

namespace {

// Direct transcription of the shot budget for small arguments.
double budget_formula(double l1, int m, double p, double k, double eps) {
  const double three = std::pow(3.0, k) + 1.0;
  return 64.0 / (3.0 * eps * eps) * l1 * l1 * std::pow(12.0, m) * p * p *
         std::log(l1 * l1 * std::pow(2.0, m + 3) * p * three * three / (eps * eps));
}

ObservablePolynomial g1() { return target_polynomial("g1", 10); }

}  // namespace

TEST(ShadowBudget, MatchesFormula) {
  const auto g = g1();
  for (double eps : {0.9, 0.5, 0.1, 0.05}) {
    const double plain = budget_formula(1.0, 2, 1.0, 2.0, eps);
    const double ca = budget_formula(1.0, 2, 2.0, 4.0, eps);
    EXPECT_EQ(shadow_budget(g, eps, false), static_cast<std::uint64_t>(std::ceil(plain)));
    EXPECT_EQ(shadow_budget(g, eps, true), static_cast<std::uint64_t>(std::ceil(ca)));
  }
}

TEST(ShadowBudget, Properties) {
  const auto g = target_polynomial("g2", 4);
  const auto near = shadow_budget(g, g.l1_norm() * (1 - 1e-9), false);
  EXPECT_GT(near, 0u);
  for (double eps : {0.5, 0.2, 0.05}) {
    EXPECT_GE(shadow_budget(g, eps / 2, false), 4 * shadow_budget(g, eps, false) - 4);
    EXPECT_GE(shadow_budget(g, eps, true), shadow_budget(g, eps, false));
  }
  EXPECT_THROW(shadow_budget(g, 0.0, false), InvalidArgument);
  EXPECT_THROW(shadow_budget(g, 1.0, false), InvalidArgument);
  EXPECT_THROW(shadow_budget(g, -0.1, true), InvalidArgument);
}

TEST(Planner, FormulasPerRegime) {
  const auto g = g1();  // m=2, p=1
  const double eps = 0.05, xi = 1.0;
  const double l1 = 1.0;
  const int mp = 2;
  const int delta = static_cast<int>(std::ceil(xi * std::log(2 * l1 * mp / eps)));
  const int zeta = 2 * delta;
  for (int n : {10, 20}) {
    const auto lat = Lattice::ring(n);
    const double e5 = std::exp(5.0);
    {
      const auto p = plan_resources(g, lat, xi, eps, false, KernelFamily::kGlqk);
      EXPECT_EQ(p.delta, delta);
      EXPECT_EQ(p.zeta, zeta);
      EXPECT_EQ(p.alpha_g, 1);
      EXPECT_EQ(p.h, 1);
      const double b2 = std::pow(2.0 * mp * zeta, mp) * n;
      EXPECT_NEAR(p.B2 / b2, 1.0, 1e-12);
      EXPECT_NEAR(p.lambda, eps * eps / (6 * b2), 1e-12 * p.lambda);
      const double logN = std::log(600.0 / std::pow(eps, 4)) + e5 + mp * std::log(2.0 * mp * zeta) + std::log(n);
      EXPECT_NEAR(p.log10_N, logN / std::log(10.0), 1e-9);
      EXPECT_EQ(p.T, shadow_budget(g, eps / 2, true));
    }
    {
      const auto p = plan_resources(g, lat, xi, eps, true, KernelFamily::kGlqk);
      EXPECT_EQ(p.h, 1);
      EXPECT_NEAR(p.B2 / std::pow(2.0 * mp * zeta, mp), 1.0, 1e-12);
    }
    {
      const auto p = plan_resources(g, lat, xi, eps, false, KernelFamily::kShadow);
      const double b2 = std::pow(2.0 * mp * mp, mp) * std::pow(n, mp);
      EXPECT_NEAR(p.B2 / b2, 1.0, 1e-12);
      EXPECT_EQ(p.h, 0);
    }
    {
      const auto p = plan_resources(g, lat, xi, eps, true, KernelFamily::kShadow);
      EXPECT_EQ(p.beta_g, 1);
      const double b2 = std::pow(2.0 * mp * mp, mp) * std::pow(n, mp - 1);
      EXPECT_NEAR(p.B2 / b2, 1.0, 1e-12);
    }
  }
}

TEST(Planner, LambdaRuleEverywhere) {
  const auto g = target_polynomial("g3", 12);
  for (bool sym : {false, true})
    for (auto k : {KernelFamily::kGlqk, KernelFamily::kShadow}) {
      const auto p = plan_resources(g, Lattice::ring(12), 0.7, 0.1, sym, k);
      EXPECT_DOUBLE_EQ(p.lambda, 0.01 / (6 * p.B2));
    }
}

TEST(Planner, SymmetricGlqkIndependentOfN) {
  const auto g = g1();
  const auto a = plan_resources(g, Lattice::ring(10), 1.0, 0.05, true, KernelFamily::kGlqk);
  const auto b = plan_resources(g, Lattice::ring(100), 1.0, 0.05, true, KernelFamily::kGlqk);
  EXPECT_EQ(a.N, b.N);
  EXPECT_EQ(a.B2, b.B2);
}

TEST(Planner, GeneralGlqkScalesAsNPowAlpha) {
  // g3 on a ring splits into two far clusters: alpha_g = 2
  const auto g = target_polynomial("g3", 40);
  const auto small = plan_resources(g, Lattice::ring(40), 0.5, 0.05, false, KernelFamily::kGlqk);
  ObservablePolynomial g80({Term{1.0, {PauliString({E{0, Pauli::X}, E{20, Pauli::Y}})}}});
  const auto big = plan_resources(g80, Lattice::ring(80), 0.5, 0.05, false, KernelFamily::kGlqk);
  ASSERT_EQ(small.alpha_g, 2);
  ASSERT_EQ(big.alpha_g, 2);
  EXPECT_EQ(big.N / small.N, 4.0);
}

TEST(Planner, LocalTermReportsAlphaOne) {
  const auto p = plan_resources(g1(), Lattice::ring(30), 1.0, 0.05, false, KernelFamily::kGlqk);
  EXPECT_EQ(p.alpha_g, 1);
  EXPECT_EQ(p.beta_g, p.p);
}

TEST(Planner, GlqkBeatsShadowWhenAlphaBelowMp) {
  const auto lat = Lattice::ring(200);
  ObservablePolynomial g({Term{1.0, {PauliString({E{0, Pauli::X}, E{1, Pauli::Y}})}}});
  const auto a = plan_resources(g, lat, 1.0, 0.05, false, KernelFamily::kGlqk);
  const auto b = plan_resources(g, lat, 1.0, 0.05, false, KernelFamily::kShadow);
  ASSERT_LT(a.alpha_g, a.m * a.p);
  EXPECT_LE(a.log10_N, b.log10_N);
}

TEST(Planner, WarningsAndErrors) {
  const auto g = g1();
  const auto p = plan_resources(g, Lattice::ring(6), 1.0, 0.05, false, KernelFamily::kGlqk);
  ASSERT_FALSE(p.warnings.empty());  // zeta=10 exceeds a 6-ring
  const auto q = plan_resources(g, Lattice::ring(10), 1.0, 0.05, false, KernelFamily::kGlqk, 5.0);
  bool tau_warned = false;
  for (const auto& w : q.warnings) tau_warned |= w.find("m p / tau") != std::string::npos;
  EXPECT_TRUE(tau_warned);
  EXPECT_THROW(plan_resources(g, Lattice::ring(10), 1.0, 1.5, false, KernelFamily::kGlqk), InvalidArgument);
  EXPECT_THROW(plan_resources(g, Lattice::ring(10), 0.0, 0.1, false, KernelFamily::kGlqk), InvalidArgument);
  const auto j = p.to_json();
  EXPECT_EQ(j["regime"], "glqk_general");
}
