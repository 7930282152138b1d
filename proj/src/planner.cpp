#include "glqk/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glqk/cluster.hpp"
#include "glqk/errors.hpp"

namespace glqk {

namespace {

// log((3^k + 1)^2) without forming 3^k.
double log_sq_three_pow_plus_one(double k) {
  const double a = k * std::log(3.0);
  return 2.0 * (a + std::log1p(std::exp(-a)));
}

// n^k as an exact double for the small integer exponents that occur here.
double int_pow(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

void check_epsilon(double l1, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < l1)) {
    throw InvalidArgument("epsilon=" + std::to_string(epsilon) + " must lie in (0, |g|_1=" +
                          std::to_string(l1) + ")");
  }
}

}  // namespace

std::uint64_t shadow_budget(const ObservablePolynomial& g, double epsilon, bool clustered) {
  const double l1 = g.l1_norm();
  check_epsilon(l1, epsilon);
  const int m = g.body();
  const int p0 = g.degree();
  if (m == 0) return 1;  // only identity factors: nothing to estimate
  const double p = clustered ? static_cast<double>(m) * p0 : p0;
  const double k = clustered ? static_cast<double>(m) * m * p0 : static_cast<double>(m) * p0;
  const double log_arg = 2.0 * std::log(l1) + (m + 3) * std::log(2.0) + std::log(p) +
                         log_sq_three_pow_plus_one(k) - 2.0 * std::log(epsilon);
  const double t = 64.0 / (3.0 * epsilon * epsilon) * l1 * l1 * std::pow(12.0, m) * p * p *
                   log_arg;
  if (!std::isfinite(t) || t >= 9.2e18) {
    throw ResourceLimit("shadow budget overflows a 64-bit shot count");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t)));
}

std::string ResourcePlan::regime() const {
  std::string s = kernel == KernelFamily::kGlqk ? "glqk" : "shadow";
  return s + (symmetric ? "_symmetric" : "_general");
}

nlohmann::json ResourcePlan::to_json() const {
  nlohmann::json j = {{"regime", regime()},     {"n", n},
                      {"m", m},                 {"p", p},
                      {"l1_norm", l1},          {"delta_real", delta_real},
                      {"delta", delta},         {"zeta", zeta},
                      {"alpha_g", alpha_g},     {"alpha_exact", alpha_exact},
                      {"beta_g", beta_g},       {"N", N},
                      {"log10_N", log10_N},     {"T", T},
                      {"B2", B2},               {"lambda", lambda},
                      {"warnings", warnings}};
  if (kernel == KernelFamily::kGlqk) {
    j["h"] = h;
  } else {
    j["h"] = nullptr;
  }
  return j;
}

ResourcePlan plan_resources(const ObservablePolynomial& g, const Lattice& lat, double xi,
                            double epsilon, bool symmetric, KernelFamily kernel, double tau,
                            double gamma) {
  if (!(xi > 0.0)) throw InvalidArgument("xi must be positive");
  if (!(tau > 0.0) || !(gamma > 0.0)) throw InvalidArgument("tau and gamma must be positive");
  g.check_on(lat);

  ResourcePlan plan;
  plan.kernel = kernel;
  plan.symmetric = symmetric;
  plan.n = lat.size();
  plan.m = g.body();
  plan.p = g.degree();
  plan.l1 = g.l1_norm();
  check_epsilon(plan.l1, epsilon);
  if (plan.m == 0) throw InvalidArgument("polynomial has no non-identity factor");

  const int mp = plan.m * plan.p;
  const int D = lat.dimension();
  plan.delta_real = xi * std::log(2.0 * plan.l1 * mp / epsilon);
  plan.delta = std::max(1, static_cast<int>(std::ceil(plan.delta_real)));
  plan.zeta = plan.m * plan.delta;

  const auto dec = cluster_approximation(g, lat, plan.delta);
  plan.beta_g = local_factor_count(dec);
  int cover_zeta = plan.zeta;
  if (cover_zeta > lat.min_side()) {
    cover_zeta = lat.min_side();
    if (kernel == KernelFamily::kGlqk) {
      plan.warnings.push_back("zeta=" + std::to_string(plan.zeta) +
                              " exceeds the lattice side; alpha_g computed with zeta=" +
                              std::to_string(cover_zeta));
    }
  }
  const auto cover = local_cover_number(dec, lat, cover_zeta);
  plan.alpha_g = cover.value;
  plan.alpha_exact = cover.exact;

  const double bound = tau * std::exp(5.0 * gamma);
  const double base = std::log(600.0) - 4.0 * std::log(epsilon) + 4.0 * std::log(plan.l1);
  const double zeta_d = int_pow(plan.zeta, D);

  double log_b2 = 2.0 * std::log(plan.l1);
  double log_exp_term = bound;
  int n_power = 0;
  if (kernel == KernelFamily::kGlqk) {
    log_b2 += mp * std::log(2.0 * mp * zeta_d / (tau * gamma));
    if (symmetric) {
      plan.h = 1;
    } else {
      plan.h = plan.alpha_g;
      log_exp_term = plan.alpha_g * bound;
      n_power = plan.alpha_g;
    }
    if (2.0 * zeta_d / gamma < 1.0) plan.warnings.push_back("assumption 2 zeta^D / gamma >= 1 violated");
  } else {
    log_b2 += mp * std::log(2.0 * mp * mp / (tau * gamma));
    n_power = symmetric ? mp - plan.beta_g : mp;
    const double lhs = symmetric ? 2.0 / gamma : 2.0 * plan.n / gamma;
    if (lhs < 1.0) {
      plan.warnings.push_back(symmetric ? "assumption 2 / gamma >= 1 violated"
                                        : "assumption 2 n / gamma >= 1 violated");
    }
  }
  if (mp / tau < 1.0) plan.warnings.push_back("assumption m p / tau >= 1 violated");

  const double n_factor = int_pow(plan.n, n_power);
  plan.B2 = std::exp(log_b2) * n_factor;
  plan.N = std::ceil(std::exp(base + log_exp_term + log_b2 - 2.0 * std::log(plan.l1)) * n_factor);
  plan.log10_N =
      (base + log_exp_term + log_b2 - 2.0 * std::log(plan.l1) + n_power * std::log(plan.n)) /
      std::log(10.0);
  if (!std::isfinite(plan.N)) plan.warnings.push_back("N overflows double; see log10_N");
  plan.lambda = epsilon * epsilon / (6.0 * plan.B2);
  plan.T = shadow_budget(g, epsilon / 2.0, true);
  return plan;
}

}  // namespace glqk
