#include "glqk/feature_oracle.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "glqk/errors.hpp"
#include "glqk/kernels.hpp"

namespace glqk {

namespace {

constexpr int kMaxOracleSites = 4;
constexpr int kMaxOracleDegree = 5;
constexpr double kMaxOracleEntries = 1 << 25;

// vec(sigma_S) for one subset, Pauli words with the first site most significant.
void append_block(const ClassicalShadow& sh, const std::vector<int>& sites, double weight,
                  std::vector<double>& out) {
  const int r = static_cast<int>(sites.size());
  const std::size_t count = std::size_t{1} << (2 * r);
  const double norm = weight / std::sqrt(std::pow(2.0, r));
  for (std::size_t word = 0; word < count; ++word) {
    double sum = 0.0;
    for (int t = 0; t < sh.T; ++t) {
      double prod = 1.0;
      for (int j = 0; j < r; ++j) {
        const int letter = static_cast<int>(word >> (2 * (r - 1 - j)) & 3);  // 0 = I
        if (letter == 0) continue;
        const std::uint8_t rec = sh.at(t, sites[j]);
        if ((rec & 3) + 1 != letter) {
          prod = 0.0;
          break;
        }
        prod *= 3.0 * ClassicalShadow::outcome_of(rec);
      }
      sum += prod;
    }
    out.push_back(norm * sum / sh.T);
  }
}

}  // namespace

Eigen::VectorXd truncated_feature_oracle(const ClassicalShadow& shadow, const Subsystem& A,
                                         double tau, double gamma, int degree_cap, int size_cap) {
  const int s = static_cast<int>(A.sites.size());
  if (s < 1) throw InvalidArgument("empty subsystem");
  if (s > kMaxOracleSites) {
    throw ResourceLimit("feature oracle limited to " + std::to_string(kMaxOracleSites) + " sites");
  }
  if (degree_cap < 0 || degree_cap > kMaxOracleDegree) {
    throw ResourceLimit("feature oracle degree cap must lie in [0, " +
                        std::to_string(kMaxOracleDegree) + "]");
  }
  if (size_cap < 0) throw InvalidArgument("size cap must be nonnegative");
  size_cap = std::min(size_cap, s);
  for (int site : A.sites)
    if (site < 0 || site >= shadow.n) throw InvalidArgument("subsystem site outside the shadow");

  const double c = gamma / s;
  std::vector<double> v;
  for (int r = 0; r <= size_cap; ++r) {
    const double weight = std::sqrt(std::pow(c, r));
    // Subsets of size r in lexicographic order of positions within A.
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      if (std::popcount(mask) != r) continue;
      std::vector<int> sites;
      for (int j = 0; j < s; ++j)
        if (mask >> j & 1) sites.push_back(A.sites[j]);
      append_block(shadow, sites, weight, v);
    }
  }

  const double len = static_cast<double>(v.size());
  double total = 0.0;
  for (int d = 0; d <= degree_cap; ++d) total += std::pow(len, d);
  if (total > kMaxOracleEntries) throw ResourceLimit("feature oracle dimension exceeds 2^25 entries");

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<double> power = {1.0};
  double factorial = 1.0;
  for (int d = 0; d <= degree_cap; ++d) {
    if (d > 0) {
      factorial *= d;
      std::vector<double> next;
      next.reserve(power.size() * v.size());
      for (double p : power)
        for (double x : v) next.push_back(p * x);
      power.swap(next);
    }
    const double scale = std::sqrt(std::pow(tau, d) / factorial);
    for (double p : power) out.push_back(scale * p);
  }
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

double tsk_inner_sum(const ClassicalShadow& a, const ClassicalShadow& b, const Subsystem& A,
                     double gamma) {
  if (a.n != b.n) throw InvalidArgument("shadows have different qubit counts");
  const double c = gamma / static_cast<double>(A.sites.size());
  double sum = 0.0;
  for (int t = 0; t < a.T; ++t) {
    for (int u = 0; u < b.T; ++u) {
      double prod = 1.0;
      for (int s : A.sites) prod *= 1.0 + c * qubit_overlap(a.at(t, s), b.at(u, s));
      sum += prod;
    }
  }
  return sum / (static_cast<double>(a.T) * b.T);
}

double exp_series_tail(double x, int cap) {
  const double ax = std::abs(x);
  double term = 1.0;
  for (int d = 1; d <= cap; ++d) term *= ax / d;
  // Summing the tail directly avoids cancellation in exp(|x|) - head.
  double tail = 0.0;
  for (int d = cap + 1; d < cap + 1000; ++d) {
    term *= ax / d;
    tail += term;
    if (term <= 1e-18 * tail) break;
  }
  return tail;
}

}  // namespace glqk
