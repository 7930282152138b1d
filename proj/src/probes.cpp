#include "glqk/probes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "glqk/errors.hpp"

namespace glqk {

double order_parameter_z(const StateVector& state, int a) {
  const int n = state.qubits();
  if (n % 2 != 0) throw InvalidArgument("order parameter needs even n");
  if (a < 1 || a > n / 2) {
    throw InvalidArgument("block width a=" + std::to_string(a) + " outside [1, n/2]");
  }
  if (2 * a > kMaxRdmSites) throw ResourceLimit("order-parameter blocks exceed the RDM cap");
  const int c = n / 2;
  std::vector<int> left, right;
  for (int k = a; k >= 1; --k) left.push_back(c - k);
  for (int k = 0; k < a; ++k) right.push_back(c + k);

  // <psi| R_I |psi> with R_I swapping sites c-1-k and c+k.
  const auto& amp = state.amplitudes();
  double overlap = 0.0;
  for (std::uint64_t x = 0; x < state.dim(); ++x) {
    std::uint64_t y = x;
    for (int k = 0; k < a; ++k) {
      const int i = c - 1 - k;
      const int j = c + k;
      const std::uint64_t bi = x >> i & 1;
      const std::uint64_t bj = x >> j & 1;
      if (bi != bj) y ^= (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    }
    overlap += (std::conj(amp[x]) * amp[y]).real();
  }
  const double p1 = reduced_density_matrix(state, left).squaredNorm();
  const double p2 = reduced_density_matrix(state, right).squaredNorm();
  return std::sqrt(2.0) * overlap / std::sqrt(p1 + p2);
}

double translation_symmetry_defect(const StateVector& state) {
  const int n = state.qubits();
  if (n < 2) return 0.0;
  using E = PauliString::Entry;
  static const Pauli kLetters[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  double worst = 0.0;
  auto compare = [&](const PauliString& p, const PauliString& q) {
    worst = std::max(worst, std::abs(pauli_expectation(state, p) - pauli_expectation(state, q)));
  };
  for (Pauli a : kLetters) compare(PauliString({E{0, a}}), PauliString({E{1, a}}));
  if (n >= 3) {
    for (Pauli a : kLetters)
      for (Pauli b : kLetters)
        compare(PauliString({E{0, a}, E{1, b}}), PauliString({E{1, a}, E{2 % n, b}}));
  }
  return worst;
}

CorrelationFit correlation_length_probe(const StateVector& state, Pauli a, Pauli b) {
  using E = PauliString::Entry;
  const int n = state.qubits();
  const double mean_a = pauli_expectation(state, PauliString({E{0, a}}));
  std::vector<double> xs, ys;
  for (int d = 1; d <= n / 2; ++d) {
    const double joint = pauli_expectation(state, PauliString({E{0, a}, E{d, b}}));
    const double mean_b = pauli_expectation(state, PauliString({E{d, b}}));
    const double conn = std::abs(joint - mean_a * mean_b);
    if (conn > 1e-8) {
      xs.push_back(d);
      ys.push_back(std::log(conn));
    }
  }
  CorrelationFit fit;
  fit.points = static_cast<int>(xs.size());
  if (xs.empty()) {
    fit.quality = "uncorrelated";
    return fit;
  }
  if (xs.size() == 1) {
    fit.quality = "insufficient";
    return fit;
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  if (fit.slope > -1e-6) {
    fit.quality = "non-decaying";
    fit.xi = std::numeric_limits<double>::infinity();
  } else {
    fit.xi = -1.0 / fit.slope;
  }
  return fit;
}

}  // namespace glqk
