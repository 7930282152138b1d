#include "glqk/shadow.hpp"

#include <cmath>
#include <string>

#include "glqk/errors.hpp"
#include "glqk/rng.hpp"

namespace glqk {

void ClassicalShadow::validate() const {
  if (n < 1 || T < 1) throw InvalidArgument("shadow needs n >= 1 and T >= 1");
  if (records.size() != static_cast<std::size_t>(n) * T) {
    throw InvalidArgument("shadow record count does not equal n*T");
  }
  for (std::uint8_t r : records) {
    if ((r & 3) == 3 || (r & ~7) != 0) throw InvalidArgument("malformed shadow record byte");
  }
}

ClassicalShadow ClassicalShadow::translated(const Lattice& lat, int axis, int offset) const {
  if (lat.size() != n) throw InvalidArgument("lattice size does not match the shadow");
  ClassicalShadow out = *this;
  for (int i = 0; i < n; ++i) {
    const int j = lat.shift(i, axis, offset);
    for (int t = 0; t < T; ++t) {
      out.records[static_cast<std::size_t>(t) * n + j] = records[static_cast<std::size_t>(t) * n + i];
    }
  }
  return out;
}

ClassicalShadow sample_shadow(const StateVector& state, int T, std::uint64_t seed) {
  if (T < 1) throw InvalidArgument("shot count must be positive");
  const int n = state.qubits();
  ClassicalShadow sh;
  sh.n = n;
  sh.T = T;
  sh.seed = seed;
  sh.records.resize(static_cast<std::size_t>(n) * T);
  Rng rng(seed);
  const double r2 = 1.0 / std::sqrt(2.0);
  const cplx i_unit(0.0, 1.0);
  const Eigen::VectorXcd& psi = state.amplitudes();
  Eigen::VectorXcd buf(psi.size() / 2 > 0 ? psi.size() / 2 : 1);
  std::vector<Pauli> basis(n);

  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) basis[i] = static_cast<Pauli>(rng.index(3));
    // Measure the highest remaining site, keep the half consistent with the
    // outcome, and continue on the shorter vector.
    const cplx* src = psi.data();
    std::size_t len = static_cast<std::size_t>(psi.size());
    for (int q = n - 1; q >= 0; --q) {
      const std::size_t half = len / 2;
      cplx u00 = 1.0, u01 = 0.0, u10 = 0.0, u11 = 1.0;
      if (basis[q] == Pauli::X) {
        u00 = r2; u01 = r2; u10 = r2; u11 = -r2;
      } else if (basis[q] == Pauli::Y) {
        u00 = r2; u01 = -i_unit * r2; u10 = r2; u11 = i_unit * r2;
      }
      double p0 = 0.0, p1 = 0.0;
      if (basis[q] == Pauli::Z) {
        for (std::size_t k = 0; k < half; ++k) {
          p0 += std::norm(src[k]);
          p1 += std::norm(src[k + half]);
        }
      } else {
        for (std::size_t k = 0; k < half; ++k) {
          p0 += std::norm(u00 * src[k] + u01 * src[k + half]);
          p1 += std::norm(u10 * src[k] + u11 * src[k + half]);
        }
      }
      const bool minus = rng.uniform() * (p0 + p1) >= p0;
      sh.records[static_cast<std::size_t>(t) * n + q] = ClassicalShadow::encode(basis[q], minus ? -1 : 1);
      const cplx a = minus ? u10 : u00;
      const cplx b = minus ? u11 : u01;
      for (std::size_t k = 0; k < half; ++k) buf[static_cast<Eigen::Index>(k)] = a * src[k] + b * src[k + half];
      src = buf.data();
      len = half;
    }
  }
  return sh;
}

double estimate_pauli(const ClassicalShadow& shadow, const PauliString& p) {
  const auto& e = p.entries();
  if (e.empty()) return 1.0;
  if (e.back().first >= shadow.n) throw InvalidArgument("Pauli string outside the shadow's qubits");
  double sum = 0.0;
  for (int t = 0; t < shadow.T; ++t) {
    double prod = 1.0;
    for (const auto& [site, letter] : e) {
      const std::uint8_t r = shadow.at(t, site);
      if (ClassicalShadow::basis_of(r) != letter) {
        prod = 0.0;
        break;
      }
      prod *= 3.0 * ClassicalShadow::outcome_of(r);
    }
    sum += prod;
  }
  return sum / shadow.T;
}

double estimate_polynomial(const ClassicalShadow& shadow, const ObservablePolynomial& g) {
  return evaluate_exact(g, [&](const PauliString& p) { return estimate_pauli(shadow, p); });
}

double estimate_polynomial(const ClassicalShadow& shadow, const ClusterDecomposition& dec) {
  double total = 0.0;
  for (const auto& t : dec.terms) {
    double prod = t.coefficient;
    for (const auto& c : t.clusters) prod *= estimate_pauli(shadow, c);
    total += prod;
  }
  return total;
}

Eigen::MatrixXcd estimate_rdm(const ClassicalShadow& shadow, const std::vector<int>& sites) {
  const int k = static_cast<int>(sites.size());
  if (k > kMaxShadowRdmSites) {
    throw ResourceLimit("shadow RDM on " + std::to_string(k) + " sites exceeds the cap of " +
                        std::to_string(kMaxShadowRdmSites));
  }
  for (int s : sites)
    if (s < 0 || s >= shadow.n) throw InvalidArgument("RDM site out of range");

  // Single-shot single-qubit snapshots (3 o W + I) / 2 for the six records.
  const cplx i_unit(0.0, 1.0);
  Eigen::Matrix2cd snap[8];
  for (int code = 0; code < 8; ++code) {
    if ((code & 3) == 3) continue;
    const double o = (code & 4) ? -1.0 : 1.0;
    Eigen::Matrix2cd w;
    switch (code & 3) {
      case 0: w << 0, 1, 1, 0; break;
      case 1: w << 0, -i_unit, i_unit, 0; break;
      default: w << 1, 0, 0, -1; break;
    }
    snap[code] = (3.0 * o * w + Eigen::Matrix2cd::Identity()) / 2.0;
  }

  const Eigen::Index dim = Eigen::Index{1} << k;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd cur, next;
  for (int t = 0; t < shadow.T; ++t) {
    cur = Eigen::MatrixXcd::Ones(1, 1);
    for (int j = 0; j < k; ++j) {
      const Eigen::Matrix2cd& s = snap[shadow.at(t, sites[j])];
      const Eigen::Index d = cur.rows();
      next.resize(2 * d, 2 * d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) next.block<2, 2>(2 * r, 2 * c) = cur(r, c) * s;
      cur.swap(next);
    }
    acc += cur;
  }
  return acc / static_cast<double>(shadow.T);
}

}  // namespace glqk
