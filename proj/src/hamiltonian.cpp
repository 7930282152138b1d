#include "glqk/hamiltonian.hpp"

#include <bit>

#include "glqk/errors.hpp"
#include "glqk/rng.hpp"

namespace glqk {

std::string to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::kRandomSymmetric: return "random_symmetric";
    case HamiltonianKind::kRandomGeneral: return "random_general";
    case HamiltonianKind::kXxzBondAlternating: return "xxz_bond_alternating";
  }
  return "unknown";
}

HamiltonianKind hamiltonian_kind_from_string(const std::string& s) {
  if (s == "random_symmetric") return HamiltonianKind::kRandomSymmetric;
  if (s == "random_general") return HamiltonianKind::kRandomGeneral;
  if (s == "xxz_bond_alternating") return HamiltonianKind::kXxzBondAlternating;
  throw InvalidArgument("unknown Hamiltonian kind '" + s + "'");
}

HamiltonianSpec HamiltonianSpec::random(int n, bool symmetric, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("random ring Hamiltonian needs n >= 2");
  HamiltonianSpec spec;
  spec.kind = symmetric ? HamiltonianKind::kRandomSymmetric : HamiltonianKind::kRandomGeneral;
  spec.n = n;
  spec.seed = seed;
  Rng rng(seed);
  const int bonds = symmetric ? 1 : n;
  spec.couplings.resize(bonds);
  for (auto& c : spec.couplings)
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
  return spec;
}

HamiltonianSpec HamiltonianSpec::xxz(int n, double J, double Delta) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("XXZ chain needs even n >= 2");
  HamiltonianSpec spec;
  spec.kind = HamiltonianKind::kXxzBondAlternating;
  spec.n = n;
  spec.J = J;
  spec.Delta = Delta;
  return spec;
}

nlohmann::json HamiltonianSpec::to_json() const {
  nlohmann::json j = {{"kind", to_string(kind)}, {"n", n}};
  if (kind == HamiltonianKind::kXxzBondAlternating) {
    j["J"] = J;
    j["Delta"] = Delta;
  } else {
    j["seed"] = seed;
    j["couplings"] = couplings;
  }
  return j;
}

void PauliOperator::add(double coefficient, const PauliString& p) {
  const auto& e = p.entries();
  if (!e.empty() && e.back().first >= n_) throw InvalidArgument("operator term outside the chain");
  const PauliMasks m = pauli_masks(p);
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx w = coefficient * kIPow[m.y_count & 3];
  for (auto& g : groups_) {
    if (g.flip == m.flip) {
      for (std::size_t t = 0; t < g.phase.size(); ++t) {
        if (g.phase[t] == m.phase) {
          g.weight[t] += w;
          return;
        }
      }
      g.phase.push_back(m.phase);
      g.weight.push_back(w);
      return;
    }
  }
  groups_.push_back(Group{m.flip, {m.phase}, {w}});
}

std::size_t PauliOperator::term_count() const {
  std::size_t c = 0;
  for (const auto& g : groups_) c += g.phase.size();
  return c;
}

void PauliOperator::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const std::uint64_t dim = std::uint64_t{1} << n_;
  if (static_cast<std::uint64_t>(in.size()) != dim) throw InvalidArgument("operator size mismatch");
  out.setZero(in.size());
  for (const auto& g : groups_) {
    const std::size_t terms = g.phase.size();
    for (std::uint64_t k = 0; k < dim; ++k) {
      cplx w = 0.0;
      for (std::size_t t = 0; t < terms; ++t) {
        w += (std::popcount(k & g.phase[t]) & 1) ? -g.weight[t] : g.weight[t];
      }
      out[k ^ g.flip] += w * in[k];
    }
  }
}

double PauliOperator::expectation(const StateVector& s) const {
  Eigen::VectorXcd hv;
  apply(s.amplitudes(), hv);
  return s.amplitudes().dot(hv).real();
}

Eigen::MatrixXcd PauliOperator::dense() const {
  if (n_ > 12) throw ResourceLimit("dense operator limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_;
  Eigen::MatrixXcd m(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd col;
  for (Eigen::Index k = 0; k < dim; ++k) {
    e[k] = 1.0;
    apply(e, col);
    m.col(k) = col;
    e[k] = 0.0;
  }
  return m;
}

PauliOperator build_operator(const HamiltonianSpec& spec) {
  using E = PauliString::Entry;
  static const Pauli kLetters[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  PauliOperator h(spec.n);
  auto bond = [&](int i, int j, Pauli a, Pauli b, double c) {
    if (c != 0.0) h.add(c, PauliString({E{i, a}, E{j, b}}));
  };
  switch (spec.kind) {
    case HamiltonianKind::kRandomSymmetric:
    case HamiltonianKind::kRandomGeneral: {
      const bool shared = spec.kind == HamiltonianKind::kRandomSymmetric;
      if (spec.couplings.size() != (shared ? 1u : static_cast<std::size_t>(spec.n))) {
        throw InvalidArgument("coupling table size does not match the Hamiltonian kind");
      }
      for (int j = 0; j < spec.n; ++j) {
        const auto& c = spec.couplings[shared ? 0 : j];
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = 0; nu < 3; ++nu)
            bond(j, (j + 1) % spec.n, kLetters[mu], kLetters[nu], c[3 * mu + nu]);
      }
      break;
    }
    case HamiltonianKind::kXxzBondAlternating: {
      auto xxz = [&](int i, int j, double scale) {
        bond(i, j, Pauli::X, Pauli::X, scale);
        bond(i, j, Pauli::Y, Pauli::Y, scale);
        bond(i, j, Pauli::Z, Pauli::Z, scale * spec.Delta);
      };
      for (int k = 0; k < spec.n / 2; ++k) xxz(2 * k, 2 * k + 1, 1.0);
      for (int k = 0; k + 1 < spec.n / 2; ++k) xxz(2 * k + 1, 2 * k + 2, spec.J);
      break;
    }
  }
  return h;
}

}  // namespace glqk
