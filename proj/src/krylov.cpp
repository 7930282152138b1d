#include "glqk/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "glqk/errors.hpp"
#include "glqk/rng.hpp"

namespace glqk {

namespace {

// Lanczos basis with full reorthogonalization. `beta_last` is the coupling to
// the next (unbuilt) vector; zero after an invariant-subspace breakdown.
struct LanczosBasis {
  std::vector<Eigen::VectorXcd> v;
  std::vector<double> alpha;
  std::vector<double> beta;
  double beta_last = 0.0;

  Eigen::MatrixXd tridiagonal() const {
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    return t;
  }

  Eigen::VectorXcd combine(const Eigen::VectorXcd& c) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v[0].size());
    for (std::size_t j = 0; j < v.size(); ++j) out += c[static_cast<Eigen::Index>(j)] * v[j];
    return out;
  }
};

LanczosBasis build_basis(const PauliOperator& h, const Eigen::VectorXcd& start, int max_dim) {
  LanczosBasis b;
  const double nrm = start.norm();
  if (!(nrm > 0.0)) throw NumericFailure("Lanczos start vector is zero");
  const int dim_cap = static_cast<int>(std::min<Eigen::Index>(max_dim, start.size()));
  b.v.push_back(start / nrm);
  Eigen::VectorXcd w;
  for (int j = 0; j < dim_cap; ++j) {
    h.apply(b.v[j], w);
    const double a = b.v[j].dot(w).real();
    b.alpha.push_back(a);
    w -= a * b.v[j];
    if (j > 0) w -= b.beta[j - 1] * b.v[j - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) w -= b.v[i].dot(w) * b.v[i];
    const double beta = w.norm();
    const double scale = std::max(1.0, std::abs(a));
    if (beta <= 1e-13 * scale || j + 1 == static_cast<int>(start.size())) {
      b.beta_last = 0.0;
      break;
    }
    if (j + 1 == dim_cap) {
      b.beta_last = beta;
      break;
    }
    b.beta.push_back(beta);
    b.v.push_back(w / beta);
  }
  return b;
}

}  // namespace

StateVector evolve(const PauliOperator& h, const StateVector& initial, double t,
                   const KrylovOptions& opts) {
  if (h.qubits() != initial.qubits()) throw InvalidArgument("Hamiltonian and state sizes differ");
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (opts.dimension < 2) throw InvalidArgument("Krylov dimension must be at least 2");
  Eigen::VectorXcd psi = initial.amplitudes();
  double remaining = std::abs(t);
  const double sign = t < 0 ? -1.0 : 1.0;
  double dt = remaining;
  int steps = 0;
  while (remaining > 0.0) {
    const double nrm = psi.norm();
    const LanczosBasis b = build_basis(h, psi, opts.dimension);
    const int m = static_cast<int>(b.alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.tridiagonal());
    const Eigen::MatrixXd& s = es.eigenvectors();
    const Eigen::VectorXd& theta = es.eigenvalues();
    double err = 0.0;
    Eigen::VectorXcd c(m);
    for (int attempt = 0;; ++attempt) {
      const double step = std::min(dt, remaining);
      Eigen::VectorXcd phase(m);
      for (int k = 0; k < m; ++k) phase[k] = s(0, k) * std::exp(cplx(0.0, -sign * theta[k] * step));
      c = s.cast<cplx>() * phase;
      err = b.beta_last * std::abs(c[m - 1]);
      if (err <= opts.tolerance || step < 1e-14) {
        dt = step;
        break;
      }
      dt = step / 2.0;
      if (++steps > opts.max_substeps) {
        throw NumericFailure("Krylov propagation did not converge (residual estimate " +
                             std::to_string(err) + ")");
      }
    }
    if (err > opts.tolerance) {
      throw NumericFailure("Krylov propagation did not converge (residual estimate " +
                           std::to_string(err) + ")");
    }
    psi = nrm * b.combine(c);
    remaining -= dt;
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
    dt *= 1.5;
    if (++steps > opts.max_substeps) throw NumericFailure("Krylov substep limit reached");
  }
  return StateVector(std::move(psi));
}

StateVector evolve(const HamiltonianSpec& spec, const StateVector& initial, double t,
                   const KrylovOptions& opts) {
  if (spec.kind == HamiltonianKind::kXxzBondAlternating) {
    throw InvalidArgument("evolve expects a random-dynamics Hamiltonian");
  }
  return evolve(build_operator(spec), initial, t, opts);
}

GroundState ground_state(const PauliOperator& h, std::uint64_t seed, const LanczosOptions& opts) {
  const Eigen::Index dim = Eigen::Index{1} << h.qubits();
  Rng rng(seed);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v[k] = rng.complex_normal();

  GroundState gs;
  Eigen::VectorXcd hv;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    const LanczosBasis b = build_basis(h, v, opts.subspace);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.tridiagonal());
    v = b.combine(es.eigenvectors().col(0).cast<cplx>());
    v.normalize();
    h.apply(v, hv);
    const double e = v.dot(hv).real();
    const double res = (hv - e * v).norm();
    gs.energy = e;
    gs.residual = res;
    gs.restarts = restart;
    if (res <= opts.residual_tol) {
      Eigen::Index arg = 0;
      v.cwiseAbs().maxCoeff(&arg);
      v *= std::conj(v[arg]) / std::abs(v[arg]);
      v[arg] = std::abs(v[arg]);
      gs.state = StateVector(std::move(v));
      return gs;
    }
  }
  throw NumericFailure("Lanczos did not converge: residual " + std::to_string(gs.residual));
}

GroundState ground_state(const HamiltonianSpec& spec, std::uint64_t seed,
                         const LanczosOptions& opts) {
  return ground_state(build_operator(spec), seed, opts);
}

}  // namespace glqk
