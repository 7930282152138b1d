#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "glqk/kernels.hpp"
#include "glqk/lattice.hpp"
#include "glqk/shadow.hpp"

namespace glqk {

/// Per-shot basis and outcome bit masks, `words` 64-bit words per mask.
struct ShotMasks {
  explicit ShotMasks(const ClassicalShadow& s);
  int n = 0;
  int T = 0;
  int words = 0;
  /// Shot-major: for shot t, words x-masks, y-masks, z-masks, minus-masks.
  std::vector<std::uint64_t> bits;

  const std::uint64_t* shot(int t) const { return &bits[static_cast<std::size_t>(t) * 4 * words]; }
};

/// exp((gamma/n)(n/2 + 9/2 d)) for d = (#same outcome) - (#opposite outcome)
/// among qubits measured in the same basis, indexed by d + n.
struct ShadowKernelTable {
  ShadowKernelTable(int n, double gamma);
  int n;
  std::vector<double> values;
};

/// sum_{t,t'} exp((gamma/n) sum_i tr(sigma_i^t sigma~_i^t')), accumulated as
/// a histogram over d so the result does not depend on summation order.
double shadow_pair_sum(const ShotMasks& a, const ShotMasks& b, const ShadowKernelTable& table);

/// Kernel matrix with provenance.
struct GramMatrix {
  Eigen::MatrixXd values;
  KernelConfig config;
  bool standardized = false;
  bool symmetric = false;
  nlohmann::json provenance = nlohmann::json::object();

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

using ShadowRefs = std::vector<const ClassicalShadow*>;

/// Largest window size (sites) handled by the Pauli-moment feature engine;
/// bigger windows fall back to the direct pairwise loop.
inline constexpr int kMaxFeatureWindow = 7;

/// Per-window Pauli-moment features: column index is a base-4 word over the
/// window's sites (0=I, 1=X, 2=Y, 3=Z, first site least significant); entry
/// sqrt((1+c/2)^{s-w} (c/2)^w) (1/T) sum_t prod_{i in supp} 3 o_i [W_i = P_i]
/// with c = gamma/s. Their dot products reproduce the inner sum of the
/// truncated shadow kernel.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
FeatureMatrix window_features(const ShadowRefs& shadows, const Subsystem& window, double gamma);

/// (1/n) sum_A TSK_A for every (row, col) pair. `cols` may be null for the
/// self case, which is mirrored to exact symmetry.
Eigen::MatrixXd glqk_window_mean(const ShadowRefs& rows, const ShadowRefs* cols,
                                 const Lattice& lat, int zeta, double tau, double gamma);

/// Full kernel matrix. The self case (cols == nullptr) fills the upper
/// triangle and mirrors it.
GramMatrix gram(const ShadowRefs& rows, const ShadowRefs* cols, const Lattice& lat,
                const KernelConfig& cfg);

/// k(x, x) for each shadow.
Eigen::VectorXd self_kernel_diagonal(const ShadowRefs& shadows, const Lattice& lat,
                                     const KernelConfig& cfg);

/// K_ij / sqrt(d_i e_j). For a symmetric input with diag_cols == diag_rows the
/// diagonal is set to exactly 1.
GramMatrix standardize(const GramMatrix& k, const Eigen::VectorXd& diag_rows,
                       const Eigen::VectorXd& diag_cols);
/// Self-gram shortcut using its own diagonal.
GramMatrix standardize(const GramMatrix& k);

/// Binary blob ("GLQK", u16 version, u8 kind, f64 tau, f64 gamma, u32 h,
/// u32 zeta, u32 rows, u32 cols, f64 values row-major) plus `path`.json.
void write_gram(const GramMatrix& g, const std::string& path);
GramMatrix read_gram(const std::string& path);
std::string serialize_gram(const GramMatrix& g);
GramMatrix deserialize_gram(std::string_view bytes);

}  // namespace glqk
