#include "glqk/gram.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "glqk/errors.hpp"
#include "glqk/pool_io.hpp"

namespace glqk {

ShotMasks::ShotMasks(const ClassicalShadow& s) : n(s.n), T(s.T), words((s.n + 63) / 64) {
  bits.assign(static_cast<std::size_t>(T) * 4 * words, 0);
  for (int t = 0; t < T; ++t) {
    std::uint64_t* row = &bits[static_cast<std::size_t>(t) * 4 * words];
    for (int i = 0; i < n; ++i) {
      const std::uint8_t r = s.at(t, i);
      const std::uint64_t bit = std::uint64_t{1} << (i % 64);
      row[(r & 3) * words + i / 64] |= bit;
      if (r & 4) row[3 * words + i / 64] |= bit;
    }
  }
}

ShadowKernelTable::ShadowKernelTable(int n_, double gamma) : n(n_), values(2 * n_ + 1) {
  for (int d = -n; d <= n; ++d) {
    values[d + n] = std::exp(gamma / n * (0.5 * n + 4.5 * d));
  }
}

double shadow_pair_sum(const ShotMasks& a, const ShotMasks& b, const ShadowKernelTable& table) {
  if (a.n != b.n || table.n != a.n) throw InvalidArgument("shadow sizes differ");
  const int n = a.n;
  const int w = a.words;
  std::vector<std::uint64_t> hist(4 * (2 * n + 1), 0);
  std::uint64_t* h[4] = {&hist[0], &hist[2 * n + 1], &hist[2 * (2 * n + 1)], &hist[3 * (2 * n + 1)]};
  for (int t = 0; t < a.T; ++t) {
    const std::uint64_t* x = a.shot(t);
    if (w == 1) {
      const std::uint64_t ax = x[0], ay = x[1], az = x[2], am = x[3];
      for (int u = 0; u < b.T; ++u) {
        const std::uint64_t* y = b.shot(u);
        const std::uint64_t same = (ax & y[0]) | (ay & y[1]) | (az & y[2]);
        const int d = std::popcount(same) - 2 * std::popcount(same & (am ^ y[3]));
        ++h[u & 3][d + n];
      }
    } else {
      for (int u = 0; u < b.T; ++u) {
        const std::uint64_t* y = b.shot(u);
        int d = 0;
        for (int k = 0; k < w; ++k) {
          const std::uint64_t same = (x[k] & y[k]) | (x[w + k] & y[w + k]) | (x[2 * w + k] & y[2 * w + k]);
          d += std::popcount(same) - 2 * std::popcount(same & (x[3 * w + k] ^ y[3 * w + k]));
        }
        ++h[u & 3][d + n];
      }
    }
  }
  double sum = 0.0;
  for (int d = 0; d <= 2 * n; ++d) {
    const std::uint64_t c = h[0][d] + h[1][d] + h[2][d] + h[3][d];
    sum += static_cast<double>(c) * table.values[d];
  }
  return sum;
}

namespace {

void check_refs(const ShadowRefs& s, const Lattice& lat, const char* what) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!s[k]) throw InvalidArgument(std::string(what) + " contains a null shadow");
    if (s[k]->n != lat.size()) {
      throw InvalidArgument(std::string(what) + " shadow " + std::to_string(k) + " has " +
                            std::to_string(s[k]->n) + " qubits, lattice has " +
                            std::to_string(lat.size()));
    }
  }
}

}  // namespace

FeatureMatrix window_features(const ShadowRefs& shadows, const Subsystem& window, double gamma) {
  const int s = static_cast<int>(window.sites.size());
  if (s < 1 || s > kMaxFeatureWindow) {
    throw ResourceLimit("feature engine handles windows of 1.." + std::to_string(kMaxFeatureWindow) +
                        " sites, got " + std::to_string(s));
  }
  const Eigen::Index dim = Eigen::Index{1} << (2 * s);
  const double half_c = gamma / s / 2.0;
  const double base = std::pow(1.0 + half_c, s / 2.0);
  const double ratio = std::sqrt(half_c / (1.0 + half_c));
  std::vector<Eigen::Index> place(s);
  for (int j = 0; j < s; ++j) place[j] = Eigen::Index{1} << (2 * j);

  FeatureMatrix f = FeatureMatrix::Zero(static_cast<Eigen::Index>(shadows.size()), dim);
  const int count = static_cast<int>(shadows.size());
#pragma omp parallel
  {
    std::vector<Eigen::Index> idx(std::size_t{1} << s);
    std::vector<double> val(std::size_t{1} << s);
    std::vector<Eigen::Index> code(s);
    std::vector<double> sign(s);
#pragma omp for schedule(static)
    for (int k = 0; k < count; ++k) {
      const ClassicalShadow& sh = *shadows[k];
      double* row = f.row(k).data();
      for (int t = 0; t < sh.T; ++t) {
        for (int j = 0; j < s; ++j) {
          const std::uint8_t r = sh.at(t, window.sites[j]);
          code[j] = static_cast<Eigen::Index>((r & 3) + 1) * place[j];
          sign[j] = (r & 4 ? -3.0 : 3.0) * ratio;
        }
        idx[0] = 0;
        val[0] = base;
        row[0] += base;
        for (std::size_t mask = 1; mask < idx.size(); ++mask) {
          const int low = std::countr_zero(mask);
          const std::size_t prev = mask & (mask - 1);
          idx[mask] = idx[prev] + code[low];
          val[mask] = val[prev] * sign[low];
          row[idx[mask]] += val[mask];
        }
      }
      f.row(k) /= static_cast<double>(sh.T);
    }
  }
  return f;
}

Eigen::MatrixXd glqk_window_mean(const ShadowRefs& rows, const ShadowRefs* cols,
                                 const Lattice& lat, int zeta, double tau, double gamma) {
  check_refs(rows, lat, "row set");
  if (cols) check_refs(*cols, lat, "column set");
  const auto windows = lat.local_subsystems(zeta);
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = cols ? static_cast<Eigen::Index>(cols->size()) : nr;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(nr, nc);
  const int s = static_cast<int>(windows.front().sites.size());

  if (s > kMaxFeatureWindow) {
    KernelConfig cfg;
    cfg.kind = KernelKind::kGlqk;
    cfg.tau = tau;
    cfg.gamma = gamma;
    cfg.h = 1;
    cfg.zeta = zeta;
    const ShadowRefs& cr = cols ? *cols : rows;
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < nr; ++i)
      for (Eigen::Index j = cols ? 0 : i; j < nc; ++j)
        sum(i, j) = glqk_polynomial(*rows[i], *cr[j], lat, cfg);
    if (!cols)
      for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < i; ++j) sum(i, j) = sum(j, i);
    return sum;
  }

  Eigen::MatrixXd g;
  for (const auto& w : windows) {
    const FeatureMatrix fa = window_features(rows, w, gamma);
    if (cols) {
      const FeatureMatrix fb = window_features(*cols, w, gamma);
      g.noalias() = fa * fb.transpose();
    } else {
      g.noalias() = fa * fa.transpose();
    }
    sum.array() += (tau * g.array()).exp();
  }
  sum /= static_cast<double>(windows.size());
  if (!cols)
    for (Eigen::Index i = 0; i < nr; ++i)
      for (Eigen::Index j = 0; j < i; ++j) sum(i, j) = sum(j, i);
  return sum;
}

GramMatrix gram(const ShadowRefs& rows, const ShadowRefs* cols, const Lattice& lat,
                const KernelConfig& cfg) {
  cfg.validate();
  check_refs(rows, lat, "row set");
  if (cols) check_refs(*cols, lat, "column set");
  GramMatrix out;
  out.config = cfg;
  out.symmetric = cols == nullptr;
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = cols ? static_cast<Eigen::Index>(cols->size()) : nr;

  if (cfg.kind == KernelKind::kShadow) {
    std::vector<ShotMasks> mr, mc;
    mr.reserve(rows.size());
    for (const auto* s : rows) mr.emplace_back(*s);
    if (cols)
      for (const auto* s : *cols) mc.emplace_back(*s);
    const std::vector<ShotMasks>& right = cols ? mc : mr;
    const ShadowKernelTable table(lat.size(), cfg.gamma);
    out.values.resize(nr, nc);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < nr; ++i) {
      for (Eigen::Index j = cols ? 0 : i; j < nc; ++j) {
        const double tt = static_cast<double>(mr[i].T) * right[j].T;
        out.values(i, j) = std::exp(cfg.tau * shadow_pair_sum(mr[i], right[j], table) / tt);
      }
    }
    if (!cols)
      for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
  } else {
    out.values = glqk_window_mean(rows, cols, lat, cfg.zeta, cfg.tau, cfg.gamma);
    if (cfg.h != 1) out.values = out.values.array().pow(static_cast<double>(cfg.h)).matrix();
  }
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j)
      if (!std::isfinite(out.values(i, j))) {
        throw NumericFailure("non-finite kernel value at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
  out.provenance = {{"kernel", cfg.to_json()},
                    {"rows", nr},
                    {"cols", nc},
                    {"symmetric", out.symmetric},
                    {"lattice", lat.dims()},
                    {"standardized", false}};
  return out;
}

Eigen::VectorXd self_kernel_diagonal(const ShadowRefs& shadows, const Lattice& lat,
                                     const KernelConfig& cfg) {
  cfg.validate();
  check_refs(shadows, lat, "shadow set");
  const Eigen::Index n = static_cast<Eigen::Index>(shadows.size());
  Eigen::VectorXd d(n);
  if (cfg.kind == KernelKind::kShadow) {
    const ShadowKernelTable table(lat.size(), cfg.gamma);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < n; ++i) {
      const ShotMasks m(*shadows[i]);
      d[i] = std::exp(cfg.tau * shadow_pair_sum(m, m, table) /
                      (static_cast<double>(m.T) * m.T));
    }
    return d;
  }
  const auto windows = lat.local_subsystems(cfg.zeta);
  if (static_cast<int>(windows.front().sites.size()) > kMaxFeatureWindow) {
    for (Eigen::Index i = 0; i < n; ++i) d[i] = glqk_polynomial(*shadows[i], *shadows[i], lat, cfg);
    return d;
  }
  d.setZero();
  for (const auto& w : windows) {
    const FeatureMatrix f = window_features(shadows, w, cfg.gamma);
    d.array() += (cfg.tau * f.rowwise().squaredNorm().array()).exp();
  }
  d /= static_cast<double>(windows.size());
  if (cfg.h != 1) d = d.array().pow(static_cast<double>(cfg.h)).matrix();
  return d;
}

GramMatrix standardize(const GramMatrix& k, const Eigen::VectorXd& diag_rows,
                       const Eigen::VectorXd& diag_cols) {
  if (diag_rows.size() != k.rows() || diag_cols.size() != k.cols()) {
    throw InvalidArgument("standardization diagonals do not match the gram shape");
  }
  auto check = [](const Eigen::VectorXd& d) {
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
        throw NumericFailure("nonpositive kernel diagonal at index " + std::to_string(i));
      }
  };
  check(diag_rows);
  check(diag_cols);
  GramMatrix out = k;
  const Eigen::VectorXd sr = diag_rows.array().sqrt();
  const Eigen::VectorXd sc = diag_cols.array().sqrt();
  for (Eigen::Index j = 0; j < k.cols(); ++j)
    for (Eigen::Index i = 0; i < k.rows(); ++i) out.values(i, j) = k.values(i, j) / (sr[i] * sc[j]);
  if (k.symmetric && diag_rows == diag_cols) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      out.values(i, i) = 1.0;
      for (Eigen::Index j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
  }
  out.standardized = true;
  out.provenance["standardized"] = true;
  return out;
}

GramMatrix standardize(const GramMatrix& k) {
  if (k.rows() != k.cols()) throw InvalidArgument("self-standardization needs a square gram");
  const Eigen::VectorXd d = k.values.diagonal();
  return standardize(k, d, d);
}

namespace {

constexpr char kGramMagic[4] = {'G', 'L', 'Q', 'K'};
constexpr std::uint16_t kGramVersion = 1;

template <typename U>
void put(std::string& out, U v) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

template <typename U>
U get(std::string_view s, std::size_t& pos) {
  if (s.size() - pos < sizeof(U)) throw InvalidArgument("gram file is truncated");
  U v = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b)
    v |= static_cast<U>(static_cast<unsigned char>(s[pos + b])) << (8 * b);
  pos += sizeof(U);
  return v;
}

}  // namespace

std::string serialize_gram(const GramMatrix& g) {
  std::string out(kGramMagic, 4);
  put<std::uint16_t>(out, kGramVersion);
  put<std::uint8_t>(out, g.config.kind == KernelKind::kShadow ? 0 : 1);
  put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(g.config.tau));
  put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(g.config.gamma));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.config.h));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.config.zeta));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.rows()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.cols()));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(g.values(i, j)));
  return out;
}

GramMatrix deserialize_gram(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kGramMagic, 4) != 0) {
    throw InvalidArgument("not a GLQK gram file");
  }
  std::size_t pos = 4;
  if (get<std::uint16_t>(bytes, pos) != kGramVersion) throw InvalidArgument("unsupported gram version");
  GramMatrix g;
  const auto kind = get<std::uint8_t>(bytes, pos);
  if (kind > 1) throw InvalidArgument("unknown kernel kind code in gram file");
  g.config.kind = kind == 0 ? KernelKind::kShadow : KernelKind::kGlqk;
  g.config.tau = std::bit_cast<double>(get<std::uint64_t>(bytes, pos));
  g.config.gamma = std::bit_cast<double>(get<std::uint64_t>(bytes, pos));
  g.config.h = static_cast<int>(get<std::uint32_t>(bytes, pos));
  g.config.zeta = static_cast<int>(get<std::uint32_t>(bytes, pos));
  const auto rows = get<std::uint32_t>(bytes, pos);
  const auto cols = get<std::uint32_t>(bytes, pos);
  if (bytes.size() - pos != static_cast<std::size_t>(rows) * cols * 8) {
    throw InvalidArgument("gram file size does not match its header");
  }
  g.values.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g.values(i, j) = std::bit_cast<double>(get<std::uint64_t>(bytes, pos));
  return g;
}

void write_gram(const GramMatrix& g, const std::string& path) {
  write_file(path, serialize_gram(g));
  nlohmann::json side = g.provenance;
  side["kernel"] = g.config.to_json();
  side["standardized"] = g.standardized;
  side["symmetric"] = g.symmetric;
  write_file(path + ".json", side.dump(2) + "\n");
}

GramMatrix read_gram(const std::string& path) {
  GramMatrix g = deserialize_gram(read_file(path));
  try {
    const auto side = nlohmann::json::parse(read_file(path + ".json"));
    g.provenance = side;
    g.standardized = side.value("standardized", false);
    g.symmetric = side.value("symmetric", false);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("gram sidecar is not JSON: ") + e.what());
  }
  return g;
}

}  // namespace glqk
