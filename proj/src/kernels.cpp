#include "glqk/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "glqk/errors.hpp"
#include "glqk/gram.hpp"

namespace glqk {

std::string to_string(KernelKind kind) { return kind == KernelKind::kShadow ? "shadow" : "glqk"; }

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "shadow") return KernelKind::kShadow;
  if (s == "glqk") return KernelKind::kGlqk;
  throw InvalidArgument("unknown kernel kind '" + s + "' (expected shadow or glqk)");
}

void KernelConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (kind == KernelKind::kGlqk) {
    if (h < 1) throw InvalidArgument("h must be at least 1");
    if (zeta < 1) throw InvalidArgument("zeta must be at least 1");
  }
}

nlohmann::json KernelConfig::to_json() const {
  nlohmann::json j = {{"kind", to_string(kind)}, {"tau", tau}, {"gamma", gamma}};
  if (kind == KernelKind::kGlqk) {
    j["h"] = h;
    j["zeta"] = zeta;
  }
  return j;
}

KernelConfig KernelConfig::from_json(const nlohmann::json& j) {
  KernelConfig c;
  try {
    c.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
    c.tau = j.value("tau", 1.0);
    c.gamma = j.value("gamma", 1.0);
    c.h = j.value("h", 1);
    c.zeta = j.value("zeta", 2);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed kernel config: ") + e.what());
  }
  c.validate();
  return c;
}

double qubit_overlap(std::uint8_t a, std::uint8_t b) {
  if ((a & 3) != (b & 3)) return 0.5;
  return ((a ^ b) & 4) ? -4.0 : 5.0;
}

namespace {

void check_pair(const ClassicalShadow& a, const ClassicalShadow& b) {
  if (a.n != b.n) throw InvalidArgument("shadows have different qubit counts");
  if (a.T < 1 || b.T < 1) throw InvalidArgument("empty shadow");
}

// Overlap class: 0 different basis, 1 same basis and outcome, 2 opposite outcome.
inline int overlap_class(std::uint8_t a, std::uint8_t b) {
  if ((a & 3) != (b & 3)) return 0;
  return ((a ^ b) & 4) ? 2 : 1;
}

// Shot-pair products depend only on how many sites fall in each overlap class,
// so the sum is taken over an integer histogram. That makes the result
// independent of argument order bit for bit.
class ClassHistogram {
 public:
  explicit ClassHistogram(int width) : w_(width), counts_(static_cast<std::size_t>(width + 1) * (width + 1), 0) {}
  void add(int same, int opposite) { ++counts_[static_cast<std::size_t>(same) * (w_ + 1) + opposite]; }
  void clear() { std::fill(counts_.begin(), counts_.end(), 0); }
  double sum(double gamma) const {
    const double c = gamma / static_cast<double>(w_);
    std::vector<double> p0(w_ + 1), p1(w_ + 1), p2(w_ + 1);
    p0[0] = p1[0] = p2[0] = 1.0;
    for (int k = 1; k <= w_; ++k) {
      p0[k] = p0[k - 1] * (1.0 + c * 0.5);
      p1[k] = p1[k - 1] * (1.0 + c * 5.0);
      p2[k] = p2[k - 1] * (1.0 - c * 4.0);
    }
    double total = 0.0;
    for (int i = 0; i <= w_; ++i)
      for (int j = 0; i + j <= w_; ++j) {
        const std::uint64_t n = counts_[static_cast<std::size_t>(i) * (w_ + 1) + j];
        if (n) total += static_cast<double>(n) * (p1[i] * p2[j] * p0[w_ - i - j]);
      }
    return total;
  }

 private:
  int w_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

double truncated_shadow_kernel(const ClassicalShadow& a, const ClassicalShadow& b,
                               const Subsystem& A, double tau, double gamma,
                               KernelOpCount* ops) {
  check_pair(a, b);
  if (A.sites.empty()) throw InvalidArgument("empty subsystem");
  for (int s : A.sites)
    if (s < 0 || s >= a.n) throw InvalidArgument("subsystem site outside the shadow");
  ClassHistogram hist(static_cast<int>(A.sites.size()));
  for (int t = 0; t < a.T; ++t) {
    for (int u = 0; u < b.T; ++u) {
      int cnt[3] = {0, 0, 0};
      for (int s : A.sites) ++cnt[overlap_class(a.at(t, s), b.at(u, s))];
      hist.add(cnt[1], cnt[2]);
    }
  }
  const double sum = hist.sum(gamma);
  if (ops) {
    ops->shot_pairs += static_cast<std::uint64_t>(a.T) * b.T;
    ops->qubit_factors += static_cast<std::uint64_t>(a.T) * b.T * A.sites.size();
  }
  return std::exp(tau * sum / (static_cast<double>(a.T) * b.T));
}

double glqk_polynomial(const ClassicalShadow& a, const ClassicalShadow& b, const Lattice& lat,
                       const KernelConfig& cfg, KernelOpCount* ops) {
  check_pair(a, b);
  cfg.validate();
  if (lat.size() != a.n) throw InvalidArgument("lattice size does not match the shadows");
  const auto windows = lat.local_subsystems(cfg.zeta);
  const int n = a.n;

  // Class table shared by all windows.
  std::vector<std::uint8_t> cls(static_cast<std::size_t>(a.T) * b.T * n);
  for (int t = 0; t < a.T; ++t)
    for (int u = 0; u < b.T; ++u)
      for (int i = 0; i < n; ++i)
        cls[(static_cast<std::size_t>(t) * b.T + u) * n + i] =
            static_cast<std::uint8_t>(overlap_class(a.at(t, i), b.at(u, i)));

  std::vector<double> values;
  values.reserve(windows.size());
  for (const auto& w : windows) {
    ClassHistogram hist(static_cast<int>(w.sites.size()));
    for (std::size_t pair = 0; pair < static_cast<std::size_t>(a.T) * b.T; ++pair) {
      const std::uint8_t* row = &cls[pair * n];
      int cnt[3] = {0, 0, 0};
      for (int s : w.sites) ++cnt[row[s]];
      hist.add(cnt[1], cnt[2]);
    }
    const double sum = hist.sum(cfg.gamma);
    if (ops) {
      ops->shot_pairs += static_cast<std::uint64_t>(a.T) * b.T;
      ops->qubit_factors += static_cast<std::uint64_t>(a.T) * b.T * w.sites.size();
    }
    values.push_back(std::exp(cfg.tau * sum / (static_cast<double>(a.T) * b.T)));
  }
  std::sort(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  return std::pow(mean, cfg.h);
}

double shadow_kernel(const ClassicalShadow& a, const ClassicalShadow& b, double tau,
                     double gamma) {
  check_pair(a, b);
  if (!(tau > 0.0) || !(gamma > 0.0)) throw InvalidArgument("tau and gamma must be positive");
  const ShotMasks ma(a), mb(b);
  const ShadowKernelTable table(a.n, gamma);
  return std::exp(tau * shadow_pair_sum(ma, mb, table) / (static_cast<double>(a.T) * b.T));
}

double kernel_value(const ClassicalShadow& a, const ClassicalShadow& b, const Lattice& lat,
                    const KernelConfig& cfg) {
  if (cfg.kind == KernelKind::kShadow) return shadow_kernel(a, b, cfg.tau, cfg.gamma);
  return glqk_polynomial(a, b, lat, cfg);
}

double kernel_bound(const KernelConfig& cfg) {
  const double h = cfg.kind == KernelKind::kShadow ? 1.0 : static_cast<double>(cfg.h);
  return std::exp(cfg.tau * h * std::exp(5.0 * cfg.gamma));
}

}  // namespace glqk
