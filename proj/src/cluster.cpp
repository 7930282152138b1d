#include "glqk/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

#include "glqk/errors.hpp"

namespace glqk {

namespace {

// Union-find over support indices.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

using WindowSet = std::vector<std::uint64_t>;

WindowSet windows_containing(const Lattice& lat, const PauliString& p, int zeta) {
  const int n = lat.size();
  WindowSet set((n + 63) / 64, 0);
  const auto support = p.support();
  for (int a = 0; a < n; ++a) {
    bool ok = true;
    for (int s : support) {
      if (!lat.in_window(a, zeta, s)) {
        ok = false;
        break;
      }
    }
    if (ok) set[a / 64] |= std::uint64_t{1} << (a % 64);
  }
  return set;
}

bool any(const WindowSet& s) {
  return std::any_of(s.begin(), s.end(), [](std::uint64_t w) { return w != 0; });
}

std::vector<WindowSet> cover_sets(const Lattice& lat, const std::vector<PauliString>& clusters,
                                  int zeta) {
  if (zeta < 1 || zeta > lat.min_side()) {
    throw InvalidArgument("zeta=" + std::to_string(zeta) + " must lie in [1, " +
                          std::to_string(lat.min_side()) + "]");
  }
  std::vector<WindowSet> sets;
  sets.reserve(clusters.size());
  for (const auto& c : clusters) {
    c.check_on(lat);
    auto s = windows_containing(lat, c, zeta);
    if (!any(s)) {
      throw LocalityViolation("cluster {" + c.to_string() +
                              "} is not contained in any local subsystem of width " +
                              std::to_string(zeta));
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

}  // namespace

double ClusterDecomposition::l1_norm() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coefficient);
  return s;
}

ObservablePolynomial ClusterDecomposition::flattened() const {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    Term term;
    term.coefficient = t.coefficient;
    term.factors = t.clusters;
    if (term.factors.empty()) term.factors.emplace_back();  // constant term
    out.push_back(std::move(term));
  }
  return ObservablePolynomial(std::move(out));
}

std::vector<PauliString> split_into_clusters(const Lattice& lat, const PauliString& p,
                                             int delta) {
  if (delta < 1) throw InvalidArgument("delta must be >= 1");
  p.check_on(lat);
  const auto& e = p.entries();
  const int w = static_cast<int>(e.size());
  Dsu dsu(w);
  for (int a = 0; a < w; ++a)
    for (int b = a + 1; b < w; ++b)
      if (lat.distance(e[a].first, e[b].first) <= delta) dsu.unite(a, b);

  // Entries are site-sorted and each root is its component's smallest index,
  // so clusters come out ordered by their first site.
  std::map<int, std::vector<PauliString::Entry>> groups;
  for (int a = 0; a < w; ++a) groups[dsu.find(a)].push_back(e[a]);
  std::vector<PauliString> out;
  out.reserve(groups.size());
  for (auto& [_, entries] : groups) out.emplace_back(std::move(entries));
  return out;
}

ClusterDecomposition cluster_approximation(const ObservablePolynomial& g, const Lattice& lat,
                                           int delta) {
  if (delta < 1) throw InvalidArgument("delta must be >= 1");
  ClusterDecomposition dec;
  dec.delta = delta;
  dec.body = g.body();
  dec.degree = g.degree();
  dec.per_term.reserve(g.terms().size());

  std::map<std::vector<PauliString>, std::size_t> index_of;
  for (const auto& term : g.terms()) {
    std::vector<std::vector<PauliString>> factors;
    std::vector<PauliString> flat;
    for (const auto& f : term.factors) {
      auto clusters = split_into_clusters(lat, f, delta);
      flat.insert(flat.end(), clusters.begin(), clusters.end());
      factors.push_back(std::move(clusters));
    }
    dec.per_term.push_back(std::move(factors));

    std::sort(flat.begin(), flat.end());
    auto [it, inserted] = index_of.try_emplace(flat, dec.terms.size());
    if (inserted) {
      dec.terms.push_back(ClusterTerm{term.coefficient, std::move(flat)});
    } else {
      dec.terms[it->second].coefficient += term.coefficient;
    }
  }
  return dec;
}

int cover_count_exact(const Lattice& lat, const std::vector<PauliString>& clusters, int zeta) {
  const int b = static_cast<int>(clusters.size());
  if (b == 0) return 0;
  if (b > 20) throw ResourceLimit("exhaustive cover search limited to 20 clusters");
  const auto sets = cover_sets(lat, clusters, zeta);
  const std::uint32_t full = (std::uint32_t{1} << b) - 1;

  // feasible[mask]: the clusters in mask share at least one covering window.
  std::vector<char> feasible(full + 1, 0);
  std::vector<WindowSet> meet(full + 1);
  meet[0] = WindowSet(sets[0].size(), ~std::uint64_t{0});
  feasible[0] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    if (!feasible[rest]) continue;
    WindowSet w = meet[rest];
    for (std::size_t k = 0; k < w.size(); ++k) w[k] &= sets[low][k];
    if (any(w)) {
      feasible[mask] = 1;
      meet[mask] = std::move(w);
    }
  }

  // dp[mask]: minimum number of groups partitioning mask.
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> dp(full + 1, kInf);
  dp[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t others = mask ^ low;
    // Enumerate groups containing the lowest member.
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t group = sub | low;
      if (feasible[group]) dp[mask] = std::min(dp[mask], dp[mask ^ group] + 1);
      if (sub == 0) break;
    }
  }
  return dp[full];
}

int cover_count_greedy(const Lattice& lat, const std::vector<PauliString>& clusters, int zeta) {
  const int b = static_cast<int>(clusters.size());
  if (b == 0) return 0;
  const auto sets = cover_sets(lat, clusters, zeta);
  const int n = lat.size();
  auto has = [&](int c, int a) { return (sets[c][a / 64] >> (a % 64)) & 1U; };

  int best = std::numeric_limits<int>::max();
  for (int start = 0; start < b; ++start) {
    std::vector<char> covered(b, 0);
    int remaining = b;
    int used = 0;
    int next = start;
    while (remaining > 0) {
      // Among windows holding `next`, take the one holding the most uncovered clusters.
      int best_window = -1;
      int best_gain = 0;
      for (int a = 0; a < n; ++a) {
        if (!has(next, a)) continue;
        int gain = 0;
        for (int c = 0; c < b; ++c)
          if (!covered[c] && has(c, a)) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best_window = a;
        }
      }
      for (int c = 0; c < b; ++c) {
        if (!covered[c] && has(c, best_window)) {
          covered[c] = 1;
          --remaining;
        }
      }
      ++used;
      next = static_cast<int>(std::find(covered.begin(), covered.end(), 0) - covered.begin());
    }
    best = std::min(best, used);
  }
  return best;
}

CoverResult local_cover_number(const ClusterDecomposition& dec, const Lattice& lat, int zeta) {
  CoverResult r;
  for (std::size_t i = 0; i < dec.terms.size(); ++i) {
    const auto& clusters = dec.terms[i].clusters;
    int a;
    if (static_cast<int>(clusters.size()) <= kExactCoverLimit) {
      a = cover_count_exact(lat, clusters, zeta);
    } else {
      a = cover_count_greedy(lat, clusters, zeta);
      r.exact = false;
    }
    if (a > r.value || r.argmax_term < 0) {
      r.value = std::max(r.value, a);
      r.argmax_term = static_cast<int>(i);
    }
  }
  return r;
}

int local_factor_count(const ClusterDecomposition& dec) {
  if (dec.terms.empty()) throw InvalidArgument("local factor count of an empty decomposition");
  int min_b = std::numeric_limits<int>::max();
  for (const auto& t : dec.terms) min_b = std::min(min_b, t.factor_count());
  return std::max(dec.degree, min_b);
}

}  // namespace glqk
