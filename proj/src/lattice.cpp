#include "glqk/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "glqk/errors.hpp"

namespace glqk {

bool Subsystem::contains(int site) const {
  return std::find(sites.begin(), sites.end(), site) != sites.end();
}

Lattice::Lattice(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("lattice needs at least one axis");
  strides_.assign(dims_.size(), 1);
  long long n = 1;
  for (int d = static_cast<int>(dims_.size()) - 1; d >= 0; --d) {
    if (dims_[d] <= 0) throw InvalidArgument("lattice side lengths must be positive");
    strides_[d] = static_cast<int>(n);
    n *= dims_[d];
    if (n > std::numeric_limits<int>::max()) throw InvalidArgument("lattice too large");
  }
  n_ = static_cast<int>(n);
}

int Lattice::min_side() const { return *std::min_element(dims_.begin(), dims_.end()); }

void Lattice::check_site(int site) const {
  if (site < 0 || site >= n_) {
    throw InvalidArgument("site index " + std::to_string(site) + " outside [0, " +
                          std::to_string(n_) + ")");
  }
}

std::vector<int> Lattice::coords(int site) const {
  check_site(site);
  std::vector<int> c(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) c[d] = (site / strides_[d]) % dims_[d];
  return c;
}

int Lattice::site(std::span<const int> c) const {
  if (c.size() != dims_.size()) throw InvalidArgument("coordinate rank mismatch");
  int s = 0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const int v = ((c[d] % dims_[d]) + dims_[d]) % dims_[d];
    s += v * strides_[d];
  }
  return s;
}

int Lattice::shift(int site, int axis, int offset) const {
  auto c = coords(site);
  if (axis < 0 || axis >= dimension()) throw InvalidArgument("axis out of range");
  c[axis] += offset;
  return this->site(c);
}

int Lattice::distance(int a, int b) const {
  check_site(a);
  check_site(b);
  int total = 0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const int ca = (a / strides_[d]) % dims_[d];
    const int cb = (b / strides_[d]) % dims_[d];
    const int diff = std::abs(ca - cb);
    total += std::min(diff, dims_[d] - diff);
  }
  return total;
}

int Lattice::set_distance(std::span<const int> a, std::span<const int> b) const {
  if (a.empty() || b.empty()) throw InvalidArgument("set_distance needs nonempty site sets");
  int best = std::numeric_limits<int>::max();
  for (int x : a)
    for (int y : b) best = std::min(best, distance(x, y));
  return best;
}

int Lattice::diameter() const {
  int total = 0;
  for (int d : dims_) total += d / 2;
  return total;
}

bool Lattice::in_window(int anchor, int zeta, int site) const {
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const int ca = (anchor / strides_[d]) % dims_[d];
    const int cs = (site / strides_[d]) % dims_[d];
    const int off = ((cs - ca) % dims_[d] + dims_[d]) % dims_[d];
    if (off >= zeta) return false;
  }
  return true;
}

Subsystem Lattice::window(int anchor, int zeta) const {
  check_site(anchor);
  if (zeta < 1 || zeta > min_side()) {
    throw InvalidArgument("window width " + std::to_string(zeta) + " outside [1, " +
                          std::to_string(min_side()) + "]");
  }
  Subsystem sub;
  sub.anchor = anchor;
  sub.width = zeta;
  const auto base = coords(anchor);
  const int dim = dimension();
  int count = 1;
  for (int d = 0; d < dim; ++d) count *= zeta;
  sub.sites.reserve(count);
  std::vector<int> off(dim, 0);
  std::vector<int> c(dim);
  for (int k = 0; k < count; ++k) {
    int rem = k;
    for (int d = dim - 1; d >= 0; --d) {
      off[d] = rem % zeta;
      rem /= zeta;
    }
    for (int d = 0; d < dim; ++d) c[d] = base[d] + off[d];
    sub.sites.push_back(site(c));
  }
  return sub;
}

std::vector<Subsystem> Lattice::local_subsystems(int zeta) const {
  if (zeta < 1 || zeta > min_side()) {
    throw InvalidArgument("zeta=" + std::to_string(zeta) + " must lie in [1, " +
                          std::to_string(min_side()) + "]");
  }
  std::vector<Subsystem> out;
  out.reserve(n_);
  for (int a = 0; a < n_; ++a) out.push_back(window(a, zeta));
  return out;
}

}  // namespace glqk
