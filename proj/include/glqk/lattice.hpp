#pragma once

#include <span>
#include <vector>

namespace glqk {

/// Local subsystem A_a(zeta): the periodic hypercube of side `width` whose
/// lower corner is `anchor`. Sites are listed in window-offset row-major order
/// starting at the anchor.
struct Subsystem {
  std::vector<int> sites;
  int anchor = 0;
  int width = 0;

  bool contains(int site) const;
};

/// D-dimensional periodic hypercubic lattice with row-major site indexing
/// (the last axis varies fastest).
class Lattice {
 public:
  explicit Lattice(std::vector<int> dims);
  static Lattice ring(int n) { return Lattice({n}); }

  int size() const { return n_; }
  int dimension() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int min_side() const;

  std::vector<int> coords(int site) const;
  int site(std::span<const int> coords) const;
  /// Translate a site by `offset` along `axis`, wrapping periodically.
  int shift(int site, int axis, int offset) const;

  /// Manhattan distance with the periodic minimum taken per axis.
  int distance(int a, int b) const;
  int set_distance(std::span<const int> a, std::span<const int> b) const;
  /// max over pairs of sites of distance().
  int diameter() const;

  /// A_GL(zeta): one window per anchor site, anchors in row-major order.
  std::vector<Subsystem> local_subsystems(int zeta) const;
  Subsystem window(int anchor, int zeta) const;
  /// True if `site` lies in the window with lower corner `anchor` and side `zeta`.
  bool in_window(int anchor, int zeta, int site) const;

  bool operator==(const Lattice&) const = default;

 private:
  void check_site(int site) const;

  std::vector<int> dims_;
  std::vector<int> strides_;
  int n_ = 0;
};

}  // namespace glqk
