#pragma once

#include <Eigen/Dense>

namespace gll {

// Integer interval product lo(i) <= p(i) <= hi(i). Linear indexing is
// lexicographic with the last coordinate fastest; every sweep over a box
// iterates in that order so results are reproducible.
struct IntBox {
  Eigen::VectorXi lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  long long size() const {
    long long n = 1;
    for (int i = 0; i < dim(); ++i) {
      if (hi(i) < lo(i)) return 0;
      n *= static_cast<long long>(hi(i)) - lo(i) + 1;
    }
    return n;
  }

  bool contains(const Eigen::VectorXi& p) const {
    for (int i = 0; i < dim(); ++i)
      if (p(i) < lo(i) || p(i) > hi(i)) return false;
    return true;
  }

  long long index(const Eigen::VectorXi& p) const {
    long long idx = 0;
    for (int i = 0; i < dim(); ++i)
      idx = idx * (static_cast<long long>(hi(i)) - lo(i) + 1) + (p(i) - lo(i));
    return idx;
  }

  Eigen::VectorXi point(long long idx) const {
    Eigen::VectorXi p(dim());
    for (int i = dim() - 1; i >= 0; --i) {
      const long long w = static_cast<long long>(hi(i)) - lo(i) + 1;
      p(i) = lo(i) + static_cast<int>(idx % w);
      idx /= w;
    }
    return p;
  }

  IntBox shifted(const Eigen::VectorXi& t) const { return IntBox{lo + t, hi + t}; }
};

inline IntBox interval(int lo, int hi) {
  IntBox b;
  b.lo = Eigen::VectorXi::Constant(1, lo);
  b.hi = Eigen::VectorXi::Constant(1, hi);
  return b;
}

inline IntBox centered_box(int dim, int half_width) {
  IntBox b;
  b.lo = Eigen::VectorXi::Constant(dim, -half_width);
  b.hi = Eigen::VectorXi::Constant(dim, half_width);
  return b;
}

}  // namespace gll
