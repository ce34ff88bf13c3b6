#include "gll/symplectic.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace gll {

double symplectic_form(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  if (v.size() != w.size() || v.size() % 2 != 0 || v.size() == 0)
    throw std::invalid_argument("symplectic_form needs matching even dimensions");
  Eigen::Index d = v.size() / 2;
  return v.head(d).dot(w.tail(d)) - w.head(d).dot(v.tail(d));
}

namespace {

Eigen::MatrixXd structure_matrix(Eigen::Index two_d) {
  Eigen::Index d = two_d / 2;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(two_d, two_d);
  j.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
  return j;
}

}  // namespace

bool is_symplectic(const Eigen::MatrixXd& sigma, double tol) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0 || sigma.rows() == 0)
    throw std::invalid_argument("is_symplectic needs a square even-dimensional matrix");
  Eigen::MatrixXd j = structure_matrix(sigma.rows());
  return (sigma.transpose() * j * sigma - j).cwiseAbs().maxCoeff() <= tol;
}

ProductReduction reduce_to_product_d1(const Lattice& L) {
  if (L.dim() != 2) throw std::invalid_argument("reduce_to_product_d1 requires dim 2");
  const Eigen::Matrix2d b = L.basis();

  // Already a product lattice with axis-aligned generators: identity suffices.
  for (int xcol = 0; xcol < 2; ++xcol) {
    int ycol = 1 - xcol;
    if (b(1, xcol) == 0.0 && b(0, ycol) == 0.0) {
      ProductReduction r;
      r.sigma = Eigen::Matrix2d::Identity();
      r.alpha = std::abs(b(0, xcol));
      r.beta = std::abs(b(1, ycol));
      return r;
    }
  }

  Lattice red = lagrange_reduce(L);
  Eigen::Vector2d b1 = red.basis().col(0), b2 = red.basis().col(1);
  if (b1(0) < 0 || (b1(0) == 0 && b1(1) < 0)) b1 = -b1;  // canonical generator sign

  double r = b1.norm();
  Eigen::Matrix2d rot;
  rot << b1(0) / r, b1(1) / r, -b1(1) / r, b1(0) / r;  // det 1, maps b1 to (r, 0)

  Eigen::Vector2d c2 = rot * b2;
  if (c2(1) < 0) c2 = -c2;  // flip the second generator, same lattice

  Eigen::Matrix2d shear = Eigen::Matrix2d::Identity();
  shear(0, 1) = -c2(0) / c2(1);  // kills the x-component of c2, fixes (r, 0)

  ProductReduction out;
  out.sigma = shear * rot;
  out.alpha = r;
  out.beta = c2(1);
  return out;
}

namespace {

// Plücker pairing of two column pairs: det[a b c d] from their 2x2 minors.
struct PairEntry {
  int32_t i, j;                  // indices into the candidate vector table
  std::array<int64_t, 6> minor;  // (12,13,14,23,24,34) wedge coordinates
};

std::array<int64_t, 6> wedge(const Eigen::Vector4i& a, const Eigen::Vector4i& b) {
  auto m = [&](int p, int q) {
    return int64_t(a(p)) * b(q) - int64_t(a(q)) * b(p);
  };
  return {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
}

int64_t pair_det(const std::array<int64_t, 6>& m, const std::array<int64_t, 6>& n) {
  // Laplace expansion over the first two columns vs the last two.
  return m[0] * n[5] - m[1] * n[4] + m[2] * n[3] + m[3] * n[2] - m[4] * n[1] + m[5] * n[0];
}

bool primitive(const Eigen::Vector4i& v) {
  int g = 0;
  for (int i = 0; i < 4; ++i) g = std::gcd(g, std::abs(v(i)));
  return g == 1;
}

}  // namespace

std::optional<Eigen::Matrix4d> product_basis_search(const Lattice& L, int coeff_bound,
                                                    double tol) {
  if (L.dim() != 4) throw std::invalid_argument("product_basis_search requires dim 4");
  if (coeff_bound <= 0) throw std::invalid_argument("coeff_bound must be positive");

  const Eigen::Matrix4d b = L.basis();
  const Eigen::Matrix4d w = b.transpose() * structure_matrix(4) * b;  // [B u, B v] = uᵀ W v

  // Candidate columns: primitive integer vectors in the box, lexicographic order.
  std::vector<Eigen::Vector4i> cand;
  const int bound = coeff_bound;
  for (int a0 = -bound; a0 <= bound; ++a0)
    for (int a1 = -bound; a1 <= bound; ++a1)
      for (int a2 = -bound; a2 <= bound; ++a2)
        for (int a3 = -bound; a3 <= bound; ++a3) {
          Eigen::Vector4i v(a0, a1, a2, a3);
          if (primitive(v)) cand.push_back(v);
        }

  std::vector<Eigen::Vector4d> wu(cand.size());
  for (size_t i = 0; i < cand.size(); ++i) wu[i] = w * cand[i].cast<double>();

  // Ordered pairs with |[B u_i, B u_j]| <= tol and u_i, u_j independent,
  // in lexicographic order of (u_i, u_j).
  std::vector<PairEntry> pairs;
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = 0; j < cand.size(); ++j) {
      if (i == j) continue;
      if (std::abs(cand[i].cast<double>().dot(wu[j])) > tol) continue;
      auto m = wedge(cand[i], cand[j]);
      bool indep = false;
      for (auto v : m)
        if (v != 0) {
          indep = true;
          break;
        }
      if (indep) pairs.push_back({int32_t(i), int32_t(j), m});
    }

  for (const auto& front : pairs)
    for (const auto& back : pairs) {
      if (std::abs(pair_det(front.minor, back.minor)) != 1) continue;
      Eigen::Matrix4d out;
      out.col(0) = b * cand[front.i].cast<double>();
      out.col(1) = b * cand[front.j].cast<double>();
      out.col(2) = b * cand[back.i].cast<double>();
      out.col(3) = b * cand[back.j].cast<double>();
      return out;
    }
  return std::nullopt;
}

std::vector<PhasePoint> apply_to_atoms(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& shift,
                                       const std::vector<PhasePoint>& atoms) {
  if (!is_symplectic(sigma, 1e-9))
    throw std::invalid_argument("apply_to_atoms: map is not symplectic within 1e-9");
  Eigen::Index d = sigma.rows() / 2;
  if (shift.size() != 2 * d) throw std::invalid_argument("apply_to_atoms: shift dimension mismatch");
  std::vector<PhasePoint> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.x.size() != d || a.y.size() != d)
      throw std::invalid_argument("apply_to_atoms: atom dimension mismatch");
    Eigen::VectorXd v(2 * d);
    v << a.x, a.y;
    Eigen::VectorXd img = sigma * v + shift;
    out.push_back({img.head(d), img.tail(d)});
  }
  return out;
}

}  // namespace gll
