#include "gll/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace gll {

namespace {

bool all_integral(const Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != std::floor(m(i, j))) return false;
  return true;
}

bool all_integral(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != std::floor(v(i))) return false;
  return true;
}

}  // namespace

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    throw std::invalid_argument("lattice basis must be square and non-empty");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
  const auto& sv = svd.singularValues();
  double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax / smin > 1e8)
    throw std::invalid_argument("lattice basis is singular or has condition number > 1e8");
  lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(basis_);
  covolume_ = std::abs(lu_.determinant());
  integral_ = all_integral(basis_);
}

Lattice Lattice::dual() const {
  return Lattice(lu_.inverse().transpose());
}

Eigen::VectorXd Lattice::coords(const Eigen::VectorXd& x) const {
  if (x.size() != basis_.rows()) throw std::invalid_argument("dimension mismatch");
  return lu_.solve(x);
}

Eigen::VectorXd Lattice::reduce_mod(const Eigen::VectorXd& x) const {
  Eigen::VectorXd c = coords(x);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) -= std::floor(c(i));
    if (c(i) >= 1.0) c(i) = 0.0;  // fractional part rounded up to 1
  }
  return basis_ * c;
}

bool Lattice::member(const Eigen::VectorXd& x, double tol) const {
  if (tol < 0) throw std::invalid_argument("tol must be >= 0");
  Eigen::VectorXd c = coords(x);
  if (integral_ && tol < 0.5 && all_integral(x)) {
    // Round the coordinates and verify B·c == x in exact integer arithmetic;
    // products stay below 2^53 for any sane input, so doubles carry this exactly.
    Eigen::VectorXd r = c.array().round();
    return ((basis_ * r) - x).lpNorm<Eigen::Infinity>() == 0.0;
  }
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i) - std::round(c(i))) > tol) return false;
  return true;
}

Lattice lagrange_reduce(const Lattice& L) {
  if (L.dim() != 2) throw std::invalid_argument("lagrange_reduce requires dim 2");
  Eigen::Vector2d b1 = L.basis().col(0), b2 = L.basis().col(1);
  for (;;) {
    if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
    double mu = std::round(b1.dot(b2) / b1.squaredNorm());
    if (mu == 0.0) break;
    b2 -= mu * b1;
  }
  if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
  Eigen::Matrix2d out;
  out.col(0) = b1;
  out.col(1) = b2;
  return Lattice(out);
}

}  // namespace gll
