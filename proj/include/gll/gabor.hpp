#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gll/exec.hpp"
#include "gll/symplectic.hpp"

namespace gll {

// Real, separable window with unit L2 norm. Gaussian and indicator windows
// exist in any dimension; Hermite windows are one-dimensional.
class Window {
 public:
  static Window gaussian(int dim, double width);
  static Window indicator_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static Window hermite(int degree);

  int dim() const { return dim_; }
  double eval(const Eigen::VectorXd& t) const;

  // One axis of the separable product; gaussian/hermite decay, indicator has
  // compact support [lo, hi].
  double eval_axis(int axis, double t) const;
  bool compact_support() const { return kind_ == Kind::indicator; }
  double support_lo(int axis) const;
  double support_hi(int axis) const;
  // Radius beyond which an axis factor is below ~1e-60; used to clip
  // integration domains for the decaying kinds.
  double decay_radius() const;
  bool gaussian_kind() const { return kind_ == Kind::gaussian; }
  double width() const { return width_; }

 private:
  enum class Kind { gaussian, indicator, hermite };
  Window() = default;
  Kind kind_ = Kind::gaussian;
  int dim_ = 1;
  double width_ = 1.0;
  int degree_ = 0;
  Eigen::VectorXd lo_, hi_;
};

// <pi(a) w, pi(b) w> where pi(x, y) f(t) = e^{2 pi i y.t} f(t - x). Gaussian
// windows use the closed form (checked once against quadrature); other kinds
// integrate each axis adaptively with tails clipped below 1e-14.
std::complex<double> atom_inner(const Window& w, const PhasePoint& a, const PhasePoint& b,
                                double qtol = 1e-12);

// Hermitian Gram of the atom family. Atoms must be pairwise distinct.
Eigen::MatrixXcd gram_matrix(const Window& w, const std::vector<PhasePoint>& atoms,
                             double qtol = 1e-12, Exec exec = Exec::parallel);

struct GramCertificate {
  Eigen::MatrixXcd gram;
  double min_eigenvalue;
  bool independent;  // min eigenvalue clears 10 * qtol * |A|
};

GramCertificate gram_certificate(const Window& w, const std::vector<PhasePoint>& atoms,
                                 double qtol = 1e-12, Exec exec = Exec::parallel);

struct DependenceSearch {
  double min_eigenvalue;
  Eigen::VectorXcd coefficients;  // unit eigenvector of the bottom eigenvalue
};

// Bottom eigenpair of the Gram. Duplicate atoms are legal here: they produce
// an exact null vector with equal-and-opposite coefficients.
DependenceSearch dependence_search(const Window& w, const std::vector<PhasePoint>& atoms,
                                   double qtol = 1e-12, Exec exec = Exec::parallel);

}  // namespace gll
