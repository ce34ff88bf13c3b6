#pragma once

#include <Eigen/Dense>

namespace gll {

// Full-rank lattice L = B·ℤ^n with the generators stored as the columns of B.
// Construction rejects singular bases and condition numbers above 1e8:
// downstream kernel computations need trustworthy coordinates.
class Lattice {
 public:
  explicit Lattice(Eigen::MatrixXd basis);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  double covolume() const { return covolume_; }
  // True when every basis entry is an exact integer; enables exact membership.
  bool integral() const { return integral_; }

  // Dual lattice: basis^{-T}, so <dual generator, generator> is always integral.
  Lattice dual() const;

  Eigen::VectorXd coords(const Eigen::VectorXd& x) const;
  template <typename Derived>
  Eigen::VectorXd embed(const Eigen::MatrixBase<Derived>& c) const {
    return basis_ * c.template cast<double>();
  }

  // Representative of x mod L whose basis coordinates lie in [0,1)^n.
  Eigen::VectorXd reduce_mod(const Eigen::VectorXd& x) const;

  // True iff coords(x) is within tol (inf-norm) of an integer vector.
  // When the basis and x are integral and tol < 1/2 the decision is exact.
  bool member(const Eigen::VectorXd& x, double tol = 1e-9) const;

 private:
  Eigen::MatrixXd basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double covolume_ = 0.0;
  bool integral_ = false;
};

// Gauss–Lagrange reduction, dim 2 only: same lattice, basis with
// ‖b1‖ ≤ ‖b2‖ and |<b1,b2>| ≤ ‖b1‖²/2.
Lattice lagrange_reduce(const Lattice& L);

}  // namespace gll
