#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gll/exec.hpp"
#include "gll/intbox.hpp"
#include "gll/symbols.hpp"

namespace gll {

// One fiber S_x u(γ) = Σ_k ψ_k(x+γ) u(γ+γ_k) acting on ℓ²(Γ-coordinates).
// The base point is stored reduced mod Λ; coefficients depend only on that.
class FiberOperator {
 public:
  FiberOperator(std::shared_ptr<const SymbolSet> s, const Eigen::VectorXd& x);

  const SymbolSet& symbols() const { return *set_; }
  std::shared_ptr<const SymbolSet> symbols_ptr() const { return set_; }
  const Eigen::VectorXd& base_point() const { return base_; }

  // ψ_k at the orbit point x + Γ·γ.
  cplx coeff(int k, const Eigen::VectorXi& gamma) const;

 private:
  std::shared_ptr<const SymbolSet> set_;
  Eigen::VectorXd base_;
};

FiberOperator fiberize(std::shared_ptr<const SymbolSet> s, const Eigen::VectorXd& x);

// True iff every coefficient of every row with index in `box` clears `floor`.
bool certify_nonvanishing(const SymbolSet& s, const Eigen::VectorXd& x,
                          const IntBox& box, double floor_val);

// Finite section on unknowns u(γ), γ ∈ box, keeping only rows whose full
// stencil lands inside the box. rows is always a (possibly much) smaller
// interval product than box, so matrix is |rows| x |box| with
// |rows| <= |box|.
struct RectTruncation {
  IntBox box;
  IntBox rows;
  Eigen::MatrixXcd matrix;
};

RectTruncation truncate_rect(const FiberOperator& f, const IntBox& box);

// Numerical kernel: |box| minus the count of singular values above
// tol * s_max. The |box| - |rows| structurally free unknowns are part of it.
int kernel_dim(const RectTruncation& t, double tol = 1e-10);

// Orthonormal basis of the numerical kernel, |box| x kernel_dim.
Eigen::MatrixXcd kernel_basis(const RectTruncation& t, double tol = 1e-10);

// d=1 only: extend window values u(m_1), ..., u(m_N - 1) to all of [-R, R]
// by solving each fully supported row for its extreme unknown. Throws if a
// pivot coefficient |ψ_N| or |ψ_1| falls below floor_val on the orbit.
Eigen::VectorXcd propagate_recurrence_d1(const FiberOperator& f,
                                         const Eigen::VectorXcd& window, int R,
                                         double floor_val = 1e-12);

// Max entrywise deviation between the γ0-conjugated fiber at x and the
// fiber at x - Γ·γ0, both truncated compatibly over `box`. Zero in exact
// arithmetic for every symbol set.
double check_conjugation(const SymbolSet& s, const Eigen::VectorXd& x,
                         const Eigen::VectorXi& gamma0, const IntBox& box);

// d=1: largest fraction of kernel mass an ℓ²-normalized kernel element of
// the [-R, R] section can carry on the subwindow [-floor(f*R), floor(f*R)].
double window_solution_mass_profile(const FiberOperator& f, int R,
                                    double inner_fraction, double tol = 1e-10);

struct KernelSweepRow {
  Eigen::VectorXd x;
  int R;
  int kernel_dim;
  double smin, smax;
};

// (x, R) grid of d=1 sections; rows come back in (x, R) loop order no
// matter how the work is scheduled.
std::vector<KernelSweepRow> kernel_sweep(std::shared_ptr<const SymbolSet> s,
                                         const std::vector<Eigen::VectorXd>& xs,
                                         const std::vector<int>& Rs,
                                         double tol = 1e-10,
                                         Exec exec = Exec::parallel);

}  // namespace gll
