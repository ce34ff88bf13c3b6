#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "gll/lattice.hpp"

namespace gll {

using cplx = std::complex<double>;

struct FourierTerm {
  Eigen::VectorXi freq;  // integer coordinates in the dual(Λ) basis
  cplx coeff;
};

// Λ-periodic symbol: a finite Fourier series over dual(Λ), or tabulated
// samples on a regular grid over the fundamental domain with periodic
// multilinear interpolation. Fourier form is exactly periodic; tabulated
// symbols are kept out of the 1e-12-grade identities.
class Symbol {
 public:
  static Symbol fourier(std::vector<FourierTerm> terms);
  static Symbol tabulated(std::vector<int> shape, std::vector<cplx> values);

  bool is_fourier() const { return kind_ == Kind::fourier; }
  const std::vector<FourierTerm>& terms() const { return terms_; }

  // dual_basis = period.dual().basis(); period is needed only for the
  // tabulated path (coordinates + wrap).
  cplx eval(const Eigen::MatrixXd& dual_basis, const Lattice& period,
            const Eigen::VectorXd& t) const;

 private:
  Symbol() = default;
  enum class Kind { fourier, tabulated };
  Kind kind_ = Kind::fourier;
  std::vector<FourierTerm> terms_;
  std::vector<int> shape_;
  std::vector<cplx> values_;
};

// The data of the operator S u(γ) = Σ_k ψ_k(x+γ) u(γ+γ_k): orbit lattice Γ,
// period lattice Λ, N distinct shifts (Γ-coordinates), N symbols.
class SymbolSet {
 public:
  SymbolSet(Lattice gamma, Lattice lambda, std::vector<Eigen::VectorXi> shifts,
            std::vector<Symbol> symbols);

  int dim() const { return gamma_.dim(); }
  int n_shifts() const { return static_cast<int>(shifts_.size()); }
  const Lattice& gamma() const { return gamma_; }
  const Lattice& lambda() const { return lambda_; }
  const std::vector<Eigen::VectorXi>& shifts() const { return shifts_; }
  const Symbol& symbol(int k) const { return symbols_[k]; }
  bool all_fourier() const;

  cplx eval_symbol(int k, const Eigen::VectorXd& t) const {
    return symbols_[k].eval(dual_basis_, lambda_, t);
  }

 private:
  Lattice gamma_;
  Lattice lambda_;
  Eigen::MatrixXd dual_basis_;
  std::vector<Eigen::VectorXi> shifts_;
  std::vector<Symbol> symbols_;
};

}  // namespace gll
