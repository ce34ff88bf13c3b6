#include "gll/fiber.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gll {

FiberOperator::FiberOperator(std::shared_ptr<const SymbolSet> s, const Eigen::VectorXd& x)
    : set_(std::move(s)) {
  if (!set_) throw std::invalid_argument("fiber needs a symbol set");
  if (x.size() != set_->dim()) throw std::invalid_argument("base point dimension mismatch");
  base_ = set_->lambda().reduce_mod(x);
}

cplx FiberOperator::coeff(int k, const Eigen::VectorXi& gamma) const {
  return set_->eval_symbol(k, base_ + set_->gamma().embed(gamma));
}

FiberOperator fiberize(std::shared_ptr<const SymbolSet> s, const Eigen::VectorXd& x) {
  return FiberOperator(std::move(s), x);
}

bool certify_nonvanishing(const SymbolSet& s, const Eigen::VectorXd& x, const IntBox& box,
                          double floor_val) {
  if (floor_val <= 0.0) throw std::invalid_argument("floor must be positive");
  if (box.dim() != s.dim()) throw std::invalid_argument("box dimension mismatch");
  FiberOperator f(std::make_shared<SymbolSet>(s), x);
  const long long n = box.size();
  for (long long i = 0; i < n; ++i) {
    const Eigen::VectorXi g = box.point(i);
    for (int k = 0; k < s.n_shifts(); ++k)
      if (std::abs(f.coeff(k, g)) < floor_val) return false;
  }
  return true;
}

RectTruncation truncate_rect(const FiberOperator& f, const IntBox& box) {
  const SymbolSet& s = f.symbols();
  const int d = s.dim();
  if (box.dim() != d) throw std::invalid_argument("box dimension mismatch");
  if (box.size() == 0) throw std::invalid_argument("empty truncation box");

  // Row γ is kept iff γ + γ_k stays in the box for every shift, which is
  // again an interval product.
  IntBox rows;
  rows.lo = box.lo;
  rows.hi = box.hi;
  for (int i = 0; i < d; ++i) {
    int smin = s.shifts()[0](i), smax = s.shifts()[0](i);
    for (const auto& sh : s.shifts()) {
      smin = std::min(smin, sh(i));
      smax = std::max(smax, sh(i));
    }
    rows.lo(i) = box.lo(i) - smin;
    rows.hi(i) = box.hi(i) - smax;
    if (rows.hi(i) < rows.lo(i))
      throw std::invalid_argument("truncation box too small: no fully supported rows");
  }

  RectTruncation t;
  t.box = box;
  t.rows = rows;
  t.matrix = Eigen::MatrixXcd::Zero(rows.size(), box.size());
  const long long nr = rows.size();
  for (long long r = 0; r < nr; ++r) {
    const Eigen::VectorXi g = rows.point(r);
    for (int k = 0; k < s.n_shifts(); ++k)
      t.matrix(r, box.index(g + s.shifts()[k])) = f.coeff(k, g);
  }
  return t;
}

namespace {

struct KernelStats {
  int dim;
  double smin, smax;
};

KernelStats kernel_stats(const RectTruncation& t, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(t.matrix);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) >= tol * smax) ++rank;
  KernelStats ks;
  ks.dim = static_cast<int>(t.matrix.cols()) - rank;
  ks.smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  ks.smax = smax;
  return ks;
}

}  // namespace

int kernel_dim(const RectTruncation& t, double tol) { return kernel_stats(t, tol).dim; }

Eigen::MatrixXcd kernel_basis(const RectTruncation& t, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(t.matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) >= tol * smax) ++rank;
  return svd.matrixV().rightCols(t.matrix.cols() - rank);
}

Eigen::VectorXcd propagate_recurrence_d1(const FiberOperator& f, const Eigen::VectorXcd& window,
                                         int R, double floor_val) {
  const SymbolSet& s = f.symbols();
  if (s.dim() != 1) throw std::invalid_argument("recurrence propagation is one-dimensional");
  if (R < 1) throw std::invalid_argument("R must be >= 1");
  if (floor_val <= 0.0) throw std::invalid_argument("floor must be positive");

  const int N = s.n_shifts();
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.shifts()[a](0) < s.shifts()[b](0); });
  const int m_lo = s.shifts()[order.front()](0);
  const int m_hi = s.shifts()[order.back()](0);
  if (window.size() != m_hi - m_lo)
    throw std::invalid_argument("window length must match the shift spread");
  if (m_lo < -R || m_hi - 1 > R)
    throw std::invalid_argument("window must sit inside [-R, R]");

  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(2 * R + 1);
  for (int i = 0; i < window.size(); ++i) u(m_lo + i + R) = window(i);

  Eigen::VectorXi pt(1);
  auto pivot_error = [](int n, double mag, double floor_v) {
    std::ostringstream os;
    os << "pivot coefficient magnitude " << mag << " below floor " << floor_v
       << " at orbit point " << n;
    return std::runtime_error(os.str());
  };

  // Forward: row n determines u(n + m_hi); backward: row n determines
  // u(n + m_lo). Each row consulted is fully supported in [-R, R].
  for (int n = 0; n + m_hi <= R; ++n) {
    pt(0) = n;
    const cplx piv = f.coeff(order.back(), pt);
    if (std::abs(piv) < floor_val) throw pivot_error(n, std::abs(piv), floor_val);
    cplx acc{0.0, 0.0};
    for (int j = 0; j + 1 < N; ++j)
      acc += f.coeff(order[j], pt) * u(n + s.shifts()[order[j]](0) + R);
    u(n + m_hi + R) = -acc / piv;
  }
  for (int n = -1; n + m_lo >= -R; --n) {
    pt(0) = n;
    const cplx piv = f.coeff(order.front(), pt);
    if (std::abs(piv) < floor_val) throw pivot_error(n, std::abs(piv), floor_val);
    cplx acc{0.0, 0.0};
    for (int j = 1; j < N; ++j)
      acc += f.coeff(order[j], pt) * u(n + s.shifts()[order[j]](0) + R);
    u(n + m_lo + R) = -acc / piv;
  }
  return u;
}

double check_conjugation(const SymbolSet& s, const Eigen::VectorXd& x,
                         const Eigen::VectorXi& gamma0, const IntBox& box) {
  if (gamma0.size() != s.dim()) throw std::invalid_argument("gamma0 dimension mismatch");
  if (box.dim() != s.dim()) throw std::invalid_argument("box dimension mismatch");
  auto sp = std::make_shared<SymbolSet>(s);

  // Conjugating by the shift γ0 relabels rows and columns of the fiber at
  // x by -γ0, so its section over `box` equals the section of the same
  // fiber over box - γ0. Compare that against the fiber at x - Γ·γ0 over
  // `box` itself: the two matrices are index-aligned and equal in exact
  // arithmetic.
  const RectTruncation a = truncate_rect(fiberize(sp, x), box.shifted(-gamma0));
  const RectTruncation b =
      truncate_rect(fiberize(sp, x - s.gamma().embed(gamma0)), box);
  return (a.matrix - b.matrix).cwiseAbs().maxCoeff();
}

double window_solution_mass_profile(const FiberOperator& f, int R, double inner_fraction,
                                    double tol) {
  if (f.symbols().dim() != 1)
    throw std::invalid_argument("mass profile is one-dimensional");
  if (R < 1) throw std::invalid_argument("R must be >= 1");
  if (inner_fraction <= 0.0) return 0.0;
  if (inner_fraction >= 1.0) throw std::invalid_argument("inner fraction must be < 1");

  const RectTruncation t = truncate_rect(f, interval(-R, R));
  const Eigen::MatrixXcd K = kernel_basis(t, tol);
  if (K.cols() == 0)
    throw std::runtime_error("trivial kernel: no window solutions to profile");

  const int h = static_cast<int>(std::floor(inner_fraction * R));
  const Eigen::MatrixXcd inner = K.middleRows(R - h, 2 * h + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner.adjoint() * inner);
  const double top = es.eigenvalues().maxCoeff();
  return std::clamp(top, 0.0, 1.0);
}

std::vector<KernelSweepRow> kernel_sweep(std::shared_ptr<const SymbolSet> s,
                                         const std::vector<Eigen::VectorXd>& xs,
                                         const std::vector<int>& Rs, double tol, Exec exec) {
  if (!s) throw std::invalid_argument("kernel sweep needs a symbol set");
  if (s->dim() != 1) throw std::invalid_argument("kernel sweep is one-dimensional");
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  for (int R : Rs)
    if (R < 1) throw std::invalid_argument("R must be >= 1");
  for (const auto& x : xs)
    if (x.size() != 1) throw std::invalid_argument("base point dimension mismatch");

  const long long n = static_cast<long long>(xs.size()) * static_cast<long long>(Rs.size());
  std::vector<KernelSweepRow> rows(n);
  bool failed = false;
  std::string what;

  auto body = [&](long long i) {
    const auto& x = xs[static_cast<size_t>(i) / Rs.size()];
    const int R = Rs[static_cast<size_t>(i) % Rs.size()];
    const RectTruncation t = truncate_rect(fiberize(s, x), interval(-R, R));
    const KernelStats ks = kernel_stats(t, tol);
    rows[i] = KernelSweepRow{x, R, ks.dim, ks.smin, ks.smax};
  };

#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long long i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
#pragma omp critical
        {
          failed = true;
          what = e.what();
        }
      }
    }
    if (failed) throw std::runtime_error(what);
    return rows;
  }
#endif
  (void)exec;
  for (long long i = 0; i < n; ++i) body(i);
  if (failed) throw std::runtime_error(what);
  return rows;
}

}  // namespace gll
