#include "gll/gabor.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gll/quadrature.hpp"

namespace gll {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

double hermite_norm(int degree) {
  double pow2_fact = 1.0;  // 2^n n!
  for (int k = 1; k <= degree; ++k) pow2_fact *= 2.0 * k;
  return std::pow(2.0, 0.25) / std::sqrt(pow2_fact);
}

cd gaussian_inner_closed_form(double width, const PhasePoint& a, const PhasePoint& b) {
  const double s2 = width * width;
  double quad = 0.0, phase = 0.0;
  for (int i = 0; i < a.x.size(); ++i) {
    const double dx = a.x(i) - b.x(i);
    const double dy = a.y(i) - b.y(i);
    quad += dx * dx / s2 + s2 * dy * dy;
    phase += dy * (a.x(i) + b.x(i));
  }
  return std::exp(-0.5 * pi * quad) * std::polar(1.0, pi * phase);
}

// One axis of <pi(a)w, pi(b)w> by adaptive quadrature. The domain is the
// support intersection for compact windows, otherwise a ball that both
// translates' tails have left.
cd axis_inner_quadrature(const Window& w, int axis, double ax, double bx, double dy,
                         double qtol) {
  double lo, hi;
  if (w.compact_support()) {
    lo = std::max(w.support_lo(axis) + ax, w.support_lo(axis) + bx);
    hi = std::min(w.support_hi(axis) + ax, w.support_hi(axis) + bx);
    if (!(lo < hi)) return 0.0;
  } else {
    const double r = w.decay_radius();
    lo = std::min(ax, bx) - r;
    hi = std::max(ax, bx) + r;
  }
  auto f = [&](double t) -> cd {
    return std::polar(1.0, 2.0 * pi * dy * t) * w.eval_axis(axis, t - ax) *
           w.eval_axis(axis, t - bx);
  };
  return integrate(f, lo, hi, qtol).value;
}

cd inner_quadrature(const Window& w, const PhasePoint& a, const PhasePoint& b, double qtol) {
  cd out = 1.0;
  for (int i = 0; i < w.dim(); ++i) {
    out *= axis_inner_quadrature(w, i, a.x(i), b.x(i), a.y(i) - b.y(i), qtol);
    if (out == 0.0) break;
  }
  return out;
}

// The closed form above is load-bearing for every gaussian Gram, so the first
// use cross-checks it against the quadrature path on a fixed random sample.
void validate_gaussian_closed_form() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double width = 0.6 + 0.2 * (trial % 5);
      const Window w = Window::gaussian(1, width);
      PhasePoint a{Eigen::VectorXd(1), Eigen::VectorXd(1)};
      PhasePoint b{Eigen::VectorXd(1), Eigen::VectorXd(1)};
      a.x << unif(rng);
      a.y << unif(rng);
      b.x << unif(rng);
      b.y << unif(rng);
      const cd direct = gaussian_inner_closed_form(width, a, b);
      const cd numeric = inner_quadrature(w, a, b, 1e-12);
      if (std::abs(direct - numeric) > 1e-9)
        throw std::logic_error("gaussian inner-product form disagrees with quadrature");
    }
  });
}

void check_atom(const Window& w, const PhasePoint& p) {
  if (p.x.size() != w.dim() || p.y.size() != w.dim())
    throw std::invalid_argument("atom dimension does not match the window");
}

bool same_atom(const PhasePoint& a, const PhasePoint& b) {
  return a.x == b.x && a.y == b.y;
}

}  // namespace

Window Window::gaussian(int dim, double width) {
  if (dim < 1) throw std::invalid_argument("window dimension must be positive");
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  Window w;
  w.kind_ = Kind::gaussian;
  w.dim_ = dim;
  w.width_ = width;
  return w;
}

Window Window::indicator_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() < 1 || lo.size() != hi.size())
    throw std::invalid_argument("indicator bounds must be nonempty and matched");
  if (((hi - lo).array() <= 0.0).any())
    throw std::invalid_argument("indicator box must have positive side lengths");
  Window w;
  w.kind_ = Kind::indicator;
  w.dim_ = static_cast<int>(lo.size());
  w.lo_ = lo;
  w.hi_ = hi;
  return w;
}

Window Window::hermite(int degree) {
  if (degree < 0) throw std::invalid_argument("hermite degree must be nonnegative");
  if (degree > 120) throw std::invalid_argument("hermite degree beyond the stable range");
  Window w;
  w.kind_ = Kind::hermite;
  w.dim_ = 1;
  w.degree_ = degree;
  return w;
}

double Window::eval_axis(int axis, double t) const {
  switch (kind_) {
    case Kind::gaussian:
      return std::pow(2.0 / (width_ * width_), 0.25) * std::exp(-pi * t * t / (width_ * width_));
    case Kind::indicator:
      return (t >= lo_(axis) && t <= hi_(axis)) ? 1.0 / std::sqrt(hi_(axis) - lo_(axis)) : 0.0;
    case Kind::hermite:
      return hermite_norm(degree_) * std::hermite(static_cast<unsigned>(degree_), std::sqrt(2.0 * pi) * t) *
             std::exp(-pi * t * t);
  }
  return 0.0;
}

double Window::eval(const Eigen::VectorXd& t) const {
  if (t.size() != dim_) throw std::invalid_argument("evaluation point has the wrong dimension");
  double out = 1.0;
  for (int i = 0; i < dim_; ++i) out *= eval_axis(i, t(i));
  return out;
}

double Window::support_lo(int axis) const { return lo_(axis); }
double Window::support_hi(int axis) const { return hi_(axis); }

double Window::decay_radius() const {
  if (kind_ == Kind::gaussian) return 7.0 * width_;
  // Hermite mass sits inside |t| <~ sqrt(degree / pi); the gaussian factor
  // then buries everything a few units further out.
  return 7.0 + std::sqrt(static_cast<double>(degree_));
}

cd atom_inner(const Window& w, const PhasePoint& a, const PhasePoint& b, double qtol) {
  check_atom(w, a);
  check_atom(w, b);
  if (!(qtol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (w.gaussian_kind()) {
    validate_gaussian_closed_form();
    return gaussian_inner_closed_form(w.width(), a, b);
  }
  return inner_quadrature(w, a, b, qtol);
}

namespace {

Eigen::MatrixXcd assemble_gram(const Window& w, const std::vector<PhasePoint>& atoms,
                               double qtol, Exec exec) {
  const int n = static_cast<int>(atoms.size());
  for (const auto& p : atoms) check_atom(w, p);
  Eigen::MatrixXcd g(n, n);
  const int pairs = n * (n + 1) / 2;
  bool failed = false;
  std::string what;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(max_threads()) if (exec == Exec::parallel)
#endif
  for (int idx = 0; idx < pairs; ++idx) {
    if (failed) continue;
    try {
      int i = static_cast<int>((std::sqrt(8.0 * idx + 1.0) - 1.0) / 2.0);
      while ((i + 1) * (i + 2) / 2 <= idx) ++i;
      while (i * (i + 1) / 2 > idx) --i;
      const int j = idx - i * (i + 1) / 2;  // j <= i
      const cd v = atom_inner(w, atoms[j], atoms[i], qtol);
      g(j, i) = v;
      g(i, j) = std::conj(v);
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        failed = true;
        what = e.what();
      }
    }
  }
  if (failed) throw std::runtime_error(what);
  return g;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const Window& w, const std::vector<PhasePoint>& atoms, double qtol,
                             Exec exec) {
  if (atoms.empty()) throw std::invalid_argument("atom family is empty");
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (same_atom(atoms[i], atoms[j]))
        throw std::invalid_argument("atom family contains a duplicate point");
  return assemble_gram(w, atoms, qtol, exec);
}

GramCertificate gram_certificate(const Window& w, const std::vector<PhasePoint>& atoms,
                                 double qtol, Exec exec) {
  GramCertificate cert;
  cert.gram = gram_matrix(w, atoms, qtol, exec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cert.gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("gram eigensolve failed");
  cert.min_eigenvalue = es.eigenvalues()(0);
  cert.independent = cert.min_eigenvalue > 10.0 * qtol * static_cast<double>(atoms.size());
  return cert;
}

DependenceSearch dependence_search(const Window& w, const std::vector<PhasePoint>& atoms,
                                   double qtol, Exec exec) {
  if (atoms.size() < 2)
    throw std::invalid_argument("dependence search needs at least two atoms");
  const Eigen::MatrixXcd g = assemble_gram(w, atoms, qtol, exec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  if (es.info() != Eigen::Success) throw std::runtime_error("gram eigensolve failed");
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace gll
