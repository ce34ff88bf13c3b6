#include "gll/gabor.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gll/quadrature.hpp"

using gll::atom_inner;
using gll::dependence_search;
using gll::gram_certificate;
using gll::gram_matrix;
using gll::PhasePoint;
using gll::Window;

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

PhasePoint atom(double x, double y) {
  PhasePoint p{Eigen::VectorXd(1), Eigen::VectorXd(1)};
  p.x << x;
  p.y << y;
  return p;
}

PhasePoint atom2(double x0, double x1, double y0, double y1) {
  PhasePoint p{Eigen::VectorXd(2), Eigen::VectorXd(2)};
  p.x << x0, x1;
  p.y << y0, y1;
  return p;
}

// Composite-Simpson oracle for one-dimensional window inner products,
// independent of the adaptive integrator under test.
cd simpson_inner(const Window& w, const PhasePoint& a, const PhasePoint& b, double lo,
                 double hi, int intervals) {
  auto f = [&](double t) -> cd {
    Eigen::VectorXd ta(1), tb(1);
    ta << t - a.x(0);
    tb << t - b.x(0);
    return std::polar(1.0, 2.0 * pi * (a.y(0) - b.y(0)) * t) * w.eval(ta) * w.eval(tb);
  };
  const double h = (hi - lo) / intervals;
  cd acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

}  // namespace

TEST_CASE("adaptive integrator reproduces closed-form integrals") {
  auto sq = [](double t) -> cd { return t * t; };
  auto r = gll::integrate(sq, 0.0, 1.0, 1e-13);
  CHECK(std::abs(r.value - 1.0 / 3.0) <= 1e-13);
  CHECK(r.evaluations >= 15);

  auto wave = [](double t) -> cd { return std::polar(1.0, 2.0 * pi * t); };
  CHECK(std::abs(gll::integrate(wave, 0.0, 1.0, 1e-13).value) <= 1e-13);

  // Oscillatory with known antiderivative: (e^{50i} - 1) / 50i.
  auto osc = [](double t) -> cd { return std::exp(cd{0.0, 50.0 * t}); };
  const cd want = (std::exp(cd{0.0, 50.0}) - 1.0) / cd{0.0, 50.0};
  CHECK(std::abs(gll::integrate(osc, 0.0, 1.0, 1e-12).value - want) <= 1e-12);

  auto gauss = [](double t) -> cd { return std::exp(-pi * t * t); };
  CHECK(std::abs(gll::integrate(gauss, -8.0, 8.0, 1e-13).value - 1.0) <= 1e-12);

  CHECK_THROWS_AS(gll::integrate(sq, 1.0, 1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(gll::integrate(sq, 0.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("integrator reports the reached error when the budget is exhausted") {
  // |t|^{-1/2} is integrable but slow to resolve; 3 intervals cannot do it.
  auto spike = [](double t) -> cd { return 1.0 / std::sqrt(std::abs(t) + 1e-300); };
  CHECK_THROWS_WITH_AS(gll::integrate(spike, -1.0, 1.0, 1e-14, 3),
                       doctest::Contains("stalled"), std::runtime_error);
}

TEST_CASE("windows are built with unit mass") {
  for (double s : {0.5, 1.0, 2.3}) {
    Window w = Window::gaussian(1, s);
    auto f = [&](double t) -> cd {
      Eigen::VectorXd v(1);
      v << t;
      const double g = w.eval(v);
      return g * g;
    };
    CHECK(std::abs(gll::integrate(f, -10.0 * s, 10.0 * s, 1e-12).value - 1.0) <= 1e-10);
  }

  Eigen::VectorXd lo(2), hi(2);
  lo << -0.5, 1.0;
  hi << 0.5, 4.0;
  Window box = Window::indicator_box(lo, hi);
  Eigen::VectorXd inside(2), outside(2);
  inside << 0.0, 2.0;
  outside << 0.7, 2.0;
  CHECK(box.eval(inside) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(box.eval(outside) == 0.0);

  for (int n : {0, 1, 2, 3, 4, 5}) {
    Window h = Window::hermite(n);
    auto f = [&](double t) -> cd {
      Eigen::VectorXd v(1);
      v << t;
      const double g = h.eval(v);
      return g * g;
    };
    CHECK(std::abs(gll::integrate(f, -12.0, 12.0, 1e-12).value - 1.0) <= 1e-10);
  }

  // Distinct degrees are orthogonal.
  Window h0 = Window::hermite(0);
  Window h2 = Window::hermite(2);
  auto cross = [&](double t) -> cd {
    Eigen::VectorXd v(1);
    v << t;
    return h0.eval(v) * h2.eval(v);
  };
  CHECK(std::abs(gll::integrate(cross, -12.0, 12.0, 1e-12).value) <= 1e-10);

  CHECK_THROWS_AS(Window::gaussian(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Window::gaussian(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Window::hermite(-1), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(Window::indicator_box(bad, bad), std::invalid_argument);
}

TEST_CASE("gaussian inner products match the independent oracle") {
  Window w = Window::gaussian(1, 1.0);

  const cd unit_shift = atom_inner(w, atom(0.0, 0.0), atom(1.0, 0.0));
  CHECK(std::abs(std::abs(unit_shift) - std::exp(-pi / 2.0)) <= 1e-12);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    PhasePoint a = atom(unif(rng), unif(rng));
    PhasePoint b = atom(unif(rng), unif(rng));
    const cd direct = atom_inner(w, a, b);
    const cd oracle = simpson_inner(w, a, b, -12.0, 12.0, 48000);
    CHECK(std::abs(direct - oracle) <= 1e-9);
    CHECK(std::abs(direct - std::conj(atom_inner(w, b, a))) <= 1e-14);
  }

  // Two dimensions factor across axes.
  Window w2 = Window::gaussian(2, 1.0);
  const cd prod = atom_inner(w2, atom2(0.0, 0.0, 0.0, 0.0), atom2(1.0, 0.0, 0.0, 2.0));
  const cd f1 = atom_inner(w, atom(0.0, 0.0), atom(1.0, 0.0));
  const cd f2 = atom_inner(w, atom(0.0, 0.0), atom(0.0, 2.0));
  CHECK(std::abs(prod - f1 * f2) <= 1e-14);

  CHECK_THROWS_AS(atom_inner(w2, atom(0.0, 0.0), atom2(0.0, 0.0, 0.0, 0.0), 1e-12),
                  std::invalid_argument);
  CHECK_THROWS_AS(atom_inner(w, atom(0.0, 0.0), atom(1.0, 0.0), 0.0), std::invalid_argument);
}

TEST_CASE("hermite and indicator inner products match the oracle") {
  Window h1 = Window::hermite(1);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int trial = 0; trial < 8; ++trial) {
    PhasePoint a = atom(unif(rng), unif(rng));
    PhasePoint b = atom(unif(rng), unif(rng));
    const cd direct = atom_inner(h1, a, b, 1e-12);
    const cd oracle = simpson_inner(h1, a, b, -14.0, 14.0, 56000);
    CHECK(std::abs(direct - oracle) <= 1e-9);
  }

  Eigen::VectorXd lo(1), hi(1);
  lo << -0.5;
  hi << 0.5;
  Window box = Window::indicator_box(lo, hi);
  // Overlap 1/2, constant density 1: plain Fourier integral over [0, 1/2].
  const cd got = atom_inner(box, atom(0.0, 0.0), atom(-0.5, 1.0), 1e-12);
  const cd want = (std::exp(cd{0.0, -2.0 * pi * 0.5}) - 1.0) / cd{0.0, -2.0 * pi};
  CHECK(std::abs(got - std::conj(want)) <= 1e-11);
  // No overlap at all: exactly zero.
  CHECK(atom_inner(box, atom(0.0, 0.0), atom(2.0, 0.3), 1e-12) == cd{0.0, 0.0});
}

TEST_CASE("two unit-separated gaussian atoms have the pinned bottom eigenvalue") {
  Window w = Window::gaussian(1, 1.0);
  auto cert = gram_certificate(w, {atom(0.0, 0.0), atom(1.0, 0.0)});
  CHECK(std::abs(cert.min_eigenvalue - (1.0 - std::exp(-pi / 2.0))) <= 1e-9);
  CHECK(cert.independent);
  CHECK(cert.gram.rows() == 2);
  CHECK(std::abs(cert.gram(0, 0) - 1.0) <= 1e-12);
}

TEST_CASE("a duplicated atom is flagged by the gram and found by the search") {
  Window w = Window::gaussian(1, 1.0);
  std::vector<PhasePoint> dup = {atom(0.3, -0.4), atom(0.3, -0.4), atom(1.0, 0.2)};
  CHECK_THROWS_WITH_AS(gram_matrix(w, dup), doctest::Contains("duplicate"),
                       std::invalid_argument);
  auto dep = dependence_search(w, dup);
  CHECK(std::abs(dep.min_eigenvalue) <= 1e-12);
  CHECK(std::abs(std::abs(dep.coefficients(0)) - 1.0 / std::sqrt(2.0)) <= 1e-8);
  CHECK(std::abs(std::abs(dep.coefficients(1)) - 1.0 / std::sqrt(2.0)) <= 1e-8);
  CHECK(std::abs(dep.coefficients(2)) <= 1e-8);
  CHECK_THROWS_AS(dependence_search(w, {atom(0.0, 0.0)}), std::invalid_argument);
  CHECK_THROWS_AS(gram_matrix(w, {}), std::invalid_argument);
}

TEST_CASE("disjoint indicator atoms give the identity gram") {
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.0;
  hi << 1.0;
  Window box = Window::indicator_box(lo, hi);
  std::vector<PhasePoint> atoms = {atom(0.0, 0.0), atom(1.5, 0.7), atom(-3.0, 0.2)};
  Eigen::MatrixXcd g = gram_matrix(box, atoms);
  CHECK((g - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("a 3x3 unit grid of gaussian atoms is certified independent") {
  Window w = Window::gaussian(1, 1.0);
  std::vector<PhasePoint> atoms;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) atoms.push_back(atom(i, j));
  auto cert = gram_certificate(w, atoms);
  CHECK(cert.independent);
  CHECK(cert.min_eigenvalue > 1e-8);
  CHECK((cert.gram - cert.gram.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adding atoms never raises the bottom eigenvalue") {
  Window w = Window::gaussian(1, 1.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::vector<PhasePoint> atoms = {atom(unif(rng), unif(rng)), atom(unif(rng), unif(rng))};
  double prev = gram_certificate(w, atoms).min_eigenvalue;
  for (int step = 0; step < 5; ++step) {
    atoms.push_back(atom(unif(rng), unif(rng)));
    const double next = gram_certificate(w, atoms).min_eigenvalue;
    CHECK(next <= prev + 1e-12);
    prev = next;
  }
}

TEST_CASE("bottom eigenvalue is invariant under phase-space translation") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  Window w = Window::gaussian(1, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<PhasePoint> atoms, shifted;
    const double tx = unif(rng), ty = unif(rng);
    for (int k = 0; k < 4; ++k) {
      PhasePoint p = atom(unif(rng), unif(rng));
      atoms.push_back(p);
      shifted.push_back(atom(p.x(0) + tx, p.y(0) + ty));
    }
    const double base = gram_certificate(w, atoms).min_eigenvalue;
    const double moved = gram_certificate(w, shifted).min_eigenvalue;
    CHECK(std::abs(base - moved) <= 1e-8);
  }
}

TEST_CASE("bottom eigenvalue is invariant under the quarter rotation") {
  // Width 1 is the fixed point of the fourier transform, so the rotated
  // family has the same gram spectrum.
  Window w = Window::gaussian(1, 1.0);
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<PhasePoint> atoms, rotated;
    for (int k = 0; k < 4; ++k) {
      PhasePoint p = atom(unif(rng), unif(rng));
      atoms.push_back(p);
      rotated.push_back(atom(-p.y(0), p.x(0)));
    }
    const double base = gram_certificate(w, atoms).min_eigenvalue;
    const double turned = gram_certificate(w, rotated).min_eigenvalue;
    CHECK(std::abs(base - turned) <= 1e-8);
  }
}

TEST_CASE("random integer-grid families stay uniformly independent") {
  Window w = Window::gaussian(1, 1.0);
  std::mt19937 rng(606);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> size(2, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PhasePoint> atoms;
    const int n = size(rng);
    while (static_cast<int>(atoms.size()) < n) {
      PhasePoint p = atom(coord(rng), coord(rng));
      bool seen = false;
      for (const auto& q : atoms) seen = seen || (q.x == p.x && q.y == p.y);
      if (!seen) atoms.push_back(p);
    }
    auto cert = gram_certificate(w, atoms);
    CHECK(cert.min_eigenvalue > 1e-8);
    CHECK(cert.independent);
  }
}
