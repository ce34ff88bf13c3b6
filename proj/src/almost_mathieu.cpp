#include "gll/almost_mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gll {

namespace {

void validate(const AMParams& p) {
  if (!(p.lambda > 0.0)) throw std::invalid_argument("coupling must be positive");
}

double potential(const AMParams& p, long long n) {
  return 2.0 * p.lambda *
         std::cos(2.0 * std::numbers::pi * (p.theta + static_cast<double>(n) * p.alpha));
}

}  // namespace

Eigen::MatrixXd build_truncation(const AMParams& p, int R) {
  validate(p);
  if (R < 1) throw std::invalid_argument("R must be >= 1");
  const int n = 2 * R + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = potential(p, i - R);
    if (i + 1 < n) {
      m(i, i + 1) = 1.0;
      m(i + 1, i) = 1.0;
    }
  }
  return m;
}

EigenPairs spectrum_pairs(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("spectrum needs a nonempty square matrix");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return EigenPairs{es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd spectrum(const Eigen::MatrixXd& m) { return spectrum_pairs(m).values; }

BandList bloch_bands(double lambda, int p, int q, double theta, int k_resolution) {
  if (!(lambda > 0.0)) throw std::invalid_argument("coupling must be positive");
  if (q < 1) throw std::invalid_argument("denominator must be positive");
  if (p < 0 || (q > 1 && p >= q))
    throw std::invalid_argument("numerator must satisfy 0 <= p < q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
  if (k_resolution < 1) throw std::invalid_argument("k grid must be nonempty");

  const double alpha = static_cast<double>(p) / q;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(q, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (int j = 0; j < k_resolution; ++j) {
    const double k = 2.0 * std::numbers::pi * j / k_resolution;
    // H(k) = T + T* + diag, T the in-cell shift with boundary twist e^{ik};
    // built additively so the q <= 2 corner collisions come out right.
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(q, q);
    for (int r = 0; r + 1 < q; ++r) t(r, r + 1) = 1.0;
    t(q - 1, 0) += std::complex<double>{std::cos(k), std::sin(k)};
    Eigen::MatrixXcd h = t + t.adjoint();
    for (int r = 0; r < q; ++r)
      h(r, r) += 2.0 * lambda * std::cos(2.0 * std::numbers::pi * (theta + r * alpha));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("Bloch eigensolver failed");
    lo = lo.cwiseMin(es.eigenvalues());
    hi = hi.cwiseMax(es.eigenvalues());
  }

  std::vector<Band> raw(q);
  for (int b = 0; b < q; ++b) raw[b] = Band{lo(b), hi(b)};
  std::sort(raw.begin(), raw.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  BandList out;
  for (const Band& b : raw) {
    if (!out.empty() && b.lo <= out.back().hi + 1e-9)
      out.back().hi = std::max(out.back().hi, b.hi);
    else
      out.push_back(b);
  }
  return out;
}

double band_distance(const BandList& bands, double e) {
  double d = std::numeric_limits<double>::infinity();
  for (const Band& b : bands) {
    if (e >= b.lo && e <= b.hi) return 0.0;
    d = std::min(d, std::min(std::abs(e - b.lo), std::abs(e - b.hi)));
  }
  return d;
}

std::vector<ButterflyRow> butterfly(double lambda, int q_max, int k_resolution, Exec exec) {
  if (q_max < 2) throw std::invalid_argument("q_max must be >= 2");
  std::vector<std::pair<int, int>> fracs;
  for (int q = 2; q <= q_max; ++q)
    for (int p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) fracs.emplace_back(p, q);

  std::vector<ButterflyRow> rows(fracs.size());
  bool failed = false;
  std::string what;
  auto body = [&](long long i) {
    const auto [p, q] = fracs[static_cast<size_t>(i)];
    rows[i] = ButterflyRow{p, q, bloch_bands(lambda, p, q, 0.0, k_resolution)};
  };
  const long long total = static_cast<long long>(fracs.size());
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long long i = 0; i < total; ++i) {
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
  for (long long i = 0; i < total; ++i) body(i);
  if (failed) throw std::runtime_error(what);
  return rows;
}

double dependence_residual(const Eigen::VectorXcd& u, const AMParams& p, double e) {
  validate(p);
  if (u.size() < 5 || u.size() % 2 == 0)
    throw std::invalid_argument("window must cover [-R, R] with R >= 2");
  if (std::abs(u.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("window values must be normalized");
  const int R = static_cast<int>((u.size() - 1) / 2);

  // The five phase-space atoms (x, y) with their coefficients; applying
  // Σ c · M_y T_x to u and restricting to fully supported rows.
  struct Atom {
    int x;
    double y;
    std::complex<double> c;
  };
  const std::complex<double> mod{std::cos(2.0 * std::numbers::pi * p.theta),
                                 std::sin(2.0 * std::numbers::pi * p.theta)};
  const Atom atoms[5] = {{-1, 0.0, 1.0},
                         {1, 0.0, 1.0},
                         {0, p.alpha, p.lambda * mod},
                         {0, -p.alpha, p.lambda * std::conj(mod)},
                         {0, 0.0, -e}};
  double acc = 0.0;
  for (int n = -R + 1; n <= R - 1; ++n) {
    std::complex<double> r{0.0, 0.0};
    for (const Atom& a : atoms) {
      const double ph = 2.0 * std::numbers::pi * a.y * n;
      r += a.c * std::complex<double>{std::cos(ph), std::sin(ph)} * u(n - a.x + R);
    }
    acc += std::norm(r);
  }
  return std::sqrt(acc);
}

double inverse_participation_ratio(const Eigen::VectorXd& v) {
  const double s2 = v.squaredNorm();
  if (s2 <= 0.0) throw std::invalid_argument("zero vector");
  double s4 = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s4 += v(i) * v(i) * v(i) * v(i);
  return s4 / (s2 * s2);
}

double edge_mass_fraction(const Eigen::VectorXd& v, double edge_fraction) {
  if (v.size() == 0) throw std::invalid_argument("empty vector");
  if (edge_fraction <= 0.0 || edge_fraction >= 0.5)
    throw std::invalid_argument("edge fraction must be in (0, 0.5)");
  const Eigen::Index w = std::max<Eigen::Index>(
      1, static_cast<Eigen::Index>(std::floor(edge_fraction * v.size())));
  const double total = v.squaredNorm();
  if (total <= 0.0) throw std::invalid_argument("zero vector");
  const double outer = v.head(w).squaredNorm() + v.tail(w).squaredNorm();
  return outer / total;
}

}  // namespace gll
