#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gll/exec.hpp"

namespace gll {

// H u(n) = u(n+1) + u(n-1) + 2λ cos(2π(θ + nα)) u(n) on ℤ.
struct AMParams {
  double lambda = 1.0;
  double alpha = 0.0;
  double theta = 0.0;
};

struct Band {
  double lo, hi;
};
using BandList = std::vector<Band>;

// Dirichlet section on [-R, R]: exactly symmetric tridiagonal.
Eigen::MatrixXd build_truncation(const AMParams& p, int R);

// Ascending eigenvalues; rejects matrices that are not symmetric to 1e-12.
Eigen::VectorXd spectrum(const Eigen::MatrixXd& m);

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column i pairs with values(i)
};
EigenPairs spectrum_pairs(const Eigen::MatrixXd& m);

// Spectrum of the q-periodic operator at α = p/q: union over the
// quasimomentum grid of the q×q Bloch matrix eigenvalues, merged into at
// most q disjoint bands.
BandList bloch_bands(double lambda, int p, int q, double theta, int k_resolution = 512);

double band_distance(const BandList& bands, double e);

struct ButterflyRow {
  int p, q;
  BandList bands;
};

// All reduced fractions p/q with 2 <= q <= q_max, 0 < p < q, θ = 0.
std::vector<ButterflyRow> butterfly(double lambda, int q_max, int k_resolution = 512,
                                    Exec exec = Exec::parallel);

// ℓ² norm over interior positions of the five-term combination
//   u(n+1) + u(n-1) + λe^{2πiθ}e^{2πiαn}u(n) + λe^{-2πiθ}e^{-2πiαn}u(n) - E u(n),
// i.e. the modulation/translation atoms (∓1,0), (0,±α), (0,0) applied to u.
// A small value certifies an approximate dependence among those atoms.
double dependence_residual(const Eigen::VectorXcd& u, const AMParams& p, double e);

// Σ|v|⁴ / (Σ|v|²)²: 1/support-size for flat vectors, 1 for a point mass.
double inverse_participation_ratio(const Eigen::VectorXd& v);

// Fraction of ℓ² mass within edge_fraction of the window length of either
// end; used to discard Dirichlet edge states.
double edge_mass_fraction(const Eigen::VectorXd& v, double edge_fraction = 0.05);

}  // namespace gll
