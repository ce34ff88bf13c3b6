#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gll/lattice.hpp"

namespace gll {

// Phase-space point (x, y) in R^d x R^d: x translates, y modulates.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

// [v,w] = x_v·y_w − x_w·y_v for v=(x_v,y_v), w=(x_w,y_w).
double symplectic_form(const Eigen::VectorXd& v, const Eigen::VectorXd& w);

// max-entry of σᵀJσ − J compared against tol.
bool is_symplectic(const Eigen::MatrixXd& sigma, double tol);

struct ProductReduction {
  Eigen::Matrix2d sigma;  // SL2; sigma·L = alpha·Z × beta·Z
  double alpha;
  double beta;
};

// Constructive d=1 reduction: compose Lagrange reduction, a rotation taking
// the short generator to the x-axis, and a shear killing the x-component of
// the other one. Axis-aligned bases short-circuit to sigma = identity.
ProductReduction reduce_to_product_d1(const Lattice& L);

// Bounded search for a Z-basis {v1..v4} of L with |[v1,v2]| and |[v3,v4]| <= tol.
// Enumerates unimodular column combinations with coefficients in
// [-coeff_bound, coeff_bound]; returns the lexicographically first hit as
// basis columns, or nullopt. A nullopt is bounded evidence, not a proof.
std::optional<Eigen::Matrix4d> product_basis_search(const Lattice& L, int coeff_bound = 3,
                                                    double tol = 1e-9);

// {σ·a + shift : a ∈ A}, order and multiplicity preserved. σ must pass
// is_symplectic at 1e-9.
std::vector<PhasePoint> apply_to_atoms(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& shift,
                                       const std::vector<PhasePoint>& atoms);

}  // namespace gll
