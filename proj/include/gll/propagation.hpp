#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gll/exec.hpp"
#include "gll/intbox.hpp"

namespace gll {

// Growth rule over ℤ^d: whenever a set contains γ + (C0 \ {gamma0}), the
// point γ + gamma0 joins the set.
struct PropagationRule {
  std::vector<Eigen::VectorXi> c0;
  Eigen::VectorXi gamma0;

  PropagationRule(std::vector<Eigen::VectorXi> pattern, Eigen::VectorXi propagated);
  int dim() const { return static_cast<int>(gamma0.size()); }
  std::vector<Eigen::VectorXi> premises() const;  // C0 \ {gamma0}
};

struct PropagationResult {
  std::vector<Eigen::VectorXi> points;  // sorted by region linear index
  bool clipped;  // some firing target fell outside the region
};

// Least fixpoint of the rule inside `region`, seeded with `seed`.
PropagationResult propagate_set(const PropagationRule& rule,
                                const std::vector<Eigen::VectorXi>& seed,
                                const IntBox& region);

struct ExtremeChoice {
  Eigen::VectorXi gamma0;  // lexicographically largest hull vertex
  Eigen::VectorXi phi;     // primitive; phi·gamma0 < phi·c for all other c
};

ExtremeChoice extreme_point(const std::vector<Eigen::VectorXi>& c0);

// Integer data of the codimension-1 layer construction: phi cuts ℤ^d into
// hyperplane levels, K_basis spans the level-0 sublattice, x steps one
// level, and the pattern minus its propagated point sits in levels 1..m.
struct StripConstruction {
  Eigen::VectorXi phi;
  Eigen::MatrixXi k_basis;  // d x (d-1)
  Eigen::VectorXi x;        // phi·x = 1
  int m;
  double delta;  // Euclidean diameter of C0
};

StripConstruction build_strip(const PropagationRule& rule);

// C_n: points of the strip levels 1..m (relative to the level of gamma0)
// within Euclidean distance n of the origin.
std::vector<Eigen::VectorXi> build_strip_sets(const PropagationRule& rule,
                                              const StripConstruction& strip, int n);

struct GrowthRow {
  int n;
  long long card_c;
  long long card_p;
  bool clipped;
};

struct GrowthSummary {
  std::vector<GrowthRow> rows;
  double slope_c;
  double slope_p;
  bool any_clipped;
};

// Propagates C_n inside a box of half-width 4n + ceil(10*delta) + margin
// for each n and fits log-log slopes of both cardinalities against n.
GrowthSummary growth_exponents(const PropagationRule& rule, const std::vector<int>& n_list,
                               int region_margin = 0, Exec exec = Exec::parallel);

}  // namespace gll
