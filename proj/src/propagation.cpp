#include "gll/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace gll {

namespace {

int vec_gcd(const Eigen::VectorXi& v) {
  int g = 0;
  for (int i = 0; i < v.size(); ++i) g = std::gcd(g, std::abs(v(i)));
  return g;
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

}  // namespace

PropagationRule::PropagationRule(std::vector<Eigen::VectorXi> pattern,
                                 Eigen::VectorXi propagated)
    : c0(std::move(pattern)), gamma0(std::move(propagated)) {
  if (c0.size() < 2) throw std::invalid_argument("pattern needs at least two points");
  const auto d = gamma0.size();
  std::set<std::vector<int>> seen;
  bool found = false;
  for (const auto& p : c0) {
    if (p.size() != d) throw std::invalid_argument("pattern dimension mismatch");
    if (!seen.insert({p.data(), p.data() + p.size()}).second)
      throw std::invalid_argument("pattern points must be distinct");
    if (p == gamma0) found = true;
  }
  if (!found) throw std::invalid_argument("propagated point must belong to the pattern");
}

std::vector<Eigen::VectorXi> PropagationRule::premises() const {
  std::vector<Eigen::VectorXi> out;
  for (const auto& p : c0)
    if (p != gamma0) out.push_back(p);
  return out;
}

PropagationResult propagate_set(const PropagationRule& rule,
                                const std::vector<Eigen::VectorXi>& seed,
                                const IntBox& region) {
  if (region.dim() != rule.dim()) throw std::invalid_argument("region dimension mismatch");
  if (region.size() <= 0) throw std::invalid_argument("empty region");
  if (region.size() > 4'000'000'000LL)
    throw std::runtime_error("region too large to index");

  const auto prem = rule.premises();
  std::vector<bool> inset(static_cast<size_t>(region.size()), false);
  std::vector<long long> work, added;
  long long count = 0;

  for (const auto& p : seed) {
    if (p.size() != rule.dim()) throw std::invalid_argument("seed dimension mismatch");
    if (!region.contains(p)) throw std::invalid_argument("seed must lie inside the region");
    const long long idx = region.index(p);
    if (!inset[static_cast<size_t>(idx)]) {
      inset[static_cast<size_t>(idx)] = true;
      work.push_back(idx);
      added.push_back(idx);
      ++count;
    }
  }

  bool clipped = false;
  Eigen::VectorXi gamma(rule.dim()), q(rule.dim()), t(rule.dim());
  while (!work.empty()) {
    const Eigen::VectorXi p = region.point(work.back());
    work.pop_back();
    // p can only complete premise sets of bases γ = p - c, c a premise.
    for (const auto& c : prem) {
      gamma = p - c;
      bool all = true;
      for (const auto& c2 : prem) {
        q = gamma + c2;
        if (!region.contains(q) || !inset[static_cast<size_t>(region.index(q))]) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      t = gamma + rule.gamma0;
      if (!region.contains(t)) {
        clipped = true;
        continue;
      }
      const long long ti = region.index(t);
      if (!inset[static_cast<size_t>(ti)]) {
        inset[static_cast<size_t>(ti)] = true;
        work.push_back(ti);
        added.push_back(ti);
        if (++count > 100'000'000LL)
          throw std::runtime_error("fixpoint exceeded the 1e8 point cap");
      }
    }
  }

  std::sort(added.begin(), added.end());
  PropagationResult res;
  res.clipped = clipped;
  res.points.reserve(added.size());
  for (long long idx : added) res.points.push_back(region.point(idx));
  return res;
}

ExtremeChoice extreme_point(const std::vector<Eigen::VectorXi>& c0) {
  if (c0.size() < 2) throw std::invalid_argument("need at least two pattern points");
  const auto d = c0.front().size();
  for (const auto& p : c0)
    if (p.size() != d) throw std::invalid_argument("pattern dimension mismatch");

  // The lexicographically largest point is always a hull vertex.
  Eigen::VectorXi g0 = c0.front();
  for (const auto& p : c0)
    if (lex_less(g0, p)) g0 = p;

  // Smallest primitive integer functional (sup-norm, then lex order) that
  // strictly separates g0 from the rest. One exists because g0 is a
  // vertex; the search is deterministic, which downstream tests rely on.
  for (int s = 1; s <= 512; ++s) {
    IntBox shell = centered_box(static_cast<int>(d), s);
    const long long total = shell.size();
    for (long long i = 0; i < total; ++i) {
      const Eigen::VectorXi phi = shell.point(i);
      if (phi.cwiseAbs().maxCoeff() != s) continue;
      if (vec_gcd(phi) != 1) continue;
      const long long at0 = phi.cast<long long>().dot(g0.cast<long long>());
      bool strict = true;
      for (const auto& c : c0) {
        if (c == g0) continue;
        if (phi.cast<long long>().dot(c.cast<long long>()) <= at0) {
          strict = false;
          break;
        }
      }
      if (strict) return ExtremeChoice{g0, phi};
    }
  }
  throw std::logic_error("no separating functional found within the search bound");
}

StripConstruction build_strip(const PropagationRule& rule) {
  const ExtremeChoice ex = extreme_point(rule.c0);
  if (ex.gamma0 != rule.gamma0)
    throw std::invalid_argument(
        "rule propagates a point other than the canonical hull vertex");
  const int d = rule.dim();

  StripConstruction strip;
  strip.phi = ex.phi;

  // Column-reduce phi to a single ±1 entry with unimodular operations;
  // the untouched columns of the accumulated matrix span ker(phi) and the
  // pivot column (up to sign) steps one level.
  Eigen::VectorXi r = ex.phi;
  Eigen::MatrixXi U = Eigen::MatrixXi::Identity(d, d);
  auto nonzeros = [&]() {
    int n = 0;
    for (int i = 0; i < d; ++i)
      if (r(i) != 0) ++n;
    return n;
  };
  while (nonzeros() > 1) {
    int j = -1;
    for (int i = 0; i < d; ++i)
      if (r(i) != 0 && (j < 0 || std::abs(r(i)) < std::abs(r(j)))) j = i;
    for (int i = 0; i < d; ++i) {
      if (i == j || r(i) == 0) continue;
      const int q = r(i) / r(j);
      r(i) -= q * r(j);
      U.col(i) -= q * U.col(j);
    }
  }
  int pivot = 0;
  while (r(pivot) == 0) ++pivot;

  strip.x = (r(pivot) == 1 ? 1 : -1) * U.col(pivot);
  strip.k_basis.resize(d, d - 1);
  int col = 0;
  for (int i = 0; i < d; ++i)
    if (i != pivot) strip.k_basis.col(col++) = U.col(i);

  long long worst = 1;
  const long long at0 = ex.phi.cast<long long>().dot(rule.gamma0.cast<long long>());
  double diam = 0.0;
  for (const auto& c : rule.c0) {
    worst = std::max(worst, ex.phi.cast<long long>().dot(c.cast<long long>()) - at0);
    for (const auto& c2 : rule.c0)
      diam = std::max(diam, (c - c2).cast<double>().norm());
  }
  strip.m = static_cast<int>(worst);
  strip.delta = diam;
  return strip;
}

std::vector<Eigen::VectorXi> build_strip_sets(const PropagationRule& rule,
                                              const StripConstruction& strip, int n) {
  const int d = rule.dim();
  if (n < 1) throw std::invalid_argument("radius must be positive");
  if (strip.phi.size() != d || strip.x.size() != d || strip.k_basis.rows() != d ||
      strip.k_basis.cols() != d - 1)
    throw std::invalid_argument("strip data has wrong dimensions");
  if (vec_gcd(strip.phi) != 1) throw std::invalid_argument("level functional not primitive");
  if (strip.m < 1 || strip.delta <= 0.0)
    throw std::invalid_argument("strip thickness and diameter must be positive");
  for (int j = 0; j + 1 < d; ++j)
    if (strip.phi.dot(strip.k_basis.col(j)) != 0)
      throw std::invalid_argument("level sublattice basis does not annihilate phi");
  if (strip.phi.dot(strip.x) != 1)
    throw std::invalid_argument("quotient generator must advance one level");
  const long long at0 = strip.phi.cast<long long>().dot(rule.gamma0.cast<long long>());
  for (const auto& c : rule.c0) {
    if (c == rule.gamma0) continue;
    const long long lvl = strip.phi.cast<long long>().dot(c.cast<long long>()) - at0;
    if (lvl < 1 || lvl > strip.m)
      throw std::invalid_argument("pattern escapes the strip levels");
  }

  std::vector<Eigen::VectorXi> out;
  IntBox cube = centered_box(d, n);
  const long long total = cube.size();
  const long long n2 = static_cast<long long>(n) * n;
  for (long long i = 0; i < total; ++i) {
    const Eigen::VectorXi v = cube.point(i);
    if (v.cast<long long>().squaredNorm() > n2) continue;
    const long long lvl = strip.phi.cast<long long>().dot(v.cast<long long>()) - at0;
    if (lvl >= 1 && lvl <= strip.m) out.push_back(v);
  }
  return out;
}

GrowthSummary growth_exponents(const PropagationRule& rule, const std::vector<int>& n_list,
                               int region_margin, Exec exec) {
  if (n_list.size() < 4) throw std::invalid_argument("need at least four radii");
  for (size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("radii must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("radii must be strictly increasing");
  }
  if (region_margin < 0) throw std::invalid_argument("region margin must be nonnegative");

  const StripConstruction strip = build_strip(rule);
  const int pad = static_cast<int>(std::ceil(10.0 * strip.delta)) + region_margin;

  std::vector<GrowthRow> rows(n_list.size());
  bool failed = false;
  std::string what;
  auto body = [&](long long i) {
    const int n = n_list[static_cast<size_t>(i)];
    const auto cn = build_strip_sets(rule, strip, n);
    const IntBox region = centered_box(rule.dim(), 4 * n + pad);
    const PropagationResult p = propagate_set(rule, cn, region);
    rows[i] = GrowthRow{n, static_cast<long long>(cn.size()),
                        static_cast<long long>(p.points.size()), p.clipped};
  };

  const long long total = static_cast<long long>(n_list.size());
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
  } else
#endif
  {
    (void)exec;
    for (long long i = 0; i < total; ++i) body(i);
  }

  auto fit = [&](auto&& pick) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& row : rows) {
      const long long c = pick(row);
      if (c <= 0) continue;
      const double lx = std::log(static_cast<double>(row.n));
      const double ly = std::log(static_cast<double>(c));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++k;
    }
    if (k < 2) throw std::runtime_error("not enough nonempty rows to fit growth slopes");
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
  };

  GrowthSummary out;
  out.rows = rows;
  out.slope_c = fit([](const GrowthRow& r) { return r.card_c; });
  out.slope_p = fit([](const GrowthRow& r) { return r.card_p; });
  out.any_clipped = false;
  for (const auto& r : rows) out.any_clipped = out.any_clipped || r.clipped;
  return out;
}

}  // namespace gll
