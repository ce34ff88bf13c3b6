// Release gate: eight numbered end-to-end checks, one PASS/FAIL line each.
// Usage: gll_acceptance <path-to-cli-binary>. Exits nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "gll/almost_mathieu.hpp"
#include "gll/fiber.hpp"
#include "gll/gabor.hpp"
#include "gll/lattice.hpp"
#include "gll/propagation.hpp"
#include "gll/symplectic.hpp"

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Eigen::VectorXi vi(std::initializer_list<int> v) {
  Eigen::VectorXi out(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) out(i++) = x;
  return out;
}

struct Outcome {
  bool ok;
  std::string detail;
};

// ---- 1: exact kernel-dimension law ------------------------------------

Outcome kernel_law() {
  constexpr double kSvdTol = 1e-10;
  constexpr double kFloor = 1e-3;
  constexpr double kBudgetSeconds = 30.0;
  const std::vector<int> radii = {10, 50, 200};

  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    int spread = 0;
    auto set = ensemble::random_set(rng, trial % 2 == 1, spread, 2, /*shift_bound=*/3);
    const Eigen::VectorXd x = ensemble::random_x(rng, 3.0);
    if (!gll::certify_nonvanishing(*set, x, gll::interval(-205, 205), kFloor))
      return {false, "family " + std::to_string(trial) + " failed the coefficient floor"};
    const gll::FiberOperator f = gll::fiberize(set, x);
    for (int r : radii) {
      const int dim = gll::kernel_dim(gll::truncate_rect(f, gll::interval(-r, r)), kSvdTol);
      if (dim != spread)
        return {false, "family " + std::to_string(trial) + " at R=" + std::to_string(r) +
                           ": kernel dim " + std::to_string(dim) + " != spread " +
                           std::to_string(spread)};
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= kBudgetSeconds)
    return {false, "exceeded the 30 s budget: " + std::to_string(elapsed) + " s"};
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << "100 families x {10,50,200} in " << elapsed << " s";
  return {true, ss.str()};
}

// ---- 2: conjugation covariance ----------------------------------------

Outcome conjugation() {
  constexpr double kTol = 1e-12;
  std::mt19937 rng(202);
  double worst = 0.0;

  int spread = 0;
  auto d1 = ensemble::random_set(rng, true, spread);
  for (int g = -1; g <= 1; ++g)
    for (int i = 0; i < 10; ++i) {
      const double dev = gll::check_conjugation(*d1, ensemble::random_x(rng), vi({g}),
                                                gll::interval(-8, 8));
      worst = std::max(worst, dev);
    }

  gll::Lattice gamma2(Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd lb = Eigen::MatrixXd::Identity(2, 2);
  lb(1, 1) = 1.0 / 0.6;
  gll::Lattice lambda2(lb);
  std::vector<Eigen::VectorXi> shifts2;
  std::vector<gll::Symbol> syms2;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      shifts2.push_back(vi({a, b}));
      std::vector<gll::FourierTerm> terms;
      terms.push_back({vi({0, 0}), ensemble::unit_phase(rng)});
      terms.push_back({vi({a == 0 ? 1 : a, b == 0 ? -1 : b}), 0.3 * ensemble::unit_phase(rng)});
      syms2.push_back(gll::Symbol::fourier(std::move(terms)));
    }
  const gll::SymbolSet d2(gamma2, lambda2, shifts2, syms2);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int ga = -1; ga <= 1; ++ga)
    for (int gb = -1; gb <= 1; ++gb)
      for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXd x = (Eigen::VectorXd(2) << unif(rng), unif(rng)).finished();
        const double dev =
            gll::check_conjugation(d2, x, vi({ga, gb}), gll::centered_box(2, 4));
        worst = std::max(worst, dev);
      }

  if (worst > kTol)
    return {false, "max deviation " + std::to_string(worst) + " above 1e-12"};
  std::ostringstream ss;
  ss << "max deviation " << worst;
  return {true, ss.str()};
}

// ---- 3: growth rates ----------------------------------------------------

// Independent fixpoint: rescan every point until nothing new fires.
std::set<std::vector<int>> oracle_fixpoint(const gll::PropagationRule& rule,
                                           const std::vector<Eigen::VectorXi>& seed,
                                           const gll::IntBox& region) {
  std::set<std::vector<int>> have;
  auto key = [](const Eigen::VectorXi& p) {
    return std::vector<int>(p.data(), p.data() + p.size());
  };
  for (const auto& p : seed) have.insert(key(p));
  const auto premises = rule.premises();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> snapshot(have.begin(), have.end());
    for (const auto& pv : snapshot) {
      Eigen::VectorXi p = Eigen::Map<const Eigen::VectorXi>(pv.data(), pv.size());
      for (const auto& c : premises) {
        const Eigen::VectorXi base = p - c;
        bool all_in = true;
        for (const auto& c2 : premises) {
          const Eigen::VectorXi q = base + c2;
          if (!region.contains(q) || !have.count(key(q))) {
            all_in = false;
            break;
          }
        }
        if (!all_in) continue;
        const Eigen::VectorXi target = base + rule.gamma0;
        if (region.contains(target) && have.insert(key(target)).second) changed = true;
      }
    }
  }
  return have;
}

Outcome growth_rates() {
  constexpr double kSlopeBand = 0.15;
  constexpr double kBudgetSeconds = 60.0;
  const auto t0 = std::chrono::steady_clock::now();

  const gll::PropagationRule rule({vi({0, 0}), vi({1, 0}), vi({0, 1})}, vi({1, 0}));
  std::vector<int> ns;
  for (int n = 20; n <= 200; n += 20) ns.push_back(n);
  const gll::GrowthSummary g = gll::growth_exponents(rule, ns);

  if (std::abs(g.slope_c - 1.0) > kSlopeBand)
    return {false, "slope_C " + std::to_string(g.slope_c) + " outside 1 +/- 0.15"};
  if (std::abs(g.slope_p - 2.0) > kSlopeBand)
    return {false, "slope_P " + std::to_string(g.slope_p) + " outside 2 +/- 0.15"};
  for (const auto& row : g.rows) {
    const long long want_c = 2LL * row.n + 1;
    const long long want_p = (2LL * row.n + 1) * (2LL * row.n + 2) / 2;
    if (row.card_c != want_c || row.card_p != want_p || row.clipped)
      return {false, "n=" + std::to_string(row.n) + " counts (" + std::to_string(row.card_c) +
                         ", " + std::to_string(row.card_p) + ") != closed form (" +
                         std::to_string(want_c) + ", " + std::to_string(want_p) + ")"};
  }

  const gll::StripConstruction strip = gll::build_strip(rule);
  for (int n : {20, 40}) {
    const auto seed = gll::build_strip_sets(rule, strip, n);
    const gll::IntBox region =
        gll::centered_box(2, 4 * n + static_cast<int>(std::ceil(10.0 * strip.delta)));
    const auto fix = gll::propagate_set(rule, seed, region);
    const auto oracle = oracle_fixpoint(rule, seed, region);
    if (fix.points.size() != oracle.size())
      return {false, "n=" + std::to_string(n) + ": sweep found " +
                         std::to_string(fix.points.size()) + " points, oracle " +
                         std::to_string(oracle.size())};
    for (const auto& p : fix.points)
      if (!oracle.count(std::vector<int>(p.data(), p.data() + p.size())))
        return {false, "n=" + std::to_string(n) + ": point sets differ"};
  }

  const double elapsed = seconds_since(t0);
  if (elapsed >= kBudgetSeconds)
    return {false, "exceeded the 60 s budget: " + std::to_string(elapsed) + " s"};
  std::ostringstream ss;
  ss.precision(4);
  ss << "slope_C=" << g.slope_c << " slope_P=" << g.slope_p << ", exact counts, oracle ok";
  return {true, ss.str()};
}

// ---- 4: planar symplectic reduction -------------------------------------

Outcome symplectic_reduction() {
  constexpr double kSymplTol = 1e-9;
  constexpr double kMemberTol = 1e-8;
  constexpr double kCovolRel = 1e-9;
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::uniform_int_distribution<int> coeff(-20, 20);
  Eigen::Matrix2d J;
  J << 0, 1, -1, 0;

  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2d b;
    do {
      b << unif(rng), unif(rng), unif(rng), unif(rng);
    } while (std::abs(b.determinant()) < 1e-3 ||
             b.jacobiSvd().singularValues()(0) > 1e3 * b.jacobiSvd().singularValues()(1));
    const gll::Lattice L(b);
    const gll::ProductReduction r = gll::reduce_to_product_d1(L);

    if (((r.sigma.transpose() * J * r.sigma) - J).cwiseAbs().maxCoeff() > kSymplTol)
      return {false, "trial " + std::to_string(trial) + ": sigma is not symplectic"};
    if (std::abs(r.alpha * r.beta - L.covolume()) > kCovolRel * L.covolume())
      return {false, "trial " + std::to_string(trial) + ": alpha*beta misses the covolume"};

    Eigen::Matrix2d prod = Eigen::Matrix2d::Zero();
    prod(0, 0) = r.alpha;
    prod(1, 1) = r.beta;
    const gll::Lattice P(prod);
    for (int k = 0; k < 50; ++k) {
      const Eigen::Vector2d v = b * Eigen::Vector2d(coeff(rng), coeff(rng));
      if (!P.member(r.sigma * v, kMemberTol))
        return {false, "trial " + std::to_string(trial) + ": forward membership failed"};
      const Eigen::Vector2d w(r.alpha * coeff(rng), r.beta * coeff(rng));
      if (!L.member(r.sigma.inverse() * w, kMemberTol))
        return {false, "trial " + std::to_string(trial) + ": reverse membership failed"};
    }
  }
  return {true, "100 bases, symplectic + covolume + two-way membership"};
}

// ---- 5: cosine-chain bands and dependence residuals ---------------------

Outcome mathieu_bands() {
  constexpr double kBandTol = 1e-6;
  constexpr double kSectionTol = 1e-2;
  constexpr double kResidualTol = 1e-8;

  const gll::BandList bands = gll::bloch_bands(1.0, 1, 2, 0.0);
  const double s8 = 2.0 * std::sqrt(2.0);
  if (bands.size() != 2 || std::abs(bands[0].lo + s8) > kBandTol ||
      std::abs(bands[0].hi + 2.0) > kBandTol || std::abs(bands[1].lo - 2.0) > kBandTol ||
      std::abs(bands[1].hi - s8) > kBandTol)
    return {false, "half-flux bands disagree with the closed form"};

  const gll::AMParams p{1.0, 0.5, 0.0};
  const auto pairs = gll::spectrum_pairs(gll::build_truncation(p, 500));
  int interior = 0;
  double worst_dist = 0.0, worst_res = 0.0;
  for (int i = 0; i < pairs.values.size(); ++i) {
    if (gll::edge_mass_fraction(pairs.vectors.col(i)) > 0.5) continue;
    ++interior;
    worst_dist = std::max(worst_dist, gll::band_distance(bands, pairs.values(i)));
    Eigen::VectorXcd u = pairs.vectors.col(i).cast<cd>();
    u /= u.norm();
    worst_res = std::max(worst_res, gll::dependence_residual(u, p, pairs.values(i)));
  }
  if (interior < 500)
    return {false, "only " + std::to_string(interior) + " interior eigenpairs at R=500"};
  if (worst_dist > kSectionTol)
    return {false, "interior eigenvalue " + std::to_string(worst_dist) + " outside the bands"};
  if (worst_res > kResidualTol)
    return {false, "dependence residual " + std::to_string(worst_res) + " above 1e-8"};
  std::ostringstream ss;
  ss << interior << " interior eigenpairs, max band distance " << worst_dist
     << ", max residual " << worst_res;
  return {true, ss.str()};
}

// ---- 6: gram positivity at desk scale ------------------------------------

Outcome gram_positivity() {
  constexpr double kEigFloor = 1e-8;
  constexpr double kOracleTol = 1e-9;

  // Composite-Simpson oracle for <g, T_1 g> with g the unit-width gaussian.
  const auto g = [](double t) { return std::pow(2.0, 0.25) * std::exp(-pi * t * t); };
  const double lo = -10.0, hi = 11.0;
  const int n = 200000;
  const double h = (hi - lo) / n;
  double overlap = g(lo) * g(lo - 1.0) + g(hi) * g(hi - 1.0);
  for (int i = 1; i < n; ++i) {
    const double t = lo + i * h;
    overlap += (i % 2 ? 4.0 : 2.0) * g(t) * g(t - 1.0);
  }
  overlap *= h / 3.0;

  const gll::Window w = gll::Window::gaussian(1, 1.0);
  std::vector<gll::PhasePoint> pair(2);
  pair[0] = {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
  pair[1] = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Zero(1)};
  const gll::GramCertificate two = gll::gram_certificate(w, pair);
  if (std::abs(two.min_eigenvalue - (1.0 - overlap)) > kOracleTol)
    return {false, "2-atom eigenvalue " + std::to_string(two.min_eigenvalue) +
                       " != oracle " + std::to_string(1.0 - overlap)};

  std::mt19937 rng(607);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> size(2, 9);
  double least = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<gll::PhasePoint> atoms;
    const int target = size(rng);
    while (static_cast<int>(atoms.size()) < target) {
      gll::PhasePoint p{Eigen::VectorXd::Constant(1, coord(rng)),
                        Eigen::VectorXd::Constant(1, coord(rng))};
      bool seen = false;
      for (const auto& q : atoms) seen = seen || (q.x == p.x && q.y == p.y);
      if (!seen) atoms.push_back(p);
    }
    const gll::GramCertificate cert = gll::gram_certificate(w, atoms);
    least = std::min(least, cert.min_eigenvalue);
    if (cert.min_eigenvalue <= kEigFloor || !cert.independent)
      return {false, "family " + std::to_string(trial) + " eigenvalue " +
                         std::to_string(cert.min_eigenvalue) + " at or below 1e-8"};
  }
  std::ostringstream ss;
  ss << "2-atom value matches oracle, 50 families, least eigenvalue " << least;
  return {true, ss.str()};
}

// ---- 7: recurrence window vs svd kernel -----------------------------------

Outcome recurrence_vs_svd() {
  constexpr double kAngleTol = 1e-6;
  constexpr int R = 30;
  std::mt19937 rng(707);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    int spread = 0;
    auto set = ensemble::random_set(rng, trial % 2 == 0, spread);
    const Eigen::VectorXd x = ensemble::random_x(rng);
    const gll::FiberOperator f = gll::fiberize(set, x);
    const gll::RectTruncation t = gll::truncate_rect(f, gll::interval(-R, R));
    const Eigen::MatrixXcd svd_basis = gll::kernel_basis(t, 1e-10);
    if (svd_basis.cols() != spread)
      return {false, "trial " + std::to_string(trial) + ": kernel dim " +
                         std::to_string(svd_basis.cols()) + " != " + std::to_string(spread)};

    Eigen::MatrixXcd prop(2 * R + 1, spread);
    for (int j = 0; j < spread; ++j) {
      Eigen::VectorXcd window = Eigen::VectorXcd::Zero(spread);
      window(j) = 1.0;
      prop.col(j) = gll::propagate_recurrence_d1(f, window, R);
    }
    const Eigen::MatrixXcd q1 =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(prop).householderQ() *
        Eigen::MatrixXcd::Identity(2 * R + 1, spread);
    const Eigen::VectorXd cosines =
        Eigen::BDCSVD<Eigen::MatrixXcd>(q1.adjoint() * svd_basis).singularValues();
    for (int i = 0; i < cosines.size(); ++i) {
      const double angle = std::acos(std::min(1.0, std::max(-1.0, cosines(i))));
      worst = std::max(worst, angle);
    }
  }
  if (worst >= kAngleTol)
    return {false, "max principal angle " + std::to_string(worst) + " above 1e-6"};
  std::ostringstream ss;
  ss << "20 instances, max principal angle " << worst;
  return {true, ss.str()};
}

// ---- 8: CLI determinism ----------------------------------------------------

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool capture(const std::string& cmd, int& code, std::string& out) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return false;
  out.clear();
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  code = WEXITSTATUS(pclose(pipe));
  return true;
}

Outcome cli_determinism(const std::string& bin) {
  if (bin.empty()) return {false, "no CLI binary path given (argv[1])"};

  const std::string set = "/tmp/gll_acc_set.json";
  const std::string rule = "/tmp/gll_acc_rule.json";
  {
    FILE* f = fopen(set.c_str(), "w");
    if (!f) return {false, "cannot write fixtures under /tmp"};
    fputs(R"({"gamma_basis": [[1.0]], "lambda_basis": [[0.7]],
      "shifts": [[0],[1],[2]],
      "symbols": [{"fourier":[{"freq":[0],"re":1.0,"im":0.2}]},
                  {"fourier":[{"freq":[0],"re":0.9,"im":0.0},{"freq":[1],"re":0.2,"im":0.1}]},
                  {"fourier":[{"freq":[0],"re":1.1,"im":-0.3}]}]})",
          f);
    fclose(f);
    FILE* r = fopen(rule.c_str(), "w");
    if (!r) return {false, "cannot write fixtures under /tmp"};
    fputs(R"({"C0": [[0,0],[1,0],[0,1]], "gamma0": [1,0]})", r);
    fclose(r);
  }

  const std::vector<std::string> commands = {
      "reduce-lattice --basis '[[2,1],[1,1]]'",
      "product-search --basis '[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]' --coeff-bound 2",
      "fiber-kernel --set " + set + " --x '[[0.15],[0.4]]' --r 5,10",
      "recurrence --set " + set + " --x '[0.3]' --window '[1,[0,1]]' --r 6",
      "conjugation-check --set " + set +
          " --x '[0.3]' --gamma0 '[1]' --box-lo '[-5]' --box-hi '[5]'",
      "propagate --rule " + rule +
          " --seed '[[0,0],[0,1]]' --region-lo '[-4,-4]' --region-hi '[4,4]'",
      "growth --rule " + rule + " --n 10:40:10",
      "mathieu-bands --lambda 1 --p 1 --q 3",
      "mathieu-bands --lambda 1 --alpha 0.6180339887498949 --truncation 6",
      "butterfly --q-max 4 --k-res 128",
      "gram-cert --atoms '[{\"x\":[0],\"y\":[0]},{\"x\":[1],\"y\":[0]}]'",
  };
  for (const auto& cmd : commands) {
    int code1 = -1, code2 = -1;
    std::string out1, out2;
    if (!capture(bin + " " + cmd, code1, out1) || !capture(bin + " " + cmd, code2, out2))
      return {false, "cannot launch: " + cmd};
    if (code1 != 0 || code2 != 0)
      return {false, "nonzero exit for: " + cmd};
    if (out1.empty() || fnv1a(out1) != fnv1a(out2) || out1 != out2)
      return {false, "outputs differ between runs for: " + cmd};
  }
  return {true, std::to_string(commands.size()) + " invocations, double-run hashes equal"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string bin = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel-dimension law", kernel_law},
      {"conjugation covariance", conjugation},
      {"growth rates", growth_rates},
      {"planar symplectic reduction", symplectic_reduction},
      {"cosine-chain bands", mathieu_bands},
      {"gram positivity", gram_positivity},
      {"recurrence vs svd kernel", recurrence_vs_svd},
      {"cli determinism", [&] { return cli_determinism(bin); }},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out{false, "unhandled exception"};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %zu %s: %s\n", out.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failures;
  }
  if (failures > 0) std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
