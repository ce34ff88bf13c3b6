#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gll/almost_mathieu.hpp"
#include "gll/exec.hpp"
#include "gll/fiber.hpp"
#include "gll/gabor.hpp"
#include "gll/io.hpp"
#include "gll/propagation.hpp"
#include "gll/symplectic.hpp"

namespace {

namespace io = gll::io;
using io::format_double;
using json = io::json;

// Options shared by every subcommand. Thread bounds apply before any work;
// dry runs stop after input validation.
struct Common {
  int threads = 0;
  std::string out;
  bool dry = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "max worker threads (default: GLL_THREADS, then all)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "write output to this file instead of stdout");
  sub->add_flag("--dry-run", c.dry, "validate inputs and print the planned work only");
}

void prepare(const Common& c) {
  if (c.threads > 0) gll::set_max_threads(c.threads);
}

void emit(const Common& c, const std::string& payload) {
  if (c.out.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  f << payload;
  if (!f) throw std::runtime_error("cannot write output file: " + c.out);
}

int parse_int(const std::string& text) {
  size_t pos = 0;
  const int v = std::stoi(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("not an integer: " + text);
  return v;
}

// "a,b,c" or an inclusive "start:stop:step" range.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    size_t from = 0;
    for (size_t at; (at = text.find(':', from)) != std::string::npos; from = at + 1)
      parts.push_back(text.substr(from, at - from));
    parts.push_back(text.substr(from));
    if (parts.size() > 3) throw std::invalid_argument("range is start:stop[:step]");
    const int start = parse_int(parts[0]);
    const int stop = parse_int(parts[1]);
    const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    if (stop < start) throw std::invalid_argument("range stop is below its start");
    for (int v = start; v <= stop; v += step) out.push_back(v);
  } else {
    size_t from = 0;
    for (size_t at; (at = text.find(',', from)) != std::string::npos; from = at + 1)
      out.push_back(parse_int(text.substr(from, at - from)));
    out.push_back(parse_int(text.substr(from)));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

Eigen::VectorXd vector_arg(const std::string& arg, const char* what) {
  const json j = io::load_json_argument(arg);
  if (!j.is_array() || j.empty() || !j[0].is_number())
    throw std::invalid_argument(std::string(what) + " must be a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

Eigen::VectorXi ivector_arg(const std::string& arg, const char* what) {
  const json j = io::load_json_argument(arg);
  if (!j.is_array() || j.empty() || !j[0].is_number())
    throw std::invalid_argument(std::string(what) + " must be a JSON array of integers");
  Eigen::VectorXi v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<int>();
  return v;
}

// Flat array = one point; array of arrays = many points.
std::vector<Eigen::VectorXd> points_arg(const std::string& arg, const char* what) {
  const json j = io::load_json_argument(arg);
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string(what) + " must be a nonempty JSON array");
  std::vector<Eigen::VectorXd> out;
  if (j[0].is_number()) {
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
    out.push_back(v);
    return out;
  }
  for (const auto& pj : j) {
    if (!pj.is_array() || pj.empty())
      throw std::invalid_argument(std::string(what) + " has an empty point");
    Eigen::VectorXd v(pj.size());
    for (size_t i = 0; i < pj.size(); ++i) v(static_cast<int>(i)) = pj[i].get<double>();
    out.push_back(v);
  }
  return out;
}

std::vector<Eigen::VectorXi> ipoints_arg(const std::string& arg, const char* what) {
  const json j = io::load_json_argument(arg);
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string(what) + " must be a nonempty JSON array");
  std::vector<Eigen::VectorXi> out;
  for (const auto& pj : j) {
    if (!pj.is_array() || pj.empty())
      throw std::invalid_argument(std::string(what) + " has an empty point");
    Eigen::VectorXi v(pj.size());
    for (size_t i = 0; i < pj.size(); ++i) v(static_cast<int>(i)) = pj[i].get<int>();
    out.push_back(v);
  }
  return out;
}

std::string json_payload(const json& j) { return j.dump(2) + "\n"; }

// ---- subcommand bodies ------------------------------------------------

struct ReduceOpts {
  Common c;
  std::string basis;
};

void run_reduce(const ReduceOpts& o) {
  prepare(o.c);
  const Eigen::MatrixXd b = io::matrix_from_json(io::load_json_argument(o.basis));
  if (b.rows() != 2 || b.cols() != 2)
    throw std::invalid_argument("reduce-lattice expects a 2x2 basis");
  const gll::Lattice L(b);
  if (o.c.dry) {
    emit(o.c, "dry-run reduce-lattice: reduce one 2x2 basis to product form\n");
    return;
  }
  const gll::ProductReduction r = gll::reduce_to_product_d1(L);
  json out{{"sigma", io::matrix_to_json(r.sigma)},
           {"alpha", r.alpha},
           {"beta", r.beta}};
  emit(o.c, json_payload(out));
}

struct ProductSearchOpts {
  Common c;
  std::string basis;
  int coeff_bound = 3;
  double tol = 1e-9;
};

void run_product_search(const ProductSearchOpts& o) {
  prepare(o.c);
  const Eigen::MatrixXd b = io::matrix_from_json(io::load_json_argument(o.basis));
  if (b.rows() != 4 || b.cols() != 4)
    throw std::invalid_argument("product-search expects a 4x4 phase-space basis");
  if (!(o.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (o.coeff_bound < 1) throw std::invalid_argument("coefficient bound must be positive");
  const gll::Lattice L(b);
  if (o.c.dry) {
    emit(o.c, "dry-run product-search: enumerate coefficients up to " +
                  std::to_string(o.coeff_bound) + "\n");
    return;
  }
  const auto found = gll::product_basis_search(L, o.coeff_bound, o.tol);
  json out;
  out["found"] = found.has_value();
  out["basis"] = found ? io::matrix_to_json(*found) : json(nullptr);
  emit(o.c, json_payload(out));
}

struct FiberKernelOpts {
  Common c;
  std::string set, xs, rs;
  double tol = 1e-10;
};

void run_fiber_kernel(const FiberKernelOpts& o) {
  prepare(o.c);
  auto set = std::make_shared<gll::SymbolSet>(
      io::symbol_set_from_json(io::load_json_argument(o.set)));
  if (set->dim() != 1)
    throw std::invalid_argument("fiber-kernel sweeps one-dimensional families");
  const std::vector<Eigen::VectorXd> xs = points_arg(o.xs, "--x");
  for (const auto& x : xs)
    if (x.size() != set->dim()) throw std::invalid_argument("base point has the wrong dimension");
  const std::vector<int> rs = parse_int_list(o.rs);
  for (int r : rs)
    if (r < 1) throw std::invalid_argument("section half-width must be positive");
  if (!(o.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (o.c.dry) {
    emit(o.c, "dry-run fiber-kernel: " + std::to_string(xs.size()) + " base points x " +
                  std::to_string(rs.size()) + " section sizes\n");
    return;
  }
  const auto rows = gll::kernel_sweep(set, xs, rs, o.tol);
  std::string payload = io::csv_row({"x0", "R", "kernel_dim", "smin", "smax"});
  for (const auto& row : rows)
    payload += io::csv_row({format_double(row.x(0)), std::to_string(row.R),
                            std::to_string(row.kernel_dim), format_double(row.smin),
                            format_double(row.smax)});
  emit(o.c, payload);
}

struct RecurrenceOpts {
  Common c;
  std::string set, x, window;
  int R = 50;
  double floor_val = 1e-12;
};

void run_recurrence(const RecurrenceOpts& o) {
  prepare(o.c);
  auto set = std::make_shared<gll::SymbolSet>(
      io::symbol_set_from_json(io::load_json_argument(o.set)));
  if (set->dim() != 1) throw std::invalid_argument("recurrence extension is one-dimensional");
  const Eigen::VectorXd x = vector_arg(o.x, "--x");
  if (x.size() != 1) throw std::invalid_argument("base point has the wrong dimension");
  const json wj = io::load_json_argument(o.window);
  if (!wj.is_array() || wj.empty())
    throw std::invalid_argument("--window must be a JSON array (numbers or [re, im] pairs)");
  Eigen::VectorXcd window(wj.size());
  for (size_t i = 0; i < wj.size(); ++i) {
    if (wj[i].is_number())
      window(static_cast<int>(i)) = wj[i].get<double>();
    else if (wj[i].is_array() && wj[i].size() == 2)
      window(static_cast<int>(i)) = {wj[i][0].get<double>(), wj[i][1].get<double>()};
    else
      throw std::invalid_argument("--window entries are numbers or [re, im] pairs");
  }
  if (o.R < 1) throw std::invalid_argument("section half-width must be positive");
  if (!(o.floor_val > 0.0)) throw std::invalid_argument("pivot floor must be positive");
  const gll::FiberOperator f = gll::fiberize(set, x);
  if (o.c.dry) {
    emit(o.c, "dry-run recurrence: extend " + std::to_string(window.size()) +
                  " window values to [-" + std::to_string(o.R) + ", " + std::to_string(o.R) +
                  "]\n");
    return;
  }
  const Eigen::VectorXcd u = gll::propagate_recurrence_d1(f, window, o.R, o.floor_val);
  std::string payload = io::csv_row({"n", "re", "im"});
  for (int n = -o.R; n <= o.R; ++n)
    payload += io::csv_row({std::to_string(n), format_double(u(n + o.R).real()),
                            format_double(u(n + o.R).imag())});
  emit(o.c, payload);
}

struct ConjugationOpts {
  Common c;
  std::string set, x, gamma0, box_lo, box_hi;
};

void run_conjugation(const ConjugationOpts& o) {
  prepare(o.c);
  const gll::SymbolSet set = io::symbol_set_from_json(io::load_json_argument(o.set));
  const Eigen::VectorXd x = vector_arg(o.x, "--x");
  const Eigen::VectorXi g0 = ivector_arg(o.gamma0, "--gamma0");
  const gll::IntBox box{ivector_arg(o.box_lo, "--box-lo"), ivector_arg(o.box_hi, "--box-hi")};
  if (x.size() != set.dim() || g0.size() != set.dim() || box.dim() != set.dim())
    throw std::invalid_argument("point, shift, and box dimensions must match the family");
  if (o.c.dry) {
    emit(o.c, "dry-run conjugation-check: one shifted-fiber comparison over " +
                  std::to_string(box.size()) + " sites\n");
    return;
  }
  json out{{"max_deviation", gll::check_conjugation(set, x, g0, box)}};
  emit(o.c, json_payload(out));
}

struct PropagateOpts {
  Common c;
  std::string rule, seed, region_lo, region_hi;
};

void run_propagate(const PropagateOpts& o) {
  prepare(o.c);
  const gll::PropagationRule rule = io::rule_from_json(io::load_json_argument(o.rule));
  const std::vector<Eigen::VectorXi> seed = ipoints_arg(o.seed, "--seed");
  const gll::IntBox region{ivector_arg(o.region_lo, "--region-lo"),
                           ivector_arg(o.region_hi, "--region-hi")};
  if (region.dim() != rule.dim())
    throw std::invalid_argument("region dimension must match the rule");
  if (o.c.dry) {
    emit(o.c, "dry-run propagate: fixpoint from " + std::to_string(seed.size()) +
                  " seeds over " + std::to_string(region.size()) + " sites\n");
    return;
  }
  const gll::PropagationResult res = gll::propagate_set(rule, seed, region);
  json pts = json::array();
  for (const auto& p : res.points) {
    json row = json::array();
    for (int i = 0; i < p.size(); ++i) row.push_back(p(i));
    pts.push_back(row);
  }
  json out{{"count", res.points.size()}, {"clipped", res.clipped}, {"points", pts}};
  emit(o.c, json_payload(out));
}

struct GrowthOpts {
  Common c;
  std::string rule, n;
  int margin = 0;
};

void run_growth(const GrowthOpts& o) {
  prepare(o.c);
  const gll::PropagationRule rule = io::rule_from_json(io::load_json_argument(o.rule));
  const std::vector<int> ns = parse_int_list(o.n);
  if (o.margin < 0) throw std::invalid_argument("margin must be nonnegative");
  if (o.c.dry) {
    emit(o.c, "dry-run growth: " + std::to_string(ns.size()) + " radii from " +
                  std::to_string(ns.front()) + " to " + std::to_string(ns.back()) + "\n");
    return;
  }
  const gll::GrowthSummary g = gll::growth_exponents(rule, ns, o.margin);
  std::string payload = io::csv_row({"n", "card_C", "card_P", "clipped_flag"});
  for (const auto& row : g.rows)
    payload += io::csv_row({std::to_string(row.n), std::to_string(row.card_c),
                            std::to_string(row.card_p), row.clipped ? "1" : "0"});
  payload += "# slope_C=" + format_double(g.slope_c) + "\n";
  payload += "# slope_P=" + format_double(g.slope_p) + "\n";
  emit(o.c, payload);
}

struct MathieuOpts {
  Common c;
  double lambda = 1.0;
  int p = 0, q = 0;
  double theta = 0.0;
  int k_res = 512;
  double alpha = -1.0;
  std::string truncation;
};

void run_mathieu(const MathieuOpts& o) {
  prepare(o.c);
  if (!o.truncation.empty()) {
    // Eigen sweep of finite sections instead of the periodic band picture.
    const std::vector<int> rs = parse_int_list(o.truncation);
    for (int r : rs)
      if (r < 2) throw std::invalid_argument("section half-width must be at least 2");
    double alpha = o.alpha;
    if (alpha < 0.0) {
      if (o.q < 1) throw std::invalid_argument("need --alpha or a --p/--q rational");
      alpha = static_cast<double>(o.p) / o.q;
    }
    const gll::AMParams params{o.lambda, alpha, o.theta};
    gll::build_truncation(params, rs.front());  // validates lambda early
    if (o.c.dry) {
      emit(o.c, "dry-run mathieu-bands: eigen sweep over " + std::to_string(rs.size()) +
                    " section sizes\n");
      return;
    }
    std::string payload = io::csv_row({"R", "index", "eigenvalue", "ipr", "residual"});
    for (int r : rs) {
      const auto pairs = gll::spectrum_pairs(gll::build_truncation(params, r));
      for (int i = 0; i < pairs.values.size(); ++i) {
        Eigen::VectorXcd u = pairs.vectors.col(i).cast<std::complex<double>>();
        u /= u.norm();
        payload += io::csv_row(
            {std::to_string(r), std::to_string(i), format_double(pairs.values(i)),
             format_double(gll::inverse_participation_ratio(pairs.vectors.col(i))),
             format_double(gll::dependence_residual(u, params, pairs.values(i)))});
      }
    }
    emit(o.c, payload);
    return;
  }
  if (o.q < 1) throw std::invalid_argument("band mode needs --q >= 1");
  if (o.c.dry) {
    emit(o.c, "dry-run mathieu-bands: " + std::to_string(o.q) + " bands at " +
                  std::to_string(o.k_res) + " quasimomenta\n");
    return;
  }
  const gll::BandList bands = gll::bloch_bands(o.lambda, o.p, o.q, o.theta, o.k_res);
  std::string payload = io::csv_row({"band_index", "lower", "upper"});
  for (size_t i = 0; i < bands.size(); ++i)
    payload += io::csv_row(
        {std::to_string(i), format_double(bands[i].lo), format_double(bands[i].hi)});
  emit(o.c, payload);
}

struct ButterflyOpts {
  Common c;
  double lambda = 1.0;
  int q_max = 0;
  int k_res = 512;
};

void run_butterfly(const ButterflyOpts& o) {
  prepare(o.c);
  if (o.q_max < 2) throw std::invalid_argument("--q-max must be at least 2");
  if (!(o.lambda > 0.0)) throw std::invalid_argument("coupling must be positive");
  if (o.k_res < 1) throw std::invalid_argument("--k-res must be positive");
  if (o.c.dry) {
    emit(o.c, "dry-run butterfly: all reduced fractions with denominator <= " +
                  std::to_string(o.q_max) + "\n");
    return;
  }
  const auto rows = gll::butterfly(o.lambda, o.q_max, o.k_res);
  std::string payload = io::csv_row({"p", "q", "band_index", "lower", "upper"});
  for (const auto& row : rows)
    for (size_t i = 0; i < row.bands.size(); ++i)
      payload += io::csv_row({std::to_string(row.p), std::to_string(row.q), std::to_string(i),
                              format_double(row.bands[i].lo), format_double(row.bands[i].hi)});
  emit(o.c, payload);
}

struct GramOpts {
  Common c;
  std::string window = "gaussian";
  std::string atoms, box_lo, box_hi;
  double width = 1.0;
  double qtol = 1e-12;
};

void run_gram(const GramOpts& o) {
  prepare(o.c);
  const std::vector<gll::PhasePoint> atoms = io::atoms_from_json(io::load_json_argument(o.atoms));
  const int d = static_cast<int>(atoms[0].x.size());
  gll::Window w = gll::Window::gaussian(1, 1.0);
  if (o.window == "gaussian") {
    w = gll::Window::gaussian(d, o.width);
  } else if (o.window == "indicator-box") {
    if (o.box_lo.empty() || o.box_hi.empty())
      throw std::invalid_argument("indicator-box windows need --box-lo and --box-hi");
    w = gll::Window::indicator_box(vector_arg(o.box_lo, "--box-lo"),
                                   vector_arg(o.box_hi, "--box-hi"));
    if (w.dim() != d) throw std::invalid_argument("window box dimension must match the atoms");
  } else if (o.window.rfind("hermite-", 0) == 0) {
    if (d != 1) throw std::invalid_argument("hermite windows are one-dimensional");
    w = gll::Window::hermite(parse_int(o.window.substr(8)));
  } else {
    throw std::invalid_argument("unknown window kind: " + o.window);
  }
  if (!(o.qtol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (o.c.dry) {
    emit(o.c, "dry-run gram-cert: " + std::to_string(atoms.size()) + "x" +
                  std::to_string(atoms.size()) + " gram certificate\n");
    return;
  }
  const gll::GramCertificate cert = gll::gram_certificate(w, atoms, o.qtol);
  json out{{"min_eigenvalue", cert.min_eigenvalue},
           {"verdict", cert.independent ? "independent" : "inconclusive"},
           {"matrix_size", cert.gram.rows()}};
  emit(o.c, json_payload(out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice translate-and-modulate independence toolkit"};
  app.require_subcommand(1);

  ReduceOpts reduce;
  auto* reduce_cmd = app.add_subcommand(
      "reduce-lattice", "reduce a planar lattice to an axis-aligned product");
  reduce_cmd->add_option("--basis", reduce.basis, "2x2 basis, row-major JSON or file")
      ->required();
  add_common(reduce_cmd, reduce.c);
  reduce_cmd->callback([&] { run_reduce(reduce); });

  ProductSearchOpts prod;
  auto* prod_cmd = app.add_subcommand(
      "product-search", "search for a symplectically split basis of a 4d lattice");
  prod_cmd->add_option("--basis", prod.basis, "4x4 basis, row-major JSON or file")->required();
  prod_cmd->add_option("--coeff-bound", prod.coeff_bound, "combination coefficient bound");
  prod_cmd->add_option("--tol", prod.tol, "pairing tolerance");
  add_common(prod_cmd, prod.c);
  prod_cmd->callback([&] { run_product_search(prod); });

  FiberKernelOpts fk;
  auto* fk_cmd =
      app.add_subcommand("fiber-kernel", "kernel dimensions of finite fiber sections");
  fk_cmd->add_option("--set", fk.set, "symbol family JSON or file")->required();
  fk_cmd->add_option("--x", fk.xs, "base point(s), JSON")->required();
  fk_cmd->add_option("--r", fk.rs, "section half-widths, comma list or start:stop:step")
      ->required();
  fk_cmd->add_option("--tol", fk.tol, "relative singular-value cutoff");
  add_common(fk_cmd, fk.c);
  fk_cmd->callback([&] { run_fiber_kernel(fk); });

  RecurrenceOpts rec;
  auto* rec_cmd =
      app.add_subcommand("recurrence", "extend window values across a fiber section");
  rec_cmd->add_option("--set", rec.set, "symbol family JSON or file")->required();
  rec_cmd->add_option("--x", rec.x, "base point, JSON")->required();
  rec_cmd->add_option("--window", rec.window, "window values, JSON")->required();
  rec_cmd->add_option("--r", rec.R, "target half-width");
  rec_cmd->add_option("--floor", rec.floor_val, "pivot magnitude floor");
  add_common(rec_cmd, rec.c);
  rec_cmd->callback([&] { run_recurrence(rec); });

  ConjugationOpts conj;
  auto* conj_cmd = app.add_subcommand(
      "conjugation-check", "compare the shifted fiber with the fiber at the shifted point");
  conj_cmd->add_option("--set", conj.set, "symbol family JSON or file")->required();
  conj_cmd->add_option("--x", conj.x, "base point, JSON")->required();
  conj_cmd->add_option("--gamma0", conj.gamma0, "integer shift, JSON")->required();
  conj_cmd->add_option("--box-lo", conj.box_lo, "box lower corner, JSON")->required();
  conj_cmd->add_option("--box-hi", conj.box_hi, "box upper corner, JSON")->required();
  add_common(conj_cmd, conj.c);
  conj_cmd->callback([&] { run_conjugation(conj); });

  PropagateOpts props;
  auto* prop_cmd = app.add_subcommand("propagate", "least fixpoint of a growth rule");
  prop_cmd->add_option("--rule", props.rule, "rule JSON or file")->required();
  prop_cmd->add_option("--seed", props.seed, "seed points, JSON")->required();
  prop_cmd->add_option("--region-lo", props.region_lo, "region lower corner, JSON")->required();
  prop_cmd->add_option("--region-hi", props.region_hi, "region upper corner, JSON")->required();
  add_common(prop_cmd, props.c);
  prop_cmd->callback([&] { run_propagate(props); });

  GrowthOpts growth;
  auto* growth_cmd =
      app.add_subcommand("growth", "cardinality growth of strip seeds under a rule");
  growth_cmd->add_option("--rule", growth.rule, "rule JSON or file")->required();
  growth_cmd->add_option("--n", growth.n, "radii, comma list or start:stop:step")->required();
  growth_cmd->add_option("--margin", growth.margin, "extra region padding");
  add_common(growth_cmd, growth.c);
  growth_cmd->callback([&] { run_growth(growth); });

  MathieuOpts mat;
  auto* mat_cmd = app.add_subcommand(
      "mathieu-bands", "band structure or finite-section eigen sweep of the cosine chain");
  mat_cmd->add_option("--lambda", mat.lambda, "coupling");
  mat_cmd->add_option("--p", mat.p, "flux numerator");
  mat_cmd->add_option("--q", mat.q, "flux denominator");
  mat_cmd->add_option("--theta", mat.theta, "phase offset");
  mat_cmd->add_option("--k-res", mat.k_res, "quasimomentum grid size");
  mat_cmd->add_option("--alpha", mat.alpha, "irrational flux (eigen sweep mode)");
  mat_cmd->add_option("--truncation", mat.truncation,
                      "section half-widths; switches to the eigen sweep");
  add_common(mat_cmd, mat.c);
  mat_cmd->callback([&] { run_mathieu(mat); });

  ButterflyOpts bf;
  auto* bf_cmd =
      app.add_subcommand("butterfly", "bands of every reduced flux up to a denominator");
  bf_cmd->add_option("--lambda", bf.lambda, "coupling");
  bf_cmd->add_option("--q-max", bf.q_max, "largest denominator")->required();
  bf_cmd->add_option("--k-res", bf.k_res, "quasimomentum grid size");
  add_common(bf_cmd, bf.c);
  bf_cmd->callback([&] { run_butterfly(bf); });

  GramOpts gram;
  auto* gram_cmd =
      app.add_subcommand("gram-cert", "independence certificate for a finite atom family");
  gram_cmd->add_option("--window", gram.window, "gaussian | indicator-box | hermite-N");
  gram_cmd->add_option("--atoms", gram.atoms, "atom family JSON or file")->required();
  gram_cmd->add_option("--width", gram.width, "gaussian width");
  gram_cmd->add_option("--box-lo", gram.box_lo, "indicator lower corner, JSON");
  gram_cmd->add_option("--box-hi", gram.box_hi, "indicator upper corner, JSON");
  gram_cmd->add_option("--qtol", gram.qtol, "quadrature tolerance");
  add_common(gram_cmd, gram.c);
  gram_cmd->callback([&] { run_gram(gram); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
