#include "gll/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gll::io {

namespace {

Eigen::VectorXd vector_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + " must be a nonempty array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

Eigen::VectorXi ivector_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + " must be a nonempty array");
  Eigen::VectorXi v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<int>();
  return v;
}

// Columns-of-arrays convention shared by every basis field.
Eigen::MatrixXd basis_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + " must be a nonempty array of columns");
  const size_t rows = j[0].size();
  Eigen::MatrixXd b(rows, j.size());
  for (size_t c = 0; c < j.size(); ++c) {
    if (j[c].size() != rows) throw std::invalid_argument(std::string(what) + " has ragged columns");
    b.col(static_cast<int>(c)) = vector_from(j[c], what);
  }
  return b;
}

json basis_to(const Eigen::MatrixXd& b) {
  json cols = json::array();
  for (int c = 0; c < b.cols(); ++c) {
    json col = json::array();
    for (int r = 0; r < b.rows(); ++r) col.push_back(b(r, c));
    cols.push_back(col);
  }
  return cols;
}

}  // namespace

json to_json(const Lattice& L) {
  return json{{"dim", L.dim()}, {"basis", basis_to(L.basis())}};
}

Lattice lattice_from_json(const json& j) {
  if (!j.contains("basis")) throw std::invalid_argument("lattice JSON needs a \"basis\" field");
  Eigen::MatrixXd b = basis_from(j.at("basis"), "basis");
  if (j.contains("dim") && j.at("dim").get<int>() != b.rows())
    throw std::invalid_argument("lattice \"dim\" disagrees with the basis shape");
  return Lattice(b);
}

json to_json(const SymbolSet& s) {
  json shifts = json::array();
  for (const auto& g : s.shifts()) {
    json row = json::array();
    for (int i = 0; i < g.size(); ++i) row.push_back(g(i));
    shifts.push_back(row);
  }
  json symbols = json::array();
  for (int k = 0; k < s.n_shifts(); ++k) {
    const Symbol& sym = s.symbol(k);
    if (!sym.is_fourier())
      throw std::invalid_argument("only trig-polynomial symbols have a JSON form");
    json terms = json::array();
    for (const auto& t : sym.terms()) {
      json freq = json::array();
      for (int i = 0; i < t.freq.size(); ++i) freq.push_back(t.freq(i));
      terms.push_back(json{{"freq", freq}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    }
    symbols.push_back(json{{"fourier", terms}});
  }
  return json{{"gamma_basis", basis_to(s.gamma().basis())},
              {"lambda_basis", basis_to(s.lambda().basis())},
              {"shifts", shifts},
              {"symbols", symbols}};
}

SymbolSet symbol_set_from_json(const json& j) {
  for (const char* key : {"gamma_basis", "lambda_basis", "shifts", "symbols"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("symbol-set JSON needs \"") + key + "\"");
  Lattice gamma(basis_from(j.at("gamma_basis"), "gamma_basis"));
  Lattice lambda(basis_from(j.at("lambda_basis"), "lambda_basis"));
  std::vector<Eigen::VectorXi> shifts;
  for (const auto& row : j.at("shifts")) shifts.push_back(ivector_from(row, "shift"));
  std::vector<Symbol> symbols;
  for (const auto& sj : j.at("symbols")) {
    if (!sj.contains("fourier"))
      throw std::invalid_argument("symbol JSON needs a \"fourier\" term list");
    std::vector<FourierTerm> terms;
    for (const auto& tj : sj.at("fourier"))
      terms.push_back({ivector_from(tj.at("freq"), "freq"),
                       {tj.at("re").get<double>(), tj.at("im").get<double>()}});
    symbols.push_back(Symbol::fourier(std::move(terms)));
  }
  return SymbolSet(std::move(gamma), std::move(lambda), std::move(shifts), std::move(symbols));
}

json to_json(const PropagationRule& rule) {
  json c0 = json::array();
  for (const auto& c : rule.c0) {
    json row = json::array();
    for (int i = 0; i < c.size(); ++i) row.push_back(c(i));
    c0.push_back(row);
  }
  json g0 = json::array();
  for (int i = 0; i < rule.gamma0.size(); ++i) g0.push_back(rule.gamma0(i));
  return json{{"C0", c0}, {"gamma0", g0}};
}

PropagationRule rule_from_json(const json& j) {
  if (!j.contains("C0") || !j.contains("gamma0"))
    throw std::invalid_argument("rule JSON needs \"C0\" and \"gamma0\"");
  std::vector<Eigen::VectorXi> c0;
  for (const auto& row : j.at("C0")) c0.push_back(ivector_from(row, "C0 point"));
  return PropagationRule(std::move(c0), ivector_from(j.at("gamma0"), "gamma0"));
}

json atoms_to_json(const std::vector<PhasePoint>& atoms) {
  json out = json::array();
  for (const auto& a : atoms) {
    json x = json::array(), y = json::array();
    for (int i = 0; i < a.x.size(); ++i) x.push_back(a.x(i));
    for (int i = 0; i < a.y.size(); ++i) y.push_back(a.y(i));
    out.push_back(json{{"x", x}, {"y", y}});
  }
  return out;
}

std::vector<PhasePoint> atoms_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("atom JSON must be a nonempty array");
  std::vector<PhasePoint> atoms;
  for (const auto& aj : j) {
    if (!aj.contains("x") || !aj.contains("y"))
      throw std::invalid_argument("each atom needs \"x\" and \"y\"");
    PhasePoint p{vector_from(aj.at("x"), "x"), vector_from(aj.at("y"), "y")};
    if (p.x.size() != p.y.size())
      throw std::invalid_argument("atom \"x\" and \"y\" lengths differ");
    atoms.push_back(std::move(p));
  }
  return atoms;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
  const size_t cols = j[0].size();
  Eigen::MatrixXd m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != cols) throw std::invalid_argument("matrix JSON has ragged rows");
    for (size_t c = 0; c < cols; ++c) m(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
  }
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

json load_json_argument(const std::string& arg) {
  size_t first = arg.find_first_not_of(" \t\n\r");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{'))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot read JSON file: " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

}  // namespace gll::io
