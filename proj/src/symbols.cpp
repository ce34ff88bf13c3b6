#include "gll/symbols.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace gll {

Symbol Symbol::fourier(std::vector<FourierTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("fourier symbol needs at least one term");
  const auto d = terms.front().freq.size();
  for (const auto& t : terms)
    if (t.freq.size() != d) throw std::invalid_argument("fourier term dimension mismatch");
  Symbol s;
  s.kind_ = Kind::fourier;
  s.terms_ = std::move(terms);
  return s;
}

Symbol Symbol::tabulated(std::vector<int> shape, std::vector<cplx> values) {
  if (shape.empty()) throw std::invalid_argument("tabulated symbol needs a nonempty shape");
  long long n = 1;
  for (int s : shape) {
    if (s < 1) throw std::invalid_argument("tabulated symbol shape entries must be >= 1");
    n *= s;
  }
  if (static_cast<long long>(values.size()) != n)
    throw std::invalid_argument("tabulated symbol value count does not match shape");
  Symbol s;
  s.kind_ = Kind::tabulated;
  s.shape_ = std::move(shape);
  s.values_ = std::move(values);
  return s;
}

cplx Symbol::eval(const Eigen::MatrixXd& dual_basis, const Lattice& period,
                  const Eigen::VectorXd& t) const {
  if (kind_ == Kind::fourier) {
    cplx acc{0.0, 0.0};
    for (const auto& term : terms_) {
      const double phase =
          2.0 * std::numbers::pi * (dual_basis * term.freq.cast<double>()).dot(t);
      acc += term.coeff * cplx{std::cos(phase), std::sin(phase)};
    }
    return acc;
  }

  // Tabulated: fractional coordinates in the fundamental domain, then
  // periodic multilinear interpolation on the sample grid.
  const int d = static_cast<int>(shape_.size());
  Eigen::VectorXd c = period.coords(t);
  Eigen::VectorXd pos(d);
  for (int i = 0; i < d; ++i) {
    double f = c(i) - std::floor(c(i));
    if (f >= 1.0) f = 0.0;
    pos(i) = f * shape_[i];
  }
  cplx acc{0.0, 0.0};
  for (int corner = 0; corner < (1 << d); ++corner) {
    double w = 1.0;
    long long idx = 0;
    for (int i = 0; i < d; ++i) {
      const long long base = static_cast<long long>(std::floor(pos(i)));
      const double frac = pos(i) - static_cast<double>(base);
      const int up = (corner >> i) & 1;
      w *= up ? frac : 1.0 - frac;
      const long long gi = (base + up) % shape_[i];
      idx = idx * shape_[i] + gi;
    }
    acc += w * values_[static_cast<size_t>(idx)];
  }
  return acc;
}

SymbolSet::SymbolSet(Lattice gamma, Lattice lambda, std::vector<Eigen::VectorXi> shifts,
                     std::vector<Symbol> symbols)
    : gamma_(std::move(gamma)), lambda_(std::move(lambda)), shifts_(std::move(shifts)),
      symbols_(std::move(symbols)) {
  if (gamma_.dim() != lambda_.dim())
    throw std::invalid_argument("orbit and period lattices must share a dimension");
  if (shifts_.empty()) throw std::invalid_argument("symbol set needs at least one shift");
  if (shifts_.size() != symbols_.size())
    throw std::invalid_argument("one symbol per shift required");
  std::set<std::vector<int>> seen;
  for (const auto& s : shifts_) {
    if (s.size() != gamma_.dim())
      throw std::invalid_argument("shift dimension mismatch");
    std::vector<int> key(s.data(), s.data() + s.size());
    if (!seen.insert(key).second)
      throw std::invalid_argument("shifts must be distinct");
  }
  dual_basis_ = lambda_.dual().basis();
}

bool SymbolSet::all_fourier() const {
  for (const auto& s : symbols_)
    if (!s.is_fourier()) return false;
  return true;
}

}  // namespace gll
