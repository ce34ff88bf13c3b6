#pragma once

#include <complex>
#include <functional>

namespace gll {

struct QuadratureResult {
  std::complex<double> value;
  double error;      // accumulated estimate, conservative
  int evaluations;   // integrand calls
};

// Adaptive Gauss–Kronrod (7/15) on [a, b] to absolute tolerance. Keeps a
// worst-first heap of subintervals and bisects until the summed error
// estimate drops below abs_tol. Throws if the interval budget runs out,
// reporting the tolerance actually reached.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a,
                           double b, double abs_tol = 1e-12, int max_intervals = 4000);

}  // namespace gll
