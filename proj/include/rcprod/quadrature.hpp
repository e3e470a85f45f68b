#pragma once

#include <complex>
#include <functional>

namespace rcprod::quad_int {

template <class T>
struct Result {
  T value{};
  double error = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b] until the summed error estimate is <= tol.
Result<double> integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 30);
Result<std::complex<double>> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                               double b, double tol, int max_depth = 30);

}  // namespace rcprod::quad_int
