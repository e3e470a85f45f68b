#include "rcprod/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace rcprod::quad_int {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
void gk15(const F& f, double a, double b, T& value, double& err, double& resabs) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T k = fc * kKronrod[7];
  T g = fc * kGauss[3];
  double ka = std::abs(fc) * kKronrod[7];
  for (int i = 0; i < 7; ++i) {
    T f1 = f(c - h * kNodes[static_cast<std::size_t>(i)]);
    T f2 = f(c + h * kNodes[static_cast<std::size_t>(i)]);
    k += (f1 + f2) * kKronrod[static_cast<std::size_t>(i)];
    ka += (std::abs(f1) + std::abs(f2)) * kKronrod[static_cast<std::size_t>(i)];
    if (i % 2 == 1) g += (f1 + f2) * kGauss[static_cast<std::size_t>(i / 2)];
  }
  value = k * h;
  err = std::abs((k - g) * h);
  resabs = ka * std::abs(h);
}

template <class T, class F>
void adapt(const F& f, double a, double b, double tol, int depth, Result<T>& out) {
  T v;
  double e, resabs;
  gk15<T>(f, a, b, v, e, resabs);
  out.evaluations += 15;
  // Below the rounding floor further bisection cannot reduce the estimate.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (e <= tol || e <= floor || depth <= 0 || b - a < 1e-14 * (std::abs(a) + std::abs(b) + 1e-300)) {
    out.value += v;
    out.error += e;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt<T>(f, a, m, tol / 2, depth - 1, out);
  adapt<T>(f, m, b, tol / 2, depth - 1, out);
}

}  // namespace

Result<double> integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  Result<double> r;
  adapt<double>(f, a, b, tol, max_depth, r);
  return r;
}

Result<std::complex<double>> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                               double b, double tol, int max_depth) {
  Result<std::complex<double>> r;
  adapt<std::complex<double>>(f, a, b, tol, max_depth, r);
  return r;
}

}  // namespace rcprod::quad_int
