#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "rcprod/common.hpp"

namespace rcprod::poly {

/// Dense polynomial with exact rational coefficients, c[i] multiplies x^i.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<mpq_class> coeffs);
  static Poly constant(const mpq_class& c);
  static Poly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& lead() const { return c_.back(); }

  mpq_class operator()(const mpq_class& t) const;
  double eval(double t) const;

  Poly derivative(int k = 1) const;
  Poly antiderivative() const;
  /// Exact integral over [a, b].
  mpq_class integrate(const mpq_class& a, const mpq_class& b) const;
  /// p(a x + b).
  Poly compose_linear(const mpq_class& a, const mpq_class& b) const;
  Poly pow(int e) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const mpq_class& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; divisor nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);

 private:
  std::vector<mpq_class> c_;
  void trim();
};

/// A root lies in [lo, hi]; lo == hi marks an exact rational root.
struct RootInterval {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
};

/// Distinct real roots of p in the closed interval [a, b], isolated by Sturm sequences
/// and refined by bisection to width <= eps.
std::vector<RootInterval> isolate_roots(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps);

/// Number of distinct real roots in (a, b] via Sturm's theorem; p(a) != 0.
int sturm_count(const Poly& p, const mpq_class& a, const mpq_class& b);

/// Certified enclosure of a real quantity.
struct Enclosure {
  mpq_class lower, upper;
  bool exact() const { return lower == upper; }
};

/// sup |p| over [a, b], enclosing values at critical points by Taylor remainders.
Enclosure sup_abs(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps);

/// Integral of |p| over [a, b]; exact when every sign change of p is at a rational point.
Enclosure l1_norm(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps);

}  // namespace rcprod::poly
