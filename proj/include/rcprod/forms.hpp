#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "rcprod/common.hpp"

namespace rcprod::forms {

/// Binary quadratic form a x^2 + b xy + c y^2.
struct Form {
  mpz_class a, b, c;
  bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const Form& o) const;
  mpz_class disc() const { return b * b - 4 * a * c; }
  mpz_class eval(const mpz_class& x, const mpz_class& y) const { return a * x * x + b * x * y + c * y * y; }
};

/// Form with the proper transformation that produced it: f(X, Y) = f0(m00 X + m01 Y, m10 X + m11 Y).
struct Tracked {
  Form f;
  mpz_class m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  static Tracked start(Form f0);
  /// Right-multiply the transformation by [[t00, t01], [t10, t11]].
  void compose(const mpz_class& t00, const mpz_class& t01, const mpz_class& t10, const mpz_class& t11);
};

/// Reduction of a positive definite form.
Tracked reduce_definite(Tracked t);
bool is_reduced_definite(const Form& f);

/// Indefinite forms of non-square discriminant D; sqrt_floor = floor(sqrt(D)).
struct Indefinite {
  mpz_class D;
  mpz_class sqrt_floor;
  explicit Indefinite(const mpz_class& disc);
  bool is_reduced(const Form& f) const;
  /// One application of the reduction operator rho.
  void rho(Tracked& t) const;
  Tracked reduce(Tracked t) const;
  /// Reduced forms of the cycle starting at a reduced form.
  std::vector<Form> cycle(const Form& reduced) const;
};

/// All reduced positive definite forms of discriminant D < 0 (primitive when D is fundamental).
std::vector<Form> reduced_definite_forms(i64 D);
/// All reduced indefinite forms of discriminant D > 0.
std::vector<Form> reduced_indefinite_forms(i64 D);
/// Number of rho-cycles among the reduced indefinite forms (the narrow class number for fundamental D).
i64 count_indefinite_cycles(i64 D);

}  // namespace rcprod::forms
