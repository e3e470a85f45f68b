#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "rcprod/common.hpp"
#include "rcprod/forms.hpp"

namespace rcprod::quad {

/// Q(sqrt(d)) for squarefree d not in {0, 1}, or Q itself when d is absent.
struct FieldSpec {
  std::optional<i64> d;

  static FieldSpec rational();
  static FieldSpec quadratic(i64 d);
  /// Grammar: `Q` | `Q(sqrt:<d>)`.
  static FieldSpec parse(std::string_view text);

  bool is_rational() const { return !d.has_value(); }
  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;
};

/// a + b*omega with omega = (1+sqrt d)/2 if d = 1 mod 4, else sqrt d.
struct AlgebraicNumber {
  mpq_class a = 0;
  mpq_class b = 0;
  bool operator==(const AlgebraicNumber& o) const { return a == o.a && b == o.b; }
  std::string to_string() const;
};

/// s * (aZ + (b + omega)Z). For K = Q the ideal (m) is stored as s = m, a = 1, b = 0.
struct IdealHNF {
  i64 s = 1;
  i64 a = 1;
  i64 b = 0;
  auto operator<=>(const IdealHNF&) const = default;
  std::string to_string() const;
};

enum class PrimeKind { split, inert, ramified };
std::string to_string(PrimeKind k);

struct PrimeIdeal {
  i64 p = 0;
  PrimeKind kind = PrimeKind::split;
  bool conj = false;
  IdealHNF hnf;
  int residue_degree = 1;

  i64 norm() const { return residue_degree == 1 ? p : p * p; }
  bool operator==(const PrimeIdeal& o) const { return hnf == o.hnf; }
  bool operator<(const PrimeIdeal& o) const;
};

struct QuadInvariants {
  i64 disc = 1;
  int n = 1;
  int r1 = 1;
  int r2 = 0;
  i64 h = 1;
  i64 h_narrow = 1;
  std::optional<AlgebraicNumber> fund_unit;
  int fund_unit_norm = 0;
  double regulator = 1.0;
  int mu_order = 2;
  double alpha = 1.0;
};

struct PrincipalGenerator {
  AlgebraicNumber gen;
  bool totally_positive = false;
};

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_rational() const { return spec_.is_rational(); }
  int degree() const { return is_rational() ? 1 : 2; }
  i64 disc() const { return inv_.disc; }
  /// omega^2 = t*omega - n.
  i64 trace_omega() const { return t_; }
  i64 norm_omega() const { return n_; }
  const QuadInvariants& invariants() const { return inv_; }

  AlgebraicNumber add(const AlgebraicNumber& x, const AlgebraicNumber& y) const;
  AlgebraicNumber sub(const AlgebraicNumber& x, const AlgebraicNumber& y) const;
  AlgebraicNumber mul(const AlgebraicNumber& x, const AlgebraicNumber& y) const;
  AlgebraicNumber conj(const AlgebraicNumber& x) const;
  mpq_class norm(const AlgebraicNumber& x) const;
  mpq_class trace(const AlgebraicNumber& x) const;
  bool is_integral(const AlgebraicNumber& x) const;
  /// Sign of the image under the real embedding i (0: sqrt d > 0, 1: sqrt d < 0).
  int sign_at(const AlgebraicNumber& x, int embedding) const;
  bool is_totally_positive(const AlgebraicNumber& x) const;
  double embed(const AlgebraicNumber& x, int embedding) const;

  IdealHNF unit_ideal() const { return IdealHNF{}; }
  IdealHNF rational_ideal(i64 m) const;
  IdealHNF ideal_of(const AlgebraicNumber& x) const;
  /// Validates and canonicalizes s, a, b.
  IdealHNF make_ideal(i64 s, i64 a, i64 b) const;
  /// Grammar: `(<int>)` | `hnf:<s>,<a>,<b>` | `above:<p>:<0|1>`.
  IdealHNF parse_ideal(std::string_view text) const;
  std::string ideal_to_string(const IdealHNF& x) const;

  i64 norm(const IdealHNF& x) const;
  IdealHNF product(const IdealHNF& x, const IdealHNF& y) const;
  IdealHNF power(const IdealHNF& x, int e) const;
  IdealHNF conj(const IdealHNF& x) const;
  IdealHNF gcd(const IdealHNF& x, const IdealHNF& y) const;
  IdealHNF lcm(const IdealHNF& x, const IdealHNF& y) const;
  /// x / y for y | x.
  IdealHNF divide_exact(const IdealHNF& x, const IdealHNF& y) const;
  /// y | x, i.e. x is contained in y.
  bool divides(const IdealHNF& y, const IdealHNF& x) const;
  bool coprime(const IdealHNF& x, const IdealHNF& y) const;
  bool contains(const IdealHNF& x, const mpz_class& u, const mpz_class& v) const;

  std::vector<PrimeIdeal> primes_above(u64 p) const;
  /// Factorization by norm factoring and valuation tests; respects the factoring cap.
  Factorization factor(const IdealHNF& x) const;
  IdealHNF from_factorization(const Factorization& f) const;

  /// A generator when x is principal, with whether some associate is totally positive.
  std::optional<PrincipalGenerator> principal_generator(const IdealHNF& x) const;
  /// A totally positive generator when x is narrowly principal.
  std::optional<AlgebraicNumber> totally_positive_generator(const IdealHNF& x) const;
  /// Canonical reduced form of the narrow ideal class of x.
  forms::Form narrow_class_key(const IdealHNF& x) const;
  forms::Form ideal_form(const IdealHNF& x) const;

  /// All prime ideals of norm <= X, sorted by norm then conjugate flag.
  std::vector<PrimeIdeal> primes_up_to(i64 X) const;
  std::vector<PrimeIdeal> degree_one_primes(i64 X, const IdealHNF& q, bool include_ramified) const;
  std::vector<PrimeIdeal> primes_coprime_to(i64 X, const IdealHNF& q) const;
  /// Integral ideals coprime to q of norm <= X in ascending (norm, hnf) order.
  std::vector<IdealHNF> ideals_up_to(i64 X, const IdealHNF& q) const;

 private:
  FieldSpec spec_;
  i64 t_ = 0;
  i64 n_ = 0;
  QuadInvariants inv_;
  std::optional<forms::Indefinite> indef_;

  IdealHNF hnf_from_generators(const std::vector<std::pair<i128, i128>>& gens) const;
  std::vector<std::pair<i128, i128>> basis(const IdealHNF& x) const;
  std::optional<AlgebraicNumber> generator_search(const IdealHNF& x, bool need_positive_norm) const;
  AlgebraicNumber element_from_form_point(const IdealHNF& x, const mpz_class& u, const mpz_class& v) const;
  void compute_invariants();
};

/// Visits every product of primes (given by ascending norms) with norm <= X.
/// visit(norm, stack) receives (prime index, exponent) pairs in increasing index order.
template <class Visit>
void enumerate_factorizations(const std::vector<i64>& norms, i64 X, Visit&& visit) {
  std::vector<std::pair<int, int>> stack;
  std::function<void(std::size_t, i64)> rec = [&](std::size_t start, i64 cur) {
    for (std::size_t i = start; i < norms.size(); ++i) {
      i64 p = norms[i];
      if (cur > X / p) break;
      i64 v = cur * p;
      int e = 1;
      for (;;) {
        stack.emplace_back(static_cast<int>(i), e);
        visit(v, stack);
        rec(i + 1, v);
        stack.pop_back();
        if (v > X / p) break;
        v *= p;
        ++e;
      }
    }
  };
  if (X >= 1) visit(i64{1}, stack);
  rec(0, 1);
}

/// Squarefree variant: exponents are all 1.
template <class Visit>
void enumerate_squarefree(const std::vector<i64>& norms, i64 X, Visit&& visit) {
  std::vector<int> stack;
  std::function<void(std::size_t, i64)> rec = [&](std::size_t start, i64 cur) {
    for (std::size_t i = start; i < norms.size(); ++i) {
      i64 p = norms[i];
      if (cur > X / p) break;
      stack.push_back(static_cast<int>(i));
      visit(cur * p, stack);
      rec(i + 1, cur * p);
      stack.pop_back();
    }
  };
  if (X >= 1) visit(i64{1}, stack);
  rec(0, 1);
}

}  // namespace rcprod::quad
