#pragma once

#include <complex>
#include <functional>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "rcprod/common.hpp"

// Groups are written additively here; the multiplicative H_q(K) maps onto this notation
// with ideal products becoming coordinate sums.
namespace rcprod::group {

using Matrix = std::vector<std::vector<mpz_class>>;

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
mpz_class determinant(const Matrix& m);

struct SNF {
  Matrix D, U, V;
};

/// U * M * V = D with D diagonal, nonnegative, d1 | d2 | ...; U and V unimodular.
SNF smith_normal_form(const Matrix& M);

struct Element {
  std::vector<i64> coords;
  auto operator<=>(const Element&) const = default;
};

class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<i64> invariant_factors);

  const std::vector<i64>& invariants() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  i64 order() const { return order_; }
  i64 exponent() const { return d_.empty() ? 1 : d_.back(); }

  Element identity() const;
  Element reduce(std::vector<i64> coords) const;
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element sub(const Element& x, const Element& y) const;
  Element scale(const Element& x, i64 k) const;
  i64 element_order(const Element& x) const;

  /// Mixed-radix position in [0, order).
  i64 index_of(const Element& x) const;
  Element element_at(i64 idx) const;
  std::vector<Element> elements() const;

  bool operator==(const FinAbGroup& o) const { return d_ == o.d_; }

 private:
  std::vector<i64> d_;
  i64 order_ = 1;
};

/// Character with value sum_i e_i x_i / d_i (mod 1).
struct Character {
  std::vector<i64> exps;
  auto operator<=>(const Character&) const = default;
};

std::vector<Character> characters(const FinAbGroup& G);
mpq_class character_value(const FinAbGroup& G, const Character& chi, const Element& x);
std::complex<double> character_complex(const FinAbGroup& G, const Character& chi, const Element& x);
i64 character_order(const FinAbGroup& G, const Character& chi);
bool is_trivial(const Character& chi);

struct Subgroup {
  std::vector<Element> generators;
  std::vector<i64> members;  // sorted indices
  i64 order = 1;
  i64 index = 1;
  bool contains(i64 idx) const;
};

Subgroup subgroup_generated(const FinAbGroup& G, const std::vector<Element>& gens);
Subgroup subgroup_from_members(const FinAbGroup& G, std::vector<i64> members);

/// Z^n / rowspan(relations) with the projection of exponent vectors.
struct Presentation {
  FinAbGroup group;
  Matrix V;
  std::vector<std::size_t> kept;  // diagonal positions with d > 1
  std::size_t n_gens = 0;

  Element project(const std::vector<i64>& exps) const;
  Element project(const std::vector<mpz_class>& exps) const;
};

Presentation group_from_relations(std::size_t n_gens, const Matrix& relations);

using ElementSet = std::vector<i64>;  // sorted element indices

ElementSet make_set(const FinAbGroup& G, const std::vector<Element>& xs);
ElementSet sumset(const FinAbGroup& G, const ElementSet& A, const ElementSet& B);
Subgroup stabilizer(const FinAbGroup& G, const ElementSet& S);
i64 cosets_meeting(const FinAbGroup& G, const Subgroup& H, const ElementSet& B);

struct SumsetResult {
  ElementSet sum;
  Subgroup H;
  i64 lambda = 0;
};
SumsetResult sumset_stabilizer(const FinAbGroup& G, const ElementSet& A, const ElementSet& B);

struct KneserRecord {
  Subgroup H;
  i64 lambda = 0;
  i64 sum_size = 0;
  i64 bound = 0;
  bool ok = false;
};
KneserRecord kneser_check(const FinAbGroup& G, const ElementSet& B);

struct TripleCover {
  ElementSet AA, AAA;
  Subgroup H;
  i64 lambda = 0;
  i64 lambda_ceil = 0;
  i64 y = 1;
  bool eq8_holds = false;
  bool eq9_holds = false;
  bool covered = false;
  bool kneser_ok = false;
};
TripleCover triple_cover_predicates(const FinAbGroup& G, const ElementSet& A);

/// All abelian groups of the given order, as invariant-factor lists.
std::vector<FinAbGroup> abelian_groups_of_order(i64 n);

/// Structure of a finite group given by an identity index and a product oracle on indices,
/// grown one generator at a time.
class GeneratedGroup {
 public:
  using Mul = std::function<i64(i64, i64)>;
  GeneratedGroup(i64 identity, Mul mul);

  /// Returns true when g enlarged the group.
  bool add_generator(i64 g);
  i64 size() const { return static_cast<i64>(elems_.size()); }
  bool contains(i64 x) const { return pos_.count(x) != 0; }
  const std::vector<i64>& generators() const { return gens_; }
  std::vector<i64> exponents(i64 x) const;
  const std::vector<i64>& members() const { return elems_; }
  const Matrix& relations() const { return rels_; }
  Presentation presentation() const;

 private:
  Mul mul_;
  std::vector<i64> gens_;
  std::vector<i64> elems_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> gen_of_;
  std::vector<i64> exp_;
  std::unordered_map<i64, std::int32_t> pos_;
  Matrix rels_;
};

}  // namespace rcprod::group
