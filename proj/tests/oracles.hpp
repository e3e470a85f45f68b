#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <set>
#include <tuple>
#include <vector>

#include "rcprod/quadfield.hpp"

namespace rcprod::oracle {

/// Units of K modulo a rational modulus m, with their signs at the real places.
struct UnitResidue {
  i64 x = 0, y = 0;
  int s0 = 1, s1 = 1;
  auto operator<=>(const UnitResidue&) const = default;
};

inline mpz_class mod_m(const mpz_class& v, i64 m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

inline std::vector<UnitResidue> unit_residues(const quad::Field& K, i64 m) {
  std::set<UnitResidue> out;
  auto push = [&](const quad::AlgebraicNumber& u, int s0, int s1) {
    out.insert({mod_m(u.a.get_num(), m).get_si(), mod_m(u.b.get_num(), m).get_si(), s0, s1});
    out.insert({mod_m(-u.a.get_num(), m).get_si(), mod_m(-u.b.get_num(), m).get_si(), -s0, -s1});
  };
  if (K.invariants().r1 == 0) {
    // Torsion units: every a + b*omega of norm 1 with small coordinates.
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        quad::AlgebraicNumber u{a, b};
        if (K.norm(u) == 1) push(u, 1, 1);
      }
  } else {
    const quad::AlgebraicNumber eps = *K.invariants().fund_unit;
    int e0 = K.sign_at(eps, 0), e1 = K.sign_at(eps, 1);
    quad::AlgebraicNumber u{1, 0};
    int s0 = 1, s1 = 1;
    // The residues and signs of eps^k repeat with period dividing 2 * |(O/m)^*| <= 2 m^2.
    for (i64 k = 0; k <= 2 * m * m + 2; ++k) {
      push(u, s0, s1);
      u = K.mul(u, eps);
      u = {mpq_class(mod_m(u.a.get_num(), m)), mpq_class(mod_m(u.b.get_num(), m))};
      s0 *= e0;
      s1 *= e1;
    }
  }
  return {out.begin(), out.end()};
}

/// Narrow ray equivalence modulo (m) for ideals coprime to m: a ~ b iff a * conj(b) = (delta) with
/// u * delta totally positive and u * delta = N(b) mod m for some unit u.
class PairwiseRayOracle {
 public:
  PairwiseRayOracle(const quad::Field& K, i64 m) : K_(K), m_(m), units_(unit_residues(K, m)) {}

  bool equivalent(const quad::IdealHNF& a, const quad::IdealHNF& b) const {
    auto g = K_.principal_generator(K_.product(a, K_.conj(b)));
    if (!g) return false;
    const auto& d = g->gen;
    int d0 = 1, d1 = 1;
    if (K_.invariants().r1 == 2) {
      d0 = K_.sign_at(d, 0);
      d1 = K_.sign_at(d, 1);
    }
    quad::AlgebraicNumber dr{mpq_class(mod_m(d.a.get_num(), m_)), mpq_class(mod_m(d.b.get_num(), m_))};
    mpz_class nb = mod_m(mpz_class(static_cast<long>(K_.norm(b))), m_);
    for (const auto& u : units_) {
      if (K_.invariants().r1 == 2 && (u.s0 * d0 < 0 || u.s1 * d1 < 0)) continue;
      auto ud = K_.mul(quad::AlgebraicNumber{mpq_class(static_cast<long>(u.x)), mpq_class(static_cast<long>(u.y))}, dr);
      if (mod_m(ud.a.get_num() - nb, m_) == 0 && mod_m(ud.b.get_num(), m_) == 0) return true;
    }
    return false;
  }

  /// Partition of the given ideals into equivalence classes; returns the class index of each.
  std::vector<int> partition(const std::vector<quad::IdealHNF>& ideals, std::vector<quad::IdealHNF>* reps) const {
    std::vector<quad::IdealHNF> r;
    std::vector<int> idx;
    for (const auto& I : ideals) {
      int found = -1;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (equivalent(I, r[j])) {
          found = static_cast<int>(j);
          break;
        }
      if (found < 0) {
        found = static_cast<int>(r.size());
        r.push_back(I);
      }
      idx.push_back(found);
    }
    if (reps) *reps = r;
    return idx;
  }

 private:
  const quad::Field& K_;
  i64 m_;
  std::vector<UnitResidue> units_;
};

/// phi of a rational modulus (m) by factoring m over the primes of K.
inline i64 phi_rational(const quad::Field& K, i64 m) {
  i64 N = K.norm(K.rational_ideal(m));
  for (auto& [P, e] : K.factor(K.rational_ideal(m))) N = N / P.norm() * (P.norm() - 1);
  return N;
}

}  // namespace rcprod::oracle
