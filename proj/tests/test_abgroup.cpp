#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "rcprod/abgroup.hpp"

using namespace rcprod;
using namespace rcprod::group;

namespace {

Matrix mat(std::vector<std::vector<long>> rows) {
  Matrix m;
  for (auto& r : rows) {
    std::vector<mpz_class> row;
    for (long v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return m;
}

void check_snf(const Matrix& M) {
  SNF s = smith_normal_form(M);
  CHECK(multiply(multiply(s.U, M), s.V) == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  std::size_t k = std::min(M.size(), M.empty() ? 0 : M[0].size());
  for (std::size_t i = 0; i < s.D.size(); ++i)
    for (std::size_t j = 0; j < s.D[i].size(); ++j)
      if (i != j) CHECK(s.D[i][j] == 0);
  for (std::size_t i = 0; i < k; ++i) CHECK(s.D[i][i] >= 0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (s.D[i][i] == 0)
      CHECK(s.D[i + 1][i + 1] == 0);
    else
      CHECK(s.D[i + 1][i + 1] % s.D[i][i] == 0);
  }
}

// Elements h with h + S = S, by brute force.
std::vector<i64> brute_stabilizer(const FinAbGroup& G, const ElementSet& S) {
  std::set<i64> Sset(S.begin(), S.end());
  std::vector<i64> out;
  for (i64 h = 0; h < G.order(); ++h) {
    bool ok = true;
    for (i64 s : S)
      if (!Sset.count(G.index_of(G.add(G.element_at(h), G.element_at(s))))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return out;
}

ElementSet brute_sumset(const FinAbGroup& G, const ElementSet& A, const ElementSet& B) {
  std::set<i64> out;
  for (i64 a : A)
    for (i64 b : B) out.insert(G.index_of(G.add(G.element_at(a), G.element_at(b))));
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("smith normal form vectors") {
  SNF a = smith_normal_form(mat({{2, 0}, {0, 3}}));
  CHECK(a.D == mat({{1, 0}, {0, 6}}));
  SNF b = smith_normal_form(mat({{4, 2}, {2, 4}}));
  CHECK(b.D == mat({{2, 0}, {0, 6}}));
  SNF z = smith_normal_form(mat({{0, 0}, {0, 0}}));
  CHECK(z.D == mat({{0, 0}, {0, 0}}));
  CHECK(z.U == identity_matrix(2));
  CHECK(z.V == identity_matrix(2));
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    Matrix M(r, std::vector<mpz_class>(c));
    for (auto& row : M)
      for (auto& v : row) v = static_cast<long>(rng() % 41) - 20;
    check_snf(M);
  }
}

TEST_CASE("group from relations") {
  auto p = group_from_relations(2, mat({{2, 0}, {0, 3}}));
  CHECK(p.group.invariants() == std::vector<i64>{6});
  CHECK(p.group.element_order(p.project(std::vector<i64>{1, 0})) == 2);
  CHECK(p.group.element_order(p.project(std::vector<i64>{0, 1})) == 3);
  CHECK(group_from_relations(2, identity_matrix(2)).group.order() == 1);
  CHECK_THROWS(group_from_relations(1, Matrix{}));
}

TEST_CASE("element arithmetic") {
  FinAbGroup G({2, 6});
  CHECK(G.order() == 12);
  CHECK(G.exponent() == 6);
  for (i64 i = 0; i < G.order(); ++i) {
    Element x = G.element_at(i);
    CHECK(G.index_of(x) == i);
    CHECK(G.add(x, G.neg(x)) == G.identity());
    CHECK(G.scale(x, G.element_order(x)) == G.identity());
    CHECK(G.exponent() % G.element_order(x) == 0);
  }
  CHECK(G.reduce({3, -1}) == Element{{1, 5}});
  CHECK_THROWS(FinAbGroup({4, 6}));
}

TEST_CASE("characters") {
  FinAbGroup Z2({2});
  auto ch2 = characters(Z2);
  REQUIRE(ch2.size() == 2);
  for (auto& G : {FinAbGroup({2}), FinAbGroup({2, 4}), FinAbGroup({3, 6}), FinAbGroup({12})}) {
    auto chars = characters(G);
    CHECK(static_cast<i64>(chars.size()) == G.order());
    for (auto& chi : chars) {
      // Orthogonality in exact arithmetic: the values are rationals mod 1.
      std::map<mpq_class, i64> hist;
      for (auto& x : G.elements()) hist[character_value(G, chi, x)] += 1;
      i64 ord = character_order(G, chi);
      CHECK(static_cast<i64>(hist.size()) == ord);
      for (auto& [v, c] : hist) CHECK(c == G.order() / ord);
      CHECK(is_trivial(chi) == (ord == 1));
      std::complex<double> s = 0;
      for (auto& x : G.elements()) s += character_complex(G, chi, x);
      CHECK(std::abs(s - (is_trivial(chi) ? static_cast<double>(G.order()) : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("subgroups satisfy Lagrange") {
  std::mt19937_64 rng(3);
  for (auto& G : abelian_groups_of_order(24)) {
    for (int it = 0; it < 20; ++it) {
      std::vector<Element> gens;
      for (int k = 0; k < 1 + static_cast<int>(rng() % 2); ++k) gens.push_back(G.element_at(static_cast<i64>(rng() % 24)));
      Subgroup H = subgroup_generated(G, gens);
      CHECK(H.order * H.index == G.order());
      CHECK(static_cast<i64>(H.members.size()) == H.order);
      for (auto& g : gens) CHECK(H.contains(G.index_of(g)));
    }
  }
}

TEST_CASE("abelian groups of order n") {
  CHECK(abelian_groups_of_order(1).size() == 1);
  CHECK(abelian_groups_of_order(8).size() == 3);
  CHECK(abelian_groups_of_order(12).size() == 2);
  CHECK(abelian_groups_of_order(16).size() == 5);
  CHECK(abelian_groups_of_order(36).size() == 4);
  CHECK(abelian_groups_of_order(72).size() == 6);
}

TEST_CASE("Kneser tight case Z/6, B = {0, 3}") {
  FinAbGroup G({6});
  ElementSet B = make_set(G, {Element{{0}}, Element{{3}}});
  KneserRecord r = kneser_check(G, B);
  CHECK(r.ok);
  CHECK(r.sum_size == 2);
  CHECK(r.bound == 2);
  CHECK(r.H.order == 2);
  CHECK(r.lambda == 1);
  ElementSet all = make_set(G, G.elements());
  KneserRecord full = kneser_check(G, all);
  CHECK(full.ok);
  CHECK(full.bound == 6);
  CHECK_THROWS(kneser_check(G, ElementSet{}));
}

TEST_CASE("Kneser exhaustive over all abelian groups of order <= 12") {
  i64 violations = 0, cases = 0;
  for (i64 n = 1; n <= 12; ++n)
    for (auto& G : abelian_groups_of_order(n))
      for (i64 mask = 1; mask < (i64{1} << n); ++mask) {
        ElementSet B;
        for (i64 i = 0; i < n; ++i)
          if (mask >> i & 1) B.push_back(i);
        KneserRecord r = kneser_check(G, B);
        ++cases;
        if (!r.ok) ++violations;
        if (n <= 8) {
          ElementSet BB = brute_sumset(G, B, B);
          REQUIRE(static_cast<i64>(BB.size()) == r.sum_size);
          REQUIRE(r.H.members == brute_stabilizer(G, BB));
        }
      }
  CHECK(cases > 0);
  CHECK(violations == 0);
}

TEST_CASE("sumset and stabilizer agree with brute force") {
  std::mt19937_64 rng(5);
  for (i64 n : {10, 18, 30, 36}) {
    for (auto& G : abelian_groups_of_order(n)) {
      for (int it = 0; it < 30; ++it) {
        ElementSet A, B;
        for (i64 i = 0; i < n; ++i) {
          if (rng() % 4 == 0) A.push_back(i);
          if (rng() % 3 == 0) B.push_back(i);
        }
        if (A.empty() || B.empty()) continue;
        ElementSet S = sumset(G, A, B);
        CHECK(S == brute_sumset(G, A, B));
        Subgroup H = stabilizer(G, S);
        CHECK(H.members == brute_stabilizer(G, S));
        std::set<i64> cosets;
        for (i64 b : B) {
          i64 rep = b;
          for (i64 h : H.members) rep = std::min(rep, G.index_of(G.add(G.element_at(b), G.element_at(h))));
          cosets.insert(rep);
        }
        CHECK(cosets_meeting(G, H, B) == static_cast<i64>(cosets.size()));
      }
    }
  }
}

TEST_CASE("eq:8 implies A+A+A = G on random instances") {
  std::mt19937_64 rng(9);
  int eq8 = 0;
  for (int it = 0; it < 2000; ++it) {
    i64 n = 1 + static_cast<i64>(rng() % 100);
    auto groups = abelian_groups_of_order(n);
    const FinAbGroup& G = groups[rng() % groups.size()];
    ElementSet A;
    int density = 2 + static_cast<int>(rng() % 6);
    for (i64 i = 0; i < n; ++i)
      if (rng() % density == 0) A.push_back(i);
    if (A.empty()) A.push_back(static_cast<i64>(rng() % n));
    TripleCover t = triple_cover_predicates(G, A);
    CHECK(t.kneser_ok);
    CHECK(t.lambda >= t.lambda_ceil);
    CHECK(t.AAA == brute_sumset(G, brute_sumset(G, A, A), A));
    if (t.eq8_holds) {
      ++eq8;
      CHECK(t.covered);
    }
    CHECK(t.covered == (static_cast<i64>(t.AAA.size()) == G.order()));
  }
  CHECK(eq8 > 0);
  FinAbGroup G({4});
  TripleCover full = triple_cover_predicates(G, make_set(G, G.elements()));
  CHECK(full.y == 1);
  CHECK(full.covered);
}

TEST_CASE("generated group of (Z/15)^*") {
  GeneratedGroup g(1, [](i64 a, i64 b) { return a * b % 15; });
  for (i64 x : {2, 4, 7, 11, 13, 14}) g.add_generator(x);
  CHECK(g.size() == 8);
  Presentation p = g.presentation();
  CHECK(p.group.invariants() == std::vector<i64>{2, 4});
  for (i64 x : g.members()) {
    auto e = g.exponents(x);
    i64 v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (i64 k = 0; k < e[i]; ++k) v = v * g.generators()[i] % 15;
    CHECK(v == x);
  }
  CHECK_FALSE(g.add_generator(4));
}
