#include "rcprod/abgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rcprod::group {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix r(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

mpz_class determinant(const Matrix& m0) {
  std::size_t n = m0.size();
  if (n == 0) return 1;
  Matrix m = m0;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SNF smith_normal_form(const Matrix& M) {
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  SNF r{M, identity_matrix(rows), identity_matrix(cols)};
  Matrix& A = r.D;
  auto row_sub = [&](std::size_t i, std::size_t k, const mpz_class& q) {
    for (std::size_t j = 0; j < cols; ++j) A[i][j] -= q * A[k][j];
    for (std::size_t j = 0; j < rows; ++j) r.U[i][j] -= q * r.U[k][j];
  };
  auto col_sub = [&](std::size_t j, std::size_t k, const mpz_class& q) {
    for (std::size_t i = 0; i < rows; ++i) A[i][j] -= q * A[i][k];
    for (std::size_t i = 0; i < cols; ++i) r.V[i][j] -= q * r.V[i][k];
  };
  std::size_t lim = std::min(rows, cols);
  for (std::size_t k = 0; k < lim; ++k) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (A[i][j] != 0 && (pi == rows || abs(A[i][j]) < abs(A[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) goto finished;
      if (pi != k) {
        std::swap(A[pi], A[k]);
        std::swap(r.U[pi], r.U[k]);
      }
      if (pj != k) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][pj], A[i][k]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(r.V[i][pj], r.V[i][k]);
      }
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (A[i][k] == 0) continue;
        mpz_class q = A[i][k] / A[k][k];
        row_sub(i, k, q);
        if (A[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (A[k][j] == 0) continue;
        mpz_class q = A[k][j] / A[k][k];
        col_sub(j, k, q);
        if (A[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = k + 1; i < rows && divisible; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (A[i][j] % A[k][k] != 0) {
            for (std::size_t c = 0; c < cols; ++c) A[k][c] += A[i][c];
            for (std::size_t c = 0; c < rows; ++c) r.U[k][c] += r.U[i][c];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (A[k][k] < 0) {
      for (std::size_t c = 0; c < cols; ++c) A[k][c] = -A[k][c];
      for (std::size_t c = 0; c < rows; ++c) r.U[k][c] = -r.U[k][c];
    }
  }
finished:
  return r;
}

FinAbGroup::FinAbGroup(std::vector<i64> invariant_factors) : d_(std::move(invariant_factors)) {
  order_ = 1;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 2) throw ValidationError("invariant factors must be >= 2");
    if (i > 0 && d_[i] % d_[i - 1] != 0) throw ValidationError("invariant factors must form a divisibility chain");
    order_ = mul_checked(order_, d_[i]);
  }
}

Element FinAbGroup::identity() const { return Element{std::vector<i64>(d_.size(), 0)}; }

Element FinAbGroup::reduce(std::vector<i64> c) const {
  if (c.size() != d_.size()) throw Error("element length does not match group rank");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], d_[i]);
  return Element{std::move(c)};
}

Element FinAbGroup::add(const Element& x, const Element& y) const {
  Element r = x;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    r.coords[i] += y.coords[i];
    if (r.coords[i] >= d_[i]) r.coords[i] -= d_[i];
  }
  return r;
}

Element FinAbGroup::neg(const Element& x) const {
  Element r = x;
  for (std::size_t i = 0; i < d_.size(); ++i) r.coords[i] = r.coords[i] ? d_[i] - r.coords[i] : 0;
  return r;
}

Element FinAbGroup::sub(const Element& x, const Element& y) const { return add(x, neg(y)); }

Element FinAbGroup::scale(const Element& x, i64 k) const {
  Element r = x;
  for (std::size_t i = 0; i < d_.size(); ++i)
    r.coords[i] = static_cast<i64>(mod_floor128(static_cast<i128>(x.coords[i]) * k, d_[i]));
  return r;
}

i64 FinAbGroup::element_order(const Element& x) const {
  i64 o = 1;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    i64 oi = d_[i] / gcd64(d_[i], x.coords[i]);
    o = o / gcd64(o, oi) * oi;
  }
  return o;
}

i64 FinAbGroup::index_of(const Element& x) const {
  i64 idx = 0;
  for (std::size_t i = 0; i < d_.size(); ++i) idx = idx * d_[i] + x.coords[i];
  return idx;
}

Element FinAbGroup::element_at(i64 idx) const {
  Element r{std::vector<i64>(d_.size(), 0)};
  for (std::size_t i = d_.size(); i-- > 0;) {
    r.coords[i] = idx % d_[i];
    idx /= d_[i];
  }
  return r;
}

std::vector<Element> FinAbGroup::elements() const {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (i64 i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<Character> characters(const FinAbGroup& G) {
  std::vector<Character> out;
  for (const Element& e : G.elements()) out.push_back(Character{e.coords});
  return out;
}

mpq_class character_value(const FinAbGroup& G, const Character& chi, const Element& x) {
  i64 D = G.exponent();
  i128 num = 0;
  for (std::size_t i = 0; i < G.rank(); ++i)
    num += static_cast<i128>(chi.exps[i]) * x.coords[i] * (D / G.invariants()[i]);
  mpq_class v(to_mpz(mod_floor128(num, D)), mpz_class(static_cast<long>(D)));
  v.canonicalize();
  return v;
}

std::complex<double> character_complex(const FinAbGroup& G, const Character& chi, const Element& x) {
  mpq_class v = character_value(G, chi, x);
  if (v == 0) return {1.0, 0.0};
  if (v == mpq_class(1, 2)) return {-1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * v.get_d());
}

i64 character_order(const FinAbGroup& G, const Character& chi) {
  return G.element_order(G.reduce(chi.exps));
}

bool is_trivial(const Character& chi) {
  return std::all_of(chi.exps.begin(), chi.exps.end(), [](i64 e) { return e == 0; });
}

bool Subgroup::contains(i64 idx) const { return std::binary_search(members.begin(), members.end(), idx); }

Subgroup subgroup_from_members(const FinAbGroup& G, std::vector<i64> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup H;
  H.members = std::move(members);
  H.order = static_cast<i64>(H.members.size());
  H.index = G.order() / H.order;
  if (H.index * H.order != G.order()) throw Error("Lagrange violated: subgroup order does not divide group order");
  return H;
}

Subgroup subgroup_generated(const FinAbGroup& G, const std::vector<Element>& gens) {
  std::vector<char> in(static_cast<std::size_t>(G.order()), 0);
  std::vector<i64> members{G.index_of(G.identity())};
  in[static_cast<std::size_t>(members[0])] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    Element x = G.element_at(members[k]);
    for (const Element& g : gens) {
      i64 y = G.index_of(G.add(x, g));
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        members.push_back(y);
      }
    }
  }
  Subgroup H = subgroup_from_members(G, std::move(members));
  H.generators = gens;
  return H;
}

Element Presentation::project(const std::vector<i64>& exps) const {
  std::vector<mpz_class> e;
  e.reserve(exps.size());
  for (i64 v : exps) e.push_back(to_mpz(v));
  return project(e);
}

Element Presentation::project(const std::vector<mpz_class>& exps) const {
  if (exps.size() != n_gens) throw Error("exponent vector length does not match generator count");
  std::vector<i64> coords;
  coords.reserve(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    std::size_t j = kept[k];
    mpz_class w = 0;
    for (std::size_t i = 0; i < n_gens; ++i) w += exps[i] * V[i][j];
    mpz_class d = static_cast<long>(group.invariants()[k]);
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), w.get_mpz_t(), d.get_mpz_t());
    coords.push_back(r.get_si());
  }
  return Element{std::move(coords)};
}

Presentation group_from_relations(std::size_t n_gens, const Matrix& relations) {
  Presentation P;
  P.n_gens = n_gens;
  if (n_gens == 0) return P;
  for (auto& row : relations)
    if (row.size() != n_gens) throw ValidationError("relation row length does not match generator count");
  if (relations.size() < n_gens) throw ValidationError("infinite quotient: relation lattice is not of full rank");
  SNF s = smith_normal_form(relations);
  std::vector<i64> inv;
  for (std::size_t j = 0; j < n_gens; ++j) {
    const mpz_class& d = s.D[j][j];
    if (d == 0) throw ValidationError("infinite quotient: relation lattice is not of full rank");
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw OverflowError("invariant factor exceeds 64-bit range");
    inv.push_back(d.get_si());
    P.kept.push_back(j);
  }
  P.group = FinAbGroup(inv);
  P.V = s.V;
  return P;
}

ElementSet make_set(const FinAbGroup& G, const std::vector<Element>& xs) {
  ElementSet s;
  for (auto& x : xs) s.push_back(G.index_of(G.reduce(x.coords)));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ElementSet sumset(const FinAbGroup& G, const ElementSet& A, const ElementSet& B) {
  std::vector<char> in(static_cast<std::size_t>(G.order()), 0);
  std::vector<Element> be;
  for (i64 b : B) be.push_back(G.element_at(b));
  for (i64 a : A) {
    Element x = G.element_at(a);
    for (auto& y : be) in[static_cast<std::size_t>(G.index_of(G.add(x, y)))] = 1;
  }
  ElementSet s;
  for (i64 i = 0; i < G.order(); ++i)
    if (in[static_cast<std::size_t>(i)]) s.push_back(i);
  return s;
}

Subgroup stabilizer(const FinAbGroup& G, const ElementSet& S) {
  if (S.empty()) throw ValidationError("stabilizer of an empty set");
  std::vector<char> in(static_cast<std::size_t>(G.order()), 0);
  for (i64 s : S) in[static_cast<std::size_t>(s)] = 1;
  std::vector<Element> se;
  for (i64 s : S) se.push_back(G.element_at(s));
  std::vector<i64> members;
  // a stabilizing g maps S[0] into S, so g ranges over S - S[0]
  for (const Element& t : se) {
    Element g = G.sub(t, se[0]);
    bool ok = true;
    for (const Element& x : se)
      if (!in[static_cast<std::size_t>(G.index_of(G.add(x, g)))]) {
        ok = false;
        break;
      }
    if (ok) members.push_back(G.index_of(g));
  }
  return subgroup_from_members(G, std::move(members));
}

i64 cosets_meeting(const FinAbGroup& G, const Subgroup& H, const ElementSet& B) {
  std::vector<Element> he;
  for (i64 h : H.members) he.push_back(G.element_at(h));
  std::vector<i64> reps;
  for (i64 b : B) {
    Element x = G.element_at(b);
    i64 rep = G.order();
    for (auto& h : he) rep = std::min(rep, G.index_of(G.add(x, h)));
    reps.push_back(rep);
  }
  std::sort(reps.begin(), reps.end());
  return static_cast<i64>(std::unique(reps.begin(), reps.end()) - reps.begin());
}

SumsetResult sumset_stabilizer(const FinAbGroup& G, const ElementSet& A, const ElementSet& B) {
  if (A.empty() || B.empty()) throw ValidationError("sumset of an empty set");
  SumsetResult r;
  r.sum = sumset(G, A, B);
  r.H = stabilizer(G, r.sum);
  r.lambda = cosets_meeting(G, r.H, B);
  return r;
}

KneserRecord kneser_check(const FinAbGroup& G, const ElementSet& B) {
  SumsetResult s = sumset_stabilizer(G, B, B);
  KneserRecord k;
  k.H = s.H;
  k.lambda = s.lambda;
  k.sum_size = static_cast<i64>(s.sum.size());
  k.bound = (2 * s.lambda - 1) * s.H.order;
  k.ok = k.sum_size >= k.bound;
  return k;
}

TripleCover triple_cover_predicates(const FinAbGroup& G, const ElementSet& A) {
  if (A.empty()) throw ValidationError("triple cover of an empty set");
  TripleCover t;
  t.AA = sumset(G, A, A);
  t.AAA = sumset(G, t.AA, A);
  t.H = stabilizer(G, t.AA);
  t.y = t.H.index;
  t.lambda = cosets_meeting(G, t.H, A);
  i64 a = static_cast<i64>(A.size()), g = G.order();
  t.lambda_ceil = (a + t.H.order - 1) / t.H.order;
  t.eq8_holds = a * t.y + (2 * t.lambda - 1) * g > g * t.y;
  t.eq9_holds = 3 * a * t.y - g > g * t.y;
  t.covered = static_cast<i64>(t.AAA.size()) == g;
  t.kneser_ok = static_cast<i64>(t.AA.size()) >= (2 * t.lambda - 1) * t.H.order;
  return t;
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FinAbGroup> abelian_groups_of_order(i64 n) {
  if (n < 1) throw ValidationError("group order must be positive");
  auto fac = factor_u64(static_cast<u64>(n), UINT64_MAX);
  std::vector<std::vector<std::vector<int>>> per_prime;
  for (auto [p, e] : fac) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    per_prime.push_back(parts);
  }
  std::vector<FinAbGroup> out;
  std::vector<std::size_t> choice(per_prime.size(), 0);
  for (;;) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < per_prime.size(); ++i) r = std::max(r, per_prime[i][choice[i]].size());
    std::vector<i64> f(r, 1);
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
      const auto& part = per_prime[i][choice[i]];
      for (std::size_t k = 0; k < part.size(); ++k)
        for (int j = 0; j < part[k]; ++j) f[k] *= static_cast<i64>(fac[i].first);
    }
    std::vector<i64> inv;
    for (std::size_t k = r; k-- > 0;)
      if (f[k] > 1) inv.push_back(f[k]);
    out.emplace_back(inv);
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

GeneratedGroup::GeneratedGroup(i64 identity, Mul mul) : mul_(std::move(mul)) {
  elems_.push_back(identity);
  parent_.push_back(-1);
  gen_of_.push_back(-1);
  exp_.push_back(0);
  pos_.emplace(identity, 0);
}

bool GeneratedGroup::add_generator(i64 g) {
  if (contains(g)) return false;
  i64 h = g;
  i64 m = 1;
  while (!contains(h)) {
    h = mul_(h, g);
    ++m;
  }
  std::vector<i64> back = exponents(h);
  std::size_t k = gens_.size();
  gens_.push_back(g);
  for (auto& row : rels_) row.push_back(0);
  std::vector<mpz_class> row(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) row[i] = -to_mpz(back[i]);
  row[k] = to_mpz(m);
  rels_.push_back(row);
  std::size_t n0 = elems_.size();
  if (static_cast<i64>(n0) * m > INT32_MAX) throw OverflowError("generated group too large");
  elems_.reserve(n0 * static_cast<std::size_t>(m));
  i64 cur = g;
  for (i64 j = 1; j < m; ++j) {
    for (std::size_t i = 0; i < n0; ++i) {
      i64 x = mul_(cur, elems_[i]);
      pos_.emplace(x, static_cast<std::int32_t>(elems_.size()));
      elems_.push_back(x);
      parent_.push_back(static_cast<std::int32_t>(i));
      gen_of_.push_back(static_cast<std::int32_t>(k));
      exp_.push_back(j);
    }
    cur = mul_(cur, g);
  }
  return true;
}

std::vector<i64> GeneratedGroup::exponents(i64 x) const {
  auto it = pos_.find(x);
  if (it == pos_.end()) throw Error("element outside the generated group");
  std::vector<i64> e(gens_.size(), 0);
  std::int32_t p = it->second;
  while (p > 0) {
    e[static_cast<std::size_t>(gen_of_[static_cast<std::size_t>(p)])] = exp_[static_cast<std::size_t>(p)];
    p = parent_[static_cast<std::size_t>(p)];
  }
  return e;
}

Presentation GeneratedGroup::presentation() const { return group_from_relations(gens_.size(), rels_); }

}  // namespace rcprod::group
