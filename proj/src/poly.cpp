#include "rcprod/poly.hpp"

#include <algorithm>

namespace rcprod::poly {

Poly::Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const mpq_class& c) { return Poly({c}); }
Poly Poly::x() { return Poly({mpq_class(0), mpq_class(1)}); }

void Poly::trim() {
  for (auto& v : c_) v.canonicalize();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Poly::operator()(const mpq_class& t) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
  r.canonicalize();
  return r;
}

double Poly::eval(double t) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + it->get_d();
  return r;
}

Poly Poly::derivative(int k) const {
  Poly p = *this;
  for (int j = 0; j < k; ++j) {
    if (p.c_.size() <= 1) return Poly();
    std::vector<mpq_class> d(p.c_.size() - 1);
    for (std::size_t i = 1; i < p.c_.size(); ++i) d[i - 1] = p.c_[i] * static_cast<long>(i);
    p = Poly(std::move(d));
  }
  return p;
}

Poly Poly::antiderivative() const {
  std::vector<mpq_class> a(c_.size() + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<long>(i + 1);
  return Poly(std::move(a));
}

mpq_class Poly::integrate(const mpq_class& a, const mpq_class& b) const {
  Poly A = antiderivative();
  mpq_class r = A(b) - A(a);
  r.canonicalize();
  return r;
}

Poly Poly::compose_linear(const mpq_class& a, const mpq_class& b) const {
  Poly lin({b, a});
  Poly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
  return r;
}

Poly Poly::pow(int e) const {
  Poly r = constant(1), base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + mpq_class(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const mpq_class& s, const Poly& a) {
  std::vector<mpq_class> c = a.c_;
  for (auto& v : c) v *= s;
  return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw ValidationError("polynomial division by zero");
  std::vector<mpq_class> r = a.c_;
  std::vector<mpq_class> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, 0);
  const std::size_t db = b.c_.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class f = r[k + db] / b.c_.back();
    q[k] = f;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
  }
  quot = Poly(std::move(q));
  rem = Poly(std::move(r));
}

namespace {

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    Poly q, r;
    Poly::divmod(s[s.size() - 2], s.back(), q, r);
    s.push_back(mpq_class(-1) * r);
  }
  s.pop_back();
  return s;
}

int variations(const std::vector<Poly>& seq, const mpq_class& t) {
  int v = 0, last = 0;
  for (const Poly& p : seq) {
    int sg = sgn(p(t));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}

Poly deflate(const Poly& p, const mpq_class& r) {
  Poly q = p, quot, rem;
  Poly lin({-r, mpq_class(1)});
  while (!q.is_zero() && q(r) == 0) {
    Poly::divmod(q, lin, quot, rem);
    q = quot;
  }
  return q;
}

void isolate(const Poly& q, const std::vector<Poly>& seq, const mpq_class& l, const mpq_class& r,
             const mpq_class& eps, std::vector<RootInterval>& out) {
  int count = variations(seq, l) - variations(seq, r);
  if (count <= 0) return;
  if (count == 1 && r - l <= eps) {
    out.push_back({l, r});
    return;
  }
  mpq_class m = (l + r) / 2;
  if (q(m) == 0) {
    out.push_back({m, m});
    Poly d = deflate(q, m);
    if (d.degree() < 1) return;
    auto dseq = sturm_sequence(d);
    isolate(d, dseq, l, m, eps, out);
    isolate(d, dseq, m, r, eps, out);
    return;
  }
  isolate(q, seq, l, m, eps, out);
  isolate(q, seq, m, r, eps, out);
}

// Enclosure of |p| over [l, r] from the Taylor expansion at the midpoint.
Enclosure taylor_abs(const Poly& p, const mpq_class& l, const mpq_class& r) {
  mpq_class m = (l + r) / 2, h = (r - l) / 2;
  Poly t = p.compose_linear(1, m);
  if (t.is_zero()) return {0, 0};
  mpq_class a0 = abs(t.coeffs()[0]), rest = 0, hk = 1;
  for (std::size_t k = 1; k < t.coeffs().size(); ++k) {
    hk *= h;
    rest += abs(t.coeffs()[k]) * hk;
  }
  mpq_class lo = a0 - rest;
  if (lo < 0) lo = 0;
  return {lo, a0 + rest};
}

}  // namespace

int sturm_count(const Poly& p, const mpq_class& a, const mpq_class& b) {
  auto seq = sturm_sequence(p);
  return variations(seq, a) - variations(seq, b);
}

std::vector<RootInterval> isolate_roots(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps) {
  if (p.is_zero()) throw ValidationError("root isolation of the zero polynomial");
  std::vector<RootInterval> out;
  Poly q = p;
  if (q(a) == 0) {
    out.push_back({a, a});
    q = deflate(q, a);
  }
  if (b != a && q(b) == 0) {
    out.push_back({b, b});
    q = deflate(q, b);
  }
  if (a < b && q.degree() >= 1) isolate(q, sturm_sequence(q), a, b, eps, out);
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

Enclosure sup_abs(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps) {
  mpq_class va = abs(p(a)), vb = abs(p(b));
  Enclosure e{std::max(va, vb), std::max(va, vb)};
  Poly d = p.derivative();
  if (d.is_zero()) return e;
  for (const RootInterval& r : isolate_roots(d, a, b, eps)) {
    Enclosure c = r.exact() ? Enclosure{abs(p(r.lo)), abs(p(r.lo))} : taylor_abs(p, r.lo, r.hi);
    e.lower = std::max(e.lower, c.lower);
    e.upper = std::max(e.upper, c.upper);
  }
  return e;
}

Enclosure l1_norm(const Poly& p, const mpq_class& a, const mpq_class& b, const mpq_class& eps) {
  if (p.is_zero()) return {0, 0};
  Poly A = p.antiderivative();
  mpq_class lower = 0, upper = 0, cur = a;
  for (const RootInterval& r : isolate_roots(p, a, b, eps)) {
    mpq_class seg = abs(A(r.lo) - A(cur));
    lower += seg;
    upper += seg;
    if (!r.exact()) upper += (r.hi - r.lo) * taylor_abs(p, r.lo, r.hi).upper;
    cur = r.hi;
  }
  mpq_class seg = abs(A(b) - A(cur));
  lower += seg;
  upper += seg;
  lower.canonicalize();
  upper.canonicalize();
  return {lower, upper};
}

}  // namespace rcprod::poly
