#include "rcprod/forms.hpp"

#include <set>

namespace rcprod::forms {

namespace {

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class fmod(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

bool Form::operator<(const Form& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

Tracked Tracked::start(Form f0) {
  Tracked t;
  t.f = std::move(f0);
  return t;
}

void Tracked::compose(const mpz_class& t00, const mpz_class& t01, const mpz_class& t10, const mpz_class& t11) {
  mpz_class n00 = m00 * t00 + m01 * t10;
  mpz_class n01 = m00 * t01 + m01 * t11;
  mpz_class n10 = m10 * t00 + m11 * t10;
  mpz_class n11 = m10 * t01 + m11 * t11;
  m00 = std::move(n00);
  m01 = std::move(n01);
  m10 = std::move(n10);
  m11 = std::move(n11);
}

bool is_reduced_definite(const Form& f) {
  if (f.a <= 0) return false;
  if (abs(f.b) > f.a || f.a > f.c) return false;
  if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

Tracked reduce_definite(Tracked t) {
  if (t.f.a <= 0) throw Error("reduce_definite: form is not positive definite");
  for (;;) {
    Form& f = t.f;
    if (f.b <= -f.a || f.b > f.a) {
      mpz_class k = fdiv(f.a - f.b, 2 * f.a);
      mpz_class nb = f.b + 2 * f.a * k;
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = nb;
      t.compose(1, k, 0, 1);
    }
    if (f.a > f.c || (f.a == f.c && f.b < 0)) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      t.compose(0, -1, 1, 0);
      continue;
    }
    break;
  }
  return t;
}

Indefinite::Indefinite(const mpz_class& disc) : D(disc) {
  if (D <= 0) throw Error("Indefinite: discriminant must be positive");
  sqrt_floor = sqrt(D);
  if (sqrt_floor * sqrt_floor == D) throw Error("Indefinite: square discriminant");
}

bool Indefinite::is_reduced(const Form& f) const {
  if (f.b <= 0 || f.b > sqrt_floor) return false;
  mpz_class twoa = 2 * abs(f.a);
  return sqrt_floor - f.b < twoa && twoa <= sqrt_floor + f.b;
}

void Indefinite::rho(Tracked& t) const {
  Form& f = t.f;
  mpz_class ac = abs(f.c);
  mpz_class m = 2 * ac;
  mpz_class nb;
  if (ac > sqrt_floor) {
    nb = fmod(-f.b, m);
    if (nb > ac) nb -= m;
  } else {
    nb = sqrt_floor - fmod(sqrt_floor + f.b, m);
  }
  mpz_class k = (nb + f.b) / (2 * f.c);
  mpz_class nc = (nb * nb - D) / (4 * f.c);
  f.a = f.c;
  f.b = nb;
  f.c = nc;
  t.compose(0, -1, 1, k);
}

Tracked Indefinite::reduce(Tracked t) const {
  int guard = 0;
  while (!is_reduced(t.f)) {
    rho(t);
    if (++guard > 100000) throw UndecidedError("indefinite reduction did not terminate");
  }
  return t;
}

std::vector<Form> Indefinite::cycle(const Form& reduced) const {
  std::vector<Form> out{reduced};
  Tracked t = Tracked::start(reduced);
  for (;;) {
    rho(t);
    if (t.f == reduced) break;
    out.push_back(t.f);
    if (out.size() > 10000000) throw UndecidedError("cycle length exceeds limit");
  }
  return out;
}

std::vector<Form> reduced_definite_forms(i64 D) {
  std::vector<Form> out;
  if (D >= 0) return out;
  i64 absD = -D;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod_floor(b - D, 2) != 0) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      out.push_back(Form{a, b, c});
    }
  }
  return out;
}

std::vector<Form> reduced_indefinite_forms(i64 D) {
  std::vector<Form> out;
  if (D <= 0 || is_square(static_cast<u64>(D))) return out;
  i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
  for (i64 b = 1; b <= s; ++b) {
    if (mod_floor(b - D, 2) != 0) continue;
    i64 m = (D - b * b) / 4;
    for (i64 a = 1; a <= m; ++a) {
      if (m % a) continue;
      if (!(s - b < 2 * a && 2 * a <= s + b)) continue;
      out.push_back(Form{a, b, -(m / a)});
      out.push_back(Form{-a, b, m / a});
    }
  }
  return out;
}

i64 count_indefinite_cycles(i64 D) {
  Indefinite ind{mpz_class(static_cast<long>(D))};
  std::set<Form> seen;
  i64 cycles = 0;
  for (const Form& f : reduced_indefinite_forms(D)) {
    if (seen.count(f)) continue;
    ++cycles;
    for (auto& g : ind.cycle(f)) seen.insert(g);
  }
  return cycles;
}

}  // namespace rcprod::forms
