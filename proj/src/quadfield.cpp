#include "rcprod/quadfield.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace rcprod::quad {

namespace {

i64 parse_int(std::string_view text, const char* what) {
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  return v;
}

int sign_of_sum(const mpq_class& A, const mpq_class& B, i64 D) {
  // sign of A + B*sqrt(D) with D > 0 non-square
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpq_class lhs = A * A, rhs = B * B * D;
  return lhs > rhs ? sa : sb;
}

double log_mpz(const mpz_class& v) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::numbers::ln2;
}

}  // namespace

FieldSpec FieldSpec::rational() { return FieldSpec{}; }

FieldSpec FieldSpec::quadratic(i64 d) {
  if (d == 0 || d == 1) throw ValidationError("field parameter d must not be 0 or 1");
  if (d > 10000000 || d < -10000000) throw ValidationError("field parameter d outside supported range |d| <= 10^7");
  if (!is_squarefree(d)) throw ValidationError("field parameter d=" + std::to_string(d) + " is not squarefree");
  FieldSpec s;
  s.d = d;
  return s;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rational();
  const std::string_view pre = "Q(sqrt:";
  if (text.size() > pre.size() + 1 && text.substr(0, pre.size()) == pre && text.back() == ')')
    return quadratic(parse_int(text.substr(pre.size(), text.size() - pre.size() - 1), "field parameter"));
  throw ValidationError("invalid field spec '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  if (!d) return "Q";
  return "Q(sqrt:" + std::to_string(*d) + ")";
}

std::string AlgebraicNumber::to_string() const { return a.get_str() + "+" + b.get_str() + "*w"; }

std::string IdealHNF::to_string() const {
  return "hnf:" + std::to_string(s) + "," + std::to_string(a) + "," + std::to_string(b);
}

std::string to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::split: return "split";
    case PrimeKind::inert: return "inert";
    case PrimeKind::ramified: return "ramified";
  }
  return "?";
}

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
  if (norm() != o.norm()) return norm() < o.norm();
  if (conj != o.conj) return !conj;
  return hnf < o.hnf;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (spec_.d) {
    i64 d = *spec_.d;
    FieldSpec::quadratic(d);
    if (mod_floor(d, 4) == 1) {
      t_ = 1;
      n_ = (1 - d) / 4;
      inv_.disc = d;
    } else {
      t_ = 0;
      n_ = -d;
      inv_.disc = 4 * d;
    }
    if (d > 0) indef_.emplace(mpz_class(static_cast<long>(inv_.disc)));
  }
  compute_invariants();
}

void Field::compute_invariants() {
  QuadInvariants& I = inv_;
  if (is_rational()) {
    I = QuadInvariants{};
    return;
  }
  i64 d = *spec_.d;
  I.n = 2;
  const double pi = std::numbers::pi;
  double sqrt_abs_disc = std::sqrt(static_cast<double>(std::llabs(I.disc)));
  if (d < 0) {
    I.r1 = 0;
    I.r2 = 1;
    I.h = static_cast<i64>(forms::reduced_definite_forms(I.disc).size());
    I.h_narrow = I.h;
    I.regulator = 1.0;
    I.mu_order = d == -1 ? 4 : (d == -3 ? 6 : 2);
    I.alpha = 2.0 * pi * static_cast<double>(I.h) * I.regulator / (I.mu_order * sqrt_abs_disc);
    return;
  }
  I.r1 = 2;
  I.r2 = 0;
  I.mu_order = 2;
  I.h_narrow = forms::count_indefinite_cycles(I.disc);
  // continued fraction of omega = (t + sqrt D)/2
  const mpz_class D = static_cast<long>(I.disc);
  const mpz_class s = sqrt(D);
  mpz_class P = static_cast<long>(t_), Q = 2;
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  bool found = false;
  for (int iter = 0; iter < 10000000; ++iter) {
    mpz_class a;
    mpz_class num = P + s;
    if (Q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
      mpz_class aq = abs(Q);
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), aq.get_mpz_t());
      a = -a - 1;
    }
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    mpz_class nrm = p * p - t_ * p * q + n_ * q * q;
    if (q > 0 && (nrm == 1 || nrm == -1)) {
      I.fund_unit = AlgebraicNumber{mpq_class(p - q * t_), mpq_class(q)};
      I.fund_unit_norm = nrm == 1 ? 1 : -1;
      double ratio = mpq_class(p, q).get_d();
      I.regulator = log_mpz(q) + std::log(ratio + (std::sqrt(static_cast<double>(I.disc)) - t_) / 2.0);
      found = true;
      break;
    }
    mpz_class nP = a * Q - P;
    Q = (D - nP * nP) / Q;
    P = nP;
  }
  if (!found) throw Error("fundamental unit not found");
  I.h = I.fund_unit_norm == -1 ? I.h_narrow : I.h_narrow / 2;
  I.alpha = 4.0 * static_cast<double>(I.h) * I.regulator / (I.mu_order * sqrt_abs_disc);
}

AlgebraicNumber Field::add(const AlgebraicNumber& x, const AlgebraicNumber& y) const {
  return AlgebraicNumber{x.a + y.a, x.b + y.b};
}

AlgebraicNumber Field::sub(const AlgebraicNumber& x, const AlgebraicNumber& y) const {
  return AlgebraicNumber{x.a - y.a, x.b - y.b};
}

AlgebraicNumber Field::mul(const AlgebraicNumber& x, const AlgebraicNumber& y) const {
  if (is_rational()) return AlgebraicNumber{x.a * y.a, 0};
  return AlgebraicNumber{x.a * y.a - n_ * x.b * y.b, x.a * y.b + x.b * y.a + t_ * x.b * y.b};
}

AlgebraicNumber Field::conj(const AlgebraicNumber& x) const {
  if (is_rational()) return x;
  return AlgebraicNumber{x.a + x.b * t_, -x.b};
}

mpq_class Field::norm(const AlgebraicNumber& x) const {
  if (is_rational()) return x.a;
  return x.a * x.a + x.a * x.b * t_ + x.b * x.b * n_;
}

mpq_class Field::trace(const AlgebraicNumber& x) const {
  if (is_rational()) return x.a;
  return 2 * x.a + x.b * t_;
}

bool Field::is_integral(const AlgebraicNumber& x) const {
  return x.a.get_den() == 1 && x.b.get_den() == 1 && (!is_rational() || x.b == 0);
}

int Field::sign_at(const AlgebraicNumber& x, int embedding) const {
  if (is_rational()) return sgn(x.a);
  if (inv_.r1 == 0) throw Error("sign_at: field has no real embeddings");
  mpq_class A = 2 * x.a + x.b * t_;
  mpq_class B = embedding == 0 ? mpq_class(x.b) : mpq_class(-x.b);
  return sign_of_sum(A, B, inv_.disc);
}

bool Field::is_totally_positive(const AlgebraicNumber& x) const {
  if (is_rational()) return x.a > 0;
  if (inv_.r1 == 0) throw Error("totally positive predicate needs real embeddings");
  return sign_at(x, 0) > 0 && sign_at(x, 1) > 0;
}

double Field::embed(const AlgebraicNumber& x, int embedding) const {
  if (is_rational()) return x.a.get_d();
  double sq = std::sqrt(static_cast<double>(inv_.disc));
  double w = (static_cast<double>(t_) + (embedding == 0 ? sq : -sq)) / 2.0;
  return x.a.get_d() + x.b.get_d() * w;
}

IdealHNF Field::rational_ideal(i64 m) const {
  if (m == 0) throw ValidationError("zero ideal is not supported");
  return IdealHNF{m < 0 ? -m : m, 1, 0};
}

std::vector<std::pair<i128, i128>> Field::basis(const IdealHNF& x) const {
  if (is_rational()) return {{x.s, 0}};
  return {{static_cast<i128>(x.s) * x.a, 0}, {static_cast<i128>(x.s) * x.b, x.s}};
}

IdealHNF Field::hnf_from_generators(const std::vector<std::pair<i128, i128>>& gens) const {
  if (is_rational()) {
    i128 g = 0;
    for (auto& [x, y] : gens) g = gcd128(g, x);
    if (g == 0) throw ValidationError("zero ideal is not supported");
    return IdealHNF{narrow_checked(g), 1, 0};
  }
  i128 A = 0, B = 0, C = 0;
  auto absorb = [&](i128 x, i128 y) {
    if (y == 0) {
      A = gcd128(A, x);
    } else if (C == 0) {
      B = x;
      C = y;
      if (C < 0) {
        B = -B;
        C = -C;
      }
    } else {
      i128 u, v;
      i128 g = ext_gcd128(C, y, u, v);
      i128 nb = u * B + v * x;
      i128 xp = (y / g) * B - (C / g) * x;
      A = gcd128(A, xp);
      B = nb;
      C = g;
    }
    if (A != 0) B = mod_floor128(B, A);
  };
  for (auto& [x, y] : gens)
    if (y == 0) absorb(x, y);
  for (auto& [x, y] : gens)
    if (y != 0) absorb(x, y);
  if (A == 0 || C == 0) throw ValidationError("generators do not span a full-rank ideal");
  if (A % C != 0 || B % C != 0) throw Error("generators do not span an ideal");
  i64 s = narrow_checked(C);
  i64 a = narrow_checked(A / C);
  i64 b = narrow_checked(mod_floor128(B / C, A / C));
  i128 nb = static_cast<i128>(b) * b + static_cast<i128>(t_) * b + n_;
  if (nb % a != 0) throw Error("generators do not span an ideal");
  return IdealHNF{s, a, b};
}

IdealHNF Field::ideal_of(const AlgebraicNumber& x) const {
  if (!is_integral(x)) throw ValidationError("ideal_of: element is not integral");
  i128 u = mpz_to_i128(x.a.get_num()), v = mpz_to_i128(x.b.get_num());
  if (is_rational()) return hnf_from_generators({{u, 0}});
  return hnf_from_generators({{u, v}, {-static_cast<i128>(n_) * v, u + static_cast<i128>(t_) * v}});
}

IdealHNF Field::make_ideal(i64 s, i64 a, i64 b) const {
  if (s < 1 || a < 1) throw ValidationError("ideal requires s >= 1 and a >= 1");
  if (is_rational()) {
    if (a != 1 || b != 0) throw ValidationError("ideals of Q have the form hnf:s,1,0");
    return IdealHNF{s, 1, 0};
  }
  b = mod_floor(b, a);
  i128 nb = static_cast<i128>(b) * b + static_cast<i128>(t_) * b + n_;
  if (nb % a != 0) throw ValidationError("hnf:" + std::to_string(s) + "," + std::to_string(a) + "," + std::to_string(b) + " is not an ideal");
  return IdealHNF{s, a, b};
}

IdealHNF Field::parse_ideal(std::string_view text) const {
  if (text.size() >= 3 && text.front() == '(' && text.back() == ')')
    return rational_ideal(parse_int(text.substr(1, text.size() - 2), "ideal"));
  if (text.substr(0, 4) == "hnf:") {
    std::string_view rest = text.substr(4);
    auto c1 = rest.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : rest.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ValidationError("invalid ideal spec '" + std::string(text) + "'");
    return make_ideal(parse_int(rest.substr(0, c1), "ideal"), parse_int(rest.substr(c1 + 1, c2 - c1 - 1), "ideal"),
                      parse_int(rest.substr(c2 + 1), "ideal"));
  }
  if (text.substr(0, 6) == "above:") {
    std::string_view rest = text.substr(6);
    auto c = rest.find(':');
    if (c == std::string_view::npos) throw ValidationError("invalid ideal spec '" + std::string(text) + "'");
    i64 p = parse_int(rest.substr(0, c), "prime");
    i64 idx = parse_int(rest.substr(c + 1), "conjugate index");
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw ValidationError("'" + std::to_string(p) + "' is not prime");
    auto ps = primes_above(static_cast<u64>(p));
    if (idx < 0 || idx >= static_cast<i64>(ps.size()))
      throw ValidationError("no prime with index " + std::to_string(idx) + " above " + std::to_string(p));
    return ps[static_cast<std::size_t>(idx)].hnf;
  }
  throw ValidationError("invalid ideal spec '" + std::string(text) + "'");
}

std::string Field::ideal_to_string(const IdealHNF& x) const {
  if (x.a == 1 && x.b == 0) return "(" + std::to_string(x.s) + ")";
  return x.to_string();
}

i64 Field::norm(const IdealHNF& x) const {
  if (is_rational()) return x.s;
  return mul_checked(mul_checked(x.s, x.s), x.a);
}

IdealHNF Field::product(const IdealHNF& x, const IdealHNF& y) const {
  if (is_rational()) return IdealHNF{mul_checked(x.s, y.s), 1, 0};
  i64 s = mul_checked(x.s, y.s);
  // primitive parts (a1, b1 + w) and (a2, b2 + w)
  i128 a1 = x.a, b1 = x.b, a2 = y.a, b2 = y.b;
  std::vector<std::pair<i128, i128>> gens{
      {a1 * a2, 0},
      {a1 * b2, a1},
      {a2 * b1, a2},
      {b1 * b2 - n_, b1 + b2 + t_},
  };
  IdealHNF p = hnf_from_generators(gens);
  p.s = mul_checked(p.s, s);
  return p;
}

IdealHNF Field::power(const IdealHNF& x, int e) const {
  IdealHNF r = unit_ideal();
  for (int i = 0; i < e; ++i) r = product(r, x);
  return r;
}

IdealHNF Field::conj(const IdealHNF& x) const {
  if (is_rational()) return x;
  return hnf_from_generators({{static_cast<i128>(x.s) * x.a, 0}, {static_cast<i128>(x.s) * (x.b + t_), -static_cast<i128>(x.s)}});
}

IdealHNF Field::gcd(const IdealHNF& x, const IdealHNF& y) const {
  auto g = basis(x);
  for (auto& v : basis(y)) g.push_back(v);
  return hnf_from_generators(g);
}

IdealHNF Field::divide_exact(const IdealHNF& x, const IdealHNF& y) const {
  if (!divides(y, x)) throw Error("divide_exact: divisor does not divide");
  if (is_rational()) return IdealHNF{x.s / y.s, 1, 0};
  IdealHNF p = product(x, conj(y));
  i64 ny = norm(y);
  if (p.s % ny != 0) throw Error("divide_exact: inexact quotient");
  p.s /= ny;
  return p;
}

IdealHNF Field::lcm(const IdealHNF& x, const IdealHNF& y) const { return divide_exact(product(x, y), gcd(x, y)); }

bool Field::contains(const IdealHNF& x, const mpz_class& u, const mpz_class& v) const {
  if (is_rational()) return v == 0 && u % x.s == 0;
  if (v % x.s != 0) return false;
  mpz_class k = v / x.s;
  mpz_class r = u - k * x.s * x.b;
  return r % (mpz_class(static_cast<long>(x.s)) * x.a) == 0;
}

bool Field::divides(const IdealHNF& y, const IdealHNF& x) const {
  for (auto& [u, v] : basis(x))
    if (!contains(y, to_mpz(u), to_mpz(v))) return false;
  return true;
}

bool Field::coprime(const IdealHNF& x, const IdealHNF& y) const { return gcd(x, y) == unit_ideal(); }

std::vector<PrimeIdeal> Field::primes_above(u64 p) const {
  if (p < 2 || !is_prime(p)) throw ValidationError("primes_above: " + std::to_string(p) + " is not prime");
  i64 ip = static_cast<i64>(p);
  if (is_rational()) return {PrimeIdeal{ip, PrimeKind::split, false, IdealHNF{ip, 1, 0}, 1}};
  int k = kronecker_prime(inv_.disc, p);
  if (k == -1) return {PrimeIdeal{ip, PrimeKind::inert, false, IdealHNF{ip, 1, 0}, 2}};
  std::vector<i64> roots;
  if (p == 2) {
    for (i64 r = 0; r < 2; ++r)
      if (mod_floor(r * r - t_ * r + n_, 2) == 0) roots.push_back(r);
  } else {
    u64 D = static_cast<u64>(mod_floor(inv_.disc, ip));
    u64 r0 = sqrt_mod_prime(D, p);
    u64 inv2 = (p + 1) / 2;
    u64 tt = static_cast<u64>(mod_floor(t_, ip));
    roots.push_back(static_cast<i64>(mulmod((tt + r0) % p, inv2, p)));
    if (k == 1) roots.push_back(static_cast<i64>(mulmod((tt + p - r0) % p, inv2, p)));
  }
  std::vector<i64> bs;
  for (i64 r : roots) bs.push_back(mod_floor(-r, ip));
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  if (k == 0) {
    if (bs.size() != 1) throw Error("primes_above: ramified prime without a double root");
    return {PrimeIdeal{ip, PrimeKind::ramified, false, IdealHNF{1, ip, bs[0]}, 1}};
  }
  if (bs.size() != 2) throw Error("primes_above: split prime without two roots");
  return {PrimeIdeal{ip, PrimeKind::split, false, IdealHNF{1, ip, bs[0]}, 1},
          PrimeIdeal{ip, PrimeKind::split, true, IdealHNF{1, ip, bs[1]}, 1}};
}

Factorization Field::factor(const IdealHNF& x) const {
  Factorization out;
  i64 N = norm(x);
  if (N == 1) return out;
  IdealHNF cur = x;
  for (auto [p, e] : factor_u64(static_cast<u64>(N))) {
    (void)e;
    for (const PrimeIdeal& P : primes_above(p)) {
      int v = 0;
      while (norm(cur) % P.norm() == 0 && divides(P.hnf, cur)) {
        cur = divide_exact(cur, P.hnf);
        ++v;
      }
      if (v > 0) out.emplace_back(P, v);
    }
  }
  if (!(cur == unit_ideal())) throw Error("factor: incomplete factorization");
  return out;
}

IdealHNF Field::from_factorization(const Factorization& f) const {
  IdealHNF r = unit_ideal();
  for (auto& [P, e] : f) r = product(r, power(P.hnf, e));
  return r;
}

forms::Form Field::ideal_form(const IdealHNF& x) const {
  if (is_rational()) throw Error("ideal_form: rational field has no forms");
  i128 c = (static_cast<i128>(x.b) * x.b + static_cast<i128>(t_) * x.b + n_) / x.a;
  return forms::Form{mpz_class(static_cast<long>(x.a)), mpz_class(static_cast<long>(2 * x.b + t_)), to_mpz(c)};
}

AlgebraicNumber Field::element_from_form_point(const IdealHNF& x, const mpz_class& u, const mpz_class& v) const {
  mpz_class s = static_cast<long>(x.s);
  return AlgebraicNumber{mpq_class(s * (u * x.a + v * x.b)), mpq_class(s * v)};
}

std::optional<AlgebraicNumber> Field::generator_search(const IdealHNF& x, bool need_positive_norm) const {
  forms::Form f = ideal_form(x);
  const long bound = 400;
  for (long v = 0; v <= bound; ++v) {
    for (long u = -bound; u <= bound; ++u) {
      if (v == 0 && u <= 0) continue;
      mpz_class val = f.eval(u, v);
      if (val == 1 || (!need_positive_norm && val == -1)) return element_from_form_point(x, u, v);
    }
  }
  return std::nullopt;
}

std::optional<PrincipalGenerator> Field::principal_generator(const IdealHNF& x) const {
  if (is_rational()) return PrincipalGenerator{AlgebraicNumber{mpq_class(x.s), 0}, true};
  forms::Form f0 = ideal_form(x);
  std::optional<AlgebraicNumber> gen;
  if (inv_.r1 == 0) {
    forms::Tracked t = forms::reduce_definite(forms::Tracked::start(f0));
    if (t.f.a != 1) return std::nullopt;
    gen = element_from_form_point(x, t.m00, t.m10);
    return PrincipalGenerator{*gen, true};
  }
  const forms::Indefinite& ind = *indef_;
  try {
    forms::Tracked t = ind.reduce(forms::Tracked::start(f0));
    forms::Form start = t.f;
    std::size_t steps = 0;
    for (;;) {
      if (t.f.a == 1 || t.f.a == -1) {
        gen = element_from_form_point(x, t.m00, t.m10);
        break;
      }
      ind.rho(t);
      if (t.f == start) break;
      if (++steps > 10000000) throw UndecidedError("cycle walk exceeded step budget");
    }
  } catch (const UndecidedError&) {
    gen = generator_search(x, false);
    if (!gen) throw UndecidedError("principality undecided for " + x.to_string());
  }
  if (!gen) return std::nullopt;
  AlgebraicNumber g = *gen;
  if (norm(g) < 0 && inv_.fund_unit_norm == -1) g = mul(g, *inv_.fund_unit);
  if (norm(g) > 0 && sign_at(g, 0) < 0) g = AlgebraicNumber{-g.a, -g.b};
  return PrincipalGenerator{g, norm(g) > 0};
}

std::optional<AlgebraicNumber> Field::totally_positive_generator(const IdealHNF& x) const {
  auto pg = principal_generator(x);
  if (!pg || !pg->totally_positive) return std::nullopt;
  return pg->gen;
}

forms::Form Field::narrow_class_key(const IdealHNF& x) const {
  if (is_rational()) return forms::Form{1, 0, 0};
  forms::Form f0 = ideal_form(x);
  if (inv_.r1 == 0) return forms::reduce_definite(forms::Tracked::start(f0)).f;
  forms::Form red = indef_->reduce(forms::Tracked::start(f0)).f;
  auto cyc = indef_->cycle(red);
  return *std::min_element(cyc.begin(), cyc.end());
}

std::vector<PrimeIdeal> Field::primes_up_to(i64 X) const {
  std::vector<PrimeIdeal> out;
  if (X < 2) return out;
  for (u64 p : rcprod::primes_up_to(static_cast<u64>(X))) {
    for (PrimeIdeal& P : primes_above(p))
      if (P.norm() <= X) out.push_back(P);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeIdeal> Field::degree_one_primes(i64 X, const IdealHNF& q, bool include_ramified) const {
  std::vector<PrimeIdeal> out;
  if (X < 2) return out;
  for (u64 p : rcprod::primes_up_to(static_cast<u64>(X))) {
    for (PrimeIdeal& P : primes_above(p)) {
      if (P.residue_degree != 1) continue;
      if (P.kind == PrimeKind::ramified && !include_ramified) continue;
      if (divides(P.hnf, q)) continue;
      out.push_back(P);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeIdeal> Field::primes_coprime_to(i64 X, const IdealHNF& q) const {
  std::vector<PrimeIdeal> out;
  for (PrimeIdeal& P : primes_up_to(X))
    if (!divides(P.hnf, q)) out.push_back(P);
  return out;
}

std::vector<IdealHNF> Field::ideals_up_to(i64 X, const IdealHNF& q) const {
  std::vector<IdealHNF> out;
  if (X < 1) return out;
  auto primes = primes_coprime_to(X, q);
  std::vector<i64> norms;
  for (auto& P : primes) norms.push_back(P.norm());
  std::vector<std::pair<i64, IdealHNF>> tagged;
  enumerate_factorizations(norms, X, [&](i64 nrm, const std::vector<std::pair<int, int>>& st) {
    IdealHNF r = unit_ideal();
    for (auto [i, e] : st) r = product(r, power(primes[static_cast<std::size_t>(i)].hnf, e));
    tagged.emplace_back(nrm, r);
  });
  std::sort(tagged.begin(), tagged.end());
  for (auto& [n, id] : tagged) out.push_back(id);
  return out;
}

}  // namespace rcprod::quad
