#include "rcprod/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rcprod/quadrature.hpp"
#include "rcprod/sieve.hpp"

namespace rcprod::analytic {

namespace {

using bf = boost::multiprecision::cpp_bin_float_50;

struct bcplx {
  bf re, im;
};

bf to_bf(const mpq_class& q) { return bf(q.get_num().get_str()) / bf(q.get_den().get_str()); }

bcplx div(const bf& c, const bcplx& z) {
  bf d = z.re * z.re + z.im * z.im;
  return {c * z.re / d, -c * z.im / d};
}

mpz_class factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Integrates over [a, b] in unit-width panels so tolerances do not collapse on long ranges.
quad_int::Result<double> integrate_panels(const std::function<double(double)>& f, double a, double b, double tol,
                                          double width) {
  quad_int::Result<double> r;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    auto p = quad_int::integrate(f, a + i * h, a + (i + 1) * h, tol / panels, 30);
    r.value += p.value;
    r.error += p.error;
    r.evaluations += p.evaluations;
  }
  return r;
}

double log_zeta(double x) { return std::log(boost::math::zeta(x)); }

mpq_class mpq_pow(const mpq_class& b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

mpq_class SmoothingPoly::operator()(const mpq_class& t) const {
  if (t <= lo || t >= hi) return 0;
  return p(t);
}

double SmoothingPoly::eval(double t) const {
  if (t <= 0.1 || t >= 1.0) return 0.0;
  const double u = (10.0 * t - 1.0) / 9.0;
  return std::pow(4.0 * u * (1.0 - u), n + 4);
}

SmoothingPoly w0_polynomial(int n) {
  if (n < 1) throw ValidationError("w0 needs n >= 1");
  SmoothingPoly w;
  w.n = n;
  poly::Poly f({mpq_class(0), mpq_class(4), mpq_class(-4)});
  w.p = f.pow(n + 4).compose_linear(mpq_class(10, 9), mpq_class(-1, 9));
  return w;
}

bool endpoints_flat(const SmoothingPoly& w) {
  for (int j = 0; j <= w.n + 2; ++j) {
    poly::Poly d = w.p.derivative(j);
    if (d(w.lo) != 0 || d(w.hi) != 0) return false;
  }
  return true;
}

mpq_class w0_mellin_one(int n) {
  const int k = n + 4;
  mpz_class f = factorial(k);
  mpq_class r(mpz_class(9) * (mpz_class(1) << (2 * k)) * f * f, mpz_class(10) * factorial(2 * k + 1));
  r.canonicalize();
  return r;
}

mpq_class mellin_exact(const SmoothingPoly& w, int s) {
  if (s < 1) throw ValidationError("exact Mellin transform needs an integer s >= 1");
  std::vector<mpq_class> c(static_cast<std::size_t>(s - 1), 0);
  c.push_back(1);
  return (w.p * poly::Poly(std::move(c))).integrate(w.lo, w.hi);
}

MellinValue mellin(const SmoothingPoly& w, cplx s, double tol) {
  if (!(tol > 0)) throw ValidationError("mellin tolerance must be positive");
  auto f = [&](double t) { return w.eval(t) * std::exp((s - 1.0) * std::log(t)); };
  auto r = quad_int::integrate_complex(f, 0.1, 1.0, tol);
  return {s, r.value, r.error};
}

cplx mellin_series(const SmoothingPoly& w, cplx s) {
  const bf ln10 = boost::multiprecision::log(bf(10));
  const bf sr = s.real(), si = s.imag();
  // 10^{-s}
  const bf mag = boost::multiprecision::exp(-sr * ln10);
  const bf ang = -si * ln10;
  const bcplx ten_s{mag * boost::multiprecision::cos(ang), mag * boost::multiprecision::sin(ang)};
  bcplx acc{0, 0};
  bf tenj = 1;
  const auto& c = w.p.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0) {
      bf cj = to_bf(c[j]);
      bcplx z{bf(static_cast<long>(j)) + sr, si};
      bcplx a = div(cj, z);
      // a * (1 - 10^{-j} 10^{-s})
      bcplx m{1 - tenj * ten_s.re, -tenj * ten_s.im};
      acc.re += a.re * m.re - a.im * m.im;
      acc.im += a.re * m.im + a.im * m.re;
    }
    tenj /= 10;
  }
  return {static_cast<double>(acc.re), static_cast<double>(acc.im)};
}

bool SmoothingClaims::all_ok() const {
  return endpoints_ok && sup_is_one && scaled_in_range && l1_is_two && high_ok && decay_ok && integrals_ok;
}

SmoothingClaims verify_smoothing_claims(int n, bool grids) {
  if (n < 2 || n > 8) throw ValidationError("verify_smoothing_claims needs 2 <= n <= 8");
  SmoothingClaims c;
  c.n = n;
  const SmoothingPoly w = w0_polynomial(n);
  const mpq_class eps(1, mpz_class(1) << 80);
  c.endpoints_ok = endpoints_flat(w);

  c.sup = poly::sup_abs(w.p, w.lo, w.hi, eps);
  c.sup_is_one = c.sup.exact() && c.sup.lower == 1 && w(mpq_class(11, 20)) == 1;

  c.w1_exact = mellin_exact(w, 1);
  auto q1 = mellin(w, 1.0, 1e-12);
  c.w1_quadrature = q1.value.real();
  c.w1_error = q1.error;
  c.scaled = 10.0 * std::sqrt(static_cast<double>(n)) * c.w1_exact.get_d();
  c.scaled_in_range = c.w1_exact == w0_mellin_one(n) && c.scaled >= 2.0 && c.scaled <= 15.0 &&
                      std::abs(c.w1_quadrature - c.w1_exact.get_d()) <= 1e-9;

  c.l1_derivative = poly::l1_norm(w.p.derivative(), w.lo, w.hi, eps);
  c.l1_is_two = c.l1_derivative.exact() && c.l1_derivative.lower == 2;

  const int A = n + 3;
  const poly::Poly high = w.p.derivative(A);
  c.sup_high = poly::sup_abs(high, w.lo, w.hi, eps);
  const mpq_class high_bound = 4 * mpq_pow(mpq_class(40 * n), A);
  c.high_bound = high_bound.get_d();
  c.high_ok = c.sup_high.upper <= high_bound;
  if (!grids) return c;

  // Lemma smoothdecay with the certified upper enclosure of the sup.
  const double S = c.sup_high.upper.get_d();
  const double decay_const = std::pow(2.0, n / 2.0 + 3.0) * S;
  c.decay_ok = true;
  auto sample = [&](cplx s) {
    auto m = mellin(w, s, 1e-13);
    DecaySample d;
    d.s = s;
    d.value = std::abs(m.value) + m.error;
    d.bound = decay_const / std::pow(1.0 + std::abs(s), A);
    d.ok = d.value <= d.bound;
    c.decay_ok = c.decay_ok && d.ok;
    c.decay.push_back(d);
  };
  for (double t : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
    sample({0.0, t});
    sample({0.0, -t});
  }
  for (double t : {0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) sample({0.5, t});

  // M(w_0, eps) and M*(eps, r), integrated up to |Im s| = T with an integration-by-parts tail.
  const double L1A = poly::l1_norm(high, w.lo, w.hi, eps).upper.get_d();
  const double w1 = c.w1_exact.get_d();
  const double T = 200.0;
  auto run = [&](const std::string& name, double e, int r, double sigma, double beta, double bound) {
    auto f = [&](double t) {
      cplx s{sigma, t};
      return std::abs(mellin_series(w, s)) * std::pow(1.0 + std::abs(s), beta);
    };
    auto q = integrate_panels(f, 0.0, T, 1e-10, 1.0);
    IntegralCheck ic;
    ic.name = name;
    ic.eps = e;
    ic.r = r;
    ic.value = 2.0 * q.value;
    ic.error = 2.0 * q.error;
    const double cfac = (1.0 + sigma + T) / T;
    ic.tail = 2.0 * L1A * std::pow(cfac, beta) * std::pow(T, beta - A + 1.0) / (A - 1.0 - beta);
    ic.bound = bound;
    ic.ok = ic.value + ic.error + ic.tail <= ic.bound;
    c.integrals.push_back(ic);
  };
  const double S_lo = c.sup_high.lower.get_d();
  for (double e : {1.0 / 25.0, 0.5}) {
    const double bound = std::pow(2.0, 2.0 + e * n / 2.0) * (S_lo + 10.0 * std::pow(2.0, n / 2.0) * w1);
    run("M", e, 0, 0.0, (1.0 + e) * n / 2.0, bound);
  }
  for (double e : {1.0 / 25.0, 0.5})
    for (int r : {1, 2}) run("M*", e, r, (1.0 + e) / 2.0, (1.0 + e) * n / (2.0 * r), 12.0 * std::pow(57.0 * n, A));
  c.integrals_ok = std::all_of(c.integrals.begin(), c.integrals.end(), [](const IntegralCheck& x) { return x.ok; });
  return c;
}

double ConstantLedger::get(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return e.log_value;
  throw ValidationError("no ledger entry " + key);
}

bool ConstantLedger::has(const std::string& key) const {
  return std::any_of(entries.begin(), entries.end(), [&](const LedgerEntry& e) { return e.key == key; });
}

double theta(const quad::Field& K, const quad::IdealHNF& q) {
  double t = 1.0;
  for (const auto& [P, e] : K.factor(q)) {
    const double r = std::sqrt(static_cast<double>(P.norm()));
    t *= r / (r - 1.0);
  }
  return t;
}

double hr1_log_bound(cplx s, double eps, int n, i64 disc) {
  const double sigma = s.real();
  if (!(eps > 0) || sigma < -eps || sigma > 1.0 + eps || s == cplx(1.0, 0.0))
    throw ValidationError("HR1 needs -eps <= Re s <= 1 + eps and s != 1");
  return std::log(3.0) + n * log_zeta(1.0 + eps) + std::log(std::abs((s + 1.0) / (s - 1.0))) +
         (1.0 + eps - sigma) / 2.0 * (std::log(std::abs(static_cast<double>(disc))) + n * std::log1p(std::abs(s)));
}

double hr2_log_bound(cplx s, double eps, int n, i64 disc, i64 Nq) {
  const double sigma = s.real();
  if (!(eps > 0) || sigma < -eps || sigma > 1.0 + eps) throw ValidationError("HR2 needs -eps <= Re s <= 1 + eps");
  return n * log_zeta(1.0 + eps) +
         (1.0 + eps - sigma) / 2.0 *
             (std::log(std::abs(static_cast<double>(disc))) + std::log(static_cast<double>(Nq)) +
              n * std::log1p(std::abs(s)));
}

double boundFchi_log(cplx s, double eps, int n, i64 disc, i64 Nq, double theta_q, bool trivial) {
  if (!(eps > 0) || std::abs(s.real() - (1.0 + eps) / 2.0) > 1e-12)
    throw ValidationError("boundFchi needs Re s = (1 + eps)/2");
  double v = 1.5 * n * log_zeta(1.0 + eps) + (1.0 + eps) / 4.0 * std::log(std::abs(static_cast<double>(disc))) +
             std::log(theta_q) + (1.0 + eps) * n / 4.0 * std::log1p(std::abs(s));
  if (trivial)
    v += std::log(27.0);
  else
    v += (1.0 + eps) / 4.0 * std::log(static_cast<double>(Nq));
  return v;
}

ConstantLedger constant_ledger(const quad::Field& K, const quad::IdealHNF& q) {
  if (K.is_rational()) throw ValidationError("the constant ledger needs a quadratic field");
  const auto& I = K.invariants();
  ConstantLedger L;
  L.field = K.spec().to_string();
  L.modulus = K.ideal_to_string(q);
  const int n = I.n;
  L.n = n;
  const double dn = n;
  const double ld = std::log(std::abs(static_cast<double>(I.disc)));
  const double ln = std::log(dn);
  const double lR = std::log(I.regulator);
  const double lh = std::log(static_cast<double>(I.h));
  const double lmu = std::log(static_cast<double>(I.mu_order));
  const double Nq = static_cast<double>(K.norm(q));
  const double lNq = std::log(Nq);
  const double phi = static_cast<double>(ray::modulus_phi(K, q));
  const double hq = static_cast<double>(ray::ray_class_order(K, q));
  auto add = [&](const std::string& key, double v, const std::string& note) { L.entries.push_back({key, v, note}); };

  const double u = 48.0 * dn * dn * dn * ln + 6.0 * ld + dn * (lR + lh);
  const double t_exp = std::pow(std::abs(static_cast<double>(I.disc)), 30.0);
  add("u(K)", u, "n^{48n^3}|d|^6(Rh)^n");
  add("t(K)", std::max(u, t_exp), "max(u(K), exp(|d|^30))");
  const double lE = std::log(1000.0) + 12.0 * dn * dn * ln + (lR - lmu) / dn +
                    dn * std::log(4.0 * dn * std::log(2.0 * dn) + lR - lmu);
  add("E(K)", lE, "1000 n^{12n^2}(R/mu)^{1/n}[log((2n)^{4n}R/mu)]^n");
  const double lB = 50.0 * dn * dn * dn * ln + dn * (lE + 0.5 * ld);
  add("B(K)", lB, "(n^{50n^2} E sqrt|d|)^n");
  const double lF = I.r1 * std::log(2.0) + lh + std::log(phi) - std::log(hq);
  add("F(q)", lF, "2^{r1} h phi(q)/h_q");
  add("F1(q)", I.r1 * std::log(2.0) + lh + lNq, "2^{r1} h Nq");
  add("theta(q)", std::log(theta(K, q)), "prod sqrt(NP)/(sqrt(NP)-1)");
  add("alpha(K)", std::log(I.alpha), "residue of zeta_K at 1");

  const SmoothingPoly w = w0_polynomial(n);
  const mpq_class eps(1, mpz_class(1) << 80);
  const double S = poly::sup_abs(w.p.derivative(n + 3), w.lo, w.hi, eps).upper.get_d();
  const double w1 = w0_mellin_one(n).get_d();
  for (double e : {1.0 / 25.0, 0.5}) {
    const std::string tag = e < 0.1 ? "1/25" : "1/2";
    add("M(w0," + tag + ")",
        (2.0 + e * dn / 2.0) * std::log(2.0) + std::log(S + 10.0 * std::pow(2.0, dn / 2.0) * w1),
        "2^{2+eps n/2}(||w^(n+3)||_inf + 10 2^{n/2}||w||_1)");
    for (int r : {1, 2})
      add("M*(" + tag + "," + std::to_string(r) + ")", std::log(12.0) + (dn + 3.0) * std::log(57.0 * dn),
          "12(57n)^{n+3}");
  }
  for (double a : {0.0, 0.5}) {
    const std::string tag = a == 0.0 ? "0" : "1/2";
    add("c1(" + tag + ")", std::log(sieve::c1(a).upper()), "upper end of the certified Euler product");
    add("c2(" + tag + ")", std::log(sieve::c2(a).upper()), "upper end of the certified Euler product");
  }
  const cplx s0(0.5, 10.0);
  add("HR1(1/2+10i,1/2)", hr1_log_bound(s0, 0.5, n, I.disc), "sample of the HR1 evaluator");
  add("HR2(1/2+10i,1/2)", hr2_log_bound(s0, 0.5, n, I.disc, K.norm(q)), "sample of the HR2 evaluator");
  add("u*(w0,K)",
      std::log(w1 / (S + 5.0 * w1)) - std::log(20000.0) - 22.0 * dn * std::log(2.0) - 1.5 * ld,
      "(||w||_1/(S+5||w||_1))/(20000 2^{22n}|d|^{3/2})");
  const double lt = L.get("t(K)");
  add("mainthm bound", 3.0 * (lt + lNq), "(t(K) Nq)^3");
  add("degreeoneprime bound", 25.0 * dn * std::log(10.0) + 7.0 * dn * ln + 4.0 * ld + 3.0 * lNq,
      "10^{25n} n^{7n}|d|^4 Nq^3");
  const double l3F = std::log(3.0) + lF;
  add("degreeoneprimebis bound",
      L.get("F1(q)") + lNq + dn * dn * std::log(l3F) + 2.0 * std::log(std::log(lB + lF + lNq)),
      "F1 Nq log(3F)^{n^2} loglog(B F Nq)^2");
  add("primeinkernel bound", std::log(8.0) + dn * (31.0 * std::log(10.0) + 7.0 * ln) + 4.0 * ld + 2.0 * lNq,
      "8(10^31 n^7)^n |d|^4 Nq^2");
  add("bt hypothesis", (8.0 * dn + 11.0) * std::log(1e6 * dn) + 6.0 * ld + 0.5 * (ld + lNq) +
                           dn * std::log(ld + lNq),
      "(10^6 n)^{8n+11}|d|^6 sqrt(|d|Nq) log(|d|Nq)^n");
  add("asymfinal second term", 8.0 * dn * ln + lR - lmu + lF, "n^{8n}(R/mu)F(q)");
  add("Gzbound threshold", 4.0 * dn * std::log(1e6 * dn) + 3.0 * ld, "(10^6 n)^{4n}|d|^3");

  L.simplifytK_holds = 48.0 * dn * dn * dn * ln + dn * (lR + lh) >= 25.0 * dn * std::log(10.0) + 7.0 * dn * ln;
  L.rootdisc_holds = ld / dn >= std::log(std::numbers::pi / 2.0);
  const double la = std::log(I.alpha);
  L.alpha_sandwich_holds = std::log(9.0) + dn * std::log(2.0) + lh - std::log(100.0) - 0.5 * ld <= la &&
                           la <= std::log(6.0) + dn * std::log(2.0 * std::numbers::pi * std::numbers::pi / 5.0) +
                                     0.25 * ld;
  L.class_number_bound_holds =
      lh <= std::log(67.0) + dn * std::log(std::numbers::pi * std::numbers::pi / 5.0) + 0.75 * ld;
  for (const auto& e : L.entries)
    if (!std::isfinite(e.log_value)) throw OverflowError("non-finite ledger entry " + e.key);
  return L;
}

double asymfinal_error(const ConstantLedger& L, double X, double Nq) {
  const double dn = L.n;
  const double lF = L.get("F(q)");
  double first = 0.0;
  if (X > 0)
    first = std::exp(L.get("E(K)") + lF / dn + dn * std::log(std::log(3.0) + lF) +
                     (1.0 - 1.0 / dn) * std::log(X / Nq));
  return first + std::exp(L.get("asymfinal second term"));
}

HeckeEval hecke_partial_eval(const ray::RayClassGroup& rcg, const group::Character& chi, double s, i64 X) {
  if (!(s >= 1.5)) throw ValidationError("hecke_partial_eval needs real s >= 1.5");
  if (X < 1) throw ValidationError("hecke_partial_eval needs X >= 1");
  const quad::Field& K = rcg.field();
  HeckeEval h;
  h.s = s;
  h.X = X;
  auto primes = K.primes_coprime_to(X, rcg.modulus());
  std::vector<i64> norms;
  std::vector<cplx> values;
  norms.reserve(primes.size());
  values.reserve(primes.size());
  h.F = 1.0;
  h.J = 1.0;
  for (const auto& P : primes) {
    const cplx v = group::character_complex(rcg.group(), chi, rcg.class_of_prime(P));
    const double Ns = std::pow(static_cast<double>(P.norm()), -s);
    norms.push_back(P.norm());
    values.push_back(v);
    if (P.residue_degree == 1) {
      h.F /= 1.0 - v * Ns;
      ++h.degree_one_primes;
    } else {
      h.J *= 1.0 - v * Ns;
      ++h.other_primes;
    }
  }
  cplx L = 0.0;
  quad::enumerate_factorizations(norms, X, [&](i64 N, const std::vector<std::pair<int, int>>& stack) {
    cplx v = 1.0;
    for (const auto& [i, e] : stack)
      for (int k = 0; k < e; ++k) v *= values[static_cast<std::size_t>(i)];
    L += v * std::pow(static_cast<double>(N), -s);
    ++h.ideals;
  });
  h.L = L;
  h.residual = std::abs(h.F - h.L * h.J);
  const double dX = static_cast<double>(X);
  const double tail_L = K.invariants().alpha * std::pow(dX, 1.0 - s) / (s - 1.0);
  const double tail_F = K.degree() * std::pow(dX, 1.0 - s) / ((s - 1.0) * std::log(std::max(dX, 2.0)));
  const double rX = std::sqrt(dX);
  const double tail_J = std::pow(rX, 1.0 - 2.0 * s) / ((2.0 * s - 1.0) * std::log(std::max(rX, 2.0)));
  h.truncation_estimate = std::abs(h.J) * tail_L + std::abs(h.F) * tail_F + std::abs(h.L) * tail_J;
  return h;
}

Mellin1Check mellin1_check(double y, int k, double T) {
  if (!(y > 0) || k < 1 || !(T > 0)) throw ValidationError("mellin1_check needs y > 0, k >= 1, T > 0");
  Mellin1Check m;
  m.y = y;
  m.k = k;
  m.T = T;
  m.exact = std::pow(std::max(0.0, 1.0 - y), k);
  double kf = 1.0;
  for (int i = 2; i <= k; ++i) kf *= i;
  const double ly = std::log(y);
  auto f = [&](double t) {
    cplx s(2.0, t);
    cplx den = 1.0;
    for (int j = 0; j <= k; ++j) den *= s + static_cast<double>(j);
    return (std::exp(-s * ly) * kf / den).real();
  };
  auto q = integrate_panels(f, 0.0, T, 1e-11, 4.0);
  m.numeric = q.value / std::numbers::pi;
  m.quad_error = q.error / std::numbers::pi;
  m.truncation = kf / (y * y * std::numbers::pi * k * std::pow(T, k));
  m.ok = std::abs(m.numeric - m.exact) <= m.truncation + m.quad_error + 1e-12;
  return m;
}

}  // namespace rcprod::analytic
