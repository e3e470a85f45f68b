#include <cmath>

#include "doctest.h"
#include "rcprod/analytic.hpp"

using namespace rcprod;
using namespace rcprod::analytic;
using quad::Field;
using quad::FieldSpec;

namespace {

const double kCatalan = 0.91596559417721901505;

std::unique_ptr<ray::RayClassGroup> build(const Field& K, const quad::IdealHNF& q) {
  for (i64 B = 64;; B *= 2) {
    try {
      return std::make_unique<ray::RayClassGroup>(K, q, B);
    } catch (const UnsaturatedError&) {
    }
  }
}

mpq_class factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return mpq_class(f);
}

}  // namespace

TEST_CASE("smoothing polynomial") {
  for (int n = 2; n <= 8; ++n) {
    auto w = w0_polynomial(n);
    CHECK(w.p.degree() == 2 * (n + 4));
    CHECK(endpoints_flat(w));
    CHECK(w(mpq_class(1, 10)) == 0);
    CHECK(w(mpq_class(1)) == 0);
    CHECK(w(mpq_class(11, 20)) == 1);
    CHECK(w(mpq_class(1, 20)) == 0);
    CHECK(w(mpq_class(3, 2)) == 0);
    for (int k = 1; k < 40; ++k) {
      mpq_class t(k, 40);
      t.canonicalize();
      mpq_class v = w(t);
      CHECK(v >= 0);
      CHECK(v <= 1);
      CHECK(w.eval(t.get_d()) == doctest::Approx(v.get_d()).epsilon(1e-12));
      // Symmetric about 11/20.
      CHECK(w(mpq_class(11, 10) - t) == v);
    }
  }
  CHECK_THROWS_AS(w0_polynomial(0), ValidationError);
}

TEST_CASE("exact Mellin values") {
  for (int n = 2; n <= 8; ++n) {
    auto w = w0_polynomial(n);
    int k = n + 4;
    mpq_class closed = mpq_class(9, 10) * mpq_class(mpz_class(1) << (2 * k)) * factorial(k) * factorial(k) /
                       factorial(2 * k + 1);
    CHECK(w0_mellin_one(n) == closed);
    CHECK(mellin_exact(w, 1) == closed);
    // The mean of a symmetric weight is its center.
    CHECK(mellin_exact(w, 2) == mpq_class(11, 20) * mellin_exact(w, 1));
    for (int s = 1; s <= 6; ++s) {
      auto m = mellin(w, cplx(s, 0), 1e-13);
      CHECK(std::abs(m.value - cplx(mellin_exact(w, s).get_d(), 0)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(mellin_exact(w0_polynomial(2), 0), ValidationError);
}

TEST_CASE("quadrature and series agree off the real axis") {
  auto w = w0_polynomial(3);
  for (cplx s : {cplx(0, 1), cplx(0.5, 10), cplx(1, -7), cplx(2, 50), cplx(-0.5, 3)}) {
    auto q = mellin(w, s, 1e-13);
    cplx ser = mellin_series(w, s);
    CHECK(std::abs(q.value - ser) <= 1e-11);
    CHECK(q.error <= 1e-12);
    CHECK(std::abs(mellin(w, std::conj(s), 1e-13).value - std::conj(q.value)) <= 1e-12);
  }
}

TEST_CASE("smoothing claims for n = 2") {
  auto c = verify_smoothing_claims(2);
  CHECK(c.endpoints_ok);
  CHECK(c.sup_is_one);
  CHECK(c.sup.lower == 1);
  CHECK(c.sup.upper == 1);
  CHECK(c.l1_is_two);
  CHECK(c.l1_derivative.exact());
  CHECK(c.scaled == doctest::Approx(4.340124).epsilon(1e-6));
  CHECK(c.scaled_in_range);
  CHECK(std::abs(c.w1_quadrature - c.w1_exact.get_d()) <= 1e-9);
  CHECK(c.high_ok);
  CHECK(c.sup_high.upper <= mpq_class(mpz_class(4) * mpz_class(80) * 80 * 80 * 80 * 80));
  CHECK(c.decay_ok);
  for (auto& s : c.decay) CHECK(s.value <= s.bound);
  CHECK(c.integrals_ok);
  for (auto& i : c.integrals) CHECK(i.value + i.error + i.tail <= i.bound);
  CHECK(c.all_ok());
  CHECK_THROWS_AS(verify_smoothing_claims(1), ValidationError);
  CHECK_THROWS_AS(verify_smoothing_claims(9), ValidationError);
}

TEST_CASE("constant ledger for Q(i), q = (3)") {
  Field K(FieldSpec::quadratic(-1));
  auto L = constant_ledger(K, K.rational_ideal(3));
  CHECK(L.get("u(K)") == doctest::Approx(384 * std::log(2.0) + 6 * std::log(4.0)).epsilon(1e-12));
  CHECK(L.get("u(K)") == doctest::Approx(274.49).epsilon(1e-4));
  CHECK(L.get("t(K)") == doctest::Approx(std::pow(4.0, 30)).epsilon(1e-12));
  CHECK(L.get("F(q)") == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(L.get("F1(q)") == doctest::Approx(std::log(9.0)).epsilon(1e-12));
  CHECK(L.get("theta(q)") == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(L.get("Gzbound threshold") == doctest::Approx(8 * std::log(2e6) + 3 * std::log(4.0)).epsilon(1e-12));
  CHECK(L.get("Gzbound threshold") == doctest::Approx(120.3).epsilon(1e-3));
  for (auto& e : L.entries) CHECK(std::isfinite(e.log_value));
  CHECK(L.simplifytK_holds);
  CHECK(L.rootdisc_holds);
  CHECK(L.alpha_sandwich_holds);
  CHECK(L.class_number_bound_holds);
  CHECK_FALSE(L.has("nonexistent"));
  CHECK_THROWS_AS(L.get("nonexistent"), ValidationError);
  CHECK_THROWS_AS(constant_ledger(Field(FieldSpec::rational()), quad::IdealHNF{}), ValidationError);
  CHECK(theta(K, K.rational_ideal(3)) == doctest::Approx(1.5));
  CHECK(theta(K, K.unit_ideal()) == 1.0);
}

TEST_CASE("ledger flags hold across the test matrix") {
  for (i64 d : {-1, -2, -3, -5, -7, -11, 2, 3, 5})
    for (i64 m : {1, 6, 14}) {
      Field K(FieldSpec::quadratic(d));
      auto L = constant_ledger(K, K.rational_ideal(m));
      CAPTURE(d);
      CAPTURE(m);
      CHECK(L.rootdisc_holds);
      CHECK(L.alpha_sandwich_holds);
      CHECK(L.class_number_bound_holds);
      CHECK(L.get("t(K)") >= L.get("u(K)"));
    }
}

TEST_CASE("bound evaluators") {
  const double eps = 0.5;
  // HR1 is defined up to and including the edge Re s = 1 + eps.
  double edge = hr1_log_bound(cplx(1 + eps, 3), eps, 2, -4);
  CHECK(std::isfinite(edge));
  CHECK(std::isfinite(hr1_log_bound(cplx(-eps, 3), eps, 2, -4)));
  CHECK_THROWS_AS(hr1_log_bound(cplx(1 + eps + 1e-9, 3), eps, 2, -4), ValidationError);
  CHECK_THROWS_AS(hr1_log_bound(cplx(1, 0), eps, 2, -4), ValidationError);
  // Growth in |t| and |d|.
  CHECK(hr1_log_bound(cplx(0.5, 100), eps, 2, -4) > hr1_log_bound(cplx(0.5, 10), eps, 2, -4));
  CHECK(hr1_log_bound(cplx(0.5, 10), eps, 2, -20) > hr1_log_bound(cplx(0.5, 10), eps, 2, -4));
  CHECK(std::isfinite(hr2_log_bound(cplx(0.5, 10), eps, 2, -4, 9)));
  CHECK_THROWS_AS(hr2_log_bound(cplx(2 + eps, 10), eps, 2, -4, 9), ValidationError);
  double th = std::log(1.5);
  CHECK(std::isfinite(boundFchi_log(cplx((1 + eps) / 2, 10), eps, 2, -4, 9, th, false)));
  CHECK(boundFchi_log(cplx((1 + eps) / 2, 10), eps, 2, -4, 9, th, true) >=
        boundFchi_log(cplx((1 + eps) / 2, 10), eps, 2, -4, 9, th, false) - 1e-12);
  CHECK_THROWS_AS(boundFchi_log(cplx(0.9, 10), eps, 2, -4, 9, th, false), ValidationError);
}

TEST_CASE("Hecke L factorization") {
  Field K(FieldSpec::quadratic(-1));
  auto H = build(K, K.rational_ideal(3));
  for (auto& chi : group::characters(H->group())) {
    double prev = INFINITY;
    for (i64 X : {1000, 10000, 100000}) {
      auto e = hecke_partial_eval(*H, chi, 2.0, X);
      CHECK(e.residual <= e.truncation_estimate);
      CHECK(e.residual < prev);
      prev = e.residual;
    }
    if (!group::is_trivial(chi)) CHECK(prev < 1e-8);
  }
  auto trivial = build(K, K.unit_ideal());
  auto z = hecke_partial_eval(*trivial, group::characters(trivial->group())[0], 2.0, 100000);
  double oracle = M_PI * M_PI / 6 * kCatalan;
  CHECK(std::abs(z.L.real() - oracle) <= 1e-4);
  CHECK(std::abs(z.L.imag()) <= 1e-12);
  CHECK_THROWS_AS(hecke_partial_eval(*trivial, group::characters(trivial->group())[0], 1.2, 100), ValidationError);
}

TEST_CASE("Mellin inversion of the Cesaro kernel") {
  for (double y : {0.5, 1.0, 2.0})
    for (int k = 1; k <= 6; ++k) {
      auto c = mellin1_check(y, k, k == 1 ? 1e5 : 1e3);
      CAPTURE(y);
      CAPTURE(k);
      CHECK(c.exact == doctest::Approx(std::pow(std::max(0.0, 1 - y), k)));
      CHECK(c.ok);
    }
  CHECK_THROWS_AS(mellin1_check(-1, 2, 10), ValidationError);
}

TEST_CASE("ideal-count error term") {
  Field K(FieldSpec::quadratic(-1));
  auto L = constant_ledger(K, K.rational_ideal(3));
  double e1 = asymfinal_error(L, 1000, 9), e2 = asymfinal_error(L, 100000, 9);
  CHECK(e1 > 0);
  CHECK(e2 > e1);
}
