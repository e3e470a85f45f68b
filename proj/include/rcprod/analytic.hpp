#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rcprod/abgroup.hpp"
#include "rcprod/poly.hpp"
#include "rcprod/quadfield.hpp"
#include "rcprod/rayclass.hpp"

namespace rcprod::analytic {

using cplx = std::complex<double>;

/// w_0(t) = f_{n+4}((10/9)(t - 1/10)) on [1/10, 1], zero elsewhere; f_k(u) = (4u(1-u))^k.
struct SmoothingPoly {
  int n = 2;
  poly::Poly p;
  mpq_class lo{1, 10};
  mpq_class hi{1};
  mpq_class operator()(const mpq_class& t) const;
  double eval(double t) const;
};

SmoothingPoly w0_polynomial(int n);
/// Derivatives of orders 0..n+2 vanish at both endpoints.
bool endpoints_flat(const SmoothingPoly& w);
/// (9/10) 2^{2k} k!^2 / (2k+1)! with k = n + 4.
mpq_class w0_mellin_one(int n);
/// Exact integral of w(t) t^{s-1} for integer s >= 1.
mpq_class mellin_exact(const SmoothingPoly& w, int s);

struct MellinValue {
  cplx s;
  cplx value;
  double error = 0;
};
/// Adaptive quadrature on [1/10, 1].
MellinValue mellin(const SmoothingPoly& w, cplx s, double tol);
/// Term-by-term closed form in 50-digit arithmetic.
cplx mellin_series(const SmoothingPoly& w, cplx s);

struct DecaySample {
  cplx s;
  double value = 0;
  double bound = 0;
  bool ok = false;
};

struct IntegralCheck {
  std::string name;  // "M" or "M*"
  double eps = 0;
  int r = 0;
  double value = 0;   // quadrature over |Im s| <= T
  double error = 0;   // quadrature error estimate
  double tail = 0;    // rigorous bound for |Im s| > T
  double bound = 0;
  bool ok = false;
};

struct SmoothingClaims {
  int n = 2;
  bool endpoints_ok = false;
  poly::Enclosure sup;          // ||w_0||_inf
  bool sup_is_one = false;
  mpq_class w1_exact;           // w_0-check(1)
  double w1_quadrature = 0;
  double w1_error = 0;
  double scaled = 0;            // 10 sqrt(n) w_0-check(1)
  bool scaled_in_range = false;
  poly::Enclosure l1_derivative;
  bool l1_is_two = false;
  poly::Enclosure sup_high;     // ||w_0^{(n+3)}||_inf
  double high_bound = 0;        // 4 (40 n)^{n+3}
  bool high_ok = false;
  std::vector<DecaySample> decay;
  bool decay_ok = false;
  std::vector<IntegralCheck> integrals;
  bool integrals_ok = false;
  bool all_ok() const;
};

/// With grids false the decay samples and the M, M* integrals are skipped.
SmoothingClaims verify_smoothing_claims(int n, bool grids = true);

struct LedgerEntry {
  std::string key;
  double log_value = 0;
  std::string note;
};

struct ConstantLedger {
  std::string field;
  std::string modulus;
  int n = 2;
  std::vector<LedgerEntry> entries;
  bool simplifytK_holds = false;
  bool rootdisc_holds = false;
  bool alpha_sandwich_holds = false;
  bool class_number_bound_holds = false;
  double get(const std::string& key) const;
  bool has(const std::string& key) const;
};

/// Every explicit constant as a natural logarithm; quadratic fields only.
ConstantLedger constant_ledger(const quad::Field& K, const quad::IdealHNF& q);

/// prod over P | q of sqrt(NP)/(sqrt(NP) - 1).
double theta(const quad::Field& K, const quad::IdealHNF& q);

/// Logarithms of the bound evaluators.
double hr1_log_bound(cplx s, double eps, int n, i64 disc);
double hr2_log_bound(cplx s, double eps, int n, i64 disc, i64 Nq);
double boundFchi_log(cplx s, double eps, int n, i64 disc, i64 Nq, double theta_q, bool trivial);

/// Error term of the ideal-count asymptotic, as a plain double.
double asymfinal_error(const ConstantLedger& L, double X, double Nq);

struct HeckeEval {
  double s = 2;
  i64 X = 0;
  cplx L, F, J;
  double residual = 0;
  double truncation_estimate = 0;
  i64 ideals = 0;
  i64 degree_one_primes = 0;
  i64 other_primes = 0;
};
/// Truncated L_q(s, chi), F(s, chi) and J(s, chi) for real s >= 1.5.
HeckeEval hecke_partial_eval(const ray::RayClassGroup& rcg, const group::Character& chi, double s, i64 X);

struct Mellin1Check {
  double y = 1;
  int k = 1;
  double exact = 0;
  double numeric = 0;
  double truncation = 0;  // bound for |Im s| > T
  double quad_error = 0;
  double T = 0;
  bool ok = false;
};
/// max(0, 1 - y)^k against the contour integral on Re s = 2 truncated at |Im s| <= T.
Mellin1Check mellin1_check(double y, int k, double T);

}  // namespace rcprod::analytic
