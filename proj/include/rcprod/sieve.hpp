#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rcprod/quadfield.hpp"
#include "rcprod/rayclass.hpp"

namespace rcprod::sieve {

using quad::Field;
using quad::IdealHNF;
using quad::PrimeIdeal;

/// Squarefree divisor of V(z).
struct SupportIdeal {
  IdealHNF ideal;
  i64 norm = 1;
  mpz_class phi = 1;
  int mu = 1;
  std::vector<int> primes;  // indices into SieveContext::primes, ascending
};

/// Level z is an integer: N(a) <= z/N(e) is decided by floor(z/N(e)).
struct SieveContext {
  std::shared_ptr<const Field> field;
  IdealHNF q;
  i64 z = 1;
  std::vector<PrimeIdeal> primes;      // norm <= z, coprime to q
  std::vector<SupportIdeal> support;   // squarefree products with norm <= z
};

SieveContext make_context(std::shared_ptr<const Field> K, const IdealHNF& q, i64 z);

/// G_e(z) restricted to ideals coprime to e*q.
mpq_class g_sum(const Field& K, const IdealHNF& e, const IdealHNF& q, i64 z);

struct LambdaTable {
  mpq_class G;
  std::vector<mpq_class> lambda;  // parallel to SieveContext::support
  bool unit_is_one = false;
  bool bounded = false;           // |lambda| <= 1 everywhere
  std::map<std::vector<int>, std::size_t> index;
  /// Weight of the support ideal with these prime indices, or null when outside the support.
  const mpq_class* find(const std::vector<int>& primes) const;
};

LambdaTable lambda_table(const SieveContext& ctx);

struct ReciprocalCheck {
  mpq_class lhs;
  mpq_class rhs;
  bool holds = false;
};
ReciprocalCheck verify_reciprocal_identity(const SieveContext& ctx, const LambdaTable& t);

struct GLowerBound {
  mpq_class G;
  mpq_class hs_rhs;
  bool hs_holds = false;
  double log_threshold = 0;
  double log_z = 0;
  bool hypothesis_met = false;
  double gz_rhs = 0;
  std::string gz_status;  // "holds" | "violated" | "hypothesis-not-met"
};
GLowerBound g_lower_bound_checks(const SieveContext& ctx, const LambdaTable& t);

/// Truncated Euler product with a rigorous tail bound on its logarithm.
struct EulerProduct {
  double alpha = 0;
  i64 cutoff = 0;
  double log_truncated = 0;
  double tail = 0;
  double lower() const;
  double upper() const;
};
EulerProduct c1(double alpha, i64 cutoff = 1000000);
EulerProduct c2(double alpha, i64 cutoff = 1000000);

struct LambdaNormBounds {
  mpq_class alpha;
  double lhs = 0;
  std::optional<mpq_class> lhs_exact;
  EulerProduct c1, c2;
  double thm_rhs = 0;
  bool thm_holds = false;
  std::optional<double> cor0_rhs;
  std::optional<double> cor1_rhs;
  bool cor_holds = true;
};
LambdaNormBounds lambda_norm_bounds(const SieveContext& ctx, const LambdaTable& t, const mpq_class& alpha);

struct PointwiseBound {
  group::Element cls;
  i64 T1 = 0;
  i64 nz = 0;
  mpq_class sieve_sum;
  mpq_class rhs;
  i64 class_ideals = 0;
  bool holds = false;
};
/// T1 <= n z + sum_b (sum_{e | (b, V(z))} lambda_e)^2 for every class at once.
std::vector<PointwiseBound> selberg_pointwise_all(const ray::RayClassGroup& rcg, const SieveContext& ctx,
                                                  const LambdaTable& t, i64 X);
PointwiseBound selberg_pointwise_bound(const ray::RayClassGroup& rcg, const SieveContext& ctx, const LambdaTable& t,
                                       const group::Element& target, i64 X);

struct MoebiusTruncation {
  int omega = 0;
  int mu = 1;
  int mu_R = 1;
  i64 psi_R = 1;
  i64 psi_formula = 1;
  i64 bound = 1;
  bool ok = false;
};
MoebiusTruncation truncated_moebius(const Field& K, const IdealHNF& d, int R);

struct ClassicalPrimeChecks {
  i64 powers_xmax = 0;
  i64 powers_checked = 0;
  bool powers_ok = false;
  i64 powers_worst_x = 0;
  double powers_worst_ratio = 0;  // count / sqrt(x)
  i64 reciprocal_xmax = 0;
  i64 reciprocal_checked = 0;
  bool reciprocal_ok = false;
  double reciprocal_min_margin = 0;
  i64 reciprocal_min_margin_x = 0;
  double sum_at_100 = 0;
  i64 count_at_100 = 0;
};
/// Prime-power counts for all x <= powers_xmax; reciprocal sums at prime jumps in [100, reciprocal_xmax].
ClassicalPrimeChecks classical_prime_checks(i64 powers_xmax, i64 reciprocal_xmax);

/// Exact 1/2 + 1/3 + ... + 1/p over primes p <= x.
mpq_class prime_reciprocal_sum(i64 x);
i64 prime_power_count(i64 x);

struct PrimeSumCheck {
  double alpha = 0;
  i64 xmax = 0;
  bool primes_ok = false;
  double primes_max_ratio = 0;
  bool userhhr_ok = false;
  double userhhr_max_ratio = 0;
};
/// Lemma primes and Lemma userhhr at every integer x <= xmax.
std::vector<PrimeSumCheck> prime_sum_checks(const Field& K, i64 xmax);

}  // namespace rcprod::sieve
