#include "rcprod/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rcprod::sieve {

namespace {

// 1 + sum over nonempty squarefree products of norms[start..] bounded by `bound` of prod 1/(N - 1).
mpq_class g_over(const std::vector<i64>& norms, std::size_t start, i64 bound) {
  mpq_class total = 1;
  for (std::size_t i = start; i < norms.size() && norms[i] <= bound; ++i) {
    mpq_class term(1, to_mpz(norms[i] - 1));
    total += term * g_over(norms, i + 1, bound / norms[i]);
  }
  return total;
}

std::vector<i64> norms_of(const std::vector<PrimeIdeal>& ps) {
  std::vector<i64> out;
  out.reserve(ps.size());
  for (auto& P : ps) out.push_back(P.norm());
  return out;
}

double to_d(const mpq_class& x) { return x.get_d(); }

// sum_{p > P} p^{-s} <= 1.25506 s P^{1-s} / ((s-1) log P), from pi(t) < 1.25506 t / log t.
double prime_zeta_tail(double s, double P) { return 1.25506 * s * std::pow(P, 1 - s) / ((s - 1) * std::log(P)); }

EulerProduct euler(double alpha, i64 cutoff, double beta) {
  EulerProduct e;
  e.alpha = alpha;
  e.cutoff = cutoff;
  double acc = 0;
  for (u64 p : prime_table()) {
    if (static_cast<i64>(p) > cutoff) break;
    double pd = static_cast<double>(p);
    acc += std::log1p((1 + std::pow(pd, alpha)) / ((pd - 1) * std::pow(pd, beta)));
  }
  e.log_truncated = acc;
  // For p > P: (1 + p^a)/((p-1) p^b) <= k p^{a-1-b} with k = (1 + P^{-a}) P/(P-1).
  double P = static_cast<double>(cutoff);
  double k = (1 + std::pow(P, -alpha)) * P / (P - 1);
  e.tail = k * prime_zeta_tail(1 + beta - alpha, P);
  return e;
}

}  // namespace

double EulerProduct::lower() const { return std::exp(log_truncated) * (1 - 1e-12); }
double EulerProduct::upper() const { return std::exp(log_truncated + tail) * (1 + 1e-12); }

EulerProduct c1(double alpha, i64 cutoff) { return euler(alpha, cutoff, 1.0); }
EulerProduct c2(double alpha, i64 cutoff) { return euler(alpha, cutoff, (1 + 3 * alpha) / 4); }

SieveContext make_context(std::shared_ptr<const Field> K, const IdealHNF& q, i64 z) {
  if (z < 1) throw ValidationError("sieve level z must be >= 1");
  SieveContext ctx;
  ctx.field = std::move(K);
  ctx.q = q;
  ctx.z = z;
  const Field& F = *ctx.field;
  ctx.primes = F.primes_coprime_to(z, q);
  auto norms = norms_of(ctx.primes);
  quad::enumerate_squarefree(norms, z, [&](i64 norm, const std::vector<int>& stack) {
    SupportIdeal s;
    s.norm = norm;
    s.primes = stack;
    s.mu = (stack.size() % 2 == 0) ? 1 : -1;
    s.ideal = F.unit_ideal();
    for (int i : stack) {
      s.ideal = F.product(s.ideal, ctx.primes[static_cast<std::size_t>(i)].hnf);
      s.phi *= to_mpz(norms[static_cast<std::size_t>(i)] - 1);
    }
    ctx.support.push_back(std::move(s));
  });
  std::sort(ctx.support.begin(), ctx.support.end(), [](const SupportIdeal& a, const SupportIdeal& b) {
    return a.norm != b.norm ? a.norm < b.norm : a.ideal < b.ideal;
  });
  return ctx;
}

mpq_class g_sum(const Field& K, const IdealHNF& e, const IdealHNF& q, i64 z) {
  if (z < 1) return 0;
  std::vector<i64> norms;
  for (auto& P : K.primes_coprime_to(z, q))
    if (!K.divides(P.hnf, e)) norms.push_back(P.norm());
  return g_over(norms, 0, z);
}

const mpq_class* LambdaTable::find(const std::vector<int>& primes) const {
  auto it = index.find(primes);
  return it == index.end() ? nullptr : &lambda[it->second];
}

LambdaTable lambda_table(const SieveContext& ctx) {
  LambdaTable t;
  auto norms = norms_of(ctx.primes);
  t.G = g_over(norms, 0, ctx.z);
  t.bounded = true;
  for (std::size_t i = 0; i < ctx.support.size(); ++i) {
    const SupportIdeal& e = ctx.support[i];
    std::vector<i64> rest;
    for (std::size_t j = 0; j < norms.size(); ++j)
      if (!std::binary_search(e.primes.begin(), e.primes.end(), static_cast<int>(j))) rest.push_back(norms[j]);
    mpq_class Ge = g_over(rest, 0, ctx.z / e.norm);
    mpq_class lam = mpq_class(e.mu) * mpq_class(to_mpz(e.norm)) * Ge / (mpq_class(e.phi) * t.G);
    lam.canonicalize();
    if (abs(lam) > 1) t.bounded = false;
    if (e.primes.empty()) t.unit_is_one = (lam == 1);
    t.lambda.push_back(lam);
    t.index.emplace(e.primes, i);
  }
  return t;
}

ReciprocalCheck verify_reciprocal_identity(const SieveContext& ctx, const LambdaTable& t) {
  ReciprocalCheck r;
  const auto& S = ctx.support;
  auto norms = norms_of(ctx.primes);
  for (std::size_t i = 0; i < S.size(); ++i) {
    mpq_class row = 0;
    for (std::size_t j = 0; j < S.size(); ++j) {
      i64 common = 1;
      auto a = S[i].primes.begin(), b = S[j].primes.begin();
      while (a != S[i].primes.end() && b != S[j].primes.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          common *= norms[static_cast<std::size_t>(*a)];
          ++a;
          ++b;
        }
      }
      mpz_class lcm = to_mpz(S[i].norm) * to_mpz(S[j].norm) / to_mpz(common);
      row += t.lambda[j] / mpq_class(lcm);
    }
    r.lhs += t.lambda[i] * row;
  }
  r.lhs.canonicalize();
  r.rhs = 1 / t.G;
  r.rhs.canonicalize();
  r.holds = (r.lhs == r.rhs);
  return r;
}

GLowerBound g_lower_bound_checks(const SieveContext& ctx, const LambdaTable& t) {
  const Field& K = *ctx.field;
  const auto& I = K.invariants();
  GLowerBound g;
  g.G = t.G;
  mpq_class recip = 0;
  for (const IdealHNF& a : K.ideals_up_to(ctx.z, K.unit_ideal())) recip += mpq_class(1, to_mpz(K.norm(a)));
  i64 Nq = K.norm(ctx.q);
  g.hs_rhs = mpq_class(to_mpz(ray::modulus_phi(K, ctx.q)), to_mpz(Nq)) * recip;
  g.hs_rhs.canonicalize();
  g.hs_holds = (g.G >= g.hs_rhs);

  const double n = K.degree();
  const double absd = std::abs(static_cast<double>(I.disc));
  g.log_threshold = 4 * n * std::log(1e6 * n) + 3 * std::log(absd);
  g.log_z = std::log(static_cast<double>(ctx.z));
  g.hypothesis_met = g.log_z >= g.log_threshold;
  double phi_over_N = static_cast<double>(ray::modulus_phi(K, ctx.q)) / static_cast<double>(Nq);
  g.gz_rhs = I.alpha * phi_over_N * (g.log_z - 2 - std::log(n) - 0.5 * std::log(absd));
  if (!g.hypothesis_met) {
    g.gz_status = "hypothesis-not-met";
  } else {
    g.gz_status = to_d(g.G) >= g.gz_rhs ? "holds" : "violated";
  }
  return g;
}

LambdaNormBounds lambda_norm_bounds(const SieveContext& ctx, const LambdaTable& t, const mpq_class& alpha) {
  if (alpha < 0 || alpha >= 1) throw ValidationError("alpha must lie in [0, 1)");
  LambdaNormBounds b;
  b.alpha = alpha;
  const double a = alpha.get_d();
  const int n = ctx.field->degree();
  if (alpha == 0) {
    mpq_class s = 0;
    for (auto& l : t.lambda) s += abs(l);
    s.canonicalize();
    b.lhs_exact = s;
    b.lhs = s.get_d();
  } else {
    double s = 0;
    for (std::size_t i = 0; i < t.lambda.size(); ++i)
      s += std::abs(t.lambda[i].get_d()) * std::pow(static_cast<double>(ctx.support[i].norm), -a);
    b.lhs = s;
  }
  b.c1 = c1(a);
  b.c2 = c2(a);
  const double z = static_cast<double>(ctx.z);
  const double L = 2 + std::log(z);
  // Truncated products are lower bounds for c1, c2, so this right side is at most the true one.
  b.thm_rhs = 3.1 * n * std::pow(z, 1 - a) / ((1 - a) * L) * std::pow(b.c1.lower(), n) +
              std::pow(z, 3 * (1 - a) / 4) * std::pow(b.c2.lower(), n);
  b.thm_holds = b.lhs <= b.thm_rhs;
  if (alpha == 0) {
    b.cor0_rhs = 6 * std::pow(89.0, n) * z / L;
    b.cor_holds = b.cor_holds && b.lhs <= *b.cor0_rhs;
  }
  if (n >= 2 && alpha == mpq_class(n - 1, n)) {
    b.cor1_rhs = std::pow(static_cast<double>(n), 9.0 * n) * std::pow(z, 1.0 / n) / L;
    b.cor_holds = b.cor_holds && b.lhs <= *b.cor1_rhs;
  }
  return b;
}

std::vector<PointwiseBound> selberg_pointwise_all(const ray::RayClassGroup& rcg, const SieveContext& ctx,
                                                  const LambdaTable& t, i64 X) {
  if (X < ctx.z) throw ValidationError("pointwise bound requires X >= z");
  const Field& K = rcg.field();
  const auto& G = rcg.group();
  auto primes = K.primes_coprime_to(X, rcg.modulus());
  std::vector<group::Element> cls;
  std::vector<int> sieve_idx(primes.size(), -1);
  std::map<IdealHNF, int> in_ctx;
  for (std::size_t i = 0; i < ctx.primes.size(); ++i) in_ctx.emplace(ctx.primes[i].hnf, static_cast<int>(i));
  std::vector<PointwiseBound> out(static_cast<std::size_t>(G.order()));
  for (i64 i = 0; i < G.order(); ++i) {
    out[static_cast<std::size_t>(i)].cls = G.element_at(i);
    out[static_cast<std::size_t>(i)].nz = K.degree() * ctx.z;
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    cls.push_back(rcg.class_of_prime(primes[i]));
    out[static_cast<std::size_t>(G.index_of(cls.back()))].T1 += 1;
    auto it = in_ctx.find(primes[i].hnf);
    if (it != in_ctx.end()) sieve_idx[i] = it->second;
  }
  auto norms = norms_of(primes);
  std::vector<int> sb;
  std::vector<int> subset;
  quad::enumerate_factorizations(norms, X, [&](i64, const std::vector<std::pair<int, int>>& stack) {
    group::Element c = G.identity();
    sb.clear();
    for (auto& [idx, e] : stack) {
      c = G.add(c, G.scale(cls[static_cast<std::size_t>(idx)], e));
      int s = sieve_idx[static_cast<std::size_t>(idx)];
      if (s >= 0) sb.push_back(s);
    }
    std::sort(sb.begin(), sb.end());
    mpq_class inner = 0;
    const std::size_t m = sb.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      subset.clear();
      for (std::size_t j = 0; j < m; ++j)
        if (mask >> j & 1) subset.push_back(sb[j]);
      if (const mpq_class* l = t.find(subset)) inner += *l;
    }
    PointwiseBound& pb = out[static_cast<std::size_t>(G.index_of(c))];
    pb.sieve_sum += inner * inner;
    pb.class_ideals += 1;
  });
  for (auto& pb : out) {
    pb.sieve_sum.canonicalize();
    pb.rhs = mpq_class(to_mpz(pb.nz)) + pb.sieve_sum;
    pb.holds = mpq_class(to_mpz(pb.T1)) <= pb.rhs;
  }
  return out;
}

PointwiseBound selberg_pointwise_bound(const ray::RayClassGroup& rcg, const SieveContext& ctx, const LambdaTable& t,
                                       const group::Element& target, i64 X) {
  auto all = selberg_pointwise_all(rcg, ctx, t, X);
  return all[static_cast<std::size_t>(rcg.group().index_of(target))];
}

namespace {

i64 binom(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

MoebiusTruncation truncated_moebius(const Field& K, const IdealHNF& d, int R) {
  if (R < 0) throw ValidationError("R must be >= 0");
  auto f = K.factor(d);
  for (auto& [P, e] : f)
    if (e > 1) throw ValidationError("ideal " + K.ideal_to_string(d) + " is not squarefree");
  MoebiusTruncation m;
  m.omega = static_cast<int>(f.size());
  m.mu = (m.omega % 2 == 0) ? 1 : -1;
  m.mu_R = m.omega <= R ? m.mu : 0;
  // psi_R(d) = sum over divisors, grouped by the number k of prime factors.
  m.psi_R = 0;
  for (int k = 0; k <= m.omega; ++k)
    if (k <= R) m.psi_R += ((k % 2 == 0) ? 1 : -1) * binom(m.omega, k);
  if (m.omega == 0) {
    m.psi_formula = 1;
    m.bound = 1;
  } else {
    m.psi_formula = ((R % 2 == 0) ? 1 : -1) * binom(m.omega - 1, R);
    m.bound = binom(m.omega - 1, R);
  }
  m.ok = m.psi_R == m.psi_formula && std::abs(m.psi_R) <= m.bound;
  return m;
}

mpq_class prime_reciprocal_sum(i64 x) {
  mpq_class s = 0;
  for (u64 p : primes_up_to(static_cast<u64>(std::max<i64>(x, 0)))) s += mpq_class(1, static_cast<unsigned long>(p));
  s.canonicalize();
  return s;
}

i64 prime_power_count(i64 x) {
  i64 c = 0;
  for (u64 p : primes_up_to(isqrt(static_cast<u64>(std::max<i64>(x, 0))))) {
    for (i64 v = static_cast<i64>(p) * static_cast<i64>(p); v <= x; v *= static_cast<i64>(p)) {
      ++c;
      if (v > x / static_cast<i64>(p)) break;
    }
  }
  return c;
}

ClassicalPrimeChecks classical_prime_checks(i64 powers_xmax, i64 reciprocal_xmax) {
  if (powers_xmax < 4 || reciprocal_xmax < 100) throw ValidationError("classical checks need x_max >= 4 and >= 100");
  if (reciprocal_xmax > static_cast<i64>(kPrimeTableLimit)) throw ValidationError("reciprocal x_max exceeds the prime table");
  ClassicalPrimeChecks c;
  c.powers_xmax = powers_xmax;
  c.reciprocal_xmax = reciprocal_xmax;

  // The count is constant between consecutive prime powers while sqrt(x) grows, so the
  // inequality for every x <= x_max reduces to the prime powers themselves.
  std::vector<i64> pw;
  for (u64 p : primes_up_to(isqrt(static_cast<u64>(powers_xmax)))) {
    i64 pp = static_cast<i64>(p);
    for (i64 v = pp * pp;; v *= pp) {
      pw.push_back(v);
      if (v > powers_xmax / pp) break;
    }
  }
  std::sort(pw.begin(), pw.end());
  c.powers_ok = true;
  for (std::size_t i = 0; i < pw.size(); ++i) {
    i64 cnt = static_cast<i64>(i + 1), v = pw[i];
    ++c.powers_checked;
    if (static_cast<i128>(16) * cnt * cnt > static_cast<i128>(25) * v) c.powers_ok = false;
    double ratio = static_cast<double>(cnt) / std::sqrt(static_cast<double>(v));
    if (ratio > c.powers_worst_ratio) {
      c.powers_worst_ratio = ratio;
      c.powers_worst_x = v;
    }
  }
  c.count_at_100 = prime_power_count(100);
  c.sum_at_100 = prime_reciprocal_sum(100).get_d();

  // Fixed-point upper bound: sum of ceil(2^62 / p), so the reported sum never underestimates.
  constexpr int kShift = 62;
  const unsigned __int128 one = static_cast<unsigned __int128>(1) << kShift;
  unsigned __int128 acc = 0;
  c.reciprocal_ok = true;
  c.reciprocal_min_margin = 1e300;
  auto check = [&](i64 x) {
    double upper = std::ldexp(static_cast<double>(acc), -kShift) * (1 + 1e-15) + 1e-15;
    double lower = 2 * std::log(std::log(static_cast<double>(x))) * (1 - 1e-15) - 1e-15;
    double margin = lower - upper;
    ++c.reciprocal_checked;
    if (margin < 0) c.reciprocal_ok = false;
    if (margin < c.reciprocal_min_margin) {
      c.reciprocal_min_margin = margin;
      c.reciprocal_min_margin_x = x;
    }
  };
  bool checked_100 = false;
  for (u64 p : prime_table()) {
    i64 pp = static_cast<i64>(p);
    if (pp > reciprocal_xmax) break;
    if (pp > 100 && !checked_100) {
      check(100);
      checked_100 = true;
    }
    acc += (one + p - 1) / p;
    if (pp > 100) check(pp);
  }
  if (!checked_100) check(100);
  return c;
}

std::vector<PrimeSumCheck> prime_sum_checks(const Field& K, i64 xmax) {
  if (xmax < 1) throw ValidationError("x_max must be >= 1");
  const int n = K.degree();
  std::vector<double> alphas{0.0, 0.5};
  if (n >= 2 && 1.0 - 1.0 / n != 0.5) alphas.push_back(1.0 - 1.0 / n);
  auto primes = K.primes_up_to(xmax);
  auto norms = norms_of(primes);
  std::vector<i64> sqf(static_cast<std::size_t>(xmax) + 1, 0);
  quad::enumerate_squarefree(norms, xmax, [&](i64 m, const std::vector<int>&) { ++sqf[static_cast<std::size_t>(m)]; });
  std::vector<i64> prime_count(static_cast<std::size_t>(xmax) + 1, 0);
  for (i64 N : norms) ++prime_count[static_cast<std::size_t>(N)];

  std::vector<PrimeSumCheck> out;
  for (double a : alphas) {
    PrimeSumCheck r;
    r.alpha = a;
    r.xmax = xmax;
    r.primes_ok = r.userhhr_ok = true;
    double P = 0, A = 0, B = 0;
    for (i64 x = 1; x <= xmax; ++x) {
      const double xd = static_cast<double>(x);
      if (i64 c = prime_count[static_cast<std::size_t>(x)]) P += static_cast<double>(c) * std::log(xd) * std::pow(xd, -a);
      if (i64 c = sqf[static_cast<std::size_t>(x)]) {
        A += static_cast<double>(c) * std::pow(xd, -a);
        B += static_cast<double>(c) / xd;
      }
      double prhs = 1.02 * n * std::pow(xd, 1 - a) / (1 - a);
      r.primes_max_ratio = std::max(r.primes_max_ratio, P / prhs);
      if (P > prhs * (1 + 1e-12)) r.primes_ok = false;
      double lhs = std::pow(xd, a) * A;
      double urhs = (1 + 1.02 * n) * xd / ((1 - a) * (1 + std::log(xd))) * B;
      r.userhhr_max_ratio = std::max(r.userhhr_max_ratio, lhs / urhs);
      if (lhs > urhs * (1 + 1e-12)) r.userhhr_ok = false;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace rcprod::sieve
