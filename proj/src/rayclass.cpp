#include "rcprod/rayclass.hpp"

#include <algorithm>

namespace rcprod::ray {

namespace {

bool in_ideal(const IdealHNF& P, i128 x, i128 y, bool rational) {
  if (rational) return y == 0 && x % P.s == 0;
  if (y % P.s != 0) return false;
  i128 k = y / P.s;
  return (x - k * P.s * P.b) % (static_cast<i128>(P.s) * P.a) == 0;
}

}  // namespace

i64 modulus_phi(const Field& K, const IdealHNF& q) {
  i64 phi = K.norm(q);
  for (auto& [P, e] : K.factor(q)) phi = phi / P.norm() * (P.norm() - 1);
  return phi;
}

ResidueRing::ResidueRing(const Field& K, const IdealHNF& q) : K_(&K), q_(q) {
  sa_ = K.is_rational() ? q.s : mul_checked(q.s, q.a);
  size_ = K.norm(q);
  for (auto& [P, e] : K.factor(q)) primes_.push_back(P.hnf);
}

i64 ResidueRing::encode(const mpz_class& x, const mpz_class& y) const {
  if (K_->is_rational()) {
    mpz_class r;
    mpz_class m = static_cast<long>(q_.s);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r.get_si();
  }
  mpz_class s = static_cast<long>(q_.s), sa = static_cast<long>(sa_);
  mpz_class y0, k, x0;
  mpz_fdiv_r(y0.get_mpz_t(), y.get_mpz_t(), s.get_mpz_t());
  k = (y - y0) / s;
  mpz_class xp = x - k * s * q_.b;
  mpz_fdiv_r(x0.get_mpz_t(), xp.get_mpz_t(), sa.get_mpz_t());
  return x0.get_si() + sa_ * y0.get_si();
}

i64 ResidueRing::encode(i64 x, i64 y) const {
  if (K_->is_rational()) return mod_floor(x, q_.s);
  i64 y0 = mod_floor(y, q_.s);
  i128 k = (static_cast<i128>(y) - y0) / q_.s;
  i128 xp = x - k * q_.s * q_.b;
  return static_cast<i64>(mod_floor128(xp, sa_)) + sa_ * y0;
}

i64 ResidueRing::encode(const AlgebraicNumber& v) const {
  if (!K_->is_integral(v)) throw ValidationError("residue of a non-integral element");
  return encode(v.a.get_num(), v.b.get_num());
}

std::pair<i64, i64> ResidueRing::decode(i64 idx) const {
  if (K_->is_rational()) return {idx, 0};
  return {idx % sa_, idx / sa_};
}

i64 ResidueRing::mul(i64 i, i64 j) const {
  auto [x1, y1] = decode(i);
  auto [x2, y2] = decode(j);
  if (K_->is_rational()) return static_cast<i64>((static_cast<i128>(x1) * x2) % q_.s);
  i128 n = K_->norm_omega(), t = K_->trace_omega();
  i128 X = static_cast<i128>(x1) * x2 - n * y1 * y2;
  i128 Y = static_cast<i128>(x1) * y2 + static_cast<i128>(x2) * y1 + t * y1 * y2;
  i64 y0 = static_cast<i64>(mod_floor128(Y, q_.s));
  i128 k = (Y - y0) / q_.s;
  i128 xp = X - k * q_.s * q_.b;
  return static_cast<i64>(mod_floor128(xp, sa_)) + sa_ * y0;
}

bool ResidueRing::is_unit(i64 idx) const {
  auto [x, y] = decode(idx);
  for (auto& P : primes_)
    if (in_ideal(P, x, y, K_->is_rational())) return false;
  return true;
}

ResidueSignGroup::ResidueSignGroup(const Field& K, const IdealHNF& q) : K_(&K), q_(q), ring_(K, q) {
  phi_ = modulus_phi(K, q);
  if (phi_ > kMaxPhi) throw ValidationError("phi(q) = " + std::to_string(phi_) + " exceeds the discrete-log table limit 10^6");
  const ResidueRing* ring = &ring_;
  res_ = std::make_unique<group::GeneratedGroup>(ring_.one(), [ring](i64 a, i64 b) { return ring->mul(a, b); });
  for (i64 idx = 0; idx < ring_.size() && res_->size() < phi_; ++idx)
    if (ring_.is_unit(idx)) res_->add_generator(idx);
  if (res_->size() != phi_) throw Error("unit residue count disagrees with phi(q)");
  n_res_gens_ = res_->generators().size();

  const int r1 = K.invariants().r1;
  std::size_t n = n_res_gens_ + static_cast<std::size_t>(r1);
  group::Matrix rels;
  for (auto& row : res_->relations()) {
    std::vector<mpz_class> r(n, 0);
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = row[j];
    rels.push_back(r);
  }
  for (int i = 0; i < r1; ++i) {
    std::vector<mpz_class> r(n, 0);
    r[n_res_gens_ + static_cast<std::size_t>(i)] = 2;
    rels.push_back(r);
  }
  rs_ = group::group_from_relations(n, rels);

  const quad::QuadInvariants& I = K.invariants();
  std::vector<AlgebraicNumber> units{AlgebraicNumber{-1, 0}};
  std::vector<AlgebraicNumber> positive;
  if (I.mu_order > 2) units.push_back(AlgebraicNumber{0, 1});
  if (I.fund_unit) units.push_back(*I.fund_unit);
  if (!K.is_rational() && I.r1 == 0) {
    positive = units;
  } else if (I.fund_unit) {
    positive.push_back(I.fund_unit_norm == 1 ? *I.fund_unit : K.mul(*I.fund_unit, *I.fund_unit));
  }
  std::vector<Element> logs;
  for (auto& u : units) logs.push_back(log(u));
  units_ = group::subgroup_generated(rs_.group, logs);

  group::Matrix qrels = res_->relations();
  for (auto& u : positive) {
    auto e = residue_exponents(u);
    std::vector<mpz_class> r;
    for (i64 v : e) r.push_back(to_mpz(v));
    qrels.push_back(r);
  }
  qpos_ = group::group_from_relations(n_res_gens_, qrels);
}

std::vector<i64> ResidueSignGroup::residue_exponents_index(i64 residue) const {
  if (!ring_.is_unit(residue)) throw NotCoprimeError("element is not coprime to the modulus");
  return res_->exponents(residue);
}

std::vector<i64> ResidueSignGroup::residue_exponents(const AlgebraicNumber& gamma) const {
  return residue_exponents_index(ring_.encode(gamma));
}

Element ResidueSignGroup::log(const AlgebraicNumber& gamma) const {
  std::vector<i64> e = residue_exponents(gamma);
  for (int i = 0; i < K_->invariants().r1; ++i) e.push_back(K_->sign_at(gamma, i) < 0 ? 1 : 0);
  return rs_.project(e);
}

bool ResidueSignGroup::in_unit_image(const Element& x) const { return units_.contains(rs_.group.index_of(x)); }

Element ResidueSignGroup::log_positive_quotient(const AlgebraicNumber& gamma) const {
  return qpos_.project(residue_exponents(gamma));
}

Element ResidueSignGroup::log_positive_quotient_index(i64 residue) const {
  return qpos_.project(residue_exponents_index(residue));
}

i64 ray_class_order(const Field& K, const IdealHNF& q) {
  ResidueSignGroup rs(K, q);
  const quad::QuadInvariants& I = K.invariants();
  i64 num = mul_checked(mul_checked(I.h, rs.phi()), i64{1} << I.r1);
  if (num % rs.unit_image_order() != 0) throw Error("unit image order does not divide h*phi*2^r1");
  return num / rs.unit_image_order();
}

bool is_ray_principal(const ResidueSignGroup& rs, const IdealHNF& x) {
  const Field& K = rs.field();
  if (!K.coprime(x, rs.modulus())) throw NotCoprimeError("ideal " + x.to_string() + " is not coprime to the modulus");
  auto pg = K.principal_generator(x);
  if (!pg) return false;
  return rs.in_unit_image(rs.log(pg->gen));
}

bool is_ray_principal(const Field& K, const IdealHNF& q, const IdealHNF& x) {
  ResidueSignGroup rs(K, q);
  return is_ray_principal(rs, x);
}

RayClassGroup::RayClassGroup(const Field& K, const IdealHNF& q, i64 gen_bound)
    : RayClassGroup(std::make_shared<const Field>(K), q, gen_bound) {}

RayClassGroup::RayClassGroup(std::shared_ptr<const Field> K, const IdealHNF& q, i64 gen_bound)
    : K_(std::move(K)), q_(q), bound_(gen_bound) {
  if (gen_bound < 2) throw ValidationError("generator norm bound must be >= 2");
  build();
}

void RayClassGroup::build() {
  const Field& K = *K_;
  rs_ = std::make_unique<ResidueSignGroup>(K, q_);
  const quad::QuadInvariants& I = K.invariants();
  const i64 Nq = K.norm(q_);

  class_index_.emplace(K.narrow_class_key(K.unit_ideal()), 0);
  reps_.push_back(K.unit_ideal());
  for (u64 p : prime_table()) {
    if (static_cast<i64>(class_index_.size()) >= I.h_narrow) break;
    if (Nq % static_cast<i64>(p) == 0) continue;
    for (const PrimeIdeal& P : K.primes_above(p)) {
      auto key = K.narrow_class_key(P.hnf);
      if (class_index_.count(key)) continue;
      class_index_.emplace(key, static_cast<int>(reps_.size()));
      reps_.push_back(P.hnf);
    }
  }
  if (static_cast<i64>(reps_.size()) != I.h_narrow) throw Error("could not find representatives of every narrow class");

  const auto& Q = rs_->positive_quotient();
  qsize_ = Q.group.order();
  const std::size_t h = reps_.size();
  class_mul_.assign(h, std::vector<int>(h, 0));
  kappa_.assign(h, std::vector<Element>(h));
  for (std::size_t c1 = 0; c1 < h; ++c1)
    for (std::size_t c2 = 0; c2 < h; ++c2) {
      IdealHNF R = K.product(reps_[c1], reps_[c2]);
      int c12 = class_index_.at(K.narrow_class_key(R));
      class_mul_[c1][c2] = c12;
      auto delta = K.totally_positive_generator(K.product(R, K.conj(reps_[static_cast<std::size_t>(c12)])));
      if (!delta) throw Error("cocycle generator missing");
      Element a = rs_->log_positive_quotient(*delta);
      Element b = rs_->log_positive_quotient(AlgebraicNumber{mpq_class(K.norm(reps_[static_cast<std::size_t>(c12)])), 0});
      kappa_[c1][c2] = Q.group.sub(a, b);
    }

  const i64 expected = ray_class_order(K, q_);
  if (static_cast<i64>(h) * qsize_ != expected) throw Error("narrow class sequence disagrees with the order formula");

  keys_ = std::make_unique<group::GeneratedGroup>(0, [this](i64 x, i64 y) { return key_mul(x, y); });
  std::vector<std::pair<PrimeIdeal, i64>> prime_keys;
  for (const PrimeIdeal& P : K.primes_coprime_to(bound_, q_)) {
    i64 k = key(P.hnf);
    prime_keys.emplace_back(P, k);
    if (keys_->add_generator(k)) basis_primes_.push_back(P);
  }
  if (keys_->size() != expected) throw UnsaturatedError(keys_->size(), expected);
  pres_ = keys_->presentation();
  for (auto& [P, k] : prime_keys) {
    Element cls = pres_.project(keys_->exponents(k));
    gens_.push_back(GeneratorPrime{P, cls});
    prime_cache_.emplace(P.hnf, cls);
  }
}

int RayClassGroup::class_of_key(const IdealHNF& x) const { return class_index_.at(K_->narrow_class_key(x)); }

i64 RayClassGroup::key(const IdealHNF& x) const {
  const Field& K = *K_;
  int c = class_of_key(x);
  const IdealHNF& R = reps_[static_cast<std::size_t>(c)];
  auto gamma = K.totally_positive_generator(K.product(x, K.conj(R)));
  if (!gamma) throw Error("narrow class key: missing totally positive generator");
  const auto& Q = rs_->positive_quotient();
  Element theta = Q.group.sub(rs_->log_positive_quotient(*gamma),
                              rs_->log_positive_quotient(AlgebraicNumber{mpq_class(K.norm(R)), 0}));
  return static_cast<i64>(c) * qsize_ + Q.group.index_of(theta);
}

i64 RayClassGroup::key_mul(i64 x, i64 y) const {
  const auto& G = rs_->positive_quotient().group;
  std::size_t c1 = static_cast<std::size_t>(x / qsize_), c2 = static_cast<std::size_t>(y / qsize_);
  Element t = G.add(G.add(G.element_at(x % qsize_), G.element_at(y % qsize_)), kappa_[c1][c2]);
  return static_cast<i64>(class_mul_[c1][c2]) * qsize_ + G.index_of(t);
}

Element RayClassGroup::class_of(const IdealHNF& x) const {
  if (!K_->coprime(x, q_)) throw NotCoprimeError("ideal " + x.to_string() + " is not coprime to the modulus");
  return pres_.project(keys_->exponents(key(x)));
}

Element RayClassGroup::class_of_prime(const PrimeIdeal& P) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = prime_cache_.find(P.hnf);
    if (it != prime_cache_.end()) return it->second;
  }
  Element cls = class_of(P.hnf);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  prime_cache_.emplace(P.hnf, cls);
  return cls;
}

Element RayClassGroup::class_of_factors(const std::vector<std::pair<PrimeIdeal, int>>& f) const {
  const FinAbGroup& G = group();
  Element r = G.identity();
  for (auto& [P, e] : f) r = G.add(r, G.scale(class_of_prime(P), e));
  return r;
}

std::vector<std::pair<Element, std::vector<i64>>> RayClassGroup::element_words() const {
  std::vector<std::pair<Element, std::vector<i64>>> out;
  for (i64 k : keys_->members()) {
    auto e = keys_->exponents(k);
    out.emplace_back(pres_.project(e), e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealHNF> ideal_divisors(const Field& K, const IdealHNF& q) {
  std::vector<IdealHNF> out{K.unit_ideal()};
  for (auto& [P, e] : K.factor(q)) {
    std::vector<IdealHNF> next;
    for (auto& d : out) {
      IdealHNF cur = d;
      next.push_back(cur);
      for (int i = 0; i < e; ++i) {
        cur = K.product(cur, P.hnf);
        next.push_back(cur);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const IdealHNF& a, const IdealHNF& b) {
    i64 na = K.norm(a), nb = K.norm(b);
    return na != nb ? na < nb : a < b;
  });
  return out;
}

IdealHNF conductor_of_character(const RayClassGroup& rcg, const group::Character& chi) {
  const Field& K = rcg.field();
  if (group::is_trivial(chi)) return K.unit_ideal();
  const auto words = rcg.element_words();
  const auto& basis = rcg.basis_primes();
  for (const IdealHNF& d : ideal_divisors(K, rcg.modulus())) {
    if (d == rcg.modulus()) return d;
    i64 B = rcg.gen_bound();
    std::unique_ptr<RayClassGroup> coarse;
    while (!coarse) {
      try {
        coarse = std::make_unique<RayClassGroup>(rcg.field_ptr(), d, B);
      } catch (const UnsaturatedError&) {
        B *= 2;
      }
    }
    bool factors = true;
    for (auto& [x, w] : words) {
      Element img = coarse->group().identity();
      for (std::size_t i = 0; i < w.size(); ++i)
        img = coarse->group().add(img, coarse->group().scale(coarse->class_of_prime(basis[i]), w[i]));
      if (img == coarse->group().identity() && group::character_value(rcg.group(), chi, x) != 0) {
        factors = false;
        break;
      }
    }
    if (factors) return d;
  }
  return rcg.modulus();
}

}  // namespace rcprod::ray
