#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "rcprod/abgroup.hpp"
#include "rcprod/quadfield.hpp"

namespace rcprod::ray {

using group::Element;
using group::FinAbGroup;
using quad::AlgebraicNumber;
using quad::Field;
using quad::IdealHNF;
using quad::PrimeIdeal;

/// phi(q) = N(q) * prod_{P | q} (1 - 1/N(P)).
i64 modulus_phi(const Field& K, const IdealHNF& q);

/// O_K / q with residues x + y*omega encoded as x0 + (s*a)*y0.
class ResidueRing {
 public:
  ResidueRing(const Field& K, const IdealHNF& q);
  i64 size() const { return size_; }
  i64 encode(const mpz_class& x, const mpz_class& y) const;
  i64 encode(i64 x, i64 y) const;
  i64 encode(const AlgebraicNumber& v) const;
  std::pair<i64, i64> decode(i64 idx) const;
  i64 mul(i64 i, i64 j) const;
  bool is_unit(i64 idx) const;
  i64 one() const { return encode(i64{1}, i64{0}); }

 private:
  const Field* K_;
  IdealHNF q_;
  i64 sa_ = 1;
  i64 size_ = 1;
  std::vector<IdealHNF> primes_;
};

/// (O_K/q)^* x {+-1}^{r1} with discrete logs and the image of the global units.
class ResidueSignGroup {
 public:
  static constexpr i64 kMaxPhi = 1000000;
  ResidueSignGroup(const Field& K, const IdealHNF& q);

  const Field& field() const { return *K_; }
  const IdealHNF& modulus() const { return q_; }
  const ResidueRing& ring() const { return ring_; }
  i64 phi() const { return phi_; }
  const FinAbGroup& group() const { return rs_.group; }
  const group::Subgroup& unit_image() const { return units_; }

  /// Exponents of gamma mod q over the residue generators; gamma integral and coprime to q.
  std::vector<i64> residue_exponents(const AlgebraicNumber& gamma) const;
  std::vector<i64> residue_exponents_index(i64 residue) const;
  Element log(const AlgebraicNumber& gamma) const;
  bool in_unit_image(const Element& x) const;
  i64 unit_image_order() const { return units_.order; }

  /// Residues modulo the totally positive units, the kernel of H_q onto the narrow class group.
  const group::Presentation& positive_quotient() const { return qpos_; }
  Element log_positive_quotient(const AlgebraicNumber& gamma) const;
  Element log_positive_quotient_index(i64 residue) const;

 private:
  const Field* K_;
  IdealHNF q_;
  ResidueRing ring_;
  i64 phi_ = 1;
  std::unique_ptr<group::GeneratedGroup> res_;
  group::Presentation rs_;
  group::Presentation qpos_;
  group::Subgroup units_;
  std::size_t n_res_gens_ = 0;
};

/// h_K * phi(q) * 2^{r1} / |unit image|.
i64 ray_class_order(const Field& K, const IdealHNF& q);
bool is_ray_principal(const ResidueSignGroup& rs, const IdealHNF& x);
bool is_ray_principal(const Field& K, const IdealHNF& q, const IdealHNF& x);

struct GeneratorPrime {
  PrimeIdeal prime;
  Element cls;
};

class RayClassGroup {
 public:
  RayClassGroup(const Field& K, const IdealHNF& q, i64 gen_bound);
  RayClassGroup(std::shared_ptr<const Field> K, const IdealHNF& q, i64 gen_bound);

  const Field& field() const { return *K_; }
  std::shared_ptr<const Field> field_ptr() const { return K_; }
  const IdealHNF& modulus() const { return q_; }
  const FinAbGroup& group() const { return pres_.group; }
  i64 order() const { return pres_.group.order(); }
  i64 gen_bound() const { return bound_; }
  i64 phi() const { return rs_->phi(); }
  i64 unit_image_order() const { return rs_->unit_image_order(); }
  const ResidueSignGroup& residue_sign_group() const { return *rs_; }
  /// All primes of norm <= gen_bound coprime to q, with classes.
  const std::vector<GeneratorPrime>& generator_primes() const { return gens_; }

  Element class_of(const IdealHNF& x) const;
  Element class_of_prime(const PrimeIdeal& P) const;
  /// Class of a product given by a factorization.
  Element class_of_factors(const std::vector<std::pair<PrimeIdeal, int>>& f) const;
  /// One exponent vector over basis_primes() for every group element.
  std::vector<std::pair<Element, std::vector<i64>>> element_words() const;
  /// Prime ideals whose classes generate the abstract presentation.
  const std::vector<PrimeIdeal>& basis_primes() const { return basis_primes_; }

 private:
  std::shared_ptr<const Field> K_;
  IdealHNF q_;
  i64 bound_;
  std::unique_ptr<ResidueSignGroup> rs_;
  std::map<forms::Form, int> class_index_;
  std::vector<IdealHNF> reps_;
  std::vector<std::vector<int>> class_mul_;
  std::vector<std::vector<Element>> kappa_;
  i64 qsize_ = 1;
  std::unique_ptr<group::GeneratedGroup> keys_;
  group::Presentation pres_;
  std::vector<PrimeIdeal> basis_primes_;
  std::vector<GeneratorPrime> gens_;
  mutable std::mutex cache_mutex_;
  mutable std::map<IdealHNF, Element> prime_cache_;

  void build();
  int class_of_key(const IdealHNF& x) const;
  i64 key(const IdealHNF& x) const;
  i64 key_mul(i64 x, i64 y) const;
};

/// Smallest divisor q' of q through which chi factors.
IdealHNF conductor_of_character(const RayClassGroup& rcg, const group::Character& chi);

/// All divisors of q sorted by norm.
std::vector<IdealHNF> ideal_divisors(const Field& K, const IdealHNF& q);

}  // namespace rcprod::ray
