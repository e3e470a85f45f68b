#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcprod/rayclass.hpp"

using namespace rcprod;
using quad::Field;
using quad::FieldSpec;
using quad::IdealHNF;
using ray::RayClassGroup;

namespace {

std::unique_ptr<RayClassGroup> build(const Field& K, const IdealHNF& q) {
  for (i64 B = 64;; B *= 2) {
    try {
      return std::make_unique<RayClassGroup>(K, q, B);
    } catch (const UnsaturatedError&) {
    }
  }
}

// Oracle partition of the ideals of norm <= 4 N(q) h_K must match the class map exactly.
void check_against_oracle(const Field& K, i64 m) {
  IdealHNF q = K.rational_ideal(m);
  auto rcg = build(K, q);
  oracle::PairwiseRayOracle o(K, m);
  i64 bound = 4 * K.norm(q) * K.invariants().h;
  auto ideals = K.ideals_up_to(bound, q);
  std::vector<IdealHNF> reps;
  auto idx = o.partition(ideals, &reps);
  CAPTURE(K.spec().to_string());
  CAPTURE(m);
  CHECK(static_cast<i64>(reps.size()) == rcg->order());
  std::map<int, group::Element> seen;
  std::set<group::Element> images;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    auto c = rcg->class_of(ideals[i]);
    auto [it, fresh] = seen.emplace(idx[i], c);
    if (fresh)
      images.insert(c);
    else
      REQUIRE(it->second == c);
  }
  CHECK(images.size() == reps.size());
}

}  // namespace

TEST_CASE("modulus phi") {
  Field gi(FieldSpec::quadratic(-1));
  CHECK(ray::modulus_phi(gi, gi.rational_ideal(3)) == 8);
  CHECK(ray::modulus_phi(gi, gi.unit_ideal()) == 1);
  CHECK(ray::modulus_phi(gi, gi.rational_ideal(6)) == 16);
  for (i64 d : {-1, -3, -5, 2, 3, 5})
    for (i64 m = 1; m <= 14; ++m) {
      Field K(FieldSpec::quadratic(d));
      IdealHNF q = K.rational_ideal(m);
      ray::ResidueRing R(K, q);
      i64 units = 0;
      for (i64 i = 0; i < R.size(); ++i)
        if (R.is_unit(i)) ++units;
      CHECK(R.size() == K.norm(q));
      CHECK(units == ray::modulus_phi(K, q));
      CHECK(units == oracle::phi_rational(K, m));
    }
}

TEST_CASE("ray class order vectors") {
  Field gi(FieldSpec::quadratic(-1));
  CHECK(ray::ray_class_order(gi, gi.rational_ideal(3)) == 2);
  CHECK(ray::ray_class_order(gi, gi.unit_ideal()) == 1);
  Field r3(FieldSpec::quadratic(3));
  CHECK(ray::ray_class_order(r3, r3.unit_ideal()) == 2);
  ray::ResidueSignGroup rs(gi, gi.rational_ideal(3));
  CHECK(rs.group().order() == 8);
  CHECK(rs.unit_image_order() == 4);
}

TEST_CASE("ray principality vectors") {
  Field gi(FieldSpec::quadratic(-1));
  IdealHNF q = gi.rational_ideal(3);
  CHECK(ray::is_ray_principal(gi, q, gi.rational_ideal(5)));
  CHECK_FALSE(ray::is_ray_principal(gi, q, gi.ideal_of({2, 1})));
  CHECK(ray::is_ray_principal(gi, q, gi.unit_ideal()));
}

TEST_CASE("ray class group vectors") {
  Field gi(FieldSpec::quadratic(-1));
  RayClassGroup H(gi, gi.rational_ideal(3), 10);
  CHECK(H.group().invariants() == std::vector<i64>{2});
  CHECK(H.class_of(gi.rational_ideal(5)) == H.group().identity());
  CHECK(H.class_of(gi.ideal_of({2, 1})) != H.group().identity());
  CHECK_THROWS_AS(H.class_of(gi.rational_ideal(3)), NotCoprimeError);

  for (i64 d : {-1, -2, -3, -7, -11}) {
    Field K(FieldSpec::quadratic(d));
    CHECK(RayClassGroup(K, K.unit_ideal(), 64).order() == 1);
  }
  Field m5(FieldSpec::quadratic(-5));
  RayClassGroup C(m5, m5.unit_ideal(), 64);
  CHECK(C.group().invariants() == std::vector<i64>{2});
  CHECK(C.class_of(m5.make_ideal(1, 2, 1)) != C.group().identity());
}

TEST_CASE("order equals pairwise equivalence classes") {
  for (i64 d : {-1, -3, -5, 2, 3})
    for (i64 m = 1; m <= 8; ++m) check_against_oracle(Field(FieldSpec::quadratic(d)), m);
}

TEST_CASE("oracle agrees with is_ray_principal") {
  for (i64 d : {-5, 3}) {
    Field K(FieldSpec::quadratic(d));
    for (i64 m : {4, 5, 7}) {
      IdealHNF q = K.rational_ideal(m);
      oracle::PairwiseRayOracle o(K, m);
      ray::ResidueSignGroup rs(K, q);
      for (auto& I : K.ideals_up_to(300, q)) CHECK(o.equivalent(I, K.unit_ideal()) == ray::is_ray_principal(rs, I));
    }
  }
}

TEST_CASE("class map is a homomorphism") {
  std::mt19937_64 rng(17);
  for (i64 d : {-1, -5, -23, 2, 3, 5})
    for (i64 m : {1, 4, 7, 12}) {
      Field K(FieldSpec::quadratic(d));
      IdealHNF q = K.rational_ideal(m);
      auto H = build(K, q);
      auto ideals = K.ideals_up_to(2000, q);
      for (int it = 0; it < 100; ++it) {
        const auto& a = ideals[rng() % ideals.size()];
        const auto& b = ideals[rng() % ideals.size()];
        CHECK(H->class_of(K.product(a, b)) == H->group().add(H->class_of(a), H->class_of(b)));
        CHECK(H->class_of_factors(K.factor(a)) == H->class_of(a));
      }
    }
}

TEST_CASE("eq:4 divisibility and the class number inequality") {
  for (i64 d : {-1, -2, -3, -5, -7, -11, 2, 3, 5})
    for (i64 m = 1; m <= 14; ++m) {
      Field K(FieldSpec::quadratic(d));
      IdealHNF q = K.rational_ideal(m);
      auto H = build(K, q);
      const auto& I = K.invariants();
      i64 hq = H->order(), h1 = I.h_narrow, phi = ray::modulus_phi(K, q);
      i64 top = (i64{1} << I.r1) * phi * h1;
      CAPTURE(d);
      CAPTURE(m);
      CHECK(hq % h1 == 0);
      CHECK(top % hq == 0);
      CHECK(hq <= (i64{1} << I.r1) * phi * I.h);
      CHECK(hq == ray::ray_class_order(K, q));
      CHECK(hq == I.h * phi * (i64{1} << I.r1) / H->unit_image_order());
      for (auto& gp : H->generator_primes()) CHECK(gp.cls == H->class_of_prime(gp.prime));
    }
}

TEST_CASE("characters and conductors") {
  Field gi(FieldSpec::quadratic(-1));
  RayClassGroup H(gi, gi.rational_ideal(3), 64);
  for (auto& chi : group::characters(H.group())) {
    if (group::is_trivial(chi))
      CHECK(ray::conductor_of_character(H, chi) == gi.unit_ideal());
    else
      CHECK(ray::conductor_of_character(H, chi) == gi.rational_ideal(3));
  }
  for (i64 d : {-5, 3, 5})
    for (i64 m : {1, 3, 4, 5, 8}) {
      Field K(FieldSpec::quadratic(d));
      auto R = build(K, K.rational_ideal(m));
      const auto& G = R->group();
      auto chars = group::characters(G);
      CHECK(static_cast<i64>(chars.size()) == G.order());
      i64 quadratic = 0;
      for (auto& chi : chars)
        if (group::character_order(G, chi) == 2) ++quadratic;
      i64 even = 0;
      for (i64 f : G.invariants())
        if (f % 2 == 0) ++even;
      CHECK(quadratic == (i64{1} << even) - 1);
      for (auto& chi : chars) {
        IdealHNF f = ray::conductor_of_character(*R, chi);
        CHECK(K.divides(f, K.rational_ideal(m)));
      }
    }
}

TEST_CASE("ideal divisors") {
  Field gi(FieldSpec::quadratic(-1));
  auto ds = ray::ideal_divisors(gi, gi.rational_ideal(10));
  // (10) = (1+i)^2 (2+i)(2-i): 3 * 2 * 2 divisors.
  CHECK(ds.size() == 12);
  for (std::size_t i = 1; i < ds.size(); ++i) CHECK(gi.norm(ds[i - 1]) <= gi.norm(ds[i]));
}
