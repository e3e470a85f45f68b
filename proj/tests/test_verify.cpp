#include <cmath>
#include <random>

#include "doctest.h"
#include "rcprod/verify.hpp"

using namespace rcprod;
using namespace rcprod::verify;
using quad::Field;
using quad::FieldSpec;

namespace {

std::shared_ptr<const Field> field(i64 d) { return std::make_shared<const Field>(FieldSpec::quadratic(d)); }

const json& entry_for(const ExperimentReport& r, const json& cls) {
  for (auto& e : r.per_class)
    if (e["class"] == cls) return e;
  FAIL("class not found");
  static json none;
  return none;
}

}  // namespace

TEST_CASE("three primes on Q(i), q = (3)") {
  auto K = field(-1);
  auto r = run_three_primes(K, K->rational_ideal(3), 1000);
  CHECK(r.verdict == "holds");
  REQUIRE(r.per_class.size() == 2);
  auto rcg = build_rcg(K, K->rational_ideal(3));
  json id = element_json(rcg->group().identity());
  json nt = element_json(rcg->class_of(K->ideal_of({2, 1})));
  CHECK(entry_for(r, nt)["min_norm"] == 5);
  CHECK(entry_for(r, id)["min_norm"] == 13);
  CHECK(r.extrema["all_covered"] == true);
  CHECK(r.bound_log.has_value());
  for (auto& e : r.per_class) {
    // Each witness multiplies out to its class.
    group::Element acc = rcg->group().identity();
    for (auto& w : e["witness"]) {
      auto P = K->parse_ideal(w.get<std::string>());
      CHECK(K->norm(P) <= e["min_norm"].get<i64>());
      acc = rcg->group().add(acc, rcg->class_of(P));
    }
    CHECK(element_json(acc) == e["class"]);
  }
}

TEST_CASE("three-primes minima are invariant under conjugation") {
  for (i64 d : {-1, -2, -5, -7, -11})
    for (i64 m : {3, 5, 7, 8}) {
      auto K = field(d);
      auto q = K->rational_ideal(m);
      auto r = run_three_primes(K, q, 20000);
      auto rcg = build_rcg(K, q);
      CAPTURE(d);
      CAPTURE(m);
      for (auto& e : r.per_class) {
        if (e["witness"].is_null()) continue;
        group::Element sigma = rcg->group().identity();
        for (auto& w : e["witness"])
          sigma = rcg->group().add(sigma, rcg->class_of(K->conj(K->parse_ideal(w.get<std::string>()))));
        CHECK(entry_for(r, element_json(sigma))["min_norm"] == e["min_norm"]);
      }
    }
}

TEST_CASE("degree-one ideals on Q(i), q = (3)") {
  auto K = field(-1);
  auto r = run_degree_one_ideal(K, K->rational_ideal(3), 1000);
  CHECK(r.verdict == "holds");
  auto rcg = build_rcg(K, K->rational_ideal(3));
  CHECK(entry_for(r, element_json(rcg->group().identity()))["min_norm"] == 4);
  CHECK(entry_for(r, element_json(rcg->class_of(K->ideal_of({2, 1}))))["min_norm"] == 2);
}

TEST_CASE("kernel primes") {
  auto K = field(-1);
  auto r = run_kernel_prime(K, K->rational_ideal(3), 100000);
  REQUIRE(r.per_class.size() == 1);
  CHECK(r.per_class[0]["least_chi_plus_norm"] == 13);
  CHECK(r.per_class[0]["least_chi_minus_norm"] == 5);
  auto t = run_kernel_prime(K, K->unit_ideal(), 1000);
  CHECK(t.extrema["note"] == "no quadratic characters");
}

TEST_CASE("Brun-Titchmarsh experiment") {
  auto K = field(-1);
  auto q = K->rational_ideal(3);
  auto rcg = build_rcg(K, q);
  auto cls = rcg->class_of(K->ideal_of({2, 1}));
  auto r = run_brun_titchmarsh(K, q, cls, {100, 10000}, 5);
  CHECK(r.verdict == "vacuous-hypothesis");
  i64 brute = 0;
  for (auto& P : K->degree_one_primes(10000, q, true))
    if (rcg->class_of(P.hnf) == cls) ++brute;
  bool saw = false;
  for (auto& e : r.per_class) {
    CHECK(e["sieve_holds"] == true);
    CHECK(e["bt_tri_log_denominator"].get<double>() < 0);
    if (e["X"] == 10000) {
      CHECK(e["count"] == brute);
      saw = true;
    }
  }
  CHECK(saw);
  // The least degree-one prime of the identity class has norm 13.
  auto low = run_brun_titchmarsh(K, q, rcg->group().identity(), {5}, 5);
  REQUIRE(low.per_class.size() == 1);
  CHECK(low.per_class[0]["count"] == 0);
}

TEST_CASE("ideal counts") {
  for (i64 d : {-1, -3, -5, 2, 3})
    for (i64 m : {1, 4, 7}) {
      auto K = field(d);
      auto q = K->rational_ideal(m);
      auto r = run_ideal_count(K, q, std::nullopt, {0, 100, 1000, 10000});
      CHECK(r.verdict == "holds");
      auto rcg = build_rcg(K, q);
      std::map<group::Element, i64> count;
      for (auto& I : K->ideals_up_to(1000, q)) count[rcg->class_of(I)] += 1;
      for (auto& e : r.per_class) {
        CHECK(e["holds"] == true);
        if (e["X"] == 1000) CHECK(e["count"] == count[parse_element(rcg->group(), e["class"].dump())]);
        if (e["X"] == 0) CHECK(e["count"] == 0);
      }
    }
}

TEST_CASE("cover argument replay") {
  auto K = field(-1);
  auto q = K->rational_ideal(3);
  auto r = run_cover_argument(K, q, 14);
  CHECK(r.verdict == "holds");
  CHECK(r.extrema["covered"] == true);
  CHECK(r.extrema["minimal_covering_X"] == 14);
  auto small = run_cover_argument(K, q, 13);
  CHECK(small.extrema["covered"] == false);
  CHECK(small.extrema["minimal_covering_X"] == 14);
}

TEST_CASE("cover case analysis") {
  CHECK(cover_case(1, 10, 2) == "y=1");
  CHECK(cover_case(2, 10, 2) == "y=2");
  CHECK(cover_case(4, 10, 2) == "medium-y-not-2-mod-3");
  CHECK(cover_case(5, 10, 2) == "medium-y-2-mod-3");
  CHECK(cover_case(1000, 10, 2) == "large-y");
}

TEST_CASE("random cover sweep") {
  auto a = random_cover_sweep(1, 200);
  CHECK(a.runs == 200);
  CHECK(a.exceptions == 0);
  CHECK(a.eq8_runs > 0);
  std::vector<ExperimentReport> ra, rb;
  random_cover_sweep(42, 30, &ra);
  random_cover_sweep(42, 30, &rb);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].to_json(false) == rb[i].to_json(false));
}

TEST_CASE("classical primes report") {
  auto r = run_classical_primes(10000, 10000);
  CHECK(r.verdict == "holds");
  CHECK(r.extrema["count_at_100"] == 10);
}

TEST_CASE("report serialization") {
  auto K = field(-1);
  auto r = run_degree_one_ideal(K, K->rational_ideal(3), 100);
  json j = r.to_json(false);
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK(r.to_json(true).contains("runtime_ms"));
  for (auto key : {"experiment", "field", "modulus", "params", "per_class", "extrema", "bound_log", "verdict"})
    CHECK(j.contains(key));
  auto G = build_rcg(K, K->rational_ideal(3))->group();
  for (auto& x : G.elements()) CHECK(parse_element(G, element_json(x).dump()) == x);
  CHECK_THROWS(parse_element(G, "[1,2]"));
}

TEST_CASE("fault injection") {
  auto K = field(-1);
  inject_violation(true);
  auto r = run_degree_one_ideal(K, K->rational_ideal(3), 100);
  inject_violation(false);
  CHECK(r.verdict == "violated");
  CHECK(run_degree_one_ideal(K, K->rational_ideal(3), 100).verdict == "holds");
}

TEST_CASE("saturating builder") {
  auto K = field(-5);
  auto rcg = build_rcg(K, K->rational_ideal(7), 2);
  CHECK(rcg->order() == ray::ray_class_order(*K, K->rational_ideal(7)));
}
