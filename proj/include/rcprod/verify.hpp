#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rcprod/quadfield.hpp"
#include "rcprod/rayclass.hpp"

namespace rcprod::verify {

using json = nlohmann::json;

/// Verdicts: "holds", "vacuous-hypothesis", "violated", "insufficient-xmax".
struct ExperimentReport {
  std::string experiment;
  std::string field;
  std::string modulus;
  json params = json::object();
  json per_class = json::array();
  json extrema = json::object();
  std::optional<double> bound_log;
  std::string verdict = "holds";
  double runtime_ms = 0;

  json to_json(bool timing) const;
  std::string sort_key() const;
};

/// Ray class group with the generator bound doubled until the class map saturates.
std::unique_ptr<ray::RayClassGroup> build_rcg(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q,
                                              i64 start_bound = 64);

json element_json(const group::Element& x);
group::Element parse_element(const group::FinAbGroup& G, const std::string& text);

ExperimentReport run_three_primes(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q, i64 xmax);
ExperimentReport run_degree_one_ideal(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q, i64 xmax);
ExperimentReport run_kernel_prime(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q,
                                  i64 xmax = 10000000);
/// All classes when cls is empty.
ExperimentReport run_brun_titchmarsh(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q,
                                     const std::optional<group::Element>& cls, const std::vector<i64>& xs,
                                     i64 z = 5);
ExperimentReport run_ideal_count(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q,
                                 const std::optional<group::Element>& cls, const std::vector<i64>& xs);
ExperimentReport run_cover_argument(std::shared_ptr<const quad::Field> K, const quad::IdealHNF& q, i64 X,
                                    i64 search_max = 1000000);
ExperimentReport run_classical_primes(i64 powers_xmax, i64 reciprocal_xmax);

/// Proof case of the covering argument for stabilizer index y.
std::string cover_case(i64 y, double log_t, double log_Nq);

struct RandomCoverStats {
  int runs = 0;
  int eq8_runs = 0;
  int exceptions = 0;
};
/// Seeded sweep over fields, rational moduli and X.
RandomCoverStats random_cover_sweep(u64 seed, int runs, std::vector<ExperimentReport>* out = nullptr);

/// Fixed battery plus a seeded cover sweep, merged in sorted order.
std::vector<ExperimentReport> run_all(u64 seed, int threads);

/// For fault-injection tests: the next report built flips its verdict to "violated".
void inject_violation(bool on);
bool violation_injected();

}  // namespace rcprod::verify
