#include "rcprod/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "rcprod/analytic.hpp"
#include "rcprod/report.hpp"
#include "rcprod/sieve.hpp"
#include "rcprod/verify.hpp"

namespace rcprod::cli {

using json = nlohmann::json;

namespace {

const char* const kVerifyKinds[] = {"three-primes", "degree-one-ideal", "kernel-prime", "brun-titchmarsh",
                                    "ideal-count",  "cover",            "classical-primes", "all"};

std::vector<i64> parse_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("invalid list entry '" + tok + "'");
    }
  }
  return out;
}

struct Builder {
  CLI::App app{"Ray class group and sieve verification toolkit", "rcprod"};
  CommandPlan plan;
  std::string xs_text;
  std::string cap_text;
  std::map<std::string, CLI::App*> subs;

  Builder() {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", plan.out, "Write the report to this file");
    app.add_option("--format", plan.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", plan.threads, "Worker threads (overrides RCPROD_THREADS)")->check(CLI::Range(1, 256));
    app.add_option("--seed", plan.seed, "Seed for randomized sweeps");
    app.add_flag("--timing", plan.timing, "Include runtime_ms in reports");
    app.add_option("--factor-cap", cap_text, "Factoring cap on ideal norms")->group("");
    app.add_flag("--inject-violation", plan.inject_violation, "Force a violated verdict")->group("");

    auto* fi = sub("field-info", "Invariants of a quadratic field");
    field(fi, true);

    auto* rc = sub("rayclass", "Structure of the narrow ray class group");
    field(rc, true);
    modulus(rc, true);
    rc->add_option("--gen-bound", plan.gen_bound, "Norm bound for generator primes")->check(CLI::PositiveNumber);

    auto* pr = sub("primes", "Degree-one primes with their ray classes");
    field(pr, true);
    modulus(pr, true);
    pr->add_option("--xmax", plan.xmax, "Norm bound")->required()->check(CLI::NonNegativeNumber);
    pr->add_flag("--include-ramified", plan.include_ramified, "Include ramified degree-one primes");

    auto* sc = sub("sieve-check", "Selberg sieve weights and identities");
    field(sc, true);
    modulus(sc, true);
    sc->add_option("--z", plan.z, "Sieve level")->required()->check(CLI::PositiveNumber);
    sc->add_option("--alpha", plan.alpha, "Exponent alpha in [0,1) as a rational");

    auto* an = sub("analytic-check", "Smoothing lemmas, Mellin checks and the constant ledger");
    an->add_option("--n", plan.n, "Degree parameter")->required()->check(CLI::Range(2, 8));
    field(an, false);
    modulus(an, false);

    auto* ve = sub("verify", "Theorem-level experiments");
    ve->add_option("kind", plan.kind, "Experiment")->required()->check(CLI::IsMember(
        std::vector<std::string>(std::begin(kVerifyKinds), std::end(kVerifyKinds))));
    field(ve, false);
    modulus(ve, false);
    ve->add_option("--xmax", plan.xmax, "Norm bound")->check(CLI::NonNegativeNumber);
    ve->add_option("--xs", xs_text, "Comma-separated list of X values");
    ve->add_option("--class", plan.cls, "Target class as comma-separated coordinates");
    ve->add_option("--z", plan.z, "Sieve level")->check(CLI::PositiveNumber);
    ve->add_option("--powers-xmax", plan.powers_xmax, "Bound for the prime-power check")->check(CLI::Range(4, 100000000));
    ve->add_option("--reciprocal-xmax", plan.reciprocal_xmax, "Bound for the reciprocal-sum check")
        ->check(CLI::Range(100, 100000000));
    ve->add_option("--runs", plan.runs, "Randomized sweep size")->check(CLI::Range(1, 100000));
  }

  CLI::App* sub(const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    subs[name] = s;
    return s;
  }
  void field(CLI::App* s, bool required) {
    auto* o = s->add_option("--field", plan.field, "Field spec: Q or Q(sqrt:<d>)");
    if (required) o->required();
  }
  void modulus(CLI::App* s, bool required) {
    auto* o = s->add_option("--modulus", plan.modulus, "Modulus: (<m>), hnf:<s>,<a>,<b> or above:<p>:<i>");
    if (required) o->required();
  }
};

void validate_specs(const CommandPlan& p) {
  if (p.field.empty()) return;
  quad::Field K(quad::FieldSpec::parse(p.field));
  K.parse_ideal(p.modulus);
}

std::shared_ptr<const quad::Field> field_of(const CommandPlan& p) {
  if (p.field.empty()) throw UsageError("--field is required for this command");
  return std::make_shared<const quad::Field>(quad::FieldSpec::parse(p.field));
}

json prime_entry(const quad::Field& K, const quad::PrimeIdeal& P) {
  return json{{"ideal", K.ideal_to_string(P.hnf)},
              {"p", P.p},
              {"kind", quad::to_string(P.kind)},
              {"norm", P.norm()},
              {"residue_degree", P.residue_degree}};
}

json field_info(const quad::Field& K) {
  const auto& I = K.invariants();
  json j;
  j["field"] = K.spec().to_string();
  j["disc"] = I.disc;
  j["n"] = I.n;
  j["r1"] = I.r1;
  j["r2"] = I.r2;
  j["h"] = I.h;
  j["h_narrow"] = I.h_narrow;
  j["fund_unit"] = I.fund_unit ? json(I.fund_unit->to_string()) : json(nullptr);
  j["fund_unit_norm"] = I.fund_unit ? json(I.fund_unit_norm) : json(nullptr);
  j["regulator"] = I.regulator;
  j["mu_order"] = I.mu_order;
  j["alpha"] = I.alpha;
  return j;
}

json rayclass_info(const CommandPlan& p) {
  auto K = field_of(p);
  auto q = K->parse_ideal(p.modulus);
  std::unique_ptr<ray::RayClassGroup> rcg =
      p.gen_bound ? std::make_unique<ray::RayClassGroup>(K, q, *p.gen_bound) : verify::build_rcg(K, q);
  json j;
  j["field"] = K->spec().to_string();
  j["modulus"] = K->ideal_to_string(q);
  j["order"] = rcg->order();
  j["invariants"] = rcg->group().invariants();
  j["expected_order"] = ray::ray_class_order(*K, q);
  j["phi"] = rcg->phi();
  j["unit_image_order"] = rcg->unit_image_order();
  j["gen_bound"] = rcg->gen_bound();
  j["h_narrow"] = K->invariants().h_narrow;
  json gens = json::array();
  for (const auto& P : rcg->basis_primes()) {
    json g = prime_entry(*K, P);
    g["class"] = verify::element_json(rcg->class_of_prime(P));
    gens.push_back(g);
  }
  j["basis_primes"] = gens;
  return j;
}

json primes_info(const CommandPlan& p) {
  auto K = field_of(p);
  auto q = K->parse_ideal(p.modulus);
  auto rcg = verify::build_rcg(K, q);
  json j;
  j["field"] = K->spec().to_string();
  j["modulus"] = K->ideal_to_string(q);
  j["xmax"] = p.xmax;
  j["include_ramified"] = p.include_ramified;
  json list = json::array();
  for (const auto& P : K->degree_one_primes(p.xmax, q, p.include_ramified)) {
    json e = prime_entry(*K, P);
    e["class"] = verify::element_json(rcg->class_of_prime(P));
    list.push_back(e);
  }
  j["count"] = list.size();
  j["primes"] = list;
  return j;
}

json sieve_info(const CommandPlan& p) {
  auto K = field_of(p);
  auto q = K->parse_ideal(p.modulus);
  mpq_class alpha;
  try {
    alpha = mpq_class(p.alpha);
    alpha.canonicalize();
  } catch (const std::exception&) {
    throw ValidationError("invalid alpha '" + p.alpha + "'");
  }
  if (alpha < 0 || alpha >= 1) throw ValidationError("alpha '" + p.alpha + "' is outside [0,1)");
  auto ctx = sieve::make_context(K, q, p.z);
  auto t = sieve::lambda_table(ctx);
  auto rec = sieve::verify_reciprocal_identity(ctx, t);
  auto gl = sieve::g_lower_bound_checks(ctx, t);
  auto nb = sieve::lambda_norm_bounds(ctx, t, alpha);
  json j;
  j["field"] = K->spec().to_string();
  j["modulus"] = K->ideal_to_string(q);
  j["z"] = p.z;
  j["G"] = t.G.get_str();
  json lam = json::array();
  for (std::size_t i = 0; i < ctx.support.size(); ++i)
    lam.push_back({{"ideal", K->ideal_to_string(ctx.support[i].ideal)},
                   {"norm", ctx.support[i].norm},
                   {"lambda", t.lambda[i].get_str()}});
  j["lambda"] = lam;
  j["lambda_unit_is_one"] = t.unit_is_one;
  j["lambda_bounded"] = t.bounded;
  j["reciprocal"] = {{"lhs", rec.lhs.get_str()}, {"rhs", rec.rhs.get_str()}, {"holds", rec.holds}};
  j["halberstam_schaal"] = {{"G", gl.G.get_str()}, {"rhs", gl.hs_rhs.get_str()}, {"holds", gl.hs_holds}};
  j["gzbound"] = {{"log_threshold", gl.log_threshold},
                  {"log_z", gl.log_z},
                  {"rhs", gl.gz_rhs},
                  {"status", gl.gz_status}};
  json norm;
  norm["alpha"] = alpha.get_str();
  norm["lhs"] = nb.lhs;
  if (nb.lhs_exact) norm["lhs_exact"] = nb.lhs_exact->get_str();
  norm["c1"] = {{"lower", nb.c1.lower()}, {"upper", nb.c1.upper()}};
  norm["c2"] = {{"lower", nb.c2.lower()}, {"upper", nb.c2.upper()}};
  norm["thm_rhs"] = nb.thm_rhs;
  norm["thm_holds"] = nb.thm_holds;
  norm["cor0_rhs"] = nb.cor0_rhs ? json(*nb.cor0_rhs) : json(nullptr);
  norm["cor1_rhs"] = nb.cor1_rhs ? json(*nb.cor1_rhs) : json(nullptr);
  norm["cor_holds"] = nb.cor_holds;
  j["norm_bounds"] = norm;
  const bool ok = t.unit_is_one && t.bounded && rec.holds && gl.hs_holds && gl.gz_status != "violated" &&
                  nb.thm_holds && nb.cor_holds;
  j["verdict"] = ok && !verify::violation_injected() ? "holds" : "violated";
  return j;
}

json enclosure(const poly::Enclosure& e) {
  return json{{"lower", e.lower.get_str()}, {"upper", e.upper.get_str()}, {"exact", e.exact()}};
}

json analytic_info(const CommandPlan& p) {
  auto c = analytic::verify_smoothing_claims(p.n);
  json j;
  j["n"] = p.n;
  j["endpoints_flat"] = c.endpoints_ok;
  j["sup_w0"] = enclosure(c.sup);
  j["sup_is_one"] = c.sup_is_one;
  j["w0_check_1"] = c.w1_exact.get_str();
  j["w0_check_1_value"] = c.w1_exact.get_d();
  j["w0_check_1_quadrature"] = c.w1_quadrature;
  j["scaled"] = c.scaled;
  j["scaled_in_range"] = c.scaled_in_range;
  j["l1_derivative"] = enclosure(c.l1_derivative);
  j["l1_is_two"] = c.l1_is_two;
  j["sup_high_derivative"] = {{"lower", c.sup_high.lower.get_d()}, {"upper", c.sup_high.upper.get_d()}};
  j["high_bound"] = c.high_bound;
  j["high_ok"] = c.high_ok;
  json decay = json::array();
  for (const auto& d : c.decay)
    decay.push_back({{"re", d.s.real()}, {"im", d.s.imag()}, {"value", d.value}, {"bound", d.bound}, {"ok", d.ok}});
  j["decay"] = decay;
  json integ = json::array();
  for (const auto& i : c.integrals)
    integ.push_back({{"name", i.name},
                     {"eps", i.eps},
                     {"r", i.r},
                     {"value", i.value},
                     {"error", i.error},
                     {"tail", i.tail},
                     {"bound", i.bound},
                     {"ok", i.ok}});
  j["integrals"] = integ;
  json m1 = json::array();
  bool m1_ok = true;
  for (int k = 1; k <= 6; ++k)
    for (double y : {0.5, 1.0, 2.0}) {
      auto m = analytic::mellin1_check(y, k, k == 1 ? 100000.0 : 1000.0);
      m1_ok = m1_ok && m.ok;
      m1.push_back({{"y", y},
                    {"k", k},
                    {"exact", m.exact},
                    {"numeric", m.numeric},
                    {"truncation", m.truncation},
                    {"T", m.T},
                    {"ok", m.ok}});
    }
  j["mellin1"] = m1;
  bool ok = c.all_ok() && m1_ok;
  if (!p.field.empty()) {
    auto K = field_of(p);
    auto q = K->parse_ideal(p.modulus);
    auto L = analytic::constant_ledger(*K, q);
    json led;
    for (const auto& e : L.entries) led[e.key] = {{"log_value", e.log_value}, {"note", e.note}};
    j["ledger"] = {{"field", L.field},
                   {"modulus", L.modulus},
                   {"constants", led},
                   {"simplifytK_holds", L.simplifytK_holds},
                   {"rootdisc_holds", L.rootdisc_holds},
                   {"alpha_sandwich_holds", L.alpha_sandwich_holds},
                   {"class_number_bound_holds", L.class_number_bound_holds}};
    ok = ok && L.simplifytK_holds && L.rootdisc_holds && L.alpha_sandwich_holds && L.class_number_bound_holds;
  }
  j["verdict"] = ok && !verify::violation_injected() ? "holds" : "violated";
  return j;
}

json verify_info(const CommandPlan& p) {
  if (p.kind == "all") {
    json arr = json::array();
    for (const auto& r : verify::run_all(p.seed, p.threads)) arr.push_back(r.to_json(p.timing));
    return arr;
  }
  if (p.kind == "classical-primes")
    return verify::run_classical_primes(p.powers_xmax, p.reciprocal_xmax).to_json(p.timing);
  auto K = field_of(p);
  auto q = K->parse_ideal(p.modulus);
  std::vector<i64> xs = p.xs.empty() ? std::vector<i64>{p.xmax} : p.xs;
  std::optional<group::Element> cls;
  if (p.cls) {
    auto rcg = verify::build_rcg(K, q);
    cls = verify::parse_element(rcg->group(), *p.cls);
  }
  verify::ExperimentReport r;
  if (p.kind == "three-primes")
    r = verify::run_three_primes(K, q, p.xmax);
  else if (p.kind == "degree-one-ideal")
    r = verify::run_degree_one_ideal(K, q, p.xmax);
  else if (p.kind == "kernel-prime")
    r = verify::run_kernel_prime(K, q);
  else if (p.kind == "brun-titchmarsh")
    r = verify::run_brun_titchmarsh(K, q, cls, xs, p.z);
  else if (p.kind == "ideal-count")
    r = verify::run_ideal_count(K, q, cls, xs);
  else if (p.kind == "cover")
    r = verify::run_cover_argument(K, q, p.xmax);
  r.params["seed"] = p.seed;
  return r.to_json(p.timing);
}

bool any_violation(const json& j) {
  if (j.is_object()) {
    auto it = j.find("verdict");
    if (it != j.end() && it->is_string() && it->get<std::string>() == "violated") return true;
    for (const auto& v : j) if (any_violation(v)) return true;
  } else if (j.is_array()) {
    for (const auto& v : j) if (any_violation(v)) return true;
  }
  return false;
}

void emit_error(std::ostream& err, const std::string& type, const std::string& msg, const json& extra = {}) {
  json e{{"error", type}, {"message", msg}};
  if (extra.is_object())
    for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
  err << report::format_json(e);
}

}  // namespace

std::string usage() {
  Builder b;
  return b.app.help();
}

CommandPlan parse_args(const std::vector<std::string>& args) {
  Builder b;
  if (const char* env = std::getenv("RCPROD_THREADS")) {
    try {
      b.plan.threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid RCPROD_THREADS '") + env + "'");
    }
  }
  if (args.empty()) throw UsageError("no command given");
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    b.app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    b.plan.help = true;
    b.plan.help_text = b.app.help();
    return b.plan;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto& [name, s] : b.subs)
    if (s->parsed()) b.plan.command = name;
  if (!b.xs_text.empty()) b.plan.xs = parse_list(b.xs_text);
  if (!b.cap_text.empty()) {
    try {
      std::size_t pos = 0;
      b.plan.factor_cap = std::stoull(b.cap_text, &pos);
      if (pos != b.cap_text.size()) throw std::invalid_argument(b.cap_text);
    } catch (const std::exception&) {
      throw ValidationError("invalid factor cap '" + b.cap_text + "'");
    }
  }
  if (b.plan.command == "verify" && b.plan.kind != "all" && b.plan.kind != "classical-primes" && b.plan.field.empty())
    throw UsageError("verify " + b.plan.kind + " needs --field");
  validate_specs(b.plan);
  return b.plan;
}

int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
  if (plan.help) {
    out << plan.help_text;
    return kOk;
  }
  const u64 saved_cap = factor_cap();
  if (plan.factor_cap) set_factor_cap(*plan.factor_cap);
  verify::inject_violation(plan.inject_violation);
  struct Restore {
    u64 cap;
    ~Restore() {
      set_factor_cap(cap);
      verify::inject_violation(false);
    }
  } restore{saved_cap};

  json doc;
  if (plan.command == "field-info")
    doc = field_info(*field_of(plan));
  else if (plan.command == "rayclass")
    doc = rayclass_info(plan);
  else if (plan.command == "primes")
    doc = primes_info(plan);
  else if (plan.command == "sieve-check")
    doc = sieve_info(plan);
  else if (plan.command == "analytic-check")
    doc = analytic_info(plan);
  else if (plan.command == "verify")
    doc = verify_info(plan);
  else
    throw UsageError("unknown command '" + plan.command + "'");

  const std::string text = report::format(doc, plan.format);
  if (plan.out) {
    std::ofstream f(*plan.out, std::ios::binary);
    if (!f) {
      emit_error(err, "io", "cannot open '" + *plan.out + "'");
      return kUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return any_violation(doc) ? kViolated : kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    CommandPlan plan = parse_args(args);
    return execute(plan, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << usage();
    return kUsage;
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.what());
    return kUsage;
  } catch (const FactoringCapError& e) {
    emit_error(err, "factoring-cap", e.what(), json{{"value", e.value}, {"cap", e.cap}});
    return kUndecided;
  } catch (const UndecidedError& e) {
    emit_error(err, "undecided", e.what());
    return kUndecided;
  } catch (const UnsaturatedError& e) {
    emit_error(err, "unsaturated", e.what(), json{{"achieved", e.achieved}, {"expected", e.expected}});
    return kUndecided;
  } catch (const NotCoprimeError& e) {
    emit_error(err, "validation", e.what());
    return kUsage;
  } catch (const OverflowError& e) {
    emit_error(err, "overflow", e.what());
    return kUndecided;
  }
}

}  // namespace rcprod::cli
