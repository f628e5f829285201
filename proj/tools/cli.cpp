#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <zerofn/lift.hpp>
#include <zerofn/null_ideal.hpp>
#include <zerofn/oracle.hpp>

namespace zerofn::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Args {
  std::string ring_spec;
  std::string format = "text";
  std::string target = "ring";
  std::string poly;
  std::string reps;
  std::string method = "auto";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint32_t bound = 0;
  std::uint64_t cap_candidates = 10000000;
  std::uint64_t cap_pi = 100000;
  std::uint64_t cap_lifts = 1000;
  std::uint32_t ring_cap = 4096;
  std::uint64_t sample = 0;
  bool slice_gens = false;
};

const char* kind_name(RingKind kind) {
  switch (kind) {
    case RingKind::ModPrimePower: return "modular";
    case RingKind::Chain: return "chain";
    case RingKind::Table: return "table";
  }
  return "?";
}

Ring make_ring(const Args& a) {
  RingOptions opt;
  opt.order_cap = a.ring_cap;
  return parse_ring_spec(a.ring_spec, opt);
}

OracleCaps make_caps(const Args& a) {
  return OracleCaps{a.cap_candidates, a.cap_pi, a.cap_lifts};
}

std::vector<Elem> parse_reps(const Ring& ring, const std::string& csv) {
  std::vector<Elem> reps;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      while (used < tok.size() && std::isspace((unsigned char)tok[used]))
        ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
      reps.push_back(ring.element_from_integer(v));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError,
           "--reps expects comma-separated integers, got \"" + tok + "\"");
    }
  }
  if (reps.empty())
    fail(ErrorCode::ParseError, "--reps must list at least one element");
  return reps;
}

Polynomial choose_pi(const Ring& ring, const std::string& reps_csv) {
  if (reps_csv.empty()) return pi_polynomial(ring);
  std::vector<Elem> reps = parse_reps(ring, reps_csv);
  return pi_polynomial(ring, reps);
}

std::string element_text(const Ring& ring, Elem a) {
  std::string label = ring.element_label(a);
  std::optional<std::string> detail = ring.element_detail(a);
  return detail && *detail != label ? label + " (" + *detail + ")" : label;
}

std::string element_list_text(const Ring& ring, std::span<const Elem> xs) {
  std::string out;
  for (Elem a : xs) {
    if (!out.empty()) out += ", ";
    out += element_text(ring, a);
  }
  return out.empty() ? "(none)" : out;
}

ordered_json ring_json(const Ring& ring) {
  ordered_json j;
  j["label"] = ring.label();
  j["kind"] = kind_name(ring.kind());
  j["order"] = ring.order();
  j["residue_order"] = ring.residue_order();
  j["nilpotency_index"] = ring.nilpotency_index();
  j["field"] = ring.is_field();
  return j;
}

const char* form_name(StructuredIdeal::Form form) {
  switch (form) {
    case StructuredIdeal::Form::PowerForm: return "power";
    case StructuredIdeal::Form::PowerPlusForm: return "power-plus";
    case StructuredIdeal::Form::GeneratorList: return "generator-list";
  }
  return "?";
}

ordered_json ideal_json(const StructuredIdeal& ideal) {
  ordered_json j;
  j["form"] = form_name(ideal.form);
  j["description"] = ideal.describe();
  if (ideal.form != StructuredIdeal::Form::GeneratorList) {
    j["base"] = ideal.base.to_string();
    j["m_generator"] = ideal.m_gen;
    j["power"] = ideal.power;
  }
  ordered_json gens = ordered_json::array();
  for (const Polynomial& g : ideal.expanded_generators())
    gens.push_back(g.to_string());
  j["generators"] = gens;
  return j;
}

void print_ideal_text(std::ostream& out, const StructuredIdeal& ideal) {
  out << "form: " << ideal.describe() << "\n";
  out << "expanded generators:\n";
  for (const Polynomial& g : ideal.expanded_generators())
    out << "  " << g.to_string() << "\n";
}

void emit(std::ostream& out, const Args& a, const ordered_json& doc,
          const std::string& text) {
  if (a.format == "json")
    out << doc.dump(2) << "\n";
  else
    out << text;
}

int cmd_ring_info(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  ordered_json doc;
  doc["command"] = "ring-info";
  doc["ring"] = ring_json(ring);
  ordered_json res;
  res["residue_field"] = ring.residue_field().label();
  ordered_json m = ordered_json::array();
  for (Elem x : ring.maximal_ideal()) m.push_back(x);
  res["maximal_ideal"] = m;
  ordered_json reps = ordered_json::array();
  for (Elem x : ring.coset_reps()) reps.push_back(x);
  res["coset_representatives"] = reps;
  ordered_json gens = ordered_json::array();
  for (Elem x : ring.m_minimal_generators()) gens.push_back(x);
  res["minimal_generators"] = gens;
  if (auto g = ring.principal_m_generator())
    res["principal_generator"] = *g;
  else
    res["principal_generator"] = nullptr;
  res["annihilator_witness"] = ring.m_annihilator_witness();
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "kind: " << kind_name(ring.kind()) << "\n";
  text << "order: " << ring.order() << "\n";
  text << "residue field: " << ring.residue_field().label()
       << " (q = " << ring.residue_order() << ")\n";
  text << "nilpotency index e: " << ring.nilpotency_index() << "\n";
  text << "maximal ideal: " << element_list_text(ring, ring.maximal_ideal())
       << "\n";
  text << "coset representatives: "
       << element_list_text(ring, ring.coset_reps()) << "\n";
  text << "minimal generators of m: "
       << element_list_text(ring, ring.m_minimal_generators()) << "\n";
  if (auto g = ring.principal_m_generator())
    text << "principal generator of m: " << element_text(ring, *g) << "\n";
  else
    text << "principal generator of m: none (not principal)\n";
  text << "annihilator witness: "
       << element_text(ring, ring.m_annihilator_witness()) << "\n";
  emit(out, a, doc, text.str());
  return 0;
}

Target target_from_flag(const Ring& ring, const std::string& name) {
  (void)ring;
  return name == "maximal" ? Target::maximal_ideal() : Target::whole_ring();
}

int cmd_null_gens(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  Target target = target_from_flag(ring, a.target);
  StructuredIdeal ideal =
      target.kind == Target::Kind::MaximalIdeal
          ? null_maximal_generators(ring)
          : null_ring_generators(ring,
                                 a.reps.empty()
                                     ? std::optional<Polynomial>()
                                     : choose_pi(ring, a.reps));

  OracleCaps caps = make_caps(a);
  std::uint32_t requested =
      a.bound ? a.bound
              : ring.nilpotency_index() * ring.residue_order() + 1;
  std::uint32_t D = std::max<std::uint32_t>(
      1, feasible_degree_bound(ring, requested, caps.slice_candidates));
  SliceReport sliced =
      slice_compare(ring, target, ideal, D, std::nullopt, caps, a.jobs);
  bool verified = sliced.certified && !sliced.approximate;
  std::string status = verified        ? "verified"
                       : sliced.certified ? "approximate"
                                          : "failed";

  std::optional<BigCount> fn_count;
  if (target.kind == Target::Kind::WholeRing) {
    try {
      fn_count = count_polynomial_functions(ring, {CountMethod::NormalForm});
    } catch (const Error&) {
    }
  }

  ordered_json doc;
  doc["command"] = "null-gens";
  doc["ring"] = ring_json(ring);
  ordered_json cfg;
  cfg["target"] = a.target;
  cfg["degree_bound"] = D;
  cfg["jobs"] = a.jobs;
  doc["config"] = cfg;
  ordered_json res;
  res["ideal"] = ideal_json(ideal);
  ordered_json ver;
  ver["degree_bound"] = D;
  ver["candidates"] = sliced.candidates;
  ver["members"] = sliced.member_count;
  ver["mismatches"] = sliced.mismatch_count;
  ver["certified"] = sliced.certified;
  ver["approximate"] = sliced.approximate;
  res["verification"] = ver;
  res["status"] = status;
  if (fn_count) res["function_count"] = count_to_string(*fn_count);
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "target: " << target.describe(ring) << "\n";
  print_ideal_text(text, ideal);
  text << "verification: degree < " << D << ", " << sliced.candidates
       << " candidates, " << sliced.member_count << " members, "
       << sliced.mismatch_count << " mismatches\n";
  text << "status: " << status << "\n";
  if (fn_count)
    text << "function count: " << count_to_string(*fn_count) << "\n";
  emit(out, a, doc, text.str());
  return verified || sliced.certified ? 0 : 1;
}

int cmd_membership(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  Polynomial f = parse_polynomial(ring, a.poly);
  StructuredIdeal ideal =
      a.target == "maximal"
          ? null_maximal_generators(ring)
          : null_ring_generators(ring,
                                 a.reps.empty()
                                     ? std::optional<Polynomial>()
                                     : choose_pi(ring, a.reps));
  MembershipReport rep = ideal_membership(f, ideal);

  ordered_json doc;
  doc["command"] = "membership";
  doc["ring"] = ring_json(ring);
  ordered_json cfg;
  cfg["target"] = a.target;
  doc["config"] = cfg;
  ordered_json res;
  res["poly"] = f.to_string();
  res["ideal"] = ideal.describe();
  res["member"] = rep.member;
  ordered_json exp = ordered_json::array();
  for (const Polynomial& layer : rep.expansion)
    exp.push_back(layer.to_string());
  res["expansion"] = exp;
  if (rep.violation) {
    ordered_json v;
    v["component"] = rep.violation->component;
    v["coefficient_index"] = rep.violation->coeff_index;
    v["valuation"] = rep.violation->valuation;
    v["required"] = rep.violation->required;
    res["violation"] = v;
  }
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "ideal: " << ideal.describe() << "\n";
  text << "poly: " << f.to_string() << "\n";
  text << "member: " << (rep.member ? "yes" : "no") << "\n";
  text << "expansion in powers of the base:\n";
  for (std::size_t k = 0; k < rep.expansion.size(); ++k)
    text << "  a_" << k << ": " << rep.expansion[k].to_string() << "\n";
  if (rep.violation)
    text << "violation: component " << rep.violation->component
         << ", coefficient " << rep.violation->coeff_index << ", valuation "
         << rep.violation->valuation << ", required "
         << rep.violation->required << "\n";
  emit(out, a, doc, text.str());
  return 0;
}

int cmd_factor(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  Polynomial f = a.poly.empty() ? choose_pi(ring, a.reps)
                                : parse_polynomial(ring, a.poly);
  FactorResult fr = factor_pi_polynomial(f);

  ordered_json doc;
  doc["command"] = "factor";
  doc["ring"] = ring_json(ring);
  ordered_json res;
  res["poly"] = f.to_string();
  ordered_json roots = ordered_json::array();
  for (Elem d : fr.roots) roots.push_back(d);
  res["roots"] = roots;
  ordered_json traces = ordered_json::array();
  for (const TeichmullerTrace& t : fr.traces) {
    ordered_json tj;
    tj["start"] = t.start;
    ordered_json its = ordered_json::array();
    for (Elem x : t.iterates) its.push_back(x);
    tj["iterates"] = its;
    ordered_json dv = ordered_json::array();
    for (std::uint32_t v : t.diff_valuations) dv.push_back(v);
    tj["difference_valuations"] = dv;
    tj["stabilized_at"] = t.stabilized_at;
    tj["root"] = t.root;
    traces.push_back(tj);
  }
  res["traces"] = traces;
  res["product"] = fr.product.to_string();
  res["product_matches"] = true;
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "poly: " << f.to_string() << "\n";
  for (const TeichmullerTrace& t : fr.traces) {
    text << "trace from " << ring.element_label(t.start) << ":";
    for (Elem x : t.iterates) text << " " << ring.element_label(x);
    text << "  (difference valuations:";
    for (std::uint32_t v : t.diff_valuations) text << " " << v;
    text << "; stabilized at step " << t.stabilized_at << ")\n";
  }
  text << "roots:";
  for (Elem d : fr.roots) text << " " << ring.element_label(d);
  text << "\n";
  text << "product: " << fr.product.to_string() << "\n";
  text << "product matches: yes\n";
  emit(out, a, doc, text.str());
  return 0;
}

int cmd_decompose(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  OracleCaps caps = make_caps(a);

  if (!a.poly.empty()) {
    Polynomial f = parse_polynomial(ring, a.poly);
    CompositionDecomposition cd = decompose_zero_function(
        f, a.reps.empty() ? std::optional<Polynomial>()
                          : choose_pi(ring, a.reps));
    ordered_json doc;
    doc["command"] = "decompose";
    doc["ring"] = ring_json(ring);
    ordered_json res;
    res["mode"] = "composition";
    res["poly"] = f.to_string();
    res["pi"] = cd.pi.to_string();
    ordered_json parts = ordered_json::array();
    for (const Polynomial& p : cd.parts) parts.push_back(p.to_string());
    res["parts"] = parts;
    res["reconstructed"] = true;
    doc["result"] = res;

    std::ostringstream text;
    text << "ring: " << ring.label() << "\n";
    text << "poly: " << f.to_string() << "\n";
    text << "pi: " << cd.pi.to_string() << "\n";
    text << "parts (f = sum of x^i * p_i(pi(x)), each p_i vanishes on m):\n";
    for (std::size_t i = 0; i < cd.parts.size(); ++i)
      text << "  p_" << i << ": " << cd.parts[i].to_string() << "\n";
    text << "reconstructed: yes\n";
    emit(out, a, doc, text.str());
    return 0;
  }

  std::optional<std::vector<Polynomial>> supplied;
  if (a.slice_gens) {
    std::uint32_t requested =
        a.bound ? a.bound
                : ring.nilpotency_index() * ring.residue_order() + 1;
    std::uint32_t D = std::max<std::uint32_t>(
        1, feasible_degree_bound(ring, requested, caps.slice_candidates));
    Slice slice = exhaustive_null_slice(ring, Target::maximal_ideal(),
                                        std::nullopt, D, caps, a.jobs);
    supplied = slice_to_generators(ring, slice);
  }
  PrimaryDecomposition pd = primary_decomposition(ring, supplied);

  ordered_json doc;
  doc["command"] = "decompose";
  doc["ring"] = ring_json(ring);
  ordered_json res;
  res["mode"] = "primary";
  ordered_json comps = ordered_json::array();
  for (const PrimaryComponent& c : pd.components) {
    ordered_json cj;
    cj["center"] = c.center;
    ordered_json gens = ordered_json::array();
    for (const Polynomial& g : c.generators) gens.push_back(g.to_string());
    cj["generators"] = gens;
    ordered_json prime = ordered_json::array();
    prime.push_back(c.prime_linear.to_string());
    for (Elem g : c.prime_m_gens)
      prime.push_back(Polynomial::constant(c.prime_linear.ring(), g)
                          .to_string());
    cj["associated_prime"] = prime;
    cj["minimality_witness"] = c.minimality_witness.to_string();
    cj["witness_value_at_center"] = c.witness_value_at_center;
    comps.push_back(cj);
  }
  res["components"] = comps;
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "primary decomposition: " << pd.components.size()
       << " components\n";
  for (const PrimaryComponent& c : pd.components) {
    text << "component at " << ring.element_label(c.center) << ":\n";
    text << "  generators:";
    for (const Polynomial& g : c.generators)
      text << "  " << g.to_string() << ";";
    text << "\n";
    text << "  associated prime: (" << c.prime_linear.to_string();
    for (Elem g : c.prime_m_gens) text << ", " << ring.element_label(g);
    text << ")\n";
    text << "  minimality witness: " << c.minimality_witness.to_string()
         << "  (value at center: "
         << ring.element_label(c.witness_value_at_center) << ")\n";
  }
  emit(out, a, doc, text.str());
  return 0;
}

int cmd_intersect_check(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  Polynomial f = parse_polynomial(ring, a.poly);
  IntersectionMode mode;
  mode.cap = a.cap_pi;
  if (a.sample > 0) {
    mode.exhaustive = false;
    mode.samples = a.sample;
    mode.seed = a.seed;
  }
  IntersectionReport rep = pi_intersection_check(f, mode);

  ordered_json doc;
  doc["command"] = "intersect-check";
  doc["ring"] = ring_json(ring);
  ordered_json cfg;
  cfg["mode"] = rep.exhaustive ? "exhaustive" : "sample";
  if (!rep.exhaustive) {
    cfg["samples"] = a.sample;
    cfg["seed"] = a.seed;
  }
  doc["config"] = cfg;
  ordered_json res;
  res["poly"] = f.to_string();
  res["pi_polynomials_checked"] = rep.checked;
  res["pi_polynomials_total"] = rep.total;
  res["divisible_by_all"] = rep.divisible_by_all;
  if (!rep.divisible_by_all) {
    ordered_json reps = ordered_json::array();
    for (Elem r : *rep.failing_reps) reps.push_back(r);
    res["failing_representatives"] = reps;
    res["failing_pi"] = rep.failing_pi->to_string();
    res["failing_remainder"] = rep.failing_remainder->to_string();
  }
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "poly: " << f.to_string() << "\n";
  text << "mode: " << (rep.exhaustive ? "exhaustive" : "sample") << " ("
       << rep.checked << " of " << rep.total << " pi-polynomials)\n";
  text << "divisible by all: " << (rep.divisible_by_all ? "yes" : "no")
       << "\n";
  if (!rep.divisible_by_all) {
    text << "failing representatives: "
         << element_list_text(ring, *rep.failing_reps) << "\n";
    text << "failing pi: " << rep.failing_pi->to_string() << "\n";
    text << "failing remainder: " << rep.failing_remainder->to_string()
         << "\n";
  }
  emit(out, a, doc, text.str());
  return 0;
}

int cmd_count(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  std::optional<BigCount> normal, exhaustive;
  std::string method_used;
  CountOptions ex_opt{CountMethod::Exhaustive, a.bound, a.cap_candidates};

  if (a.method == "normal-form" || a.method == "both") {
    normal = count_polynomial_functions(ring, {CountMethod::NormalForm});
    method_used = "normal-form";
  }
  if (a.method == "exhaustive" || a.method == "both") {
    exhaustive = count_polynomial_functions(ring, ex_opt);
    method_used = a.method == "both" ? "both" : "exhaustive";
  }
  if (a.method == "auto") {
    try {
      normal = count_polynomial_functions(ring, {CountMethod::NormalForm});
      method_used = "normal-form";
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::NonPrincipalMaximalIdeal &&
          ex.code() != ErrorCode::OutOfTheoremRange)
        throw;
      exhaustive = count_polynomial_functions(ring, ex_opt);
      method_used = "exhaustive";
    }
  }
  bool agree = !(normal && exhaustive) || *normal == *exhaustive;

  ordered_json doc;
  doc["command"] = "count";
  doc["ring"] = ring_json(ring);
  ordered_json cfg;
  cfg["method"] = a.method;
  doc["config"] = cfg;
  ordered_json res;
  res["method_used"] = method_used;
  if (normal) res["normal_form"] = count_to_string(*normal);
  if (exhaustive) res["exhaustive"] = count_to_string(*exhaustive);
  if (normal && exhaustive) res["agreement"] = agree;
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  if (normal)
    text << "normal form count: " << count_to_string(*normal) << "\n";
  if (exhaustive)
    text << "exhaustive count: " << count_to_string(*exhaustive) << "\n";
  if (normal && exhaustive)
    text << "agreement: " << (agree ? "yes" : "NO") << "\n";
  emit(out, a, doc, text.str());
  return agree ? 0 : 1;
}

int cmd_classify(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  ClassificationReport rep = classify_ring_nullideal(ring);

  ordered_json doc;
  doc["command"] = "classify";
  doc["ring"] = ring_json(ring);
  ordered_json res;
  res["field"] = rep.is_field;
  ordered_json zm;
  zm["nonzero"] = rep.zfm_nonzero;
  zm["nonzero_witness"] = rep.zfm_nonzero_witness.to_string();
  zm["has_regular"] = rep.zfm_has_regular;
  zm["regular_witness"] = rep.zfm_regular_witness.to_string();
  zm["principal"] = rep.zfm_principal;
  if (rep.zfm_principal_generator)
    zm["principal_generator"] = rep.zfm_principal_generator->to_string();
  res["null_ideal_of_maximal"] = zm;
  ordered_json zr;
  zr["nonzero"] = rep.zfR_nonzero;
  zr["nonzero_witness"] = rep.zfR_nonzero_witness.to_string();
  zr["has_regular"] = rep.zfR_has_regular;
  zr["regular_witness"] = rep.zfR_regular_witness.to_string();
  zr["principal"] = rep.zfR_principal;
  if (rep.zfR_principal_generator)
    zr["principal_generator"] = rep.zfR_principal_generator->to_string();
  res["null_ideal_of_ring"] = zr;
  res["annihilator"] = rep.annihilator;
  if (rep.principal_failure_point) {
    ordered_json w;
    w["point"] = *rep.principal_failure_point;
    w["pi_value"] = *rep.principal_failure_value;
    res["principality_failure"] = w;
  }
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "field: " << (rep.is_field ? "yes" : "no") << "\n";
  text << "null ideal of the maximal ideal:\n";
  text << "  nonzero: " << (rep.zfm_nonzero ? "yes" : "no") << "  (witness "
       << rep.zfm_nonzero_witness.to_string() << ")\n";
  text << "  contains a regular polynomial: "
       << (rep.zfm_has_regular ? "yes" : "no") << "  (witness "
       << rep.zfm_regular_witness.to_string() << ")\n";
  text << "  principal: " << (rep.zfm_principal ? "yes" : "no");
  if (rep.zfm_principal_generator)
    text << "  (generator " << rep.zfm_principal_generator->to_string()
         << ")";
  text << "\n";
  text << "null ideal of the ring:\n";
  text << "  nonzero: " << (rep.zfR_nonzero ? "yes" : "no") << "  (witness "
       << rep.zfR_nonzero_witness.to_string() << ")\n";
  text << "  contains a regular polynomial: "
       << (rep.zfR_has_regular ? "yes" : "no") << "  (witness "
       << rep.zfR_regular_witness.to_string() << ")\n";
  text << "  principal: " << (rep.zfR_principal ? "yes" : "no");
  if (rep.zfR_principal_generator)
    text << "  (generator " << rep.zfR_principal_generator->to_string()
         << ")";
  text << "\n";
  text << "annihilator of m: " << element_text(ring, rep.annihilator)
       << "\n";
  if (rep.principal_failure_point)
    text << "principality failure: pi("
         << ring.element_label(*rep.principal_failure_point) << ") = "
         << ring.element_label(*rep.principal_failure_value) << " != 0\n";
  emit(out, a, doc, text.str());
  return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
  Ring ring = make_ring(a);
  VerifyOptions opt;
  opt.degree_bound = a.bound;
  opt.seed = a.seed;
  opt.caps = make_caps(a);
  opt.jobs = a.jobs;
  BatteryReport rep = verify_suite(ring, opt);

  std::size_t pass = 0, approx = 0, skipped = 0, failed = 0;
  for (const CheckResult& c : rep.checks) switch (c.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Approximate: ++approx; break;
      case CheckStatus::Skipped: ++skipped; break;
      case CheckStatus::Fail: ++failed; break;
    }

  ordered_json doc;
  doc["command"] = "verify";
  doc["ring"] = ring_json(ring);
  ordered_json cfg;
  cfg["degree_bound"] = rep.degree_bound;
  cfg["seed"] = rep.seed;
  cfg["jobs"] = a.jobs;
  doc["config"] = cfg;
  ordered_json res;
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : rep.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = check_status_name(c.status);
    cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  res["checks"] = checks;
  res["passed"] = rep.passed();
  doc["result"] = res;

  std::ostringstream text;
  text << "ring: " << ring.label() << "\n";
  text << "degree bound: " << rep.degree_bound << "\n";
  text << "seed: " << rep.seed << "\n";
  for (const CheckResult& c : rep.checks)
    text << "[" << check_status_name(c.status) << "] " << c.name << ": "
         << c.detail << "\n";
  text << "result: " << (rep.passed() ? "pass" : "FAIL") << " (" << pass
       << " pass, " << approx << " approximate, " << skipped << " skipped, "
       << failed << " fail)\n";
  emit(out, a, doc, text.str());
  return rep.passed() ? 0 : 1;
}

void add_common(CLI::App* sc, Args& a) {
  sc->add_option("--ring", a.ring_spec,
                 "ring spec: Z/p^n, Z/N, F<q>[t]/t^e, or table:<file.json>")
      ->required();
  sc->add_option("--format", a.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  sc->add_option("--jobs", a.jobs, "worker threads for oracle scans");
  sc->add_option("--ring-cap", a.ring_cap, "largest accepted ring order");
  sc->add_option("--cap-candidates", a.cap_candidates,
                 "largest oracle candidate space")
      ->envname("ZEROFN_CANDIDATE_CAP");
  sc->add_option("--cap-pi", a.cap_pi,
                 "largest enumerated pi-polynomial family");
  sc->add_option("--cap-lifts", a.cap_lifts, "largest lift perturbation set");
}

}  // namespace

int run_command(std::vector<std::string> args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"null ideals of polynomials over finite local rings"};
  app.require_subcommand(1);
  Args a;

  CLI::App* ring_info = app.add_subcommand(
      "ring-info", "residue structure of a finite local ring");
  add_common(ring_info, a);

  CLI::App* null_gens = app.add_subcommand(
      "null-gens", "generating set of a null ideal, oracle-checked");
  add_common(null_gens, a);
  null_gens->add_option("--target", a.target, "which null ideal")
      ->check(CLI::IsMember({"ring", "maximal"}));
  null_gens->add_option("--bound", a.bound, "oracle degree bound");
  null_gens->add_option("--reps", a.reps,
                        "coset representatives for the pi-polynomial");

  CLI::App* membership = app.add_subcommand(
      "membership", "decide membership in a structured null ideal");
  add_common(membership, a);
  membership->add_option("--target", a.target, "which null ideal")
      ->check(CLI::IsMember({"ring", "maximal"}));
  membership->add_option("--poly", a.poly, "polynomial text")->required();
  membership->add_option("--reps", a.reps,
                         "coset representatives for the pi-polynomial");

  CLI::App* factor = app.add_subcommand(
      "factor", "factor a pi-polynomial into linear terms by lifting");
  add_common(factor, a);
  factor->add_option("--poly", a.poly,
                     "pi-polynomial (default: canonical one)");
  factor->add_option("--reps", a.reps,
                     "coset representatives for the default pi-polynomial");

  CLI::App* decompose = app.add_subcommand(
      "decompose",
      "primary decomposition, or composition decomposition with --poly");
  add_common(decompose, a);
  decompose->add_option("--poly", a.poly,
                        "zero function to decompose through pi");
  decompose->add_option("--reps", a.reps,
                        "coset representatives for the pi-polynomial");
  decompose->add_option("--bound", a.bound, "slice bound for --slice-gens");
  decompose->add_flag("--slice-gens", a.slice_gens,
                      "derive maximal-ideal generators from the exhaustive "
                      "slice (non-principal rings)");

  CLI::App* intersect = app.add_subcommand(
      "intersect-check", "divisibility by every pi-polynomial");
  add_common(intersect, a);
  intersect->add_option("--poly", a.poly, "polynomial text")->required();
  intersect->add_option("--sample", a.sample,
                        "sample this many pi-polynomials instead of "
                        "enumerating");
  intersect->add_option("--seed", a.seed, "sampling seed");

  CLI::App* count = app.add_subcommand(
      "count", "number of functions induced by polynomials");
  add_common(count, a);
  count->add_option("--method", a.method, "counting method")
      ->check(CLI::IsMember({"auto", "normal-form", "exhaustive", "both"}));
  count->add_option("--bound", a.bound, "exhaustive degree bound");

  CLI::App* classify = app.add_subcommand(
      "classify", "null ideal properties of the ring");
  add_common(classify, a);

  CLI::App* verify = app.add_subcommand(
      "verify", "full verification battery against the brute-force oracle");
  add_common(verify, a);
  verify->add_option("--bound", a.bound, "oracle degree bound");
  verify->add_option("--seed", a.seed, "sampling seed");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << ex.what() << "\n";
    return 2;
  }

  try {
    if (ring_info->parsed()) return cmd_ring_info(a, out);
    if (null_gens->parsed()) return cmd_null_gens(a, out);
    if (membership->parsed()) return cmd_membership(a, out);
    if (factor->parsed()) return cmd_factor(a, out);
    if (decompose->parsed()) return cmd_decompose(a, out);
    if (intersect->parsed()) return cmd_intersect_check(a, out);
    if (count->parsed()) return cmd_count(a, out);
    if (classify->parsed()) return cmd_classify(a, out);
    if (verify->parsed()) return cmd_verify(a, out);
  } catch (const Error& ex) {
    err << ex.what() << "\n";
    return ex.code() == ErrorCode::ParseError ? 2 : 3;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace zerofn::cli
