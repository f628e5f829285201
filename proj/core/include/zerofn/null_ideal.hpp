#pragma once

// Null ideals of finite local rings: the sets of polynomials inducing the
// zero function on the whole ring, on the maximal ideal, or on a coset.
// Structured generating sets, a membership decision rule, composition and
// primary decompositions, the divisibility characterization, function
// counting, and classification.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zerofn/poly.hpp"
#include "zerofn/ring.hpp"

namespace zerofn {

using BigCount = unsigned __int128;
std::string count_to_string(BigCount v);

struct Target {
  enum class Kind { WholeRing, MaximalIdeal, Coset, ExplicitSet };
  Kind kind = Kind::WholeRing;
  Elem center = 0;             // Coset only
  std::vector<Elem> elements;  // ExplicitSet only

  static Target whole_ring() { return Target{Kind::WholeRing, 0, {}}; }
  static Target maximal_ideal() { return Target{Kind::MaximalIdeal, 0, {}}; }
  static Target coset(Elem center) { return Target{Kind::Coset, center, {}}; }
  static Target explicit_set(std::vector<Elem> elements) {
    return Target{Kind::ExplicitSet, 0, std::move(elements)};
  }
  std::string describe(const Ring& ring) const;
};

std::vector<Elem> target_elements(const Ring& ring, const Target& target);

// Product of (x - c_i) over one representative per coset of the maximal
// ideal; monic of degree q with residue image x^q - x.
Polynomial pi_polynomial(const Ring& ring);
Polynomial pi_polynomial(const Ring& ring, std::span<const Elem> reps);

bool is_pi_polynomial(const Polynomial& f);

struct VanishReport {
  bool vanishes = false;
  std::optional<Elem> witness;  // first point whose value escapes m^j
  std::optional<Elem> value;    // f(witness)
};

// Does f map every target element into m^j?  j defaults to e, i.e. the
// value must be zero.
VanishReport vanishes_on(const Polynomial& f, const Target& target,
                         std::optional<std::uint32_t> into = std::nullopt);

struct StructuredIdeal {
  // PowerForm: (base, m_gen)^power.  PowerPlusForm: that ideal plus the
  // binomial base^q - m_gen^{q-1}*base, with power = q+1 exactly.
  // GeneratorList: an explicit list with no decision rule attached.
  enum class Form { PowerForm, PowerPlusForm, GeneratorList };

  Form form = Form::GeneratorList;
  Ring ring;
  Polynomial base;   // x for the maximal-ideal target, pi for the ring
  Elem m_gen = 0;    // designated principal generator of m
  std::uint32_t power = 0;
  std::vector<Polynomial> gens;  // GeneratorList only

  static StructuredIdeal power_form(Ring ring, Polynomial base, Elem m_gen,
                                    std::uint32_t power);
  static StructuredIdeal power_plus_form(Ring ring, Polynomial base,
                                         Elem m_gen);
  static StructuredIdeal generator_list(Ring ring,
                                        std::vector<Polynomial> gens);

  // Explicit generators: m_gen^{power-k} * base^k for k = 0..power (zero
  // polynomials dropped, duplicates removed), plus the binomial for
  // PowerPlusForm; GeneratorList returns the stored list.
  std::vector<Polynomial> expanded_generators() const;
  std::string describe() const;
};

struct MembershipViolation {
  std::size_t component = 0;    // index k in the base-adic expansion
  std::size_t coeff_index = 0;  // offending coefficient of that layer
  std::uint32_t valuation = 0;
  std::uint32_t required = 0;
};

struct MembershipReport {
  bool member = false;
  std::vector<Polynomial> expansion;  // layers a_k, f = sum a_k * base^k
  std::optional<MembershipViolation> violation;
};

// Decision rule for PowerForm/PowerPlusForm ideals via base-adic
// coefficient valuations; GeneratorList is refused (UnsupportedForm).
MembershipReport ideal_membership(const Polynomial& f,
                                  const StructuredIdeal& ideal);

// Generators of the polynomials vanishing on the maximal ideal:
// (x, m_gen)^e when e <= q, plus x^q - m_gen^{q-1} x when e = q+1.
StructuredIdeal null_maximal_generators(const Ring& ring);

// Generators of the polynomials vanishing on the whole ring: the
// maximal-ideal form with pi substituted for x.
StructuredIdeal null_ring_generators(
    const Ring& ring, std::optional<Polynomial> pi = std::nullopt);

struct CompositionDecomposition {
  Polynomial pi;
  // f = sum_i x^i * parts[i](pi(x)), each part vanishing on m
  std::vector<Polynomial> parts;
};

CompositionDecomposition decompose_zero_function(
    const Polynomial& f, std::optional<Polynomial> pi = std::nullopt);

struct PrimaryComponent {
  Elem center = 0;
  std::vector<Polynomial> generators;   // each F_j(x - center)
  Polynomial prime_linear;              // x - center
  std::vector<Elem> prime_m_gens;       // minimal generators of m
  Polynomial minimality_witness;        // prod over other centers (x-c)^e
  Elem witness_value_at_center = 0;     // nonzero
};

struct PrimaryDecomposition {
  std::vector<PrimaryComponent> components;  // one per coset, length q
};

PrimaryDecomposition primary_decomposition(
    const Ring& ring,
    std::optional<std::vector<Polynomial>> zfm_generators = std::nullopt);

struct IntersectionMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;  // sample mode only
  std::uint64_t seed = 0;
  std::uint64_t cap = 100000;  // exhaustive mode refuses above this
};

struct IntersectionReport {
  bool divisible_by_all = false;
  std::uint64_t checked = 0;   // pi-polynomials tried
  bool exhaustive = true;
  std::uint64_t total = 0;     // |m|^q, the full pi count
  std::optional<std::vector<Elem>> failing_reps;
  std::optional<Polynomial> failing_pi;
  std::optional<Polynomial> failing_remainder;
};

// Divisibility of f by every pi-polynomial (enumerated by choosing each
// representative inside its coset); exhaustive truth is equivalent to f
// inducing the zero function on the ring.
IntersectionReport pi_intersection_check(const Polynomial& f,
                                         const IntersectionMode& mode = {});

enum class CountMethod { NormalForm, Exhaustive };

struct CountOptions {
  CountMethod method = CountMethod::NormalForm;
  std::uint32_t degree_bound = 0;   // 0: default e*q + 1 (exhaustive only)
  std::uint64_t candidate_cap = 10000000;
};

// Number of distinct functions R -> R induced by polynomials.
BigCount count_polynomial_functions(const Ring& ring,
                                    const CountOptions& options = {});

struct ClassificationReport {
  bool is_field = false;
  bool zfm_nonzero = true;
  bool zfR_nonzero = true;
  bool zfm_has_regular = true;
  bool zfR_has_regular = true;
  bool zfm_principal = false;
  bool zfR_principal = false;

  Elem annihilator = 0;              // nonzero a with a*m = 0
  Polynomial zfm_nonzero_witness;    // a*x
  Polynomial zfR_nonzero_witness;    // a*pi
  Polynomial zfm_regular_witness;    // x^e
  Polynomial zfR_regular_witness;    // pi^e
  std::optional<Polynomial> zfm_principal_generator;  // x (fields)
  std::optional<Polynomial> zfR_principal_generator;  // pi (fields)
  std::optional<Elem> principal_failure_point;  // r with pi(r) != 0
  std::optional<Elem> principal_failure_value;  // pi(r)
};

ClassificationReport classify_ring_nullideal(const Ring& ring);

struct NullIdealReport {
  Target target;
  StructuredIdeal ideal;
  std::uint32_t oracle_checked_degree_bound = 0;
  bool verified = false;
  bool approximate = false;
  std::uint64_t oracle_candidates = 0;
  std::uint64_t oracle_members = 0;
  std::optional<BigCount> function_count;
};

}  // namespace zerofn
