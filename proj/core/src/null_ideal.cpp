#include "zerofn/null_ideal.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace zerofn {

std::string count_to_string(BigCount v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out += char('0' + int(v % 10));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Target::describe(const Ring& ring) const {
  switch (kind) {
    case Kind::WholeRing:
      return "whole ring " + ring.label();
    case Kind::MaximalIdeal:
      return "maximal ideal of " + ring.label();
    case Kind::Coset:
      return "coset " + ring.element_label(center) + " + m in " +
             ring.label();
    case Kind::ExplicitSet: {
      std::string out = "{";
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ", ";
        out += ring.element_label(elements[i]);
      }
      return out + "} in " + ring.label();
    }
  }
  return "?";
}

std::vector<Elem> target_elements(const Ring& ring, const Target& target) {
  switch (target.kind) {
    case Target::Kind::WholeRing: {
      std::vector<Elem> out(ring.order());
      for (Elem a = 0; a < ring.order(); ++a) out[a] = a;
      return out;
    }
    case Target::Kind::MaximalIdeal: {
      auto m = ring.maximal_ideal();
      return std::vector<Elem>(m.begin(), m.end());
    }
    case Target::Kind::Coset: {
      ring.require_element(target.center);
      std::vector<Elem> out;
      out.reserve(ring.maximal_ideal().size());
      for (Elem m : ring.maximal_ideal())
        out.push_back(ring.add(target.center, m));
      return out;
    }
    case Target::Kind::ExplicitSet: {
      for (Elem a : target.elements) ring.require_element(a);
      return target.elements;
    }
  }
  fail(ErrorCode::InternalError, "unhandled target kind");
}

Polynomial pi_polynomial(const Ring& ring) {
  return pi_polynomial(ring, ring.coset_reps());
}

Polynomial pi_polynomial(const Ring& ring, std::span<const Elem> reps) {
  const std::uint32_t q = ring.residue_order();
  if (reps.size() != q)
    fail(ErrorCode::BadRepresentatives,
         "expected " + std::to_string(q) + " representatives, got " +
             std::to_string(reps.size()));
  for (Elem c : reps) ring.require_element(c);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (ring.congruent(reps[i], reps[j]))
        fail(ErrorCode::BadRepresentatives,
             "representatives " + ring.element_label(reps[i]) + " and " +
                 ring.element_label(reps[j]) +
                 " are congruent modulo the maximal ideal");
  Polynomial out = Polynomial::constant(ring, ring.one());
  for (Elem c : reps)
    out = out * (Polynomial::x(ring) - Polynomial::constant(ring, c));
  return out;
}

bool is_pi_polynomial(const Polynomial& f) {
  const Ring& R = f.ring();
  if (!f.is_monic()) return false;
  if (*f.degree() != R.residue_order()) return false;
  Ring k = R.residue_field();
  Polynomial frobenius =
      Polynomial::monomial(k, k.one(), R.residue_order()) - Polynomial::x(k);
  return reduce_mod_m(f) == frobenius;
}

VanishReport vanishes_on(const Polynomial& f, const Target& target,
                         std::optional<std::uint32_t> into) {
  const Ring& R = f.ring();
  const std::uint32_t j = into.value_or(R.nilpotency_index());
  for (Elem s : target_elements(R, target)) {
    Elem v = f.evaluate(s);
    if (!R.in_m_power(v, j)) return VanishReport{false, s, v};
  }
  return VanishReport{true, std::nullopt, std::nullopt};
}

StructuredIdeal StructuredIdeal::power_form(Ring ring, Polynomial base,
                                            Elem m_gen, std::uint32_t power) {
  ring.require_element(m_gen);
  if (!base.is_monic())
    fail(ErrorCode::NotMonic, "ideal base must be monic");
  if (power < 1) fail(ErrorCode::ParseError, "ideal power must be positive");
  StructuredIdeal out{Form::PowerForm, std::move(ring), std::move(base),
                      m_gen, power, {}};
  return out;
}

StructuredIdeal StructuredIdeal::power_plus_form(Ring ring, Polynomial base,
                                                 Elem m_gen) {
  std::uint32_t power = ring.residue_order() + 1;
  StructuredIdeal out =
      power_form(std::move(ring), std::move(base), m_gen, power);
  out.form = Form::PowerPlusForm;
  return out;
}

StructuredIdeal StructuredIdeal::generator_list(Ring ring,
                                                std::vector<Polynomial> gens) {
  for (const Polynomial& g : gens) ring.require_same(g.ring());
  StructuredIdeal out{Form::GeneratorList, ring, Polynomial(ring), 0, 0,
                      std::move(gens)};
  return out;
}

std::vector<Polynomial> StructuredIdeal::expanded_generators() const {
  if (form == Form::GeneratorList) return gens;
  std::vector<Polynomial> out;
  Polynomial base_pow = Polynomial::constant(ring, ring.one());
  for (std::uint32_t k = 0; k <= power; ++k) {
    Elem scalar = ring.pow(m_gen, power - k);
    Polynomial g = base_pow.scaled(scalar);
    if (!g.is_zero() &&
        std::find(out.begin(), out.end(), g) == out.end())
      out.push_back(g);
    if (k < power) base_pow = base_pow * base;
  }
  if (form == Form::PowerPlusForm) {
    const std::uint32_t q = ring.residue_order();
    Polynomial base_q = Polynomial::constant(ring, ring.one());
    for (std::uint32_t i = 0; i < q; ++i) base_q = base_q * base;
    Polynomial binomial = base_q - base.scaled(ring.pow(m_gen, q - 1));
    if (!binomial.is_zero() &&
        std::find(out.begin(), out.end(), binomial) == out.end())
      out.push_back(binomial);
  }
  return out;
}

std::string StructuredIdeal::describe() const {
  if (form == Form::GeneratorList) {
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i) out += ", ";
      out += gens[i].to_string();
    }
    return out + ")";
  }
  std::string out = "(" + base.to_string() + ", " +
                    ring.element_label(m_gen) + ")^" + std::to_string(power);
  if (form == Form::PowerPlusForm) {
    const std::uint32_t q = ring.residue_order();
    Polynomial base_q = Polynomial::constant(ring, ring.one());
    for (std::uint32_t i = 0; i < q; ++i) base_q = base_q * base;
    Polynomial binomial = base_q - base.scaled(ring.pow(m_gen, q - 1));
    out += " + (" + binomial.to_string() + ")";
  }
  return out;
}

MembershipReport ideal_membership(const Polynomial& f,
                                  const StructuredIdeal& ideal) {
  if (ideal.form == StructuredIdeal::Form::GeneratorList)
    fail(ErrorCode::UnsupportedForm,
         "membership is only decidable for the structured power forms");
  const Ring& R = ideal.ring;
  R.require_same(f.ring());
  const std::uint32_t e = ideal.power;
  const std::uint32_t q = R.residue_order();

  MembershipReport report;
  report.expansion = adic_expansion(f, ideal.base);
  auto layer = [&](std::uint32_t k) -> Polynomial {
    return k < report.expansion.size() ? report.expansion[k] : Polynomial(R);
  };
  auto check_layer = [&](const Polynomial& a, std::uint32_t k,
                         std::uint32_t required) -> bool {
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
      std::uint32_t v = R.valuation(a.coeffs()[i]);
      if (v < required) {
        report.violation = MembershipViolation{k, i, v, required};
        return false;
      }
    }
    return true;
  };

  report.member = true;
  if (ideal.form == StructuredIdeal::Form::PowerForm) {
    for (std::uint32_t k = 0; k < e && report.member; ++k)
      report.member = check_layer(layer(k), k, e - k);
  } else {
    Elem m_pow = R.pow(ideal.m_gen, q - 1);
    for (std::uint32_t k = 0; k < e && report.member; ++k) {
      if (k == q) continue;
      if (k == 1) {
        Polynomial combined =
            layer(1) + layer(q).scaled(m_pow);
        report.member = check_layer(combined, 1, q);
      } else {
        report.member = check_layer(layer(k), k, e - k);
      }
    }
  }
  return report;
}

namespace {

void assert_generators_vanish(const StructuredIdeal& ideal,
                              const Target& target) {
  for (const Polynomial& g : ideal.expanded_generators()) {
    VanishReport v = vanishes_on(g, target);
    if (!v.vanishes)
      fail(ErrorCode::InternalError,
           "generator " + g.to_string() + " fails to vanish on " +
               target.describe(ideal.ring) + " at " +
               ideal.ring.element_label(*v.witness));
  }
}

Elem principal_generator_or_fail(const Ring& ring) {
  std::optional<Elem> m_gen = ring.principal_m_generator();
  if (!m_gen)
    fail(ErrorCode::NonPrincipalMaximalIdeal,
         "the maximal ideal of " + ring.label() + " needs " +
             std::to_string(ring.m_minimal_generators().size()) +
             " generators; the structured forms require one");
  return *m_gen;
}

}  // namespace

StructuredIdeal null_maximal_generators(const Ring& ring) {
  Elem m_gen = principal_generator_or_fail(ring);
  const std::uint32_t e = ring.nilpotency_index();
  const std::uint32_t q = ring.residue_order();
  if (e > q + 1)
    fail(ErrorCode::OutOfTheoremRange,
         "nilpotency index " + std::to_string(e) + " exceeds q + 1 = " +
             std::to_string(q + 1) +
             "; no closed generating set is available");
  StructuredIdeal ideal =
      e <= q
          ? StructuredIdeal::power_form(ring, Polynomial::x(ring), m_gen, e)
          : StructuredIdeal::power_plus_form(ring, Polynomial::x(ring),
                                             m_gen);
  assert_generators_vanish(ideal, Target::maximal_ideal());
  return ideal;
}

StructuredIdeal null_ring_generators(const Ring& ring,
                                     std::optional<Polynomial> pi) {
  Polynomial base = pi ? std::move(*pi) : pi_polynomial(ring);
  ring.require_same(base.ring());
  if (!is_pi_polynomial(base))
    fail(ErrorCode::NotAPiPolynomial,
         base.to_string() + " is not monic of degree q with residue image "
                            "x^q - x");
  StructuredIdeal maximal = null_maximal_generators(ring);
  StructuredIdeal ideal =
      maximal.form == StructuredIdeal::Form::PowerForm
          ? StructuredIdeal::power_form(ring, std::move(base), maximal.m_gen,
                                        maximal.power)
          : StructuredIdeal::power_plus_form(ring, std::move(base),
                                             maximal.m_gen);
  assert_generators_vanish(ideal, Target::whole_ring());
  return ideal;
}

CompositionDecomposition decompose_zero_function(const Polynomial& f,
                                                 std::optional<Polynomial> pi) {
  const Ring& R = f.ring();
  Polynomial base = pi ? std::move(*pi) : pi_polynomial(R);
  R.require_same(base.ring());
  if (!is_pi_polynomial(base))
    fail(ErrorCode::NotAPiPolynomial,
         base.to_string() + " is not monic of degree q with residue image "
                            "x^q - x");
  VanishReport v = vanishes_on(f, Target::whole_ring());
  if (!v.vanishes)
    fail(ErrorCode::NotAZeroFunction,
         f.to_string() + " does not vanish on " + R.label() + ": value at " +
             R.element_label(*v.witness) + " is " +
             R.element_label(*v.value));

  CompositionDecomposition out{base, bivariate_remainder(f, base).rows};
  Polynomial rebuilt(R);
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    VanishReport pv = vanishes_on(out.parts[i], Target::maximal_ideal());
    if (!pv.vanishes)
      fail(ErrorCode::InternalError,
           "decomposition part " + std::to_string(i) +
               " fails to vanish on the maximal ideal");
    rebuilt = rebuilt + out.parts[i].compose(base).shifted(i);
  }
  if (rebuilt != f)
    fail(ErrorCode::InternalError,
         "decomposition of " + f.to_string() + " does not reconstruct");
  return out;
}

PrimaryDecomposition primary_decomposition(
    const Ring& ring, std::optional<std::vector<Polynomial>> zfm_generators) {
  std::vector<Polynomial> gens =
      zfm_generators ? std::move(*zfm_generators)
                     : null_maximal_generators(ring).expanded_generators();
  for (const Polynomial& g : gens) ring.require_same(g.ring());
  const std::uint32_t e = ring.nilpotency_index();
  auto reps = ring.coset_reps();
  auto m_gens = ring.m_minimal_generators();

  PrimaryDecomposition out;
  for (std::size_t j = 0; j < reps.size(); ++j) {
    PrimaryComponent comp{reps[j],
                          {},
                          Polynomial::x(ring) -
                              Polynomial::constant(ring, reps[j]),
                          std::vector<Elem>(m_gens.begin(), m_gens.end()),
                          Polynomial::constant(ring, ring.one()),
                          0};
    for (const Polynomial& g : gens)
      comp.generators.push_back(g.compose(comp.prime_linear));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (i == j) continue;
      Polynomial factor =
          Polynomial::x(ring) - Polynomial::constant(ring, reps[i]);
      for (std::uint32_t k = 0; k < e; ++k)
        comp.minimality_witness = comp.minimality_witness * factor;
    }
    comp.witness_value_at_center = comp.minimality_witness.evaluate(reps[j]);
    if (comp.witness_value_at_center == ring.zero())
      fail(ErrorCode::InternalError,
           "minimality witness vanishes at its own center " +
               ring.element_label(reps[j]));
    out.components.push_back(std::move(comp));
  }
  return out;
}

IntersectionReport pi_intersection_check(const Polynomial& f,
                                         const IntersectionMode& mode) {
  const Ring& R = f.ring();
  auto reps = R.coset_reps();
  auto m = R.maximal_ideal();
  const std::uint32_t q = R.residue_order();

  IntersectionReport report;
  report.exhaustive = mode.exhaustive;
  bool overflow = false;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < q; ++i) {
    if (total > UINT64_MAX / m.size()) {
      overflow = true;
      total = UINT64_MAX;
      break;
    }
    total *= m.size();
  }
  report.total = total;

  auto try_reps = [&](const std::vector<Elem>& chosen) -> bool {
    Polynomial cand = pi_polynomial(R, chosen);
    Polynomial rem = divide_monic(f, cand).remainder;
    ++report.checked;
    if (!rem.is_zero()) {
      report.failing_reps = chosen;
      report.failing_pi = std::move(cand);
      report.failing_remainder = std::move(rem);
      return false;
    }
    return true;
  };

  if (mode.exhaustive) {
    if (overflow || total > mode.cap)
      fail(ErrorCode::CapExceeded,
           "exhaustive intersection needs " +
               (overflow ? std::string("more than 2^64")
                         : std::to_string(total)) +
               " pi-polynomials; cap is " + std::to_string(mode.cap));
    std::vector<std::size_t> digits(q, 0);
    std::vector<Elem> chosen(q);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      for (std::uint32_t i = 0; i < q; ++i)
        chosen[i] = R.add(reps[i], m[digits[i]]);
      if (!try_reps(chosen)) {
        report.divisible_by_all = false;
        return report;
      }
      for (std::uint32_t i = 0; i < q; ++i) {
        if (++digits[i] < m.size()) break;
        digits[i] = 0;
      }
    }
    report.divisible_by_all = true;
    return report;
  }

  std::mt19937_64 gen(mode.seed);
  std::vector<Elem> chosen(q);
  for (std::uint64_t s = 0; s < mode.samples; ++s) {
    for (std::uint32_t i = 0; i < q; ++i)
      chosen[i] = R.add(reps[i], m[gen() % m.size()]);
    if (!try_reps(chosen)) {
      report.divisible_by_all = false;
      return report;
    }
  }
  report.divisible_by_all = true;
  return report;
}

namespace {

std::uint64_t m_power_size(const Ring& ring, std::uint32_t j) {
  std::uint64_t n = 0;
  for (Elem a = 0; a < ring.order(); ++a)
    if (ring.in_m_power(a, j)) ++n;
  return n;
}

BigCount mul_counted(BigCount a, BigCount b) {
  BigCount out;
  if (__builtin_mul_overflow(a, b, &out))
    fail(ErrorCode::CapExceeded, "function count overflows 128 bits");
  return out;
}

BigCount pow_counted(BigCount base, std::uint32_t exp) {
  BigCount out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) out = mul_counted(out, base);
  return out;
}

BigCount count_normal_form(const Ring& ring) {
  StructuredIdeal ideal = null_ring_generators(ring);
  const std::uint32_t e = ideal.power;
  const std::uint32_t q = ring.residue_order();
  BigCount out = 1;
  if (ideal.form == StructuredIdeal::Form::PowerForm) {
    for (std::uint32_t k = 0; k < e; ++k)
      out = mul_counted(
          out, pow_counted(ring.order() / m_power_size(ring, e - k), q));
  } else {
    for (std::uint32_t k = 0; k < e; ++k) {
      if (k == 1 || k == q) continue;
      out = mul_counted(
          out, pow_counted(ring.order() / m_power_size(ring, e - k), q));
    }
    out = mul_counted(out,
                      pow_counted(ring.order() / m_power_size(ring, q), q));
  }
  return out;
}

BigCount count_exhaustive(const Ring& ring, std::uint32_t degree_bound,
                          std::uint64_t cap) {
  const std::uint32_t D =
      degree_bound ? degree_bound
                   : ring.nilpotency_index() * ring.residue_order() + 1;
  const std::uint64_t n = ring.order();
  std::uint64_t candidates = 1;
  for (std::uint32_t i = 0; i < D; ++i) {
    if (candidates > cap / n)
      fail(ErrorCode::CapExceeded,
           "exhaustive count needs more than " + std::to_string(cap) +
               " candidates");
    candidates *= n;
  }

  const unsigned value_bits = std::bit_width(n - 1);
  const unsigned total_bits = unsigned(n) * value_bits;
  if (total_bits > 128)
    fail(ErrorCode::CapExceeded,
         "value vectors need " + std::to_string(total_bits) +
             " bits; the packed limit is 128");

  // values of x^k at every point, for Horner-free incremental evaluation
  std::vector<Elem> coeffs(D, ring.zero());
  std::vector<Elem> values(n, ring.zero());

  auto run = [&](auto& keys) {
    using Key = typename std::decay_t<decltype(keys)>::value_type;
    std::vector<std::vector<Elem>> powers(D, std::vector<Elem>(n));
    for (Elem a = 0; a < n; ++a) {
      Elem acc = ring.one();
      for (std::uint32_t k = 0; k < D; ++k) {
        powers[k][a] = acc;
        acc = ring.mul(acc, a);
      }
    }
    keys.reserve(candidates);
    for (std::uint64_t idx = 0;; ++idx) {
      Key key = 0;
      for (Elem a = 0; a < n; ++a)
        key |= Key(values[a]) << (value_bits * a);
      keys.push_back(key);
      if (idx + 1 == candidates) break;
      // advance the coefficient vector and patch values in place
      for (std::uint32_t k = 0;; ++k) {
        Elem next = coeffs[k] + 1 == n ? 0 : coeffs[k] + 1;
        for (Elem a = 0; a < n; ++a) {
          Elem delta = ring.mul(ring.sub(next, coeffs[k]), powers[k][a]);
          values[a] = ring.add(values[a], delta);
        }
        coeffs[k] = next;
        if (next != 0) break;
      }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return BigCount(keys.size());
  };

  if (total_bits <= 64) {
    std::vector<std::uint64_t> keys;
    return run(keys);
  }
  std::vector<unsigned __int128> keys;
  return run(keys);
}

}  // namespace

BigCount count_polynomial_functions(const Ring& ring,
                                    const CountOptions& options) {
  if (options.method == CountMethod::NormalForm)
    return count_normal_form(ring);
  return count_exhaustive(ring, options.degree_bound, options.candidate_cap);
}

ClassificationReport classify_ring_nullideal(const Ring& ring) {
  Polynomial pi = pi_polynomial(ring);
  const std::uint32_t e = ring.nilpotency_index();
  Elem a = ring.m_annihilator_witness();

  Polynomial x = Polynomial::x(ring);
  Polynomial x_e = Polynomial::monomial(ring, ring.one(), e);
  Polynomial pi_e = Polynomial::constant(ring, ring.one());
  for (std::uint32_t i = 0; i < e; ++i) pi_e = pi_e * pi;

  ClassificationReport report{
      ring.is_field(), true,  true,
      true,            true,  ring.is_field(),
      ring.is_field(), a,     x.scaled(a),
      pi.scaled(a),    x_e,   pi_e,
      std::nullopt,    std::nullopt,
      std::nullopt,    std::nullopt};

  for (auto [poly, target] :
       {std::pair{&report.zfm_nonzero_witness, Target::maximal_ideal()},
        std::pair{&report.zfR_nonzero_witness, Target::whole_ring()},
        std::pair{&report.zfm_regular_witness, Target::maximal_ideal()},
        std::pair{&report.zfR_regular_witness, Target::whole_ring()}}) {
    VanishReport v = vanishes_on(*poly, target);
    if (!v.vanishes)
      fail(ErrorCode::InternalError, "classification witness " +
                                         poly->to_string() +
                                         " fails to vanish");
  }
  if (report.zfm_nonzero_witness.is_zero() ||
      report.zfR_nonzero_witness.is_zero())
    fail(ErrorCode::InternalError,
         "annihilator witness collapsed to the zero polynomial");

  if (ring.is_field()) {
    report.zfm_principal_generator = x;
    report.zfR_principal_generator = pi;
  } else {
    for (Elem r = 0; r < ring.order(); ++r) {
      Elem v = pi.evaluate(r);
      if (v != ring.zero()) {
        report.principal_failure_point = r;
        report.principal_failure_value = v;
        break;
      }
    }
    if (!report.principal_failure_point)
      fail(ErrorCode::InternalError,
           "pi vanishes identically on a ring that is not a field");
  }
  return report;
}

}  // namespace zerofn
