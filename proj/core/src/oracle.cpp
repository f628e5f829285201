#include "zerofn/oracle.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_set>

#include "internal/candidate_scan.hpp"

namespace zerofn {

std::uint64_t candidate_count(const Ring& ring, std::uint32_t D,
                              std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < D; ++i) {
    if (total > cap / ring.order())
      fail(ErrorCode::CapExceeded,
           "candidate space " + ring.label() + "^" + std::to_string(D) +
               " exceeds the cap of " + std::to_string(cap));
    total *= ring.order();
  }
  return total;
}

std::uint32_t feasible_degree_bound(const Ring& ring, std::uint32_t D,
                                    std::uint64_t cap) {
  std::uint32_t best = 0;
  std::uint64_t total = 1;
  for (std::uint32_t i = 1; i <= D; ++i) {
    if (total > cap / ring.order()) break;
    total *= ring.order();
    best = i;
  }
  return best;
}

Polynomial candidate_polynomial(const Ring& ring, std::uint32_t D,
                                std::uint64_t index) {
  return Polynomial(ring, internal::decode_candidate(ring, D, index));
}

std::uint64_t candidate_index(const Polynomial& f, std::uint32_t D) {
  if (f.coeffs().size() > D)
    fail(ErrorCode::DegreeMismatch,
         f.to_string() + " has degree " + std::to_string(*f.degree()) +
             ", beyond the bound " + std::to_string(D));
  return internal::encode_candidate(f.ring(), f.coeffs());
}

namespace {

// run worker(range_index, from, to) over contiguous shards of [0, total)
template <class Worker>
void run_sharded(std::uint64_t total, unsigned jobs, Worker&& worker) {
  std::uint64_t shards = std::max(1u, jobs);
  shards = std::min<std::uint64_t>(shards, std::max<std::uint64_t>(total, 1));
  if (shards == 1) {
    worker(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(shards);
  for (std::uint64_t r = 0; r < shards; ++r)
    threads.emplace_back([&worker, r, total, shards] {
      worker(std::size_t(r), total * r / shards, total * (r + 1) / shards);
    });
  for (std::thread& t : threads) t.join();
}

std::uint64_t shard_count(std::uint64_t total, unsigned jobs) {
  return std::min<std::uint64_t>(std::max(1u, jobs),
                                 std::max<std::uint64_t>(total, 1));
}

// valuation rule behind the structured power forms
struct RuleChecker {
  const Ring& ring;
  StructuredIdeal::Form form;
  std::uint32_t e;
  std::uint32_t q;
  std::size_t width;
  Elem m_pow;  // m_gen^{q-1}, PowerPlusForm only

  RuleChecker(const Ring& r, const StructuredIdeal& ideal)
      : ring(r),
        form(ideal.form),
        e(ideal.power),
        q(r.residue_order()),
        width(*ideal.base.degree()),
        m_pow(r.pow(ideal.m_gen, r.residue_order() - 1)) {}

  bool member(const internal::LayerTracker& lt) const {
    if (form == StructuredIdeal::Form::PowerForm) {
      for (std::uint32_t k = 0; k < e; ++k)
        for (std::size_t j = 0; j < width; ++j)
          if (ring.valuation(lt.layer_coeff(k, j)) < e - k) return false;
      return true;
    }
    for (std::uint32_t k = 0; k < e; ++k) {
      if (k == q) continue;
      if (k == 1) {
        for (std::size_t j = 0; j < width; ++j) {
          Elem combined = ring.add(lt.layer_coeff(1, j),
                                   ring.mul(m_pow, lt.layer_coeff(q, j)));
          if (ring.valuation(combined) < q) return false;
        }
      } else {
        for (std::size_t j = 0; j < width; ++j)
          if (ring.valuation(lt.layer_coeff(k, j)) < e - k) return false;
      }
    }
    return true;
  }
};

std::vector<std::uint64_t> merge_sorted_shards(
    std::vector<std::vector<std::uint64_t>>& shards) {
  std::vector<std::uint64_t> out;
  std::size_t total = 0;
  for (const auto& s : shards) total += s.size();
  out.reserve(total);
  for (auto& s : shards) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// additive span of the shifted generator multiples, as candidate indices
std::unordered_set<std::uint64_t> span_indices(
    const Ring& ring, const std::vector<Polynomial>& gens, std::uint32_t D,
    std::uint64_t cap) {
  std::vector<std::vector<Elem>> seeds;
  std::unordered_set<std::uint64_t> seen_seeds;
  for (const Polynomial& g : gens) {
    if (g.is_zero()) continue;
    for (std::uint32_t shift = 0; *g.degree() + shift < D; ++shift) {
      Polynomial shifted = g.shifted(shift);
      for (Elem r = 0; r < ring.order(); ++r) {
        Polynomial mult = shifted.scaled(r);
        if (mult.is_zero()) continue;
        std::uint64_t idx = candidate_index(mult, D);
        if (seen_seeds.insert(idx).second) {
          std::vector<Elem> c(mult.coeffs().begin(), mult.coeffs().end());
          c.resize(D, ring.zero());
          seeds.push_back(std::move(c));
        }
      }
    }
  }

  std::unordered_set<std::uint64_t> span;
  span.insert(0);
  std::vector<std::uint64_t> work{0};
  std::vector<Elem> sum(D);
  while (!work.empty()) {
    std::uint64_t cur = work.back();
    work.pop_back();
    std::vector<Elem> cur_coeffs = internal::decode_candidate(ring, D, cur);
    for (const auto& seed : seeds) {
      for (std::uint32_t k = 0; k < D; ++k)
        sum[k] = ring.add(cur_coeffs[k], seed[k]);
      std::uint64_t nxt = internal::encode_candidate(ring, sum);
      if (span.insert(nxt).second) {
        if (span.size() > cap)
          fail(ErrorCode::CapExceeded,
               "additive span exceeds the cap of " + std::to_string(cap));
        work.push_back(nxt);
      }
    }
  }
  return span;
}

}  // namespace

Slice exhaustive_null_slice(const Ring& ring, const Target& target,
                            std::optional<std::uint32_t> into,
                            std::uint32_t degree_bound, const OracleCaps& caps,
                            unsigned jobs) {
  const std::uint64_t total =
      candidate_count(ring, degree_bound, caps.slice_candidates);
  const std::uint32_t j = into.value_or(ring.nilpotency_index());
  std::vector<Elem> pts = target_elements(ring, target);

  std::vector<std::vector<std::uint64_t>> partial(shard_count(total, jobs));
  run_sharded(total, jobs, [&](std::size_t shard, std::uint64_t from,
                               std::uint64_t to) {
    internal::ValueTracker vt(ring, degree_bound, pts);
    std::vector<Elem> coeffs;
    auto& members = partial[shard];
    internal::scan_range(
        ring, degree_bound, from, to, coeffs, [&] { vt.reset(coeffs); },
        [&](std::uint32_t k, Elem o, Elem n) { vt.patch(k, o, n); },
        [&](std::uint64_t idx) {
          for (Elem v : vt.values)
            if (!ring.in_m_power(v, j)) return;
          members.push_back(idx);
        });
  });
  return Slice{degree_bound, false, merge_sorted_shards(partial)};
}

Slice ideal_slice(const StructuredIdeal& ideal, std::uint32_t degree_bound,
                  const OracleCaps& caps, unsigned jobs) {
  const Ring& ring = ideal.ring;
  if (ideal.form == StructuredIdeal::Form::GeneratorList) {
    candidate_count(ring, degree_bound, caps.slice_candidates);
    auto span = span_indices(ring, ideal.gens, degree_bound,
                             caps.slice_candidates);
    std::vector<std::uint64_t> members(span.begin(), span.end());
    std::sort(members.begin(), members.end());
    return Slice{degree_bound, true, std::move(members)};
  }

  const std::uint64_t total =
      candidate_count(ring, degree_bound, caps.slice_candidates);
  RuleChecker rule(ring, ideal);
  std::vector<std::vector<std::uint64_t>> partial(shard_count(total, jobs));
  run_sharded(total, jobs, [&](std::size_t shard, std::uint64_t from,
                               std::uint64_t to) {
    internal::LayerTracker lt(ring, degree_bound, ideal.base);
    std::vector<Elem> coeffs;
    auto& members = partial[shard];
    internal::scan_range(
        ring, degree_bound, from, to, coeffs, [&] { lt.reset(coeffs); },
        [&](std::uint32_t k, Elem o, Elem n) { lt.patch(k, o, n); },
        [&](std::uint64_t idx) {
          if (rule.member(lt)) members.push_back(idx);
        });
  });
  return Slice{degree_bound, false, merge_sorted_shards(partial)};
}

std::vector<Polynomial> slice_to_generators(const Ring& ring,
                                            const Slice& slice) {
  std::vector<Polynomial> gens;
  std::unordered_set<std::uint64_t> span;
  span.insert(0);
  for (std::uint64_t idx : slice.members) {
    if (span.count(idx)) continue;
    gens.push_back(candidate_polynomial(ring, slice.degree_bound, idx));
    span = span_indices(ring, gens, slice.degree_bound,
                        slice.members.size() + 1);
  }
  if (span.size() > slice.members.size())
    fail(ErrorCode::InternalError,
         "additive span escapes the slice it was generated from");
  return gens;
}

SliceReport slice_compare(const Ring& ring, const Target& target,
                          const StructuredIdeal& ideal,
                          std::uint32_t degree_bound,
                          std::optional<std::uint32_t> into,
                          const OracleCaps& caps, unsigned jobs) {
  const std::uint64_t total =
      candidate_count(ring, degree_bound, caps.slice_candidates);
  const std::uint32_t j = into.value_or(ring.nilpotency_index());
  std::vector<Elem> pts = target_elements(ring, target);
  const bool span_based = ideal.form == StructuredIdeal::Form::GeneratorList;

  SliceReport report;
  report.ring_label = ring.label();
  report.target_description = target.describe(ring);
  report.ideal_description = ideal.describe();
  report.degree_bound = degree_bound;
  report.candidates = total;
  report.approximate = span_based;

  std::unordered_set<std::uint64_t> span;
  std::optional<RuleChecker> rule;
  if (span_based)
    span = span_indices(ring, ideal.gens, degree_bound, caps.slice_candidates);
  else
    rule.emplace(ring, ideal);

  struct Partial {
    std::uint64_t members = 0;
    std::uint64_t mismatches = 0;
    std::vector<SliceMismatch> kept;
  };
  std::vector<Partial> partial(shard_count(total, jobs));

  run_sharded(total, jobs, [&](std::size_t shard, std::uint64_t from,
                               std::uint64_t to) {
    internal::ValueTracker vt(ring, degree_bound, pts);
    std::optional<internal::LayerTracker> lt;
    if (!span_based)
      lt.emplace(ring, degree_bound, ideal.base);
    std::vector<Elem> coeffs;
    Partial& p = partial[shard];
    internal::scan_range(
        ring, degree_bound, from, to, coeffs,
        [&] {
          vt.reset(coeffs);
          if (lt) lt->reset(coeffs);
        },
        [&](std::uint32_t k, Elem o, Elem n) {
          vt.patch(k, o, n);
          if (lt) lt->patch(k, o, n);
        },
        [&](std::uint64_t idx) {
          bool oracle_v = true;
          for (Elem v : vt.values)
            if (!ring.in_m_power(v, j)) {
              oracle_v = false;
              break;
            }
          if (oracle_v) ++p.members;
          bool structured_v =
              span_based ? span.count(idx) != 0 : rule->member(*lt);
          // a span is only a lower bound: oracle members it misses are
          // not verdict disagreements
          bool mismatch = span_based ? (structured_v && !oracle_v)
                                     : (structured_v != oracle_v);
          if (mismatch) {
            ++p.mismatches;
            if (p.kept.size() < 16)
              p.kept.push_back(SliceMismatch{idx, structured_v, oracle_v});
          }
        });
  });

  for (Partial& p : partial) {
    report.member_count += p.members;
    report.mismatch_count += p.mismatches;
    for (SliceMismatch& mm : p.kept)
      if (report.mismatches.size() < 16) report.mismatches.push_back(mm);
  }
  report.certified = report.mismatch_count == 0;
  return report;
}

const char* check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Approximate: return "approximate";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

bool is_refusal(const Error& ex) {
  switch (ex.code()) {
    case ErrorCode::NonPrincipalMaximalIdeal:
    case ErrorCode::OutOfTheoremRange:
    case ErrorCode::CapExceeded:
      return true;
    default:
      return false;
  }
}

std::string first_mismatch_text(const Ring& ring, const SliceReport& report) {
  if (report.mismatches.empty()) return "";
  const SliceMismatch& mm = report.mismatches.front();
  Polynomial f =
      candidate_polynomial(ring, report.degree_bound, mm.index);
  return "; first mismatch " + f.to_string() + " (rule says " +
         (mm.structured_verdict ? "member" : "non-member") +
         ", evaluation says " + (mm.oracle_verdict ? "member" : "non-member") +
         ")";
}

CheckResult slice_check(const std::string& name, const Ring& ring,
                        const Target& target, const StructuredIdeal& ideal,
                        std::uint32_t D, std::optional<std::uint32_t> into,
                        const OracleCaps& caps, unsigned jobs) {
  SliceReport report = slice_compare(ring, target, ideal, D, into, caps, jobs);
  std::string detail = ideal.describe() + " vs " + target.describe(ring) +
                       " at degree < " + std::to_string(D) + ": " +
                       std::to_string(report.member_count) + " of " +
                       std::to_string(report.candidates) + " members";
  if (!report.certified)
    return CheckResult{name, CheckStatus::Fail,
                       detail + "; " + std::to_string(report.mismatch_count) +
                           " mismatches" + first_mismatch_text(ring, report)};
  if (report.approximate)
    return CheckResult{name, CheckStatus::Approximate,
                       detail + "; additive span, lower bound only"};
  return CheckResult{name, CheckStatus::Pass, detail};
}

CheckResult surjectivity_check(const Ring& ring) {
  Polynomial pi = pi_polynomial(ring);
  const auto m = ring.maximal_ideal();
  std::vector<std::vector<char>> hit(
      ring.residue_order(), std::vector<char>(ring.order(), 0));
  for (Elem x = 0; x < ring.order(); ++x) {
    Elem v = pi.evaluate(x);
    if (!ring.in_m_power(v, 1))
      return CheckResult{"pi-surjectivity", CheckStatus::Fail,
                         "pi(" + ring.element_label(x) + ") = " +
                             ring.element_label(v) +
                             " is outside the maximal ideal"};
    hit[ring.to_residue(x)][v] = 1;
  }
  for (std::uint32_t c = 0; c < ring.residue_order(); ++c)
    for (Elem target : m)
      if (!hit[c][target])
        return CheckResult{
            "pi-surjectivity", CheckStatus::Fail,
            "no element of coset " +
                ring.element_label(ring.coset_reps()[c]) + " + m reaches " +
                ring.element_label(target)};
  return CheckResult{"pi-surjectivity", CheckStatus::Pass,
                     "pi maps every coset onto the maximal ideal"};
}

struct BatterySlices {
  std::optional<StructuredIdeal> zfm;
  std::optional<StructuredIdeal> zfr;
  std::vector<Polynomial> zfm_gens;  // expanded or caller-supplied
  std::vector<Polynomial> zfr_gens;
  bool structured = false;  // power forms available
  std::string form_note;
};

BatterySlices resolve_forms(const Ring& ring, const VerifyOptions& options,
                            std::uint32_t D, unsigned jobs) {
  BatterySlices out;
  try {
    out.zfm = null_maximal_generators(ring);
    out.zfr = null_ring_generators(ring);
    out.zfm_gens = out.zfm->expanded_generators();
    out.zfr_gens = out.zfr->expanded_generators();
    out.structured = true;
    return out;
  } catch (const Error& ex) {
    if (!is_refusal(ex)) throw;
    out.form_note = ex.what();
  }
  if (options.zfm_generators) {
    out.zfm_gens = *options.zfm_generators;
  } else {
    Slice slice = exhaustive_null_slice(ring, Target::maximal_ideal(),
                                        std::nullopt, D, options.caps, jobs);
    out.zfm_gens = slice_to_generators(ring, slice);
  }
  Polynomial pi = pi_polynomial(ring);
  for (const Polynomial& g : out.zfm_gens)
    out.zfr_gens.push_back(g.compose(pi));
  out.zfm = StructuredIdeal::generator_list(ring, out.zfm_gens);
  out.zfr = StructuredIdeal::generator_list(ring, out.zfr_gens);
  return out;
}

CheckResult primary_check(const Ring& ring, const BatterySlices& forms,
                          std::uint32_t D, const OracleCaps& caps,
                          unsigned jobs) {
  const char* name = "primary-decomposition";
  PrimaryDecomposition pd = primary_decomposition(
      ring, forms.structured ? std::nullopt
                             : std::optional<std::vector<Polynomial>>(
                                   forms.zfm_gens));
  auto reps = ring.coset_reps();
  if (pd.components.size() != reps.size())
    return CheckResult{name, CheckStatus::Fail,
                       "expected one component per coset"};

  for (std::size_t i = 0; i < pd.components.size(); ++i) {
    const PrimaryComponent& comp = pd.components[i];
    for (const Polynomial& g : comp.generators) {
      VanishReport v = vanishes_on(g, Target::coset(comp.center));
      if (!v.vanishes)
        return CheckResult{name, CheckStatus::Fail,
                           "component generator " + g.to_string() +
                               " does not vanish on its coset " +
                               ring.element_label(comp.center) + " + m"};
    }
    if (comp.witness_value_at_center == ring.zero() ||
        comp.minimality_witness.evaluate(comp.center) !=
            comp.witness_value_at_center)
      return CheckResult{name, CheckStatus::Fail,
                         "minimality witness value is wrong at center " +
                             ring.element_label(comp.center)};
    for (std::size_t other = 0; other < pd.components.size(); ++other) {
      if (other == i) continue;
      VanishReport v = vanishes_on(comp.minimality_witness,
                                   Target::coset(reps[other]));
      if (!v.vanishes)
        return CheckResult{name, CheckStatus::Fail,
                           "minimality witness for center " +
                               ring.element_label(comp.center) +
                               " does not vanish on the coset of " +
                               ring.element_label(reps[other])};
    }
  }

  if (!forms.structured) {
    // span soundness per coset: every span member vanishes on the coset
    for (const PrimaryComponent& comp : pd.components) {
      StructuredIdeal translated =
          StructuredIdeal::generator_list(ring, comp.generators);
      SliceReport rep =
          slice_compare(ring, Target::coset(comp.center), translated, D,
                        std::nullopt, caps, jobs);
      if (!rep.certified)
        return CheckResult{name, CheckStatus::Fail,
                           "translated span claims a non-vanishing member "
                           "on coset " +
                               ring.element_label(comp.center)};
    }
    return CheckResult{name, CheckStatus::Pass,
                       "witnesses and translated generators verified "
                       "(span soundness only)"};
  }

  // structured path: one scan comparing, per coset, the translated rule
  // against evaluation, and the conjunction against the whole-ring slice
  const std::uint64_t total = candidate_count(ring, D, caps.slice_candidates);
  const StructuredIdeal& zfm = *forms.zfm;
  const std::uint32_t q = ring.residue_order();

  struct Partial {
    std::uint64_t rule_members = 0;
    std::uint64_t eval_members = 0;
    std::uint64_t mismatches = 0;
    std::string first;
  };
  std::vector<Partial> partial(shard_count(total, jobs));

  run_sharded(total, jobs, [&](std::size_t shard, std::uint64_t from,
                               std::uint64_t to) {
    Partial& p = partial[shard];
    std::vector<internal::ValueTracker> coset_values;
    std::vector<internal::LayerTracker> coset_layers;
    std::vector<RuleChecker> rules;
    for (std::uint32_t i = 0; i < q; ++i) {
      std::vector<Elem> pts =
          target_elements(ring, Target::coset(reps[i]));
      coset_values.emplace_back(ring, D, pts);
      Polynomial base =
          Polynomial::x(ring) - Polynomial::constant(ring, reps[i]);
      coset_layers.emplace_back(ring, D, base);
      StructuredIdeal translated =
          zfm.form == StructuredIdeal::Form::PowerForm
              ? StructuredIdeal::power_form(ring, base, zfm.m_gen, zfm.power)
              : StructuredIdeal::power_plus_form(ring, base, zfm.m_gen);
      rules.emplace_back(ring, translated);
    }
    std::vector<Elem> coeffs;
    internal::scan_range(
        ring, D, from, to, coeffs,
        [&] {
          for (auto& t : coset_values) t.reset(coeffs);
          for (auto& t : coset_layers) t.reset(coeffs);
        },
        [&](std::uint32_t k, Elem o, Elem n) {
          for (auto& t : coset_values) t.patch(k, o, n);
          for (auto& t : coset_layers) t.patch(k, o, n);
        },
        [&](std::uint64_t idx) {
          bool all_rules = true;
          bool all_eval = true;
          bool bad = false;
          for (std::uint32_t i = 0; i < q && !bad; ++i) {
            bool rule_v = rules[i].member(coset_layers[i]);
            bool eval_v = true;
            for (Elem v : coset_values[i].values)
              if (v != ring.zero()) {
                eval_v = false;
                break;
              }
            if (rule_v != eval_v) bad = true;
            all_rules = all_rules && rule_v;
            all_eval = all_eval && eval_v;
          }
          if (!bad && all_rules != all_eval) bad = true;
          if (all_eval) ++p.eval_members;
          if (all_rules) ++p.rule_members;
          if (bad) {
            ++p.mismatches;
            if (p.first.empty())
              p.first = candidate_polynomial(ring, D, idx).to_string();
          }
        });
  });

  std::uint64_t eval_members = 0, rule_members = 0, mismatches = 0;
  std::string first;
  for (Partial& p : partial) {
    eval_members += p.eval_members;
    rule_members += p.rule_members;
    mismatches += p.mismatches;
    if (first.empty()) first = std::move(p.first);
  }
  if (mismatches)
    return CheckResult{name, CheckStatus::Fail,
                       std::to_string(mismatches) +
                           " translated-rule mismatches; first " + first};
  return CheckResult{
      name, CheckStatus::Pass,
      "intersection of " + std::to_string(q) +
          " coset slices equals the whole-ring slice (" +
          std::to_string(eval_members) + " members at degree < " +
          std::to_string(D) + "), translated rules exact"};
}

CheckResult intersection_check(const Ring& ring,
                               const std::vector<std::uint64_t>& members,
                               std::uint32_t D, const VerifyOptions& options) {
  const char* name = "pi-intersection";
  const std::uint64_t m_size = ring.maximal_ideal().size();
  const std::uint32_t q = ring.residue_order();
  bool exhaustive = true;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < q; ++i) {
    if (total > options.caps.pi_polynomials / m_size) {
      exhaustive = false;
      break;
    }
    total *= m_size;
  }

  IntersectionMode mode;
  mode.exhaustive = exhaustive;
  mode.cap = options.caps.pi_polynomials;
  if (!exhaustive) {
    mode.samples = std::min<std::uint64_t>(1000, options.caps.pi_polynomials);
    mode.seed = options.seed;
  }

  for (std::uint64_t idx : members) {
    Polynomial f = candidate_polynomial(ring, D, idx);
    IntersectionReport rep = pi_intersection_check(f, mode);
    if (!rep.divisible_by_all)
      return CheckResult{name, CheckStatus::Fail,
                         "member " + f.to_string() +
                             " is not divisible by the pi-polynomial " +
                             rep.failing_pi->to_string()};
  }

  std::string detail = std::to_string(members.size()) + " members x " +
                       std::to_string(exhaustive ? total : mode.samples) +
                       (exhaustive ? " pi-polynomials" : " sampled lifts");
  if (!exhaustive)
    return CheckResult{name, CheckStatus::Approximate,
                       detail + "; non-member direction needs the "
                               "exhaustive mode"};

  // a few non-members must each fail divisibility somewhere
  std::unordered_set<std::uint64_t> member_set(members.begin(),
                                               members.end());
  const std::uint64_t candidates =
      candidate_count(ring, D, options.caps.slice_candidates);
  std::mt19937_64 gen(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uint64_t tested = 0;
  for (std::uint32_t attempts = 0; attempts < 10000 && tested < 10;
       ++attempts) {
    std::uint64_t idx = gen() % candidates;
    if (member_set.count(idx)) continue;
    ++tested;
    Polynomial f = candidate_polynomial(ring, D, idx);
    IntersectionReport rep = pi_intersection_check(f, mode);
    if (rep.divisible_by_all)
      return CheckResult{name, CheckStatus::Fail,
                         "non-member " + f.to_string() +
                             " is divisible by every pi-polynomial"};
  }
  return CheckResult{name, CheckStatus::Pass,
                     detail + "; " + std::to_string(tested) +
                         " non-members each fail some division"};
}

CheckResult composition_check(const Ring& ring,
                              const std::vector<std::uint64_t>& members,
                              const std::vector<Polynomial>& zfr_gens,
                              std::uint32_t D, const VerifyOptions& options) {
  const char* name = "composition-decomposition";
  Polynomial pi = pi_polynomial(ring);
  std::mt19937_64 gen(options.seed ^ 0xda942042e4dd58b5ULL);

  std::uint64_t done = 0;
  auto run_one = [&](const Polynomial& f) -> std::optional<CheckResult> {
    try {
      decompose_zero_function(f, pi);
    } catch (const Error& ex) {
      return CheckResult{name, CheckStatus::Fail,
                         "decomposition of " + f.to_string() +
                             " failed: " + ex.what()};
    }
    ++done;
    return std::nullopt;
  };

  if (members.size() <= options.composition_samples) {
    for (std::uint64_t idx : members)
      if (auto bad = run_one(candidate_polynomial(ring, D, idx))) return *bad;
  } else {
    for (std::uint64_t s = 0; s < options.composition_samples; ++s) {
      std::uint64_t idx = members[gen() % members.size()];
      if (auto bad = run_one(candidate_polynomial(ring, D, idx))) return *bad;
    }
  }

  // random generator combinations reach members beyond the slice degree
  const std::uint32_t q = ring.residue_order();
  std::uint64_t combos = zfr_gens.empty() ? 0 : options.composition_samples;
  for (std::uint64_t s = 0; s < combos; ++s) {
    Polynomial f(ring);
    for (const Polynomial& g : zfr_gens) {
      std::vector<Elem> h(q + 1);
      for (Elem& c : h) c = Elem(gen() % ring.order());
      f = f + g * Polynomial(ring, h);
    }
    if (auto bad = run_one(f)) return *bad;
  }
  return CheckResult{name, CheckStatus::Pass,
                     std::to_string(done) + " decompositions reconstructed "
                                            "with vanishing parts"};
}

CheckResult lift_check(const Ring& ring, const VerifyOptions& options) {
  const char* name = "lift-certificates";
  Polynomial pi = pi_polynomial(ring);
  const std::uint32_t q = ring.residue_order();
  auto m = ring.maximal_ideal();
  std::mt19937_64 gen(options.seed ^ 0xc2b2ae3d27d4eb4fULL);

  std::uint64_t lifts =
      std::min<std::uint64_t>(options.lift_count,
                              options.caps.lift_perturbations);
  std::uint64_t done = 0;
  for (std::uint64_t t = 0; t <= lifts; ++t) {
    Polynomial lift = pi;
    if (t > 0) {
      std::vector<Elem> delta(q, ring.zero());
      for (Elem& c : delta) c = m[gen() % m.size()];
      lift = pi + Polynomial(ring, delta);
    }
    try {
      for (Elem r = 0; r < ring.order(); ++r) teichmuller_lift(lift, r);
      factor_pi_polynomial(lift);
    } catch (const Error& ex) {
      return CheckResult{name, CheckStatus::Fail,
                         "lift " + lift.to_string() + ": " + ex.what()};
    }
    ++done;
  }
  return CheckResult{name, CheckStatus::Pass,
                     std::to_string(done) + " lifts, all starts, stabilized "
                                            "with growing valuations"};
}

CheckResult count_check(const Ring& ring, const VerifyOptions& options) {
  const char* name = "function-count";
  BigCount normal = 0;
  try {
    normal = count_polynomial_functions(ring, {CountMethod::NormalForm});
  } catch (const Error& ex) {
    if (is_refusal(ex))
      return CheckResult{name, CheckStatus::Skipped,
                         std::string("no structured count: ") + ex.what()};
    throw;
  }
  CountOptions exhaustive{CountMethod::Exhaustive, 0,
                          options.caps.slice_candidates};
  BigCount counted = 0;
  try {
    counted = count_polynomial_functions(ring, exhaustive);
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::CapExceeded)
      return CheckResult{name, CheckStatus::Skipped,
                         std::string("exhaustive count out of reach: ") +
                             ex.what()};
    throw;
  }
  if (normal != counted)
    return CheckResult{name, CheckStatus::Fail,
                       "normal form says " + count_to_string(normal) +
                           ", enumeration says " + count_to_string(counted)};
  return CheckResult{name, CheckStatus::Pass,
                     count_to_string(normal) + " functions by both methods"};
}

CheckResult classification_check(const Ring& ring) {
  const char* name = "classification";
  ClassificationReport rep = classify_ring_nullideal(ring);
  if (!rep.zfm_nonzero || !rep.zfR_nonzero || !rep.zfm_has_regular ||
      !rep.zfR_has_regular)
    return CheckResult{name, CheckStatus::Fail,
                       "a finite ring lost a guaranteed witness"};
  if (rep.zfm_principal != rep.is_field || rep.zfR_principal != rep.is_field)
    return CheckResult{name, CheckStatus::Fail,
                       "principality disagrees with the field property"};
  if (!is_regular_poly(rep.zfm_regular_witness).regular ||
      !is_regular_poly(rep.zfR_regular_witness).regular)
    return CheckResult{name, CheckStatus::Fail,
                       "regular witness is a zero divisor"};
  if (rep.is_field) {
    if (!rep.zfm_principal_generator || !rep.zfR_principal_generator)
      return CheckResult{name, CheckStatus::Fail,
                         "field case must supply principal generators"};
  } else {
    if (!rep.principal_failure_point)
      return CheckResult{name, CheckStatus::Fail,
                         "missing non-principality witness"};
    Polynomial pi = pi_polynomial(ring);
    if (pi.evaluate(*rep.principal_failure_point) !=
            *rep.principal_failure_value ||
        *rep.principal_failure_value == ring.zero())
      return CheckResult{name, CheckStatus::Fail,
                         "non-principality witness does not evaluate"};
  }
  return CheckResult{name, CheckStatus::Pass,
                     rep.is_field ? "field: both null ideals principal"
                                  : "not a field: neither null ideal "
                                    "principal, witness recorded"};
}

}  // namespace

BatteryReport verify_suite(const Ring& ring, const VerifyOptions& options) {
  const std::uint32_t requested =
      options.degree_bound
          ? options.degree_bound
          : ring.nilpotency_index() * ring.residue_order() + 1;
  const std::uint32_t D = std::max<std::uint32_t>(
      1, feasible_degree_bound(ring, requested, options.caps.slice_candidates));
  const unsigned jobs = std::max(1u, options.jobs);

  BatteryReport report;
  report.ring_label = ring.label();
  report.degree_bound = D;
  report.seed = options.seed;

  auto guarded = [&](auto&& fn) {
    try {
      report.checks.push_back(fn());
    } catch (const Error& ex) {
      if (ex.code() == ErrorCode::CapExceeded)
        report.checks.push_back(
            CheckResult{"(capped)", CheckStatus::Skipped, ex.what()});
      else
        report.checks.push_back(
            CheckResult{"(error)", CheckStatus::Fail, ex.what()});
    }
  };

  BatterySlices forms = resolve_forms(ring, options, D, jobs);

  guarded([&] {
    return slice_check("null-maximal-slice", ring, Target::maximal_ideal(),
                       *forms.zfm, D, std::nullopt, options.caps, jobs);
  });
  guarded([&] {
    return slice_check("null-ring-slice", ring, Target::whole_ring(),
                       *forms.zfr, D, std::nullopt, options.caps, jobs);
  });
  guarded([&] {
    StructuredIdeal into_m = StructuredIdeal::power_form(
        ring, pi_polynomial(ring), ring.zero(), 1);
    return slice_check("ring-into-maximal-slice", ring, Target::whole_ring(),
                       into_m, D, 1, options.caps, jobs);
  });
  guarded([&] { return surjectivity_check(ring); });
  guarded([&] {
    return primary_check(ring, forms, D, options.caps, jobs);
  });

  Slice zr_slice = exhaustive_null_slice(ring, Target::whole_ring(),
                                         std::nullopt, D, options.caps, jobs);
  guarded([&] {
    return intersection_check(ring, zr_slice.members, D, options);
  });
  guarded([&] {
    return composition_check(ring, zr_slice.members, forms.zfr_gens, D,
                             options);
  });
  guarded([&] { return lift_check(ring, options); });
  guarded([&] { return count_check(ring, options); });
  guarded([&] { return classification_check(ring); });

  return report;
}

NullIdealReport build_null_ideal_report(const Ring& ring, const Target& target,
                                        std::uint32_t degree_bound,
                                        const OracleCaps& caps, unsigned jobs) {
  StructuredIdeal ideal =
      target.kind == Target::Kind::MaximalIdeal
          ? null_maximal_generators(ring)
      : target.kind == Target::Kind::WholeRing
          ? null_ring_generators(ring)
          : [&] {
              PrimaryDecomposition pd = primary_decomposition(ring);
              for (PrimaryComponent& comp : pd.components)
                if (comp.center == target.center)
                  return StructuredIdeal::generator_list(
                      ring, std::move(comp.generators));
              std::vector<Polynomial> translated;
              Polynomial shift = Polynomial::x(ring) -
                                 Polynomial::constant(ring, target.center);
              for (const Polynomial& g :
                   null_maximal_generators(ring).expanded_generators())
                translated.push_back(g.compose(shift));
              return StructuredIdeal::generator_list(ring,
                                                     std::move(translated));
            }();

  const std::uint32_t requested =
      degree_bound ? degree_bound
                   : ring.nilpotency_index() * ring.residue_order() + 1;
  const std::uint32_t D = std::max<std::uint32_t>(
      1, feasible_degree_bound(ring, requested, caps.slice_candidates));

  NullIdealReport report{target, ideal, D, false, false, 0, 0, std::nullopt};
  SliceReport sliced = slice_compare(ring, target, ideal, D, std::nullopt,
                                     caps, jobs);
  report.verified = sliced.certified && !sliced.approximate;
  report.approximate = sliced.approximate;
  report.oracle_candidates = sliced.candidates;
  report.oracle_members = sliced.member_count;
  if (target.kind == Target::Kind::WholeRing) {
    try {
      report.function_count =
          count_polynomial_functions(ring, {CountMethod::NormalForm});
    } catch (const Error&) {
      report.function_count = std::nullopt;
    }
  }
  return report;
}

}  // namespace zerofn
