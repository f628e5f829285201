#pragma once

// Brute-force ground truth.  Everything here decides membership by literal
// evaluation over enumerated candidate polynomials, independently of the
// structured rules it is used to certify.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zerofn/lift.hpp"
#include "zerofn/null_ideal.hpp"
#include "zerofn/poly.hpp"
#include "zerofn/ring.hpp"

namespace zerofn {

struct OracleCaps {
  std::uint64_t slice_candidates = 10000000;
  std::uint64_t pi_polynomials = 100000;
  std::uint64_t lift_perturbations = 1000;
};

// |R|^D, refusing to exceed cap
std::uint64_t candidate_count(const Ring& ring, std::uint32_t D,
                              std::uint64_t cap);
// the largest D' <= D with |R|^D' within cap (0 if even D'=1 is out)
std::uint32_t feasible_degree_bound(const Ring& ring, std::uint32_t D,
                                    std::uint64_t cap);

Polynomial candidate_polynomial(const Ring& ring, std::uint32_t D,
                                std::uint64_t index);
std::uint64_t candidate_index(const Polynomial& f, std::uint32_t D);

struct Slice {
  std::uint32_t degree_bound = 0;
  bool approximate = false;  // additive-span lower bound, not certified full
  std::vector<std::uint64_t> members;  // sorted candidate indices
};

// All polynomials of degree < D mapping the target into m^into (into
// defaults to e, i.e. value zero), decided by evaluation.
Slice exhaustive_null_slice(const Ring& ring, const Target& target,
                            std::optional<std::uint32_t> into,
                            std::uint32_t degree_bound,
                            const OracleCaps& caps = {}, unsigned jobs = 1);

// Degree-< D part of a structured ideal.  PowerForm/PowerPlusForm slices
// come from the membership rule and are exact; GeneratorList slices are the
// additive span of shifted generator multiples and carry approximate=true.
Slice ideal_slice(const StructuredIdeal& ideal, std::uint32_t degree_bound,
                  const OracleCaps& caps = {}, unsigned jobs = 1);

// Greedy reduction of a slice to generators: repeatedly take the least
// member outside the span of those already chosen.
std::vector<Polynomial> slice_to_generators(const Ring& ring,
                                            const Slice& slice);

struct SliceMismatch {
  std::uint64_t index = 0;
  bool structured_verdict = false;
  bool oracle_verdict = false;
};

struct SliceReport {
  std::string ring_label;
  std::string target_description;
  std::string ideal_description;
  std::uint32_t degree_bound = 0;
  std::uint64_t candidates = 0;
  std::uint64_t member_count = 0;  // oracle-side members
  bool approximate = false;
  bool certified = false;
  std::uint64_t mismatch_count = 0;
  std::vector<SliceMismatch> mismatches;  // at most 16 retained
};

// Single-pass comparison of the evaluation slice of `target` against the
// structured slice of `ideal`.  With a GeneratorList ideal the structured
// side is its additive span: span members missing from the oracle slice
// are mismatches, oracle members missing from the span are expected and
// only recorded when the span claims exactness is impossible to certify.
SliceReport slice_compare(const Ring& ring, const Target& target,
                          const StructuredIdeal& ideal,
                          std::uint32_t degree_bound,
                          std::optional<std::uint32_t> into = std::nullopt,
                          const OracleCaps& caps = {}, unsigned jobs = 1);

enum class CheckStatus { Pass, Fail, Approximate, Skipped };
const char* check_status_name(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
};

struct VerifyOptions {
  std::uint32_t degree_bound = 0;  // 0: e*q + 1, clamped to the cap
  std::uint64_t seed = 0;
  OracleCaps caps{};
  unsigned jobs = 1;
  std::uint64_t lift_count = 100;
  std::uint64_t composition_samples = 200;
  // explicit Z(m) generators for rings where no structured form exists
  std::optional<std::vector<Polynomial>> zfm_generators;
};

struct BatteryReport {
  std::string ring_label;
  std::uint32_t degree_bound = 0;  // the bound actually used
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const CheckResult& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
};

// The full certification battery: slice equivalences, pi surjectivity,
// primary decomposition, the intersection characterization, composition
// decompositions, lift certificates, function counts, classification.
BatteryReport verify_suite(const Ring& ring, const VerifyOptions& options = {});

// Structured ideal for the target plus its oracle cross-check at the
// largest feasible degree bound.
NullIdealReport build_null_ideal_report(const Ring& ring, const Target& target,
                                        std::uint32_t degree_bound = 0,
                                        const OracleCaps& caps = {},
                                        unsigned jobs = 1);

}  // namespace zerofn
