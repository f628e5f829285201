#pragma once

// Root lifting for pi-polynomials: iterating r -> pi(r) + r contracts each
// residue class onto the unique root of pi it contains, with the difference
// valuations growing by one per step.  Factors any pi-polynomial into exact
// linear factors.

#include <cstdint>
#include <vector>

#include "zerofn/poly.hpp"
#include "zerofn/ring.hpp"

namespace zerofn {

struct TeichmullerTrace {
  Elem start = 0;
  // p_0(start) = start, then pi(r) + r repeatedly; the final entry repeats
  // its predecessor, witnessing stabilization
  std::vector<Elem> iterates;
  // valuation(iterates[n] - iterates[n-1]) for n = 1..; grows at least
  // linearly in n
  std::vector<std::uint32_t> diff_valuations;
  std::uint32_t stabilized_at = 0;  // least n with iterates[n] fixed
  Elem root = 0;
};

// pi need not be monic; it must reduce to x^q - x over the residue field.
TeichmullerTrace teichmuller_lift(const Polynomial& pi, Elem start);

struct FactorResult {
  std::vector<TeichmullerTrace> traces;  // one per canonical representative
  std::vector<Elem> roots;
  Polynomial product;  // expanded prod (x - root_i); equals the input
};

// Splits a pi-polynomial into linear factors over the ring; the expanded
// product is compared coefficient-exactly with the input.
FactorResult factor_pi_polynomial(const Polynomial& pi);

}  // namespace zerofn
