#include "zerofn/lift.hpp"

#include <algorithm>

#include "zerofn/null_ideal.hpp"

namespace zerofn {

namespace {

bool reduces_to_frobenius(const Polynomial& pi) {
  const Ring& R = pi.ring();
  Ring k = R.residue_field();
  Polynomial frobenius =
      Polynomial::monomial(k, k.one(), R.residue_order()) - Polynomial::x(k);
  return reduce_mod_m(pi) == frobenius;
}

}  // namespace

TeichmullerTrace teichmuller_lift(const Polynomial& pi, Elem start) {
  const Ring& R = pi.ring();
  R.require_element(start);
  if (!reduces_to_frobenius(pi))
    fail(ErrorCode::NotALift,
         pi.to_string() + " does not reduce to x^q - x over the residue "
                          "field of " + R.label());
  const std::uint32_t e = R.nilpotency_index();

  TeichmullerTrace trace;
  trace.start = start;
  trace.iterates.push_back(start);
  bool stabilized = false;
  for (std::uint32_t n = 1; n <= e; ++n) {
    Elem cur = trace.iterates.back();
    Elem next = R.add(pi.evaluate(cur), cur);
    trace.iterates.push_back(next);
    trace.diff_valuations.push_back(R.valuation(R.sub(next, cur)));
    if (next == cur) {
      stabilized = true;
      break;
    }
  }
  if (!stabilized)
    fail(ErrorCode::NoStabilization,
         "iteration from " + R.element_label(start) + " under " +
             pi.to_string() + " is still moving after " + std::to_string(e) +
             " steps");

  trace.stabilized_at = std::uint32_t(trace.iterates.size() - 2);
  trace.root = trace.iterates.back();

  for (std::size_t n = 1; n < trace.iterates.size(); ++n)
    if (trace.diff_valuations[n - 1] < std::min<std::uint32_t>(n, e))
      fail(ErrorCode::InternalError,
           "difference valuation " +
               std::to_string(trace.diff_valuations[n - 1]) +
               " at step " + std::to_string(n) + " is below the guarantee");
  if (pi.evaluate(trace.root) != R.zero())
    fail(ErrorCode::InternalError,
         "stabilized value is not a root of " + pi.to_string());
  if (!R.congruent(trace.root, start))
    fail(ErrorCode::InternalError,
         "root " + R.element_label(trace.root) +
             " left the residue class of " + R.element_label(start));
  return trace;
}

FactorResult factor_pi_polynomial(const Polynomial& pi) {
  const Ring& R = pi.ring();
  if (!is_pi_polynomial(pi))
    fail(ErrorCode::NotAPiPolynomial,
         pi.to_string() + " is not monic of degree q with residue image "
                          "x^q - x");

  FactorResult out{{}, {}, Polynomial::constant(R, R.one())};
  for (Elem c : R.coset_reps()) {
    TeichmullerTrace trace = teichmuller_lift(pi, c);
    out.roots.push_back(trace.root);
    out.traces.push_back(std::move(trace));
  }
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t j = i + 1; j < out.roots.size(); ++j)
      if (!R.is_unit(R.sub(out.roots[i], out.roots[j])))
        fail(ErrorCode::InternalError,
             "roots " + R.element_label(out.roots[i]) + " and " +
                 R.element_label(out.roots[j]) +
                 " collide modulo the maximal ideal");
  for (Elem d : out.roots)
    out.product =
        out.product * (Polynomial::x(R) - Polynomial::constant(R, d));
  if (out.product != pi)
    fail(ErrorCode::InternalError,
         "expanded linear factors do not reproduce " + pi.to_string());
  return out;
}

}  // namespace zerofn
