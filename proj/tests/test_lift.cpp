#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include <zerofn/lift.hpp>
#include <zerofn/null_ideal.hpp>

#include "test_rings.hpp"

using namespace zerofn;
using zerofn::testing::error_code_of;

TEST_CASE("root lifting over Z/125 walks the documented trace") {
  Ring r = Ring::mod_prime_power(5, 3);
  Polynomial f(r, {50, 24, 85, 40, 5, 1});
  // x^5 + 5x^4 + 40x^3 + 85x^2 + 24x + 50

  TeichmullerTrace t0 = teichmuller_lift(f, 0);
  CHECK(t0.iterates == std::vector<Elem>{0, 50, 50});
  CHECK(t0.diff_valuations == std::vector<std::uint32_t>{2, 3});
  CHECK(t0.stabilized_at == 1);
  CHECK(t0.root == 50);

  TeichmullerTrace t1 = teichmuller_lift(f, 1);
  CHECK(t1.iterates == std::vector<Elem>{1, 81, 31, 31});
  CHECK(t1.diff_valuations == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(t1.stabilized_at == 2);
  CHECK(t1.root == 31);

  CHECK(teichmuller_lift(f, 2).iterates ==
        std::vector<Elem>{2, 122, 72, 72});
  CHECK(teichmuller_lift(f, 3).iterates ==
        std::vector<Elem>{3, 118, 18, 18});
  CHECK(teichmuller_lift(f, 4).iterates ==
        std::vector<Elem>{4, 124, 74, 74});
}

TEST_CASE("factoring splits into exact linear factors") {
  Ring r = Ring::mod_prime_power(5, 3);
  Polynomial f(r, {50, 24, 85, 40, 5, 1});
  FactorResult fr = factor_pi_polynomial(f);
  CHECK(fr.roots == std::vector<Elem>{50, 31, 72, 18, 74});
  CHECK(fr.product == f);
  REQUIRE(fr.traces.size() == 5);
  for (const TeichmullerTrace& t : fr.traces) {
    CHECK(t.stabilized_at <= 2);
    CHECK(f.evaluate(t.root) == 0);
    CHECK(r.congruent(t.root, t.start));
  }
  for (std::size_t i = 0; i < fr.roots.size(); ++i)
    for (std::size_t j = i + 1; j < fr.roots.size(); ++j)
      CHECK(r.is_unit(r.sub(fr.roots[i], fr.roots[j])));
}

TEST_CASE("the canonical pi is already split") {
  Ring r = Ring::mod_prime_power(5, 3);
  FactorResult fr = factor_pi_polynomial(pi_polynomial(r));
  CHECK(fr.roots == std::vector<Elem>{0, 1, 2, 3, 4});
  for (const TeichmullerTrace& t : fr.traces) CHECK(t.stabilized_at == 0);
}

TEST_CASE("lifting accepts non-monic inputs with the right residue") {
  Ring z9 = Ring::mod_prime_power(3, 2);
  Polynomial f(z9, {0, 8, 0, 1, 3});  // x^3 - x + 3x^4
  TeichmullerTrace t = teichmuller_lift(f, 1);
  CHECK(f.evaluate(t.root) == 0);
  CHECK(z9.congruent(t.root, 1));
  // but factoring insists on an actual pi polynomial
  CHECK(error_code_of([&] { factor_pi_polynomial(f); }) ==
        ErrorCode::NotAPiPolynomial);
}

TEST_CASE("wrong residue images are refused") {
  Ring r = Ring::mod_prime_power(5, 3);
  CHECK(error_code_of([&] {
          teichmuller_lift(Polynomial(r, {0, 0, 1}), 0);
        }) == ErrorCode::NotALift);
  CHECK(error_code_of([&] {
          factor_pi_polynomial(Polynomial(r, {0, 0, 1}));
        }) == ErrorCode::NotAPiPolynomial);
  CHECK(error_code_of([&] {
          teichmuller_lift(pi_polynomial(r), 125);
        }) == ErrorCode::ForeignElement);
}

TEST_CASE("difference valuations grow a step per iteration") {
  for (Ring ring : zerofn::testing::acceptance_rings()) {
    const std::uint32_t e = ring.nilpotency_index();
    Polynomial pi = pi_polynomial(ring);
    for (Elem start = 0; start < ring.order(); ++start) {
      TeichmullerTrace t = teichmuller_lift(pi, start);
      CHECK(t.stabilized_at + 1 <= std::max<std::uint32_t>(e, 1));
      for (std::size_t n = 1; n <= t.diff_valuations.size(); ++n)
        CHECK(t.diff_valuations[n - 1] >=
              std::min<std::uint32_t>(std::uint32_t(n), e));
      CHECK(t.iterates.back() == t.root);
      CHECK(t.iterates[t.iterates.size() - 2] == t.root);
      CHECK(pi.evaluate(t.root) == 0);
      CHECK(ring.congruent(t.root, start));
    }
  }
}

TEST_CASE("each residue class owns exactly one root") {
  for (Ring ring :
       {Ring::mod_prime_power(2, 3), Ring::mod_prime_power(3, 2),
        Ring::chain(2, 1, 3), zerofn::testing::f2su_ring()}) {
    Polynomial pi = pi_polynomial(ring);
    FactorResult fr = factor_pi_polynomial(pi);
    std::vector<Elem> brute;
    for (Elem a = 0; a < ring.order(); ++a)
      if (pi.evaluate(a) == 0) brute.push_back(a);
    std::vector<Elem> roots = fr.roots;
    std::sort(roots.begin(), roots.end());
    CHECK(roots == brute);
  }
}
