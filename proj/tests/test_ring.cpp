#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <zerofn/ring.hpp>

#include "test_rings.hpp"

using namespace zerofn;
using zerofn::testing::error_code_of;
using zerofn::testing::f2su_table;

TEST_CASE("Z/9 exposes its local structure") {
  Ring r = Ring::mod_prime_power(3, 2);
  CHECK(r.kind() == RingKind::ModPrimePower);
  CHECK(r.order() == 9);
  CHECK(r.residue_order() == 3);
  CHECK(r.nilpotency_index() == 2);
  CHECK_FALSE(r.is_field());
  CHECK(r.label() == "Z/3^2");

  std::vector<Elem> m(r.maximal_ideal().begin(), r.maximal_ideal().end());
  CHECK(m == std::vector<Elem>{0, 3, 6});
  std::vector<Elem> reps(r.coset_reps().begin(), r.coset_reps().end());
  CHECK(reps == std::vector<Elem>{0, 1, 2});
  CHECK(reps[0] == r.zero());

  CHECK(r.valuation(0) == 2);
  CHECK(r.valuation(3) == 1);
  CHECK(r.valuation(6) == 1);
  CHECK(r.valuation(1) == 0);
  CHECK(r.valuation(5) == 0);

  CHECK(r.in_m_power(0, 7));
  CHECK(r.in_m_power(3, 1));
  CHECK_FALSE(r.in_m_power(3, 2));
  CHECK(r.in_m_power(4, 0));

  CHECK(r.principal_m_generator() == Elem{3});
  std::vector<Elem> gens(r.m_minimal_generators().begin(),
                         r.m_minimal_generators().end());
  CHECK(gens == std::vector<Elem>{3});
  CHECK(r.mul(r.m_annihilator_witness(), 3) == 0);
  CHECK(r.m_annihilator_witness() != 0);
}

TEST_CASE("arithmetic mod 8") {
  Ring r = Ring::mod_prime_power(2, 3);
  CHECK(r.order() == 8);
  CHECK(r.residue_order() == 2);
  CHECK(r.nilpotency_index() == 3);
  CHECK(r.add(5, 6) == 3);
  CHECK(r.mul(5, 6) == 6);
  CHECK(r.neg(3) == 5);
  CHECK(r.sub(2, 7) == 3);
  CHECK(r.pow(3, 0) == 1);
  CHECK(r.pow(2, 3) == 0);
  CHECK(r.pow(3, 5) == 3);
  CHECK(r.valuation(4) == 2);
  CHECK(r.valuation(2) == 1);
  CHECK(r.valuation(6) == 1);
  std::vector<Elem> reps(r.coset_reps().begin(), r.coset_reps().end());
  CHECK(reps == std::vector<Elem>{0, 1});
}

TEST_CASE("prime fields") {
  Ring f7 = Ring::mod_prime_power(7, 1);
  CHECK(f7.is_field());
  CHECK(f7.nilpotency_index() == 1);
  CHECK(f7.residue_order() == 7);
  CHECK(f7.maximal_ideal().size() == 1);
  CHECK(f7.maximal_ideal()[0] == 0);
  CHECK(f7.coset_reps().size() == 7);
  CHECK(f7.m_minimal_generators().empty());
  CHECK(f7.principal_m_generator() == Elem{0});
  CHECK(f7.residue_field().same_ring(f7));
  for (Elem a = 0; a < 7; ++a) CHECK(f7.to_residue(a) == a);
}

TEST_CASE("residue maps on Z/27") {
  Ring r = Ring::mod_prime_power(3, 3);
  Ring k = r.residue_field();
  CHECK(k.order() == 3);
  CHECK_FALSE(k.same_ring(r));
  for (Elem a = 0; a < 27; ++a) {
    Elem t = r.to_residue(a);
    CHECK(t < 3);
    CHECK(r.congruent(a, r.lift_residue(t)));
  }
  CHECK(r.congruent(1, 4));
  CHECK(r.congruent(26, 2));
  CHECK_FALSE(r.congruent(1, 2));
}

TEST_CASE("F4 as a degree-one chain") {
  Ring f4 = Ring::chain(2, 2, 1);
  CHECK(f4.kind() == RingKind::Chain);
  CHECK(f4.is_field());
  CHECK(f4.order() == 4);
  CHECK(f4.residue_order() == 4);
  CHECK(f4.label() == "F4");
  // x^2 = x + 1 under the least irreducible x^2 + x + 1
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.mul(2, 3) == 1);
  CHECK(f4.add(2, 3) == 1);
}

TEST_CASE("truncated polynomial ring F2[t]/t^3") {
  Ring r = Ring::chain(2, 1, 3);
  CHECK(r.order() == 8);
  CHECK(r.residue_order() == 2);
  CHECK(r.nilpotency_index() == 3);
  CHECK(r.label() == "F2[t]/t^3");
  // index = sum digit_i * 2^i over the t-adic digits
  Elem t = 2;
  CHECK(r.valuation(t) == 1);
  CHECK(r.mul(t, t) == 4);
  CHECK(r.mul(r.mul(t, t), t) == 0);
  CHECK(r.add(t, t) == 0);
  CHECK(r.add(1, t) == 3);
  CHECK(r.principal_m_generator() == t);
  auto detail = r.element_detail(3);
  REQUIRE(detail.has_value());
  CHECK(*detail == "t + 1");
  CHECK(r.element_detail(4) == "t^2");
  CHECK(r.element_detail(0) == "0");
}

TEST_CASE("F4[t]/t^2 keeps the field tower straight") {
  Ring r = Ring::chain(2, 2, 2);
  CHECK(r.order() == 16);
  CHECK(r.residue_order() == 4);
  CHECK(r.nilpotency_index() == 2);
  CHECK(r.coset_reps().size() == 4);
  CHECK(r.maximal_ideal().size() == 4);
  Ring k = r.residue_field();
  CHECK(k.order() == 4);
  for (Elem a : r.maximal_ideal()) CHECK(r.to_residue(a) == 0);
}

TEST_CASE("chain construction rejects bad moduli") {
  CHECK(error_code_of([] { Ring::chain(4, 1, 2); }) == ErrorCode::NotPrime);
  CHECK(error_code_of([] {
          Ring::chain(2, 2, 1, std::vector<std::uint32_t>{1, 0, 1});
        }) == ErrorCode::NotIrreducible);
  CHECK(error_code_of([] {
          Ring::chain(2, 2, 1, std::vector<std::uint32_t>{1, 1});
        }) == ErrorCode::NotIrreducible);
  CHECK_NOTHROW(Ring::chain(2, 2, 1, std::vector<std::uint32_t>{1, 1, 1}));
  CHECK(error_code_of([] { Ring::mod_prime_power(6, 1); }) ==
        ErrorCode::NotPrime);
  CHECK(error_code_of([] { Ring::mod_prime_power(2, 0); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("table ring with a two-generator maximal ideal") {
  Ring r = Ring::from_table(f2su_table());
  CHECK(r.kind() == RingKind::Table);
  CHECK(r.order() == 8);
  CHECK(r.residue_order() == 2);
  CHECK(r.nilpotency_index() == 2);
  std::vector<Elem> m(r.maximal_ideal().begin(), r.maximal_ideal().end());
  CHECK(m == std::vector<Elem>{0, 2, 4, 6});
  std::vector<Elem> gens(r.m_minimal_generators().begin(),
                         r.m_minimal_generators().end());
  CHECK(gens == std::vector<Elem>{2, 4});
  CHECK_FALSE(r.principal_m_generator().has_value());
  CHECK(r.m_annihilator_witness() == 2);
  CHECK(r.mul(2, 2) == 0);
  CHECK(r.mul(2, 4) == 0);
  CHECK(r.mul(3, 5) == 7);  // (1+s)(1+u) = 1 + s + u once su dies
  CHECK(r.residue_field().order() == 2);
}

TEST_CASE("table validation catches a broken operation") {
  TableData bad = f2su_table();
  bad.mul[3 * 8 + 5] = 1;  // (1+s)(1+u) is really 1+s+u
  CHECK(error_code_of([&] { Ring::from_table(bad); }) == ErrorCode::NotARing);
}

TEST_CASE("table validation refuses non-local rings") {
  TableData z6;
  z6.order = 6;
  z6.zero = 0;
  z6.one = 1;
  z6.add.resize(36);
  z6.mul.resize(36);
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) {
      z6.add[a * 6 + b] = (a + b) % 6;
      z6.mul[a * 6 + b] = (a * b) % 6;
    }
  CHECK(error_code_of([&] { Ring::from_table(z6); }) == ErrorCode::NotLocal);
}

TEST_CASE("order cap refuses oversized rings") {
  CHECK(error_code_of([] { Ring::mod_prime_power(2, 13); }) ==
        ErrorCode::SizeLimit);
  RingOptions loose;
  loose.order_cap = 10000;
  CHECK_NOTHROW(Ring::mod_prime_power(2, 13, loose));
  RingOptions tight;
  tight.order_cap = 7;
  CHECK(error_code_of([&] { Ring::mod_prime_power(2, 3, tight); }) ==
        ErrorCode::SizeLimit);
}

TEST_CASE("element_from_integer reduces and negates") {
  Ring z9 = Ring::mod_prime_power(3, 2);
  CHECK(z9.element_from_integer(11) == 2);
  CHECK(z9.element_from_integer(-1) == 8);
  CHECK(z9.element_from_integer(-10) == 8);
  Ring chain = Ring::chain(2, 1, 3);
  CHECK(chain.element_from_integer(5) == 5);
  CHECK(chain.element_from_integer(-1) == 1);  // characteristic 2
  CHECK(error_code_of([&] { chain.element_from_integer(9); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("foreign elements and mixed rings are rejected") {
  Ring z9 = Ring::mod_prime_power(3, 2);
  Ring z8 = Ring::mod_prime_power(2, 3);
  CHECK(error_code_of([&] { z9.require_element(9); }) ==
        ErrorCode::ForeignElement);
  CHECK_NOTHROW(z9.require_element(8));
  CHECK(error_code_of([&] { z9.require_same(z8); }) ==
        ErrorCode::ForeignElement);
  CHECK_NOTHROW(z9.require_same(z9));
}

TEST_CASE("ring identity is per construction") {
  Ring a = Ring::mod_prime_power(3, 2);
  Ring b = Ring::mod_prime_power(3, 2);
  Ring c = a;
  CHECK(a == c);
  CHECK(a.same_ring(c));
  CHECK_FALSE(a == b);
  CHECK(a.id() != b.id());
}

TEST_CASE("ring spec grammar") {
  CHECK(parse_ring_spec("Z/9").label() == "Z/3^2");
  CHECK(parse_ring_spec("Z/3^2").label() == "Z/3^2");
  CHECK(parse_ring_spec("Z/8").order() == 8);
  CHECK(parse_ring_spec("F4[t]/t").label() == "F4");
  CHECK(parse_ring_spec("F2[t]/t^3").label() == "F2[t]/t^3");
  CHECK(parse_ring_spec("F9[t]/t^2").order() == 81);
  CHECK(error_code_of([] { parse_ring_spec("Z/12"); }) == ErrorCode::NotPrime);
  CHECK(error_code_of([] { parse_ring_spec("Z/0"); }) == ErrorCode::NotPrime);
  CHECK(error_code_of([] { parse_ring_spec("F6[t]/t^2"); }) ==
        ErrorCode::NotPrime);
  CHECK(error_code_of([] { parse_ring_spec("ring soup"); }) ==
        ErrorCode::ParseError);
  CHECK(error_code_of([] { parse_ring_spec(""); }) == ErrorCode::ParseError);
}

TEST_CASE("table files round-trip through the spec parser") {
  TableData data = f2su_table();
  std::string path = "test_ring_table.json";
  {
    std::ofstream out(path);
    auto rows = [&](const std::vector<Elem>& flat) {
      std::string s;
      for (Elem a = 0; a < 8; ++a) {
        s += a ? ",[" : "[";
        for (Elem b = 0; b < 8; ++b)
          s += (b ? "," : "") + std::to_string(flat[a * 8 + b]);
        s += "]";
      }
      return s;
    };
    out << "{\"order\":8,\"zero\":0,\"one\":1,\"add\":[" << rows(data.add)
        << "],\"mul\":[" << rows(data.mul) << "]}\n";
  }
  TableData loaded = load_table_file(path);
  CHECK(loaded.order == data.order);
  CHECK(loaded.add == data.add);
  CHECK(loaded.mul == data.mul);
  Ring r = parse_ring_spec("table:" + path);
  CHECK(r.order() == 8);
  CHECK(r.m_minimal_generators().size() == 2);
  CHECK(error_code_of([] { parse_ring_spec("table:no_such_file.json"); }) ==
        ErrorCode::ParseError);
  std::remove(path.c_str());
}
