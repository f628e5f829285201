#pragma once

#include <array>
#include <optional>
#include <vector>

#include <zerofn/ring.hpp>

namespace zerofn::testing {

// F2[s,u]/(s,u)^2: the element a + b*s + c*u sits at index a + 2b + 4c.
// Multiplication kills every product of {s, u}.
inline TableData f2su_table() {
  TableData data;
  data.order = 8;
  data.zero = 0;
  data.one = 1;
  data.add.assign(64, 0);
  data.mul.assign(64, 0);
  auto bits = [](Elem x) {
    return std::array<Elem, 3>{x & 1u, (x >> 1) & 1u, (x >> 2) & 1u};
  };
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) {
      auto a = bits(x), b = bits(y);
      data.add[x * 8 + y] = (a[0] ^ b[0]) | ((a[1] ^ b[1]) << 1) |
                            ((a[2] ^ b[2]) << 2);
      Elem lin_s = (a[0] & b[1]) ^ (a[1] & b[0]);
      Elem lin_u = (a[0] & b[2]) ^ (a[2] & b[0]);
      data.mul[x * 8 + y] = (a[0] & b[0]) | (lin_s << 1) | (lin_u << 2);
    }
  return data;
}

inline Ring f2su_ring() { return Ring::from_table(f2su_table()); }

// Every ring exercised by the acceptance criteria.
inline std::vector<Ring> acceptance_rings() {
  std::vector<Ring> rings;
  rings.push_back(Ring::mod_prime_power(2, 1));
  rings.push_back(Ring::mod_prime_power(3, 1));
  rings.push_back(Ring::mod_prime_power(2, 2));
  rings.push_back(Ring::mod_prime_power(5, 1));
  rings.push_back(Ring::mod_prime_power(2, 3));
  rings.push_back(Ring::mod_prime_power(3, 2));
  rings.push_back(Ring::mod_prime_power(5, 2));
  rings.push_back(Ring::mod_prime_power(3, 3));
  rings.push_back(Ring::mod_prime_power(5, 3));
  rings.push_back(Ring::chain(2, 2, 1));
  rings.push_back(Ring::chain(2, 1, 2));
  rings.push_back(Ring::chain(2, 1, 3));
  rings.push_back(f2su_ring());
  return rings;
}

template <class F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& ex) {
    return ex.code();
  }
  return std::nullopt;
}

}  // namespace zerofn::testing
