#include "zerofn/ring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zerofn {
namespace {

std::atomic<std::uint64_t> next_ring_uid{1};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimePower {
  std::uint64_t p;
  std::uint32_t k;
};

std::optional<PrimePower> factor_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (p * p > n) return PrimePower{n, 1};
  std::uint32_t k = 0;
  std::uint64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return std::nullopt;
  return PrimePower{p, k};
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp,
                          std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (result > limit / base) return limit + 1;
    result *= base;
  }
  return result;
}

// ---- polynomials over Z/p, used only for chain-ring modulus handling ----

using PPoly = std::vector<std::uint32_t>;  // little-endian coefficients

void pp_normalize(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b over Z/p
PPoly pp_mod(PPoly a, const PPoly& b, std::uint32_t p) {
  pp_normalize(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0)
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t s = a[shift + j] + std::uint64_t(p - 1) * lead * b[j];
        a[shift + j] = std::uint32_t(s % p);
      }
    a.pop_back();
    pp_normalize(a);
    if (a.size() <= db) break;
  }
  return a;
}

bool pp_is_zero(const PPoly& a) { return a.empty(); }

bool pp_irreducible(const PPoly& monic, std::uint32_t p) {
  const std::size_t r = monic.size() - 1;
  if (r == 1) return true;
  // trial division by every monic polynomial of lower degree >= 1
  for (std::size_t d = 1; d < r; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PPoly div(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = std::uint32_t(v % p);
        v /= p;
      }
      div[d] = 1;
      if (pp_is_zero(pp_mod(monic, div, p))) return false;
    }
  }
  return true;
}

// least monic irreducible of degree r over Z/p under the mixed-radix scan
// of the lower coefficient vector
PPoly find_irreducible(std::uint32_t p, std::uint32_t r) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < r; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PPoly cand(r + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < r; ++i) {
      cand[i] = std::uint32_t(v % p);
      v /= p;
    }
    cand[r] = 1;
    if (pp_irreducible(cand, p)) return cand;
  }
  fail(ErrorCode::InternalError,
       "no irreducible polynomial of degree " + std::to_string(r) +
           " over Z/" + std::to_string(p));
}

// ---- concrete ring kinds ----

struct ZpnCore final : detail::RingCore {
  std::uint64_t modulus = 0;

  Elem v_add(Elem a, Elem b) const override {
    std::uint64_t s = std::uint64_t(a) + b;
    return Elem(s >= modulus ? s - modulus : s);
  }
  Elem v_mul(Elem a, Elem b) const override {
    return Elem((std::uint64_t(a) * b) % modulus);
  }
  Elem v_neg(Elem a) const override {
    return a == 0 ? 0 : Elem(modulus - a);
  }
};

struct ChainCore final : detail::RingCore {
  std::uint32_t p = 0, r = 1, steps = 1;
  std::uint32_t fq = 0;                 // p^r
  std::vector<std::uint32_t> fmod;      // monic, little-endian, size r+1
  std::vector<Elem> fq_mul_tab;         // populated when fq <= 256

  std::uint32_t fq_add(std::uint32_t x, std::uint32_t y) const {
    if (r == 1) {
      std::uint32_t s = x + y;
      return s >= p ? s - p : s;
    }
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      std::uint32_t s = x % p + y % p;
      if (s >= p) s -= p;
      out += s * scale;
      scale *= p;
      x /= p;
      y /= p;
    }
    return out;
  }

  std::uint32_t fq_neg(std::uint32_t x) const {
    if (r == 1) return x == 0 ? 0 : p - x;
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      std::uint32_t d = x % p;
      out += (d == 0 ? 0 : p - d) * scale;
      scale *= p;
      x /= p;
    }
    return out;
  }

  std::uint32_t fq_mul_slow(std::uint32_t x, std::uint32_t y) const {
    if (r == 1) return std::uint32_t((std::uint64_t(x) * y) % p);
    std::array<std::uint32_t, 32> a{}, b{}, acc{};
    for (std::uint32_t i = 0; i < r; ++i) {
      a[i] = x % p;
      x /= p;
      b[i] = y % p;
      y /= p;
    }
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j)
        acc[i + j] = std::uint32_t((acc[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    for (std::uint32_t i = 2 * r - 2; i >= r; --i) {
      std::uint32_t c = acc[i];
      if (c != 0)
        for (std::uint32_t j = 0; j < r; ++j) {
          std::uint64_t s = acc[i - r + j] +
                            std::uint64_t(p - 1) * c % p * fmod[j];
          acc[i - r + j] = std::uint32_t(s % p);
        }
      acc[i] = 0;
      if (i == r) break;
    }
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      out += acc[i] * scale;
      scale *= p;
    }
    return out;
  }

  std::uint32_t fq_mul(std::uint32_t x, std::uint32_t y) const {
    return fq_mul_tab.empty() ? fq_mul_slow(x, y)
                              : fq_mul_tab[std::size_t(x) * fq + y];
  }

  Elem v_add(Elem a, Elem b) const override {
    Elem out = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t i = 0; i < steps; ++i) {
      out += Elem(fq_add(a % fq, b % fq) * scale);
      scale *= fq;
      a /= fq;
      b /= fq;
    }
    return out;
  }

  Elem v_neg(Elem a) const override {
    Elem out = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t i = 0; i < steps; ++i) {
      out += Elem(fq_neg(a % fq) * scale);
      scale *= fq;
      a /= fq;
    }
    return out;
  }

  Elem v_mul(Elem a, Elem b) const override {
    std::array<std::uint32_t, 32> da{}, db{}, acc{};
    for (std::uint32_t i = 0; i < steps; ++i) {
      da[i] = a % fq;
      a /= fq;
      db[i] = b % fq;
      b /= fq;
    }
    for (std::uint32_t i = 0; i < steps; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; i + j < steps; ++j)
        acc[i + j] = fq_add(acc[i + j], fq_mul(da[i], db[j]));
    }
    Elem out = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t i = 0; i < steps; ++i) {
      out += Elem(acc[i] * scale);
      scale *= fq;
    }
    return out;
  }

  std::optional<std::string> element_detail(Elem a) const override {
    if (a == 0) return std::string("0");
    std::string out;
    std::vector<std::uint32_t> digits(steps);
    Elem v = a;
    for (std::uint32_t i = 0; i < steps; ++i) {
      digits[i] = v % fq;
      v /= fq;
    }
    for (std::uint32_t i = steps; i-- > 0;) {
      if (digits[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (i == 0) {
        out += std::to_string(digits[i]);
      } else {
        if (digits[i] != 1) out += std::to_string(digits[i]) + "*";
        out += i == 1 ? "t" : "t^" + std::to_string(i);
      }
    }
    return out;
  }
};

struct TableCore final : detail::RingCore {
  Elem v_add(Elem a, Elem b) const override {
    return add_tab[std::size_t(a) * order + b];
  }
  Elem v_mul(Elem a, Elem b) const override {
    return mul_tab[std::size_t(a) * order + b];
  }
  Elem v_neg(Elem a) const override { return neg_tab[a]; }
};

constexpr std::uint32_t kDenseLimit = 256;

// additive closure of `extra` together with all ring multiples of the
// given generators; returns a membership mask
std::vector<char> module_span(const detail::RingCore& c,
                              const std::vector<Elem>& gens,
                              const std::vector<Elem>& extra) {
  std::vector<char> in_gen(c.order, 0);
  std::vector<Elem> gvec;
  auto push = [&](Elem x) {
    if (x != c.zero && !in_gen[x]) {
      in_gen[x] = 1;
      gvec.push_back(x);
    }
  };
  for (Elem g : gens)
    for (Elem r = 0; r < c.order; ++r) push(c.v_mul(r, g));
  for (Elem x : extra) push(x);
  std::vector<char> mask(c.order, 0);
  mask[c.zero] = 1;
  std::vector<Elem> work{c.zero};
  while (!work.empty()) {
    Elem s = work.back();
    work.pop_back();
    for (Elem g : gvec) {
      Elem t = c.v_add(s, g);
      if (!mask[t]) {
        mask[t] = 1;
        work.push_back(t);
      }
    }
  }
  return mask;
}

std::vector<char> ideal_span(const detail::RingCore& c,
                             const std::vector<Elem>& gens) {
  return module_span(c, gens, {});
}

// caches shared by every representation; assumes val_tab, zero/one, q
// (0 = derive from the coset count) and e are already set
void build_common(detail::RingCore& c, std::uint32_t expected_q) {
  if (!c.dense && c.order <= kDenseLimit) {
    c.add_tab.resize(std::size_t(c.order) * c.order);
    c.mul_tab.resize(std::size_t(c.order) * c.order);
    c.neg_tab.resize(c.order);
    for (Elem a = 0; a < c.order; ++a) {
      c.neg_tab[a] = c.v_neg(a);
      for (Elem b = 0; b < c.order; ++b) {
        c.add_tab[std::size_t(a) * c.order + b] = c.v_add(a, b);
        c.mul_tab[std::size_t(a) * c.order + b] = c.v_mul(a, b);
      }
    }
    c.dense = true;
  }

  auto sub = [&](Elem a, Elem b) { return c.v_add(a, c.v_neg(b)); };

  c.m_elems.clear();
  for (Elem a = 0; a < c.order; ++a)
    if (c.val_tab[a] >= 1) c.m_elems.push_back(a);

  c.reps.clear();
  c.reps.push_back(c.zero);
  for (Elem a = 0; a < c.order; ++a) {
    if (a == c.zero) continue;
    bool seen = false;
    for (Elem r : c.reps)
      if (c.val_tab[sub(a, r)] >= 1) {
        seen = true;
        break;
      }
    if (!seen) c.reps.push_back(a);
  }
  std::uint32_t q_found = std::uint32_t(c.reps.size());
  if (expected_q != 0 && q_found != expected_q)
    fail(ErrorCode::InternalError,
         "coset count " + std::to_string(q_found) + " does not match q = " +
             std::to_string(expected_q));
  c.q = q_found;
  if (std::uint64_t(c.q) * c.m_elems.size() != c.order)
    fail(ErrorCode::InternalError,
         "cosets of the maximal ideal do not partition the ring");

  if (c.e > 1) {
    c.coset_pos.assign(c.order, 0);
    for (Elem a = 0; a < c.order; ++a) {
      bool found = false;
      for (std::uint32_t j = 0; j < c.q; ++j)
        if (c.val_tab[sub(a, c.reps[j])] >= 1) {
          c.coset_pos[a] = j;
          found = true;
          break;
        }
      if (!found)
        fail(ErrorCode::InternalError, "element outside every coset");
    }
  }

  // minimal generating set of m: lift a basis of m/m^2, testing each
  // candidate against ideal(picks) + m^2 so every pick is independent in
  // the quotient (the lifted basis generates m because m is nilpotent)
  c.m_min_gens.clear();
  std::vector<Elem> m_sq;
  for (Elem a : c.m_elems)
    if (c.val_tab[a] >= 2) m_sq.push_back(a);
  std::vector<char> span = module_span(c, c.m_min_gens, m_sq);
  auto first_uncovered = [&]() -> std::optional<Elem> {
    for (Elem a : c.m_elems)
      if (!span[a]) return a;
    return std::nullopt;
  };
  while (auto pick = first_uncovered()) {
    c.m_min_gens.push_back(*pick);
    span = module_span(c, c.m_min_gens, m_sq);
  }
  std::vector<char> generated = ideal_span(c, c.m_min_gens);
  for (Elem a : c.m_elems)
    if (!generated[a])
      fail(ErrorCode::InternalError,
           "lifted generating set fails to generate the maximal ideal");

  c.ann_of_m = c.zero;
  for (Elem a = 0; a < c.order; ++a) {
    if (a == c.zero) continue;
    bool kills = true;
    for (Elem m : c.m_elems)
      if (c.v_mul(a, m) != c.zero) {
        kills = false;
        break;
      }
    if (kills) {
      c.ann_of_m = a;
      break;
    }
  }
  if (c.ann_of_m == c.zero)
    fail(ErrorCode::InternalError, "maximal ideal has no nonzero annihilator");

  c.uid = next_ring_uid.fetch_add(1);
}

void check_order_cap(std::uint64_t order, const RingOptions& options) {
  if (order > options.order_cap)
    fail(ErrorCode::SizeLimit,
         "ring order " + std::to_string(order) + " exceeds cap " +
             std::to_string(options.order_cap));
  if (order > 0xffffffffULL)
    fail(ErrorCode::SizeLimit, "ring order exceeds the element index range");
}

// ---- table validation ----

void validate_table(const TableData& t, const RingOptions& options) {
  const std::uint64_t n = t.order;
  if (n < 2) fail(ErrorCode::NotARing, "ring must have at least two elements");
  check_order_cap(n, options);
  if (t.add.size() != n * n || t.mul.size() != n * n)
    fail(ErrorCode::ParseError,
         "add/mul tables must each hold order*order entries");
  for (Elem v : t.add)
    if (v >= n) fail(ErrorCode::ParseError, "add table entry out of range");
  for (Elem v : t.mul)
    if (v >= n) fail(ErrorCode::ParseError, "mul table entry out of range");
  if (t.zero >= n || t.one >= n)
    fail(ErrorCode::ParseError, "zero/one index out of range");
  if (t.zero == t.one) fail(ErrorCode::NotARing, "zero equals one");

  auto A = [&](Elem a, Elem b) { return t.add[std::size_t(a) * n + b]; };
  auto M = [&](Elem a, Elem b) { return t.mul[std::size_t(a) * n + b]; };
  auto witness2 = [](const char* what, Elem a, Elem b) {
    return std::string(what) + " fails at (" + std::to_string(a) + ", " +
           std::to_string(b) + ")";
  };
  auto witness3 = [](const char* what, Elem a, Elem b, Elem c) {
    return std::string(what) + " fails at (" + std::to_string(a) + ", " +
           std::to_string(b) + ", " + std::to_string(c) + ")";
  };

  for (Elem a = 0; a < n; ++a) {
    if (A(a, t.zero) != a)
      fail(ErrorCode::NotARing,
           "additive identity fails at " + std::to_string(a));
    if (M(a, t.one) != a)
      fail(ErrorCode::NotARing,
           "multiplicative identity fails at " + std::to_string(a));
    bool has_neg = false;
    for (Elem b = 0; b < n; ++b)
      if (A(a, b) == t.zero) {
        has_neg = true;
        break;
      }
    if (!has_neg)
      fail(ErrorCode::NotARing,
           "no additive inverse for " + std::to_string(a));
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      if (A(a, b) != A(b, a))
        fail(ErrorCode::NotARing, witness2("addition commutativity", a, b));
      if (M(a, b) != M(b, a))
        fail(ErrorCode::NotARing,
             witness2("multiplication commutativity", a, b));
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c)))
          fail(ErrorCode::NotARing, witness3("addition associativity", a, b, c));
        if (M(M(a, b), c) != M(a, M(b, c)))
          fail(ErrorCode::NotARing,
               witness3("multiplication associativity", a, b, c));
        if (M(a, A(b, c)) != A(M(a, b), M(a, c)))
          fail(ErrorCode::NotARing, witness3("distributivity", a, b, c));
      }
}

}  // namespace

Elem Ring::pow(Elem base, std::uint64_t exponent) const {
  require_element(base);
  Elem result = one();
  Elem acc = base;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, acc);
    exponent >>= 1;
    if (exponent) acc = mul(acc, acc);
  }
  return result;
}

Elem Ring::element_from_integer(long long v) const {
  if (kind() == RingKind::ModPrimePower) {
    long long m = order();
    long long red = v % m;
    if (red < 0) red += m;
    return Elem(red);
  }
  bool negative = v < 0;
  unsigned long long mag = negative ? 0ULL - (unsigned long long)(v)
                                    : (unsigned long long)(v);
  if (mag >= order())
    fail(ErrorCode::ParseError,
         "element label " + std::to_string(v) + " out of range for " +
             label() + " (labels are indices below " +
             std::to_string(order()) + ")");
  Elem a = Elem(mag);
  return negative ? neg(a) : a;
}

Ring Ring::mod_prime_power(std::uint32_t p, std::uint32_t n,
                           RingOptions options) {
  if (!is_prime(p))
    fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) fail(ErrorCode::ParseError, "exponent must be at least 1");
  std::uint64_t order = checked_pow(p, n, options.order_cap);
  check_order_cap(order, options);

  auto core = std::make_shared<ZpnCore>();
  core->kind = RingKind::ModPrimePower;
  core->modulus = order;
  core->order = std::uint32_t(order);
  core->q = p;
  core->e = n;
  core->zero = 0;
  core->one = 1;
  core->label = n == 1 ? "Z/" + std::to_string(p)
                       : "Z/" + std::to_string(p) + "^" + std::to_string(n);

  core->val_tab.assign(core->order, 0);
  for (Elem a = 0; a < core->order; ++a) {
    if (a == 0) {
      core->val_tab[a] = n;
      continue;
    }
    std::uint32_t v = 0;
    Elem x = a;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    core->val_tab[a] = v;
  }

  build_common(*core, p);
  if (n > 1) core->residue = mod_prime_power(p, 1, options).impl_;
  return Ring(core);
}

Ring Ring::chain(std::uint32_t p, std::uint32_t r, std::uint32_t e,
                 std::optional<std::vector<std::uint32_t>> field_modulus,
                 RingOptions options) {
  if (!is_prime(p))
    fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (r < 1 || e < 1)
    fail(ErrorCode::ParseError, "field degree and length must be at least 1");
  std::uint64_t fq = checked_pow(p, r, options.order_cap);
  check_order_cap(fq, options);
  std::uint64_t order = checked_pow(fq, e, options.order_cap);
  check_order_cap(order, options);

  PPoly fmod;
  if (field_modulus) {
    fmod = *field_modulus;
    if (fmod.size() != std::size_t(r) + 1 || fmod.back() != 1)
      fail(ErrorCode::NotIrreducible,
           "field modulus must be monic of degree " + std::to_string(r));
    for (std::uint32_t c : fmod)
      if (c >= p)
        fail(ErrorCode::NotIrreducible,
             "field modulus coefficients must lie below p");
    if (!pp_irreducible(fmod, p))
      fail(ErrorCode::NotIrreducible,
           "supplied field modulus is reducible over Z/" + std::to_string(p));
  } else {
    fmod = find_irreducible(p, r);
  }

  auto core = std::make_shared<ChainCore>();
  core->kind = RingKind::Chain;
  core->p = p;
  core->r = r;
  core->steps = e;
  core->fq = std::uint32_t(fq);
  core->fmod = fmod;
  core->order = std::uint32_t(order);
  core->q = core->fq;
  core->e = e;
  core->zero = 0;
  core->one = 1;
  core->label = e == 1 ? "F" + std::to_string(fq)
                       : "F" + std::to_string(fq) + "[t]/t^" +
                             std::to_string(e);

  if (r > 1 && fq <= 256) {
    core->fq_mul_tab.resize(std::size_t(fq) * fq);
    for (std::uint32_t x = 0; x < fq; ++x)
      for (std::uint32_t y = 0; y < fq; ++y)
        core->fq_mul_tab[std::size_t(x) * fq + y] = core->fq_mul_slow(x, y);
  }

  core->val_tab.assign(core->order, 0);
  for (Elem a = 0; a < core->order; ++a) {
    if (a == 0) {
      core->val_tab[a] = e;
      continue;
    }
    std::uint32_t v = 0;
    Elem x = a;
    while (x % core->fq == 0) {
      x /= core->fq;
      ++v;
    }
    core->val_tab[a] = v;
  }

  build_common(*core, core->fq);
  if (e > 1) core->residue = chain(p, r, 1, fmod, options).impl_;
  return Ring(core);
}

Ring Ring::from_table(const TableData& data, RingOptions options,
                      std::string label) {
  validate_table(data, options);
  const std::uint32_t n = data.order;

  auto core = std::make_shared<TableCore>();
  core->kind = RingKind::Table;
  core->order = n;
  core->zero = data.zero;
  core->one = data.one;
  core->add_tab = data.add;
  core->mul_tab = data.mul;
  core->dense = true;
  core->label = label.empty() ? "table(order=" + std::to_string(n) + ")"
                              : std::move(label);

  core->neg_tab.assign(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (core->v_add(a, b) == core->zero) {
        core->neg_tab[a] = b;
        break;
      }

  // units, locality, powers of m
  std::vector<char> is_unit_tab(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (core->v_mul(a, b) == core->one) {
        is_unit_tab[a] = 1;
        break;
      }
  std::vector<Elem> nonunits;
  for (Elem a = 0; a < n; ++a)
    if (!is_unit_tab[a]) nonunits.push_back(a);
  for (Elem a : nonunits)
    for (Elem b : nonunits)
      if (is_unit_tab[core->v_add(a, b)])
        fail(ErrorCode::NotLocal,
             "non-units are not closed under addition: " + std::to_string(a) +
                 " + " + std::to_string(b) + " is a unit");

  // m^k as masks; m^0 = R
  std::vector<std::vector<char>> masks;
  masks.emplace_back(n, 1);
  std::vector<char> m1(n, 0);
  for (Elem a : nonunits) m1[a] = 1;
  masks.push_back(m1);
  auto only_zero = [&](const std::vector<char>& mask) {
    for (Elem a = 0; a < n; ++a)
      if (mask[a] && a != core->zero) return false;
    return true;
  };
  while (!only_zero(masks.back())) {
    if (masks.size() > n + 1)
      fail(ErrorCode::NotLocal, "powers of the maximal ideal never vanish");
    const auto& prev = masks.back();
    std::vector<Elem> products;
    std::vector<char> seen(n, 0);
    for (Elem a = 0; a < n; ++a) {
      if (!prev[a]) continue;
      for (Elem b : nonunits) {
        Elem x = core->v_mul(a, b);
        if (!seen[x]) {
          seen[x] = 1;
          products.push_back(x);
        }
      }
    }
    std::vector<char> next(n, 0);
    next[core->zero] = 1;
    std::vector<Elem> work{core->zero};
    while (!work.empty()) {
      Elem s = work.back();
      work.pop_back();
      for (Elem g : products) {
        Elem t = core->v_add(s, g);
        if (!next[t]) {
          next[t] = 1;
          work.push_back(t);
        }
      }
    }
    masks.push_back(std::move(next));
  }
  core->e = std::uint32_t(masks.size() - 1);

  core->val_tab.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    std::uint32_t v = 0;
    for (std::uint32_t k = core->e; k >= 1; --k)
      if (masks[k][a]) {
        v = k;
        break;
      }
    core->val_tab[a] = v;
  }

  build_common(*core, 0);

  if (core->e > 1) {
    const std::uint32_t q = core->q;
    TableData quot;
    quot.order = q;
    quot.zero = 0;
    quot.one = core->coset_pos[core->one];
    quot.add.resize(std::size_t(q) * q);
    quot.mul.resize(std::size_t(q) * q);
    for (std::uint32_t i = 0; i < q; ++i)
      for (std::uint32_t j = 0; j < q; ++j) {
        quot.add[std::size_t(i) * q + j] =
            core->coset_pos[core->v_add(core->reps[i], core->reps[j])];
        quot.mul[std::size_t(i) * q + j] =
            core->coset_pos[core->v_mul(core->reps[i], core->reps[j])];
      }
    core->residue =
        from_table(quot, options, core->label + " residue field").impl_;
  }
  return Ring(core);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_number(std::string_view s, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(ErrorCode::ParseError,
         std::string("cannot parse ") + what + " from '" + std::string(s) +
             "'");
  return value;
}

}  // namespace

Ring parse_ring_spec(std::string_view spec, RingOptions options) {
  std::string_view s = trim(spec);
  if (s.empty()) fail(ErrorCode::ParseError, "empty ring spec");

  if (s.rfind("table:", 0) == 0) {
    std::string path(trim(s.substr(6)));
    if (path.empty())
      fail(ErrorCode::ParseError, "table: spec requires a file path");
    return Ring::from_table(load_table_file(path), options,
                            "table:" + path);
  }

  if (s.rfind("Z/", 0) == 0) {
    std::string_view rest = s.substr(2);
    std::size_t caret = rest.find('^');
    if (caret != std::string_view::npos) {
      std::uint64_t p = parse_number(rest.substr(0, caret), "prime");
      std::uint64_t n = parse_number(rest.substr(caret + 1), "exponent");
      if (p > 0xffffffffULL || n > 64)
        fail(ErrorCode::ParseError, "ring spec out of range");
      return Ring::mod_prime_power(std::uint32_t(p), std::uint32_t(n),
                                   options);
    }
    std::uint64_t m = parse_number(rest, "modulus");
    auto pp = factor_prime_power(m);
    if (!pp)
      fail(ErrorCode::NotPrime,
           std::to_string(m) + " is not a prime power");
    return Ring::mod_prime_power(std::uint32_t(pp->p), pp->k, options);
  }

  if (s.front() == 'F') {
    std::size_t bracket = s.find("[t]/t");
    if (bracket == std::string_view::npos)
      fail(ErrorCode::ParseError,
           "expected F{q}[t]/t^e in '" + std::string(s) + "'");
    std::uint64_t q = parse_number(s.substr(1, bracket - 1), "field size");
    std::string_view tail = s.substr(bracket + 5);
    std::uint64_t e = 1;
    if (!tail.empty()) {
      if (tail.front() != '^')
        fail(ErrorCode::ParseError,
             "expected t^e in '" + std::string(s) + "'");
      e = parse_number(tail.substr(1), "length");
    }
    auto pp = factor_prime_power(q);
    if (!pp)
      fail(ErrorCode::NotPrime,
           std::to_string(q) + " is not a prime power");
    if (e > 64) fail(ErrorCode::ParseError, "ring spec out of range");
    return Ring::chain(std::uint32_t(pp->p), pp->k, std::uint32_t(e),
                       std::nullopt, options);
  }

  fail(ErrorCode::ParseError, "unrecognized ring spec '" + std::string(s) +
                                  "' (expected Z/p^n, F{q}[t]/t^e, or "
                                  "table:<path>)");
}

TableData load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::ParseError, "cannot open table file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& ex) {
    fail(ErrorCode::ParseError,
         "table file '" + path + "' is not valid JSON: " + ex.what());
  }
  TableData t;
  try {
    t.order = doc.at("order").get<std::uint32_t>();
    t.zero = doc.at("zero").get<Elem>();
    t.one = doc.at("one").get<Elem>();
    const auto& add = doc.at("add");
    const auto& mul = doc.at("mul");
    if (!add.is_array() || !mul.is_array() || add.size() != t.order ||
        mul.size() != t.order)
      fail(ErrorCode::ParseError,
           "table file '" + path + "': add/mul must be order x order arrays");
    for (const auto& row : add) {
      if (!row.is_array() || row.size() != t.order)
        fail(ErrorCode::ParseError,
             "table file '" + path + "': ragged add row");
      for (const auto& v : row) t.add.push_back(v.get<Elem>());
    }
    for (const auto& row : mul) {
      if (!row.is_array() || row.size() != t.order)
        fail(ErrorCode::ParseError,
             "table file '" + path + "': ragged mul row");
      for (const auto& v : row) t.mul.push_back(v.get<Elem>());
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorCode::ParseError,
         "table file '" + path + "' is malformed: " + ex.what());
  }
  return t;
}

}  // namespace zerofn
