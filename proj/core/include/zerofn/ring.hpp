#pragma once

// Finite commutative local rings in three concrete representations:
//   * Z/p^n                      (integers modulo a prime power)
//   * F_{p^r}[t]/(t^e)           (truncated polynomials over a finite field)
//   * explicit operation tables  (validated exhaustively)
//
// A ring exposes its residue structure: the residue field size q, the
// nilpotency index e of the maximal ideal m (least e with m^e = 0), the
// elements of m, canonical coset representatives of R/m, and the m-adic
// valuation.  Elements are plain indices in [0, order); all arithmetic goes
// through the owning Ring handle.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zerofn/errors.hpp"

namespace zerofn {

using Elem = std::uint32_t;

enum class RingKind { ModPrimePower, Chain, Table };

// Explicit presentation by operation tables, row-major order x order.
struct TableData {
  std::uint32_t order = 0;
  std::vector<Elem> add;
  std::vector<Elem> mul;
  Elem zero = 0;
  Elem one = 0;
};

struct RingOptions {
  // Construction refuses rings larger than this (validation and the cached
  // residue data are at least quadratic in the order).
  std::uint64_t order_cap = 4096;
};

namespace detail {

struct RingCore {
  virtual ~RingCore() = default;

  RingKind kind{};
  std::uint32_t order = 0;
  std::uint32_t q = 0;  // residue field cardinality
  std::uint32_t e = 0;  // nilpotency index of m
  Elem zero = 0;
  Elem one = 0;

  bool dense = false;  // add_tab/mul_tab/neg_tab populated
  std::vector<Elem> add_tab, mul_tab, neg_tab;
  std::vector<std::uint32_t> val_tab;  // m-adic valuation, val(0) = e
  std::vector<Elem> m_elems;           // maximal ideal, ascending index
  std::vector<Elem> reps;              // coset representatives, reps[0] == zero
  std::vector<Elem> coset_pos;         // element -> residue index (e > 1)
  std::vector<Elem> m_min_gens;        // minimal generating set of m
  Elem ann_of_m = 0;                   // least nonzero annihilator of m
  std::shared_ptr<const RingCore> residue;  // null iff e == 1
  std::uint64_t uid = 0;
  std::string label;

  virtual Elem v_add(Elem, Elem) const = 0;
  virtual Elem v_mul(Elem, Elem) const = 0;
  virtual Elem v_neg(Elem) const = 0;
  virtual std::optional<std::string> element_detail(Elem) const {
    return std::nullopt;
  }
};

}  // namespace detail

class Ring {
 public:
  static Ring mod_prime_power(std::uint32_t p, std::uint32_t n,
                              RingOptions options = {});
  static Ring chain(std::uint32_t p, std::uint32_t r, std::uint32_t e,
                    std::optional<std::vector<std::uint32_t>> field_modulus =
                        std::nullopt,
                    RingOptions options = {});
  static Ring from_table(const TableData& data, RingOptions options = {},
                         std::string label = {});

  RingKind kind() const { return impl_->kind; }
  std::uint32_t order() const { return impl_->order; }
  std::uint32_t residue_order() const { return impl_->q; }
  std::uint32_t nilpotency_index() const { return impl_->e; }
  bool is_field() const { return impl_->e == 1; }
  Elem zero() const { return impl_->zero; }
  Elem one() const { return impl_->one; }

  Elem add(Elem a, Elem b) const {
    const auto& c = *impl_;
    return c.dense ? c.add_tab[std::size_t(a) * c.order + b] : c.v_add(a, b);
  }
  Elem mul(Elem a, Elem b) const {
    const auto& c = *impl_;
    return c.dense ? c.mul_tab[std::size_t(a) * c.order + b] : c.v_mul(a, b);
  }
  Elem neg(Elem a) const {
    const auto& c = *impl_;
    return c.dense ? c.neg_tab[a] : c.v_neg(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem base, std::uint64_t exponent) const;

  std::uint32_t valuation(Elem a) const { return impl_->val_tab[a]; }
  bool is_unit(Elem a) const { return valuation(a) == 0; }
  bool is_zero_divisor(Elem a) const { return !is_unit(a); }
  // a lies in m^j (powers clamp at e, where m^e = {0})
  bool in_m_power(Elem a, std::uint32_t j) const {
    return valuation(a) >= std::min(j, impl_->e);
  }
  bool congruent(Elem a, Elem b) const { return valuation(sub(a, b)) >= 1; }

  std::span<const Elem> maximal_ideal() const { return impl_->m_elems; }
  std::span<const Elem> coset_reps() const { return impl_->reps; }
  std::span<const Elem> m_minimal_generators() const {
    return impl_->m_min_gens;
  }
  // Present exactly when m is principal; the zero ideal counts as (0).
  std::optional<Elem> principal_m_generator() const {
    if (impl_->m_min_gens.empty()) return zero();
    if (impl_->m_min_gens.size() == 1) return impl_->m_min_gens[0];
    return std::nullopt;
  }
  Elem m_annihilator_witness() const { return impl_->ann_of_m; }

  Ring residue_field() const {
    return impl_->residue ? Ring(impl_->residue) : *this;
  }
  Elem to_residue(Elem a) const {
    return impl_->residue ? impl_->coset_pos[a] : a;
  }
  Elem lift_residue(Elem t) const {
    return impl_->residue ? impl_->reps[t] : t;
  }

  const std::string& label() const { return impl_->label; }
  std::string element_label(Elem a) const { return std::to_string(a); }
  std::optional<std::string> element_detail(Elem a) const {
    return impl_->element_detail(a);
  }
  // Accepts canonical labels; negatives mean the additive inverse.  For
  // Z/p^n any integer is reduced; other kinds require |v| < order.
  Elem element_from_integer(long long v) const;

  std::uint64_t id() const { return impl_->uid; }
  bool same_ring(const Ring& other) const { return impl_ == other.impl_; }
  friend bool operator==(const Ring& a, const Ring& b) {
    return a.impl_ == b.impl_;
  }

  void require_element(Elem a) const {
    if (a >= impl_->order)
      fail(ErrorCode::ForeignElement,
           "element index " + std::to_string(a) + " out of range for " +
               impl_->label);
  }
  void require_same(const Ring& other) const {
    if (impl_ != other.impl_)
      fail(ErrorCode::ForeignElement,
           "operands belong to different rings (" + impl_->label + " vs " +
               other.impl_->label + ")");
  }

 private:
  explicit Ring(std::shared_ptr<const detail::RingCore> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const detail::RingCore> impl_;
};

// Ring-spec grammar used by the command line tool:
//   Z/p^n  |  Z/N (N a prime power)  |  F{q}[t]/t^e  |  table:<path>
Ring parse_ring_spec(std::string_view spec, RingOptions options = {});

// Reads a table presentation from a UTF-8 JSON file with fields
// order, add, mul, zero, one.
TableData load_table_file(const std::string& path);

}  // namespace zerofn
