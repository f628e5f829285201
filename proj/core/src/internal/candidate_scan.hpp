#pragma once

// Private enumeration helpers shared by the oracle implementation.
// Polynomials of degree < D over a ring of order n are identified with
// mixed-radix counters: candidate index idx has digit k (base n) equal to
// the element index of the coefficient of x^k.

#include <cstdint>
#include <span>
#include <vector>

#include "zerofn/poly.hpp"
#include "zerofn/ring.hpp"

namespace zerofn::internal {

inline std::vector<Elem> decode_candidate(const Ring& ring, std::uint32_t D,
                                          std::uint64_t idx) {
  std::vector<Elem> coeffs(D, ring.zero());
  const std::uint64_t n = ring.order();
  for (std::uint32_t k = 0; k < D && idx != 0; ++k) {
    coeffs[k] = Elem(idx % n);
    idx /= n;
  }
  return coeffs;
}

inline std::uint64_t encode_candidate(const Ring& ring,
                                      std::span<const Elem> coeffs) {
  const std::uint64_t n = ring.order();
  std::uint64_t idx = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) idx = idx * n + coeffs[k];
  return idx;
}

// Walks candidate indices [from, to).  `coeffs` is set to the decoding of
// `from` and init() fires once before the first visit; after that every
// digit change is reported through patch(k, old_value, new_value) before
// visit(idx) fires, so callers can keep linear summaries (point values,
// expansion layers) incrementally up to date.
template <class Init, class Patch, class Visit>
void scan_range(const Ring& ring, std::uint32_t D, std::uint64_t from,
                std::uint64_t to, std::vector<Elem>& coeffs, Init&& init,
                Patch&& patch, Visit&& visit) {
  if (from >= to) return;
  coeffs = decode_candidate(ring, D, from);
  init();
  visit(from);
  const Elem n = Elem(ring.order());
  for (std::uint64_t idx = from + 1; idx < to; ++idx) {
    for (std::uint32_t k = 0;; ++k) {
      Elem old = coeffs[k];
      Elem next = old + 1 == n ? 0 : old + 1;
      coeffs[k] = next;
      patch(k, old, next);
      if (next != 0) break;
    }
    visit(idx);
  }
}

// powers[k][a] = a^k for every element a, k < D
inline std::vector<std::vector<Elem>> power_table(const Ring& ring,
                                                  std::uint32_t D,
                                                  std::span<const Elem> pts) {
  std::vector<std::vector<Elem>> powers(D, std::vector<Elem>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Elem acc = ring.one();
    for (std::uint32_t k = 0; k < D; ++k) {
      powers[k][i] = acc;
      acc = ring.mul(acc, pts[i]);
    }
  }
  return powers;
}

// Tracks the values of the current candidate at a fixed list of points.
struct ValueTracker {
  const Ring& ring;
  std::vector<Elem> pts;
  std::vector<std::vector<Elem>> powers;  // powers[k][i] = pts[i]^k
  std::vector<Elem> values;

  ValueTracker(const Ring& r, std::uint32_t D, std::span<const Elem> points)
      : ring(r),
        pts(points.begin(), points.end()),
        powers(power_table(r, D, points)),
        values(points.size(), r.zero()) {}

  void reset(std::span<const Elem> coeffs) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Elem acc = ring.zero();
      for (std::size_t k = coeffs.size(); k-- > 0;)
        acc = ring.add(ring.mul(acc, pts[i]), coeffs[k]);
      values[i] = acc;
    }
  }

  void patch(std::uint32_t k, Elem old_coeff, Elem new_coeff) {
    Elem delta = ring.sub(new_coeff, old_coeff);
    for (std::size_t i = 0; i < pts.size(); ++i)
      values[i] = ring.add(values[i], ring.mul(delta, powers[k][i]));
  }
};

// Tracks the base-adic expansion layers of the current candidate: the
// expansion is linear in the candidate, so each monomial x^k contributes a
// fixed layer pattern.  Layers are stored flattened, layer k occupying
// positions [k*w, (k+1)*w) with w = deg base.
struct LayerTracker {
  struct Entry {
    std::size_t pos;
    Elem value;
  };

  const Ring& ring;
  std::size_t width;
  std::size_t layer_count;
  std::vector<std::vector<Entry>> mono_entries;  // nonzero pattern per x^k
  std::vector<Elem> layers;  // layer k occupies [k*width, (k+1)*width)

  LayerTracker(const Ring& r, std::uint32_t D, const Polynomial& base)
      : ring(r), width(*base.degree()) {
    layer_count = (D + width - 1) / width;
    mono_entries.resize(D);
    for (std::uint32_t k = 0; k < D; ++k) {
      Polynomial mono = Polynomial::monomial(r, r.one(), k);
      std::vector<Polynomial> expansion = adic_expansion(mono, base);
      for (std::size_t layer = 0; layer < expansion.size(); ++layer)
        for (std::size_t j = 0; j < expansion[layer].coeffs().size(); ++j) {
          Elem c = expansion[layer].coeffs()[j];
          if (c != r.zero())
            mono_entries[k].push_back(Entry{layer * width + j, c});
        }
    }
    layers.assign(width * layer_count, r.zero());
  }

  void reset(std::span<const Elem> coeffs) {
    std::fill(layers.begin(), layers.end(), ring.zero());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == ring.zero()) continue;
      for (const Entry& en : mono_entries[k])
        layers[en.pos] =
            ring.add(layers[en.pos], ring.mul(coeffs[k], en.value));
    }
  }

  void patch(std::uint32_t k, Elem old_coeff, Elem new_coeff) {
    Elem delta = ring.sub(new_coeff, old_coeff);
    for (const Entry& en : mono_entries[k])
      layers[en.pos] = ring.add(layers[en.pos], ring.mul(delta, en.value));
  }

  Elem layer_coeff(std::size_t layer, std::size_t j) const {
    return layer < layer_count ? layers[layer * width + j] : ring.zero();
  }
};

}  // namespace zerofn::internal
