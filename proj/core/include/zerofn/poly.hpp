#pragma once

// Dense univariate polynomials with coefficients in a finite local ring.
// Coefficients are stored little-endian and kept normalized (no trailing
// zeros), so the zero polynomial has an empty coefficient vector and no
// degree.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zerofn/ring.hpp"

namespace zerofn {

class Polynomial {
 public:
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
  Polynomial(Ring ring, std::vector<Elem> coeffs);

  static Polynomial constant(const Ring& ring, Elem c);
  static Polynomial monomial(const Ring& ring, Elem c, std::size_t k);
  static Polynomial x(const Ring& ring);

  const Ring& ring() const { return ring_; }
  std::span<const Elem> coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // nullopt for the zero polynomial
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  Elem coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : ring_.zero();
  }
  Elem leading_coeff() const {
    return coeffs_.empty() ? ring_.zero() : coeffs_.back();
  }
  bool is_monic() const {
    return !coeffs_.empty() && coeffs_.back() == ring_.one();
  }

  Polynomial operator-() const;
  Polynomial scaled(Elem c) const;
  // multiply by x^k
  Polynomial shifted(std::size_t k) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_.same_ring(b.ring_) && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  Elem evaluate(Elem at) const;
  Polynomial compose(const Polynomial& inner) const;

  std::string to_string() const;

 private:
  void normalize();

  Ring ring_;
  std::vector<Elem> coeffs_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

// Long division by a monic divisor (exact in any commutative ring).
DivisionResult divide_monic(const Polynomial& f, const Polynomial& divisor);

// f = sum_k layers[k] * base^k with deg layers[k] < deg base; empty for
// the zero polynomial.  base must be monic of degree >= 1.
std::vector<Polynomial> adic_expansion(const Polynomial& f,
                                       const Polynomial& base);

// Polynomial in y standing for a remainder row of bivariate division:
// coefficient i is the coefficient of x^i, each itself a polynomial in y.
struct BivariateRemainder {
  // rows[i] holds the polynomial p_i(y) multiplying x^i; size equals the
  // divisor degree
  std::vector<Polynomial> rows;
};

// Remainder of f(x) upon division by base(x) - y inside (R[y])[x].
// Substituting y = base(x) back into the remainder recovers f.
BivariateRemainder bivariate_remainder(const Polynomial& f,
                                       const Polynomial& base);

// Image of f in (R/m)[x], coefficients mapped through the residue ring.
Polynomial reduce_mod_m(const Polynomial& f);

struct RegularityCheck {
  bool regular = false;
  // least c with c*f == 0 when f is not regular (McCoy: an annihilating
  // constant exists whenever some nonzero polynomial annihilates f)
  std::optional<Elem> annihilator;
};

RegularityCheck is_regular_poly(const Polynomial& f);

// Accepts the explicit form produced by to_string as well as the usual
// shorthand: "x^5+5x^4-2x+1", "3*x^2 + 7", "-x".  Coefficient tokens go
// through Ring::element_from_integer.
Polynomial parse_polynomial(const Ring& ring, std::string_view text);

}  // namespace zerofn
