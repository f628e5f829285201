#include "zerofn/poly.hpp"

#include <algorithm>
#include <cctype>

namespace zerofn {

Polynomial::Polynomial(Ring ring, std::vector<Elem> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  for (Elem c : coeffs_) ring_.require_element(c);
  normalize();
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == ring_.zero())
    coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Ring& ring, Elem c) {
  return Polynomial(ring, {c});
}

Polynomial Polynomial::monomial(const Ring& ring, Elem c, std::size_t k) {
  std::vector<Elem> v(k + 1, ring.zero());
  v[k] = c;
  return Polynomial(ring, std::move(v));
}

Polynomial Polynomial::x(const Ring& ring) {
  return monomial(ring, ring.one(), 1);
}

Polynomial Polynomial::operator-() const {
  Polynomial out(ring_);
  out.coeffs_.reserve(coeffs_.size());
  for (Elem c : coeffs_) out.coeffs_.push_back(ring_.neg(c));
  out.normalize();
  return out;
}

Polynomial Polynomial::scaled(Elem c) const {
  ring_.require_element(c);
  Polynomial out(ring_);
  out.coeffs_.reserve(coeffs_.size());
  for (Elem a : coeffs_) out.coeffs_.push_back(ring_.mul(c, a));
  out.normalize();
  return out;
}

Polynomial Polynomial::shifted(std::size_t k) const {
  if (coeffs_.empty()) return *this;
  Polynomial out(ring_);
  out.coeffs_.assign(k, ring_.zero());
  out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  a.ring_.require_same(b.ring_);
  Polynomial out(a.ring_);
  out.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()),
                     a.ring_.zero());
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = a.ring_.add(a.coeff(i), b.coeff(i));
  out.normalize();
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.ring_.require_same(b.ring_);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial(a.ring_);
  const Ring& R = a.ring_;
  Polynomial out(R);
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, R.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == R.zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] =
          R.add(out.coeffs_[i + j], R.mul(a.coeffs_[i], b.coeffs_[j]));
  }
  out.normalize();
  return out;
}

Elem Polynomial::evaluate(Elem at) const {
  ring_.require_element(at);
  Elem acc = ring_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    acc = ring_.add(ring_.mul(acc, at), coeffs_[i]);
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  ring_.require_same(inner.ring_);
  Polynomial acc(ring_);
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    acc = acc * inner + Polynomial::constant(ring_, coeffs_[i]);
  return acc;
}

DivisionResult divide_monic(const Polynomial& f, const Polynomial& divisor) {
  f.ring().require_same(divisor.ring());
  const Ring& R = f.ring();
  if (!divisor.is_monic())
    fail(ErrorCode::NotMonic, "division requires a monic divisor, got " +
                                  divisor.to_string());
  const std::size_t d = *divisor.degree();
  std::vector<Elem> rem(f.coeffs().begin(), f.coeffs().end());
  std::vector<Elem> quot;
  if (rem.size() > d) quot.assign(rem.size() - d, R.zero());
  while (rem.size() > d) {
    Elem lead = rem.back();
    std::size_t shift = rem.size() - 1 - d;
    if (lead != R.zero()) {
      quot[shift] = lead;
      for (std::size_t j = 0; j < d; ++j)
        rem[shift + j] = R.sub(rem[shift + j], R.mul(lead, divisor.coeff(j)));
    }
    rem.pop_back();
  }
  return DivisionResult{Polynomial(R, std::move(quot)),
                        Polynomial(R, std::move(rem))};
}

std::vector<Polynomial> adic_expansion(const Polynomial& f,
                                       const Polynomial& base) {
  if (!base.is_monic() || *base.degree() < 1)
    fail(ErrorCode::NotMonic,
         "expansion base must be monic of degree at least 1");
  std::vector<Polynomial> layers;
  Polynomial cur = f;
  while (!cur.is_zero()) {
    DivisionResult dr = divide_monic(cur, base);
    layers.push_back(dr.remainder);
    cur = dr.quotient;
  }
  return layers;
}

BivariateRemainder bivariate_remainder(const Polynomial& f,
                                       const Polynomial& base) {
  if (!base.is_monic() || *base.degree() < 1)
    fail(ErrorCode::NotMonic,
         "bivariate division requires a monic base of degree at least 1");
  const Ring& R = f.ring();
  R.require_same(base.ring());
  const std::size_t d = *base.degree();

  // coefficients of x^i are polynomials in y; dividing by base(x) - y
  // replaces the x-leading term with y times a lower block
  std::vector<Polynomial> cols;
  cols.reserve(f.coeffs().size());
  for (Elem c : f.coeffs()) cols.emplace_back(Polynomial::constant(R, c));
  while (cols.size() > d) {
    Polynomial lead = cols.back();
    cols.pop_back();
    std::size_t shift = cols.size() - d;
    // subtract lead * x^shift * (base(x) - y); the constant column picks
    // up lead * y from the -y part of the divisor
    for (std::size_t j = 0; j < d; ++j)
      cols[shift + j] = cols[shift + j] - lead.scaled(base.coeff(j));
    cols[shift] = cols[shift] + lead.shifted(1);
  }
  cols.resize(d, Polynomial(R));
  return BivariateRemainder{std::move(cols)};
}

Polynomial reduce_mod_m(const Polynomial& f) {
  const Ring& R = f.ring();
  Ring k = R.residue_field();
  std::vector<Elem> out;
  out.reserve(f.coeffs().size());
  for (Elem c : f.coeffs()) out.push_back(R.to_residue(c));
  return Polynomial(k, std::move(out));
}

RegularityCheck is_regular_poly(const Polynomial& f) {
  const Ring& R = f.ring();
  if (f.is_zero()) return RegularityCheck{false, R.one()};
  for (Elem c = 0; c < R.order(); ++c) {
    if (c == R.zero()) continue;
    bool kills = true;
    for (Elem a : f.coeffs())
      if (R.mul(c, a) != R.zero()) {
        kills = false;
        break;
      }
    if (kills) return RegularityCheck{false, c};
  }
  return RegularityCheck{true, std::nullopt};
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == ring_.zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += ring_.element_label(coeffs_[i]);
    } else {
      out += ring_.element_label(coeffs_[i]) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

struct PolyScanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() &&
           std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool take(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::optional<long long> take_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) return std::nullopt;
    long long v = 0;
    for (std::size_t i = start; i < pos; ++i) {
      if (v > (9223372036854775807LL - (s[i] - '0')) / 10)
        fail(ErrorCode::ParseError, "coefficient literal too large");
      v = v * 10 + (s[i] - '0');
    }
    return v;
  }
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  PolyScanner sc{text};
  Polynomial acc(ring);
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (sc.take('+')) {
      if (first)
        fail(ErrorCode::ParseError, "polynomial cannot start with '+'");
    } else if (sc.take('-')) {
      sign = -1;
    } else if (!first) {
      fail(ErrorCode::ParseError,
           "expected '+' or '-' between polynomial terms in '" +
               std::string(text) + "'");
    }
    while (sc.take('-')) sign = -sign;
    first = false;

    std::optional<long long> num = sc.take_number();
    bool star = sc.take('*');
    bool has_x = sc.take('x') || sc.take('X');
    if (star && !has_x)
      fail(ErrorCode::ParseError, "'*' must be followed by x");
    if (!num && !has_x)
      fail(ErrorCode::ParseError,
           "expected a term in '" + std::string(text) + "'");
    std::size_t power = 0;
    if (has_x) {
      power = 1;
      if (sc.take('^')) {
        std::optional<long long> e = sc.take_number();
        if (!e) fail(ErrorCode::ParseError, "expected exponent after '^'");
        if (*e < 0 || *e > 4096)
          fail(ErrorCode::ParseError, "exponent out of range");
        power = std::size_t(*e);
      }
    }
    long long c = num.value_or(1);
    if (sign < 0) c = -c;
    Elem coeff = ring.element_from_integer(c);
    acc = acc + Polynomial::monomial(ring, coeff, power);
  }
  return acc;
}

}  // namespace zerofn
