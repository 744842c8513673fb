#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sunid/exact.hpp"

namespace sunid {

/// Dense univariate polynomial over an exact coefficient ring, tagged with a
/// variable label so that x- and q-polynomials cannot be mixed by accident.
///
/// Coefficients are stored low-to-high with trailing zeros stripped eagerly,
/// so equality is structural. The zero polynomial has an empty coefficient
/// list; degree() returns -1 for it (sentinel for "minus infinity").
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::string var) : var_(std::move(var)) {}
  Polynomial(std::string var, std::vector<Coeff> coeffs)
      : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    normalize();
  }

  static Polynomial constant(std::string var, Coeff c) {
    return Polynomial(std::move(var), {std::move(c)});
  }
  static Polynomial variable(std::string var) {
    return Polynomial(std::move(var), {Coeff(0), Coeff(1)});
  }
  /// c * var^e
  static Polynomial monomial(std::string var, Coeff c, std::size_t e) {
    std::vector<Coeff> cs(e + 1, Coeff(0));
    cs[e] = std::move(c);
    return Polynomial(std::move(var), std::move(cs));
  }

  const std::string& var() const { return var_; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Coeff coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Coeff(0);
  }

  Coeff leading_coefficient() const {
    if (coeffs_.empty())
      throw std::domain_error("leading_coefficient of the zero polynomial");
    return coeffs_.back();
  }

  Coeff eval(const Coeff& v) const {
    Coeff acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * v + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_var(o);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_var(o);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_var(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.var_);
    std::vector<Coeff> r(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(a.var_, std::move(r));
  }

  friend Polynomial operator*(Polynomial p, const Coeff& s) {
    for (auto& c : p.coeffs_) c *= s;
    p.normalize();
    return p;
  }
  friend Polynomial operator*(const Coeff& s, Polynomial p) { return std::move(p) * s; }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(var_, Coeff(1));
    for (unsigned t = 0; t < e; ++t) r = r * (*this);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    a.check_var(b);
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }
  void check_var(const Polynomial& o) const {
    if (var_ != o.var_)
      throw std::invalid_argument("polynomial variable mismatch: '" + var_ +
                                  "' vs '" + o.var_ + "'");
  }

  std::string var_ = "x";
  std::vector<Coeff> coeffs_;
};

using XPoly = Polynomial<Rational>;  // identity sides as functions of x
using QPoly = Polynomial<Integer>;   // matrix-family weight totals in q

inline bool poly_equal(const XPoly& a, const XPoly& b) { return a == b; }
inline bool poly_equal(const QPoly& a, const QPoly& b) { return a == b; }

inline Rational poly_eval(const XPoly& p, const Rational& v) { return p.eval(v); }
inline Integer poly_eval(const QPoly& p, const Integer& v) { return p.eval(v); }

inline Rational leading_coefficient(const XPoly& p) { return p.leading_coefficient(); }
inline Integer leading_coefficient(const QPoly& p) { return p.leading_coefficient(); }

/// prod_{t=0}^{r-1} (p - t) / r!, the binomial coefficient "p choose r" with a
/// polynomial upper argument. Degree is r * deg(p).
inline XPoly binomial_poly(const XPoly& p, long long r) {
  if (r < 0) throw std::domain_error("binomial_poly: negative lower index");
  XPoly acc = XPoly::constant(p.var(), Rational(1));
  for (long long t = 0; t < r; ++t)
    acc = acc * (p - XPoly::constant(p.var(), Rational(t)));
  return acc * Rational(Integer(1), factorial(r));
}

template <class Coeff>
std::string coeff_str(const Coeff& c);
template <>
inline std::string coeff_str<Integer>(const Integer& c) { return to_decimal(c); }
template <>
inline std::string coeff_str<Rational>(const Rational& c) {
  return denominator(c) == 1 ? numerator(c).str() : to_fraction(c);
}

/// Canonical human-readable form, ascending powers: "1 + 2*q - q^3", "0".
template <class Coeff>
std::string to_string(const Polynomial<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const auto& cs = p.coeffs();
  for (std::size_t e = 0; e < cs.size(); ++e) {
    if (cs[e] == Coeff(0)) continue;
    Coeff c = cs[e];
    if (first) {
      if (c < Coeff(0)) {
        out << "-";
        c = -c;
      }
      first = false;
    } else {
      out << (c < Coeff(0) ? " - " : " + ");
      if (c < Coeff(0)) c = -c;
    }
    const bool unit = (c == Coeff(1));
    if (e == 0 || !unit) out << coeff_str<Coeff>(c);
    if (e > 0) {
      if (!unit) out << "*";
      out << p.var();
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

/// Low-to-high coefficient strings, as used in the report schema.
template <class Coeff>
std::vector<std::string> coeff_strings(const Polynomial<Coeff>& p) {
  std::vector<std::string> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(coeff_str<Coeff>(c));
  return r;
}

}  // namespace sunid
