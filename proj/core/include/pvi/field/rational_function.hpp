#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "pvi/field/polynomial.hpp"

namespace pvi::field {

/// Element of Q(a1, a2, a3, a4, q, p, t, z, x) in canonical form: numerator
/// and denominator coprime, denominator with grlex-leading coefficient 1.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Reduces num/den; throws DivisionByZero when den is zero.
  RationalFunction(const Polynomial& num, const Polynomial& den);

  static RationalFunction variable(Var v) { return Polynomial::variable(v); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  bool depends_on(Var v) const noexcept { return num_.depends_on(v) || den_.depends_on(v); }

  RationalFunction operator-() const;
  RationalFunction inverse() const;  // throws DivisionByZero on zero

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction pow(int k) const;
  std::string str() const;

 private:
  struct Reduced {};
  RationalFunction(Polynomial num, Polynomial den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

using Substitution = std::map<Var, RationalFunction>;
using ComplexPoint = std::map<Var, std::complex<double>>;

RationalFunction derivative(const RationalFunction& f, Var v);
/// Throws UnknownVariable for names outside the variable set.
RationalFunction derivative(const RationalFunction& f, std::string_view var);

/// Simultaneous substitution. Variables without an image are kept.
/// Throws PoleError when the substituted denominator vanishes identically.
RationalFunction substitute(const RationalFunction& f, const Substitution& images);

/// Throws PoleError at a pole, UnknownVariable when a needed variable has no value.
std::complex<double> eval_complex(const RationalFunction& f, const ComplexPoint& point);

/// Residue of f d(v) at v = c, where c does not involve v.
RationalFunction residue(const RationalFunction& f, Var v, const Polynomial& c);
/// Residue of f d(v) at v = infinity.
RationalFunction residue_at_infinity(const RationalFunction& f, Var v);

/// Parses an expression such as "(q - t)/(t*(t-1)) + 3/2*a1^2".
RationalFunction parse(std::string_view text);

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }
inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.str(); }

namespace vars {
inline const RationalFunction& a1() { static const RationalFunction v = RationalFunction::variable(Var::a1); return v; }
inline const RationalFunction& a2() { static const RationalFunction v = RationalFunction::variable(Var::a2); return v; }
inline const RationalFunction& a3() { static const RationalFunction v = RationalFunction::variable(Var::a3); return v; }
inline const RationalFunction& a4() { static const RationalFunction v = RationalFunction::variable(Var::a4); return v; }
inline const RationalFunction& q() { static const RationalFunction v = RationalFunction::variable(Var::q); return v; }
inline const RationalFunction& p() { static const RationalFunction v = RationalFunction::variable(Var::p); return v; }
inline const RationalFunction& t() { static const RationalFunction v = RationalFunction::variable(Var::t); return v; }
inline const RationalFunction& z() { static const RationalFunction v = RationalFunction::variable(Var::z); return v; }
inline const RationalFunction& x() { static const RationalFunction v = RationalFunction::variable(Var::x); return v; }
/// alpha_0 = 1 - a1 - 2 a2 - a3 - a4.
const RationalFunction& a0();
}  // namespace vars

}  // namespace pvi::field
