#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvi/field/variables.hpp"

namespace pvi::field {

using Rational = mpq_class;

/// Exponent vector over the fixed variable set.
struct Monomial {
  std::array<std::uint8_t, kNumVars> e{};

  unsigned degree() const noexcept {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  unsigned operator[](Var v) const noexcept { return e[index(v)]; }
  bool is_one() const noexcept { return degree() == 0; }

  static Monomial of(Var v, unsigned k = 1);

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with a1 > a2 > ... > x.
bool grlex_less(const Monomial& a, const Monomial& b) noexcept;

Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b) noexcept;  // a | b
Monomial operator/(const Monomial& a, const Monomial& b);     // requires b | a
Monomial gcd(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse multivariate polynomial over Q in canonical form: terms sorted by
/// strictly decreasing grlex monomial, no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(Var v);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  /// Builds from arbitrary terms; combines duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  /// Constant coefficient value; requires is_constant().
  Rational constant_value() const;

  const Term& leading_term() const;  // requires !is_zero()
  const Rational& leading_coeff() const { return leading_term().coeff; }

  unsigned degree(Var v) const noexcept;
  unsigned total_degree() const noexcept;
  /// Bitmask of variables that occur.
  std::uint32_t support() const noexcept;
  bool depends_on(Var v) const noexcept { return (support() >> index(v)) & 1u; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned k) const;
  /// Scales so the grlex-leading coefficient is 1.
  Polynomial monic() const;
  Polynomial multiply_monomial(const Monomial& m, const Rational& c) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

Polynomial derivative(const Polynomial& f, Var v);

/// Exact quotient a / b when b divides a, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, normalized to leading coefficient 1
/// (gcd(0, 0) = 0, gcd with a nonzero constant = 1).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Coefficients of f viewed as a polynomial in v: result[k] multiplies v^k.
std::vector<Polynomial> coefficients_in(const Polynomial& f, Var v);
Polynomial from_coefficients(std::span<const Polynomial> coeffs, Var v);

/// Substitutes polynomial images for selected variables (others kept).
Polynomial substitute(const Polynomial& f, const std::map<Var, Polynomial>& images);

std::complex<double> evaluate(const Polynomial& f,
                              const std::array<std::complex<double>, kNumVars>& point);
/// Sum of |term| values at the point; scale for relative zero tests.
double magnitude(const Polynomial& f, const std::array<std::complex<double>, kNumVars>& point);

std::string to_string(const Rational& r);

}  // namespace pvi::field
