#pragma once

// Hamiltonian form of the sixth Painleve equation: parameter conventions,
// the Hamiltonian H, the derivation delta, the Poisson bracket, the scalar
// P_VI residual, and the Fuchsian coefficients a1, a2.

#include <array>
#include <complex>
#include <vector>

#include "pvi/field/rational_function.hpp"
#include "pvi/field/root_ext.hpp"

namespace pvi::hamiltonian {

using field::Rational;
using field::RationalFunction;
using field::RootExtElement;

enum class Repr { epsilon, alpha, kappa };

/// Parameter vector in one of three coordinate systems:
///   epsilon: (e1, e2, e3, e4)
///   alpha:   (a0, a1, a2, a3, a4), with a0 + a1 + 2 a2 + a3 + a4 = 1
///   kappa:   (k0, k1, kt, kinf, rho), with k0 + k1 + kt + kinf + 2 rho = 1
/// Entries are exact rationals or symbolic rational functions.
struct ParamVec {
  Repr repr = Repr::alpha;
  std::vector<RationalFunction> values;

  /// (alpha_0(a1..a4), a1, a2, a3, a4) with the ring variables a1..a4.
  static ParamVec symbolic_alpha();
  /// alpha form from a1..a4; alpha_0 completes the null-root relation.
  static ParamVec alpha_from(const std::array<Rational, 4>& a1_to_a4);
  static ParamVec epsilon(const std::array<Rational, 4>& e);

  bool satisfies_invariant() const;
  /// Exact rational entries (throws std::logic_error on symbolic entries).
  std::vector<Rational> rationals() const;
  std::vector<std::complex<double>> complex_values() const;

  friend bool operator==(const ParamVec&, const ParamVec&) = default;
};

/// Linear, exact change of coordinates. Throws std::invalid_argument if the
/// source violates its invariant or has the wrong arity.
ParamVec convert(const ParamVec& pv, Repr target);

/// Constants (alpha, beta, gamma, delta) of P_VI for y = q.
struct PViConstants {
  RationalFunction alpha, beta, gamma, delta;
  std::array<std::complex<double>, 4> to_complex() const;
};

PViConstants pvi_constants(const ParamVec& pv);

/// H built from the kappa-form polynomial (the default).
RationalFunction hamiltonian_h(const ParamVec& pv);
RationalFunction hamiltonian_h_kappa_form(const ParamVec& pv);
RationalFunction hamiltonian_h_alpha_form(const ParamVec& pv);

/// The Hamiltonian vector field delta = H_p d/dq - H_q d/dp + d/dt.
class Derivation {
 public:
  explicit Derivation(RationalFunction h);
  const RationalFunction& h() const noexcept { return h_; }
  const RationalFunction& dq() const noexcept { return dq_; }  // delta(q) = H_p
  const RationalFunction& dp() const noexcept { return dp_; }  // delta(p) = -H_q
  RationalFunction operator()(const RationalFunction& f) const;
  RootExtElement operator()(const RootExtElement& f) const;

 private:
  RationalFunction h_, dq_, dp_;
};

/// Derivation for the symbolic parameters a1..a4 (built once).
const Derivation& symbolic_delta();
RationalFunction delta_derivation(const RationalFunction& f);

/// Bracket in the orientation {f, g} = f_p g_q - f_q g_p, so {p, q} = 1.
RationalFunction poisson(const RationalFunction& f, const RationalFunction& g);

/// Right-hand side of P_VI, written once for both exact and floating types.
template <class T>
T pvi_rhs(const T& y, const T& y1, const T& t, const T& a, const T& b, const T& c, const T& d) {
  const T one(1), two(2);
  const T ym1 = y - one, ymt = y - t, tm1 = t - one;
  return (one / y + one / ym1 + one / ymt) * y1 * y1 / two -
         (one / t + one / tm1 + one / ymt) * y1 +
         y * ym1 * ymt / (t * t * tm1 * tm1) *
             (a + b * t / (y * y) + c * tm1 / (ym1 * ym1) + d * t * tm1 / (ymt * ymt));
}

/// y'' - RHS(y, y', t). Throws SingularConfiguration for y in {0, 1, t} or t in {0, 1}.
std::complex<double> pvi_residual(std::complex<double> y, std::complex<double> y1, std::complex<double> y2,
                                  std::complex<double> t, const std::array<std::complex<double>, 4>& c);
std::complex<double> pvi_residual(std::complex<double> y, std::complex<double> y1, std::complex<double> y2,
                                  std::complex<double> t, const PViConstants& c);

/// The residual with y = q, y' = delta(q), y'' = delta(delta(q)) as an exact
/// rational function; vanishes identically when delta and the constants match.
RationalFunction pvi_residual_symbolic(const Derivation& delta, const PViConstants& c);

/// Coefficients of u'' + a1 u' + a2 u = 0 in the variable x.
struct FuchsianCoefficients {
  RationalFunction a1, a2;
};

FuchsianCoefficients fuchsian_coeffs(const ParamVec& pv);
FuchsianCoefficients fuchsian_coeffs(const ParamVec& pv, const RationalFunction& h);

}  // namespace pvi::hamiltonian
