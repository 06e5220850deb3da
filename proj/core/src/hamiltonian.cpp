#include "pvi/hamiltonian.hpp"

#include <stdexcept>

#include "pvi/errors.hpp"

namespace pvi::hamiltonian {

using field::Var;
namespace vars = field::vars;

namespace {

std::size_t arity(Repr r) { return r == Repr::epsilon ? 4 : 5; }

RationalFunction half(const RationalFunction& f) { return f * RationalFunction(Rational(1, 2)); }

// alpha <-> epsilon and alpha <-> kappa; every other pair goes through alpha.
ParamVec to_alpha(const ParamVec& pv) {
  const auto& v = pv.values;
  switch (pv.repr) {
    case Repr::alpha:
      return pv;
    case Repr::epsilon:
      return {Repr::alpha,
              {RationalFunction(1) - v[0] - v[1], v[0] - v[1], v[1] - v[2], v[2] - v[3], v[2] + v[3]}};
    case Repr::kappa:
      // (k0, k1, kt, kinf, rho) -> (a0, a1, a2, a3, a4) = (kt, kinf, rho, k1, k0)
      return {Repr::alpha, {v[2], v[3], v[4], v[1], v[0]}};
  }
  throw std::logic_error("bad representation");
}

ParamVec from_alpha(const ParamVec& a, Repr target) {
  const auto& v = a.values;
  switch (target) {
    case Repr::alpha:
      return a;
    case Repr::epsilon: {
      const RationalFunction e3 = half(v[3] + v[4]);
      const RationalFunction e4 = half(v[4] - v[3]);
      const RationalFunction e2 = v[2] + e3;
      const RationalFunction e1 = v[1] + e2;
      return {Repr::epsilon, {e1, e2, e3, e4}};
    }
    case Repr::kappa:
      return {Repr::kappa, {v[4], v[3], v[0], v[1], v[2]}};
  }
  throw std::logic_error("bad representation");
}

}  // namespace

ParamVec ParamVec::symbolic_alpha() {
  return {Repr::alpha, {vars::a0(), vars::a1(), vars::a2(), vars::a3(), vars::a4()}};
}

ParamVec ParamVec::alpha_from(const std::array<Rational, 4>& a) {
  const Rational a0 = 1 - a[0] - 2 * a[1] - a[2] - a[3];
  return {Repr::alpha, {a0, a[0], a[1], a[2], a[3]}};
}

ParamVec ParamVec::epsilon(const std::array<Rational, 4>& e) {
  return {Repr::epsilon, {e[0], e[1], e[2], e[3]}};
}

bool ParamVec::satisfies_invariant() const {
  if (values.size() != arity(repr)) return false;
  const auto& v = values;
  switch (repr) {
    case Repr::epsilon:
      return true;
    case Repr::alpha:
      return (v[0] + v[1] + RationalFunction(2) * v[2] + v[3] + v[4]).is_one();
    case Repr::kappa:
      return (v[0] + v[1] + v[2] + v[3] + RationalFunction(2) * v[4]).is_one();
  }
  return false;
}

std::vector<Rational> ParamVec::rationals() const {
  std::vector<Rational> out;
  for (const auto& v : values) {
    if (!v.is_constant()) throw std::logic_error("parameter vector is symbolic");
    out.push_back(v.constant_value());
  }
  return out;
}

std::vector<std::complex<double>> ParamVec::complex_values() const {
  std::vector<std::complex<double>> out;
  for (const auto& r : rationals()) out.emplace_back(r.get_d());
  return out;
}

ParamVec convert(const ParamVec& pv, Repr target) {
  if (!pv.satisfies_invariant()) throw std::invalid_argument("parameter vector violates its invariant");
  return from_alpha(to_alpha(pv), target);
}

PViConstants pvi_constants(const ParamVec& pv) {
  const auto k = convert(pv, Repr::kappa).values;
  const RationalFunction &k0 = k[0], &k1 = k[1], &kt = k[2], &kinf = k[3];
  return {half(kinf * kinf), -half(k0 * k0), half(k1 * k1), half(RationalFunction(1) - kt * kt)};
}

std::array<std::complex<double>, 4> PViConstants::to_complex() const {
  auto c = [](const RationalFunction& f) {
    if (!f.is_constant()) throw std::logic_error("P_VI constants are symbolic");
    return std::complex<double>(f.constant_value().get_d());
  };
  return {c(alpha), c(beta), c(gamma), c(delta)};
}

RationalFunction hamiltonian_h_kappa_form(const ParamVec& pv) {
  const auto k = convert(pv, Repr::kappa).values;
  const RationalFunction &k0 = k[0], &k1 = k[1], &kt = k[2], &kinf = k[3], &rho = k[4];
  const auto& q = vars::q();
  const auto& p = vars::p();
  const auto& t = vars::t();
  const RationalFunction one(1);
  const RationalFunction bracket = p * p * q * (q - one) * (q - t) -
                                   p * (k0 * (q - one) * (q - t) + k1 * q * (q - t) + (kt - one) * q * (q - one)) +
                                   rho * (kinf + rho) * (q - t);
  return bracket / (t * (t - one));
}

RationalFunction hamiltonian_h_alpha_form(const ParamVec& pv) {
  const auto a = convert(pv, Repr::alpha).values;
  const auto& q = vars::q();
  const auto& p = vars::p();
  const auto& t = vars::t();
  const RationalFunction one(1);
  const RationalFunction bracket = p * p * q * (q - one) * (q - t) -
                                   p * ((a[0] - one) * q * (q - one) + a[3] * q * (q - t) + a[4] * (q - one) * (q - t)) +
                                   a[2] * (a[1] + a[2]) * (q - t);
  return bracket / (t * (t - one));
}

RationalFunction hamiltonian_h(const ParamVec& pv) { return hamiltonian_h_kappa_form(pv); }

Derivation::Derivation(RationalFunction h)
    : h_(std::move(h)), dq_(field::derivative(h_, Var::p)), dp_(-field::derivative(h_, Var::q)) {}

RationalFunction Derivation::operator()(const RationalFunction& f) const {
  RationalFunction r = field::derivative(f, Var::t);
  if (f.depends_on(Var::q)) r += dq_ * field::derivative(f, Var::q);
  if (f.depends_on(Var::p)) r += dp_ * field::derivative(f, Var::p);
  return r;
}

RootExtElement Derivation::operator()(const RootExtElement& f) const {
  return field::derivative(f, Var::t) + RootExtElement(dq_) * field::derivative(f, Var::q) +
         RootExtElement(dp_) * field::derivative(f, Var::p);
}

const Derivation& symbolic_delta() {
  static const Derivation d(hamiltonian_h(ParamVec::symbolic_alpha()));
  return d;
}

RationalFunction delta_derivation(const RationalFunction& f) { return symbolic_delta()(f); }

RationalFunction poisson(const RationalFunction& f, const RationalFunction& g) {
  return field::derivative(f, Var::p) * field::derivative(g, Var::q) -
         field::derivative(f, Var::q) * field::derivative(g, Var::p);
}

std::complex<double> pvi_residual(std::complex<double> y, std::complex<double> y1, std::complex<double> y2,
                                  std::complex<double> t, const std::array<std::complex<double>, 4>& c) {
  constexpr double tiny = 1e-12;
  if (std::abs(t) < tiny || std::abs(t - 1.0) < tiny) throw SingularConfiguration("t is a fixed singularity (0 or 1)");
  if (std::abs(y) < tiny || std::abs(y - 1.0) < tiny || std::abs(y - t) < tiny)
    throw SingularConfiguration("y coincides with 0, 1 or t");
  return y2 - pvi_rhs<std::complex<double>>(y, y1, t, c[0], c[1], c[2], c[3]);
}

std::complex<double> pvi_residual(std::complex<double> y, std::complex<double> y1, std::complex<double> y2,
                                  std::complex<double> t, const PViConstants& c) {
  return pvi_residual(y, y1, y2, t, c.to_complex());
}

RationalFunction pvi_residual_symbolic(const Derivation& delta, const PViConstants& c) {
  const RationalFunction& y = vars::q();
  const RationalFunction y1 = delta.dq();
  const RationalFunction y2 = delta(y1);
  return y2 - pvi_rhs<RationalFunction>(y, y1, vars::t(), c.alpha, c.beta, c.gamma, c.delta);
}

FuchsianCoefficients fuchsian_coeffs(const ParamVec& pv) { return fuchsian_coeffs(pv, hamiltonian_h(pv)); }

FuchsianCoefficients fuchsian_coeffs(const ParamVec& pv, const RationalFunction& h) {
  const auto k = convert(pv, Repr::kappa).values;
  const RationalFunction &k0 = k[0], &k1 = k[1], &kt = k[2], &kinf = k[3], &rho = k[4];
  const auto& x = vars::x();
  const auto& q = vars::q();
  const auto& p = vars::p();
  const auto& t = vars::t();
  const RationalFunction one(1);
  FuchsianCoefficients out;
  out.a1 = (one - k0) / x + (one - k1) / (x - one) + (one - kt) / (x - t) - one / (x - q);
  out.a2 = (-(t * (t - one) * h) / (x - t) + q * (q - one) * p / (x - q) + rho * (kinf + rho)) / (x * (x - one));
  return out;
}

}  // namespace pvi::hamiltonian
