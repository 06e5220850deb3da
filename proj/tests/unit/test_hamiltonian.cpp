#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pvi/errors.hpp"
#include "pvi/hamiltonian.hpp"

using namespace pvi::hamiltonian;
using pvi::field::parse;
using pvi::field::Polynomial;
using pvi::field::Var;
namespace vars = pvi::field::vars;

namespace {

// A generic kappa vector satisfying the Fuchs relation.
ParamVec generic_kappa() {
  const Rational k0(1, 3), k1(1, 5), kt(1, 7), rho(1, 10);
  const Rational kinf = 1 - k0 - k1 - kt - 2 * rho;
  return {Repr::kappa, {k0, k1, kt, kinf, rho}};
}

}  // namespace

TEST_CASE("convert between parameter coordinates") {
  const ParamVec a = ParamVec::alpha_from({Rational(1, 5), Rational(1, 10), Rational(1, 8), Rational(1, 40)});
  const ParamVec k = convert(a, Repr::kappa);
  // (k0, k1, kt, kinf, rho) = (a4, a3, a0, a1, a2)
  CHECK(k.values[0] == a.values[4]);
  CHECK(k.values[1] == a.values[3]);
  CHECK(k.values[2] == a.values[0]);
  CHECK(k.values[3] == a.values[1]);
  CHECK(k.values[4] == a.values[2]);
  CHECK(k.satisfies_invariant());

  const ParamVec zero = ParamVec::epsilon({0, 0, 0, 0});
  CHECK(convert(zero, Repr::alpha) == ParamVec{Repr::alpha, {1, 0, 0, 0, 0}});

  const ParamVec bad{Repr::alpha, {1, 1, 0, 0, 0}};
  CHECK_THROWS_AS(convert(bad, Repr::kappa), std::invalid_argument);
}

TEST_CASE("property: kappa -> epsilon -> kappa is the identity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Rational k0 = pvi::testing::random_rational(rng), k1 = pvi::testing::random_rational(rng);
    Rational kt = pvi::testing::random_rational(rng), rho = pvi::testing::random_rational(rng);
    ParamVec k{Repr::kappa, {k0, k1, kt, Rational(1 - k0 - k1 - kt - 2 * rho), rho}};
    CHECK(convert(convert(k, Repr::epsilon), Repr::kappa) == k);
    CHECK(convert(convert(k, Repr::alpha), Repr::kappa) == k);
  }
  const ParamVec s = ParamVec::symbolic_alpha();
  CHECK(convert(convert(s, Repr::epsilon), Repr::alpha) == s);
}

TEST_CASE("pvi_constants") {
  ParamVec k{Repr::kappa, {0, 0, 0, 1, 0}};
  CHECK(pvi_constants(k).alpha == RationalFunction(Rational(1, 2)));
  // The formula alone, ignoring the Fuchs relation.
  ParamVec zeros{Repr::kappa, {0, 0, 0, 0, Rational(1, 2)}};
  const auto c = pvi_constants(zeros);
  CHECK(c.alpha.is_zero());
  CHECK(c.beta.is_zero());
  CHECK(c.gamma.is_zero());
  CHECK(c.delta == RationalFunction(Rational(1, 2)));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    Rational k0 = pvi::testing::random_rational(rng);
    ParamVec v{Repr::kappa, {k0, 0, 0, Rational(1 - k0), 0}};
    CHECK(pvi_constants(v).beta.constant_value() <= 0);
  }
}

TEST_CASE("the two forms of H agree symbolically") {
  const ParamVec s = ParamVec::symbolic_alpha();
  CHECK(hamiltonian_h_kappa_form(s) == hamiltonian_h_alpha_form(s));
  CHECK(hamiltonian_h_kappa_form(generic_kappa()) == hamiltonian_h_alpha_form(generic_kappa()));
}

TEST_CASE("H vanishes at p = 0, rho = 0") {
  ParamVec k{Repr::kappa, {Rational(1, 3), Rational(1, 4), Rational(1, 6), Rational(1, 4), 0}};
  REQUIRE(k.satisfies_invariant());
  CHECK(pvi::field::substitute(hamiltonian_h(k), {{Var::p, RationalFunction(0)}}).is_zero());
}

TEST_CASE("H spot value against a term-by-term evaluation") {
  const auto k = generic_kappa().rationals();
  const Rational k0 = k[0], k1 = k[1], kt = k[2], kinf = k[3], rho = k[4];
  const Rational q = 2, p = 1, t = 3;
  Rational oracle = p * p * q * (q - 1) * (q - t);
  oracle -= p * k0 * (q - 1) * (q - t);
  oracle -= p * k1 * q * (q - t);
  oracle -= p * (kt - 1) * q * (q - 1);
  oracle += rho * (kinf + rho) * (q - t);
  oracle /= t * (t - 1);
  const auto h = hamiltonian_h(generic_kappa());
  const auto value = pvi::field::substitute(h, {{Var::q, q}, {Var::p, p}, {Var::t, t}});
  REQUIRE(value.is_constant());
  CHECK(value.constant_value() == oracle);
}

TEST_CASE("delta on generators") {
  CHECK(delta_derivation(vars::t()).is_one());
  CHECK(delta_derivation(vars::a1()).is_zero());
  CHECK(delta_derivation(vars::a0()).is_zero());
  const auto dq = parse(
      "(2*p*q*(q-1)*(q-t) - (a4*(q-1)*(q-t) + a3*q*(q-t) + (a0-1)*q*(q-1)))/(t*(t-1))");
  const auto dp = parse(
      "(-p^2*(3*q^2 - 2*(1+t)*q + t) + p*(2*(a4+a3+a0-1)*q - a4*(1+t) - a3*t - a0 + 1) - a2*(a1+a2))/(t*(t-1))");
  CHECK(delta_derivation(vars::q()) == dq);
  CHECK(delta_derivation(vars::p()) == dp);
}

TEST_CASE("property: delta obeys Leibniz; delta(H) = dH/dt") {
  std::mt19937_64 rng(31);
  const std::vector<Var> vs = {Var::a2, Var::q, Var::p, Var::t};
  for (int trial = 0; trial < 10; ++trial) {
    RationalFunction f(pvi::testing::random_polynomial(rng, vs, 2), pvi::testing::random_nonzero(rng, vs, 1));
    RationalFunction g(pvi::testing::random_polynomial(rng, vs, 2));
    CHECK(delta_derivation(f * g) == delta_derivation(f) * g + f * delta_derivation(g));
  }
  const auto& d = symbolic_delta();
  CHECK(d(d.h()) == pvi::field::derivative(d.h(), Var::t));
}

TEST_CASE("Poisson bracket orientation and the phi table") {
  CHECK(poisson(vars::p(), vars::q()).is_one());
  CHECK(poisson(-vars::p(), vars::q() - vars::t()) == RationalFunction(-1));
  const std::array<RationalFunction, 5> phi = {vars::q() - vars::t(), RationalFunction(1), -vars::p(),
                                                vars::q() - RationalFunction(1), vars::q()};
  const int U[5][5] = {{0, 0, 1, 0, 0}, {0, 0, 0, 0, 0}, {-1, 0, 0, -1, -1}, {0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(poisson(phi[i], phi[j]) == RationalFunction(U[i][j]));
}

TEST_CASE("property: Poisson bracket is antisymmetric, a derivation, and satisfies Jacobi") {
  std::mt19937_64 rng(41);
  const std::vector<Var> vs = {Var::q, Var::p, Var::t};
  for (int trial = 0; trial < 15; ++trial) {
    auto r = [&] { return RationalFunction(pvi::testing::random_polynomial(rng, vs, 3)); };
    const auto f = r(), g = r(), h = r();
    CHECK(poisson(f, g) == -poisson(g, f));
    CHECK(poisson(f, g * h) == poisson(f, g) * h + g * poisson(f, h));
    CHECK((poisson(f, poisson(g, h)) + poisson(g, poisson(h, f)) + poisson(h, poisson(f, g))).is_zero());
  }
}

TEST_CASE("pvi_residual") {
  const auto c = pvi_constants(generic_kappa());
  const std::complex<double> y(0.3, 0.2), y1(1.1, -0.4), t(2.5, 0.1);
  const auto cc = c.to_complex();
  const auto rhs = pvi_rhs<std::complex<double>>(y, y1, t, cc[0], cc[1], cc[2], cc[3]);
  CHECK(std::abs(pvi_residual(y, y1, rhs, t, c)) < 1e-14);
  CHECK_THROWS_AS(pvi_residual(1.0, 0.0, 0.0, 2.0, c), pvi::SingularConfiguration);
  CHECK_THROWS_AS(pvi_residual(0.5, 0.0, 0.0, 1.0, c), pvi::SingularConfiguration);
  CHECK_THROWS_AS(pvi_residual(2.0, 0.0, 0.0, 2.0, c), pvi::SingularConfiguration);
}

TEST_CASE("Hamiltonian system is equivalent to P_VI (symbolic)") {
  const auto s = ParamVec::symbolic_alpha();
  CHECK(pvi_residual_symbolic(symbolic_delta(), pvi_constants(s)).is_zero());
  auto wrong = pvi_constants(s);
  wrong.gamma = wrong.gamma + RationalFunction(1);
  CHECK(!pvi_residual_symbolic(symbolic_delta(), wrong).is_zero());
}

TEST_CASE("Fuchsian coefficients and residues") {
  const auto s = convert(ParamVec::symbolic_alpha(), Repr::kappa);
  const auto [a1, a2] = fuchsian_coeffs(s);
  const auto& k = s.values;
  using pvi::field::residue;
  CHECK(residue(a1, Var::x, Polynomial()) == RationalFunction(1) - k[0]);
  CHECK(residue(a1, Var::x, Polynomial(1)) == RationalFunction(1) - k[1]);
  CHECK(residue(a1, Var::x, vars::t().num()) == RationalFunction(1) - k[2]);
  CHECK(residue(a1, Var::x, vars::q().num()) == RationalFunction(-1));
  CHECK(residue(a2, Var::x, vars::q().num()) == vars::p());
  CHECK(-residue(a2, Var::x, vars::t().num()) == hamiltonian_h(s));
  // Residue theorem: finite residues plus the one at infinity sum to zero,
  // and a2 = O(x^-2) at infinity.
  const auto at_inf = pvi::field::residue_at_infinity(a2, Var::x);
  CHECK(at_inf.is_zero());
  const auto total = residue(a2, Var::x, Polynomial()) + residue(a2, Var::x, Polynomial(1)) +
                     residue(a2, Var::x, vars::t().num()) + residue(a2, Var::x, vars::q().num()) + at_inf;
  CHECK(total.is_zero());
}
