#include <complex>

#include "doctest.h"
#include "pvi/errors.hpp"
#include "pvi/lax.hpp"

using namespace pvi::lax;
using pvi::field::parse;
using pvi::field::Rational;
using pvi::field::Var;
using X = RootExtElement;
namespace vars = pvi::field::vars;

namespace {

RationalFunction P(const char* s) { return parse(s); }

bool same(const ExtMatrix& a, const ExtMatrix& b) { return (a - b).is_zero(); }

std::array<RationalFunction, 4> H_of(long a1, long a2, long a3, long a4) {
  return {RationalFunction(a1), RationalFunction(a2), RationalFunction(a3), RationalFunction(a4)};
}

}  // namespace

TEST_CASE("Chevalley generators") {
  for (int j = 0; j < 5; ++j) {
    CHECK(in_algebra(E(j)));
    CHECK(in_algebra(F(j)));
    CHECK(in_algebra(H(j)));
  }
  CHECK(H(0) == cartan_element(H_of(-1, -1, 0, 0)));
  CHECK(H(1) == cartan_element(H_of(1, -1, 0, 0)));
  CHECK(H(2) == cartan_element(H_of(0, 1, -1, 0)));
  CHECK(H(3) == cartan_element(H_of(0, 0, 1, -1)));
  CHECK(H(4) == cartan_element(H_of(0, 0, 1, 1)));
  CHECK_THROWS_AS(E(5), std::out_of_range);
  CHECK(!in_algebra(Matrix::unit(1, 2)));
}

TEST_CASE("Serre-type relations against the Cartan matrix") {
  const auto& a = pvi::weyl::cartan();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(commutator(H(i), E(j)) == RationalFunction(a[i][j]) * E(j));
      CHECK(commutator(H(i), F(j)) == RationalFunction(-a[i][j]) * F(j));
      if (i != j) CHECK(commutator(E(i), F(j)).is_zero());
    }
}

TEST_CASE("simple roots pair with H(eps) and the z-derivation") {
  const Matrix he = cartan_element(symbolic_epsilon());
  const auto roots = pvi::weyl::simple_roots();
  for (int j = 0; j < 5; ++j) {
    Matrix lhs = commutator(he, E(j));
    if (j == 0) lhs += z_dz(E(j));
    CHECK(lhs == roots[j].as_rational_function() * E(j));
  }
}

TEST_CASE("M and B") {
  const Matrix& m = build_M();
  const Matrix& b = build_B();
  CHECK(m == build_M_borel());
  CHECK(b == build_B_borel());
  CHECK(in_algebra(m));
  CHECK(in_algebra(b));
  CHECK(m(8, 3) == vars::z());
  CHECK(m(7, 1) == P("(t - q)*z"));
  CHECK(m(2, 3) == -vars::p());

  const auto& c = b_coefficients();
  CHECK(c.x[0] == P("(q - t)/(t*(t - 1))"));
  CHECK(c.x[1] == P("-((q - t)*p + a1 + a2)/(t*(t - 1))"));
  CHECK(c.x[2] == P("-q/t"));
  CHECK(c.x[3] == P("-(q - 1)/(t - 1)"));
  CHECK(c.y1 == P("1/(t*(t - 1))"));
  CHECK(c.y3 == P("-1/t"));
  CHECK(c.y4 == P("-1/(t - 1)"));
  const RationalFunction tt = P("t*(t - 1)");
  CHECK(c.u[0] * tt == P("-q*(q - 1)*p - a2*q + (a0 - a1 - 1)/2*t - (a0 + a4 - 1)/2"));
  CHECK(c.u[1] * tt == P("-q*(q - 1)*p - (a1 + a2)*q + (a0 + a1 - 1)/2*t - (a0 + a4 - 1)/2"));
  CHECK(c.u[2] * tt == P("(2*q - 1)*(q - t)*p + (a1 + 2*a2)*q + (a3 + a4)/2*t + (a0 + a4 - 1)/2"));
  CHECK(c.u[3] * tt == P("-(q - t)*p + (a3 - a4)/2*t + (a0 + a4 - 1)/2"));
}

TEST_CASE("zero curvature") {
  CHECK(zero_curvature_residual().is_zero());
  // the explicit t-derivative alone misses the flow of q and p
  const Matrix frozen = zero_curvature_residual([](const RationalFunction& f) { return pvi::field::derivative(f, Var::t); });
  CHECK(!frozen.is_zero());
  // a wrong flow: twice the Hamiltonian vector field in q
  const auto& delta = pvi::hamiltonian::symbolic_delta();
  const Matrix wrong = zero_curvature_residual([&](const RationalFunction& f) {
    return delta(f) + pvi::field::derivative(f, Var::q) * delta.dq();
  });
  CHECK(!wrong.is_zero());
}

TEST_CASE("converse: the residual determines the Hamiltonian system") {
  const auto sol = solve_converse();
  const auto& delta = pvi::hamiltonian::symbolic_delta();
  CHECK(sol.qdot == delta.dq());
  CHECK(sol.pdot == delta.dp());
  // displayed expanded form, with (k0, k1, kt, kinf, rho) = (a4, a3, a0, a1, a2)
  const RationalFunction tt = P("t*(t - 1)");
  CHECK(sol.qdot * tt == P("2*p*q*(q - 1)*(q - t) - (a4*(q - 1)*(q - t) + a3*q*(q - t) + (a0 - 1)*q*(q - 1))"));
  CHECK(sol.pdot * tt == P("-p^2*(3*q^2 - 2*(1 + t)*q + t) + p*(2*(a4 + a3 + a0 - 1)*q - a4*(1 + t) - a3*t - a0 + 1)"
                           " - a2*(a1 + a2)"));
}

TEST_CASE("gauge matrices G_k") {
  for (int k = 0; k < 5; ++k) {
    INFO("k = " << k);
    const Matrix g = gauge_G(k);
    CHECK(in_group(g));
    CHECK(g * gauge_G_inverse(k) == Matrix::identity());
    const auto [rm, rb] = gauge_residual_s(k);
    CHECK(rm.is_zero());
    CHECK(rb.is_zero());
  }
  CHECK(gauge_G(0) == Matrix::identity() + P("a0/(q - t)") * F(0));
  // doubled coefficient in G_0
  const Matrix bad = Matrix::identity() + P("2*a0/(q - t)") * F(0);
  const Matrix bad_inv = RationalFunction(2) * Matrix::identity() - bad;
  const auto [rm, rb] = gauge_residual(bad, bad_inv, pvi::backlund::generator_map(pvi::weyl::Gen::s0));
  CHECK(!rm.is_zero());
  CHECK(!rb.is_zero());
}

TEST_CASE("gauge matrices Gamma_k") {
  for (int k : {1, 3, 4}) {
    INFO("k = " << k);
    const ExtMatrix g = gauge_Gamma(k);
    const ExtMatrix gi = gauge_Gamma_inverse(k);
    CHECK(in_group(g));
    CHECK(same(g, gauge_Gamma_factored(k)));
    CHECK(same(g * gi, ExtMatrix::identity()));
    CHECK(same(gi, lift(J()) * g.transpose() * lift(J())));
    CHECK(in_group(lift(c_matrix(k))));
    CHECK(in_group(z_weight(k, gamma_context(k))));
  }
  const auto ctx = gamma_context(1);
  CHECK((gauge_Gamma(1)(8, 1) - X(vars::z()) * X::root(ctx, "s")).is_zero());
  CHECK_THROWS_AS(gauge_Gamma(2), std::out_of_range);

  const auto ctx3 = gamma_context(3);
  const X w = X::root(ctx3, "w");
  const ExtMatrix zw3 = z_weight(3, ctx3);
  for (int i = 1; i <= 3; ++i) CHECK((zw3(i, i) - w).is_zero());
  CHECK((zw3(4, 4) - w.inverse()).is_zero());
  CHECK((zw3(4, 4) * zw3(4, 4) * X(vars::z()) - X(1)).is_zero());
}

TEST_CASE("diagram automorphisms read off from Gamma_k") {
  for (int k : {1, 3, 4}) {
    INFO("k = " << k);
    const auto m = derive_r_map(k);
    const auto g = k == 1 ? pvi::weyl::Gen::r1 : k == 3 ? pvi::weyl::Gen::r3 : pvi::weyl::Gen::r4;
    CHECK(m.roots == pvi::weyl::root_action(g, pvi::weyl::simple_roots()));
    CHECK(m.t == vars::t());
    const auto [rm, rb] = gauge_residual_r(k);
    CHECK(rm.is_zero());
    CHECK(rb.is_zero());
  }
  CHECK(derive_r_map(3).q == P("t/q"));

  // a rescaled gauge changes the normalized (1,2) entry and is rejected
  ExtMatrix d = ExtMatrix::identity(), d_inv = ExtMatrix::identity();
  d(1, 1) = X(2);
  d(8, 8) = X(Rational(1, 2));
  d_inv(1, 1) = X(Rational(1, 2));
  d_inv(8, 8) = X(2);
  CHECK_THROWS_AS(read_gauge_map(d * gauge_Gamma(1), gauge_Gamma_inverse(1) * d_inv), pvi::TemplateMismatch);
  CHECK_NOTHROW(read_gauge_map(ExtMatrix::identity(), ExtMatrix::identity()));
}

TEST_CASE("Weyl group lifts S_k") {
  const auto& a = pvi::weyl::cartan();
  for (int k = 0; k < 5; ++k) {
    INFO("k = " << k);
    const Matrix s = weyl_lift_S(k);
    const Matrix si = weyl_lift_S_inverse(k);
    CHECK(in_group(s));
    CHECK(s * si == Matrix::identity());
    for (int j = 0; j < 5; ++j) CHECK(s * H(j) * si == H(j) - RationalFunction(a[k][j]) * H(k));
  }
}

TEST_CASE("Ad(z^-varpi_k C_k) permutes the Chevalley generators") {
  for (int k : {1, 3, 4}) {
    const auto checks = diagram_automorphism_check(k);
    CHECK(checks.size() == 10);
    for (const auto& c : checks) {
      INFO("k = " << k << ": " << c.what);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("Frobenius expansion at z = 0") {
  const auto params = pvi::hamiltonian::ParamVec::alpha_from({Rational(1, 5), Rational(1, 10), Rational(1, 8), Rational(3, 7)});
  const std::complex<double> q(0.3, 0.2), p(-0.4, 0.1), t(2.5, 0.5);
  const int order = 8;
  const auto s = frobenius_expand(params, q, p, t, order);
  REQUIRE(s.psi.size() == order + 1);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const auto x = s.psi[0][i * 8 + j];
      if (i == j) CHECK(std::abs(x - 1.0) < 1e-15);
      if (i > j) CHECK(std::abs(x) == 0.0);
    }
  for (double r : s.residual) CHECK(r < 1e-10);

  // Oracle: the truncated series solves z Phi' + Phi D + M(z) Phi = 0 up to
  // the first omitted order, with M(z) evaluated directly.
  const std::complex<double> z(0.01, 0.004);
  const auto e = pvi::hamiltonian::convert(params, pvi::hamiltonian::Repr::alpha).complex_values();
  const pvi::field::ComplexPoint pt = {{Var::a1, e[1]}, {Var::a2, e[2]}, {Var::a3, e[3]}, {Var::a4, e[4]},
                                       {Var::q, q},     {Var::p, p},     {Var::t, t},     {Var::z, z}};
  CMatrix phi{}, dphi{}, mz{};
  std::complex<double> zn = 1.0;
  for (int n = 0; n <= order; ++n) {
    for (int k = 0; k < 64; ++k) {
      phi[k] += s.psi[n][k] * zn;
      dphi[k] += static_cast<double>(n) * s.psi[n][k] * zn;  // z d/dz
    }
    zn *= z;
  }
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      if (!build_M()(i, j).is_zero()) mz[(i - 1) * 8 + j - 1] = pvi::field::eval_complex(build_M()(i, j), pt);
  double worst = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      std::complex<double> r = dphi[i * 8 + j] + phi[i * 8 + j] * s.exponent[j];
      for (int k = 0; k < 8; ++k) r += mz[i * 8 + k] * phi[k * 8 + j];
      worst = std::max(worst, std::abs(r));
    }
  CHECK(worst < 1e-12);

  // exponents: D = -H(eps)
  const auto eps = pvi::hamiltonian::convert(params, pvi::hamiltonian::Repr::epsilon).complex_values();
  CHECK(std::abs(s.exponent[0] + eps[0]) < 1e-15);
  CHECK(std::abs(s.exponent[7] - eps[0]) < 1e-15);
}

TEST_CASE("Frobenius expansion detects resonance") {
  const auto params = pvi::hamiltonian::ParamVec::epsilon({Rational(3, 2), Rational(1, 2), Rational(1, 5), Rational(1, 7)});
  // h_1 - h_2 = 1: distinct exponents, resonant from order 1 on
  CHECK_THROWS_AS(frobenius_expand(params, {0.3, 0.2}, {-0.4, 0.1}, {2.5, 0.5}, 4), pvi::ResonanceError);
  CHECK_NOTHROW(frobenius_expand(params, {0.3, 0.2}, {-0.4, 0.1}, {2.5, 0.5}, 0));
}

TEST_CASE("text and json rendering") {
  const auto j = to_json(E(1));
  CHECK(j.size() == 8);
  CHECK(j[0].size() == 8);
  CHECK(j[0][1] == "1");
  CHECK(j[6][7] == "-1");
  CHECK(to_text(E(1)).find('[') == 0);
  CHECK(to_json(gauge_Gamma(1))[7][0].get<std::string>().find('s') != std::string::npos);
}
