#include "pvi/lax.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pvi/errors.hpp"

namespace pvi::lax {

using field::Rational;
using field::Var;
namespace vars = field::vars;

namespace {

using RF = RationalFunction;
using X = RootExtElement;

RF rf(long v) { return RF(v); }

RF z_dz_entry(const RF& f) { return vars::z() * field::derivative(f, Var::z); }
X z_dz_entry(const X& f) { return X(vars::z()) * field::derivative(f, Var::z); }

void check_index(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi) throw std::out_of_range(std::string(what) + " index out of range");
}

void check_gamma_index(int k) {
  if (k != 1 && k != 3 && k != 4) throw std::out_of_range("Gamma index must be 1, 3 or 4");
}

// Signed permutation matrix S_sigma, (S)_{i, sigma(i)} = 1, sigma given as a 1-based image list.
Matrix permutation(const std::array<int, 8>& sigma) {
  Matrix m;
  for (int i = 1; i <= 8; ++i) m(i, sigma[i - 1]) = rf(1);
  return m;
}

Matrix rational_D(const std::array<RF, 4>& a) {
  Matrix m;
  for (int i = 0; i < 4; ++i) {
    m(i + 1, i + 1) = a[i];
    m(8 - i, 8 - i) = a[i].inverse();
  }
  return m;
}

// 1 + c E2 (E2 squares to zero, so this is the exponential).
ExtMatrix exp_E2(const X& c) { return ExtMatrix::identity() + c * lift(E(2)); }

// (D(a_k) entries, coefficient of E2 in the exponential) for Gamma_k.
std::pair<std::array<X, 4>, X> gamma_factors(int k, const field::RootContextPtr& ctx) {
  const X q(vars::q()), t(vars::t()), one(1);
  switch (k) {
    case 1: {
      const X s = X::root(ctx, "s");
      return {{one / s, (q - t) / s, -s / (q - t), -t / s}, one / (q - t)};
    }
    case 3: {
      const X m = X::root(ctx, "m");
      return {{one / m, q / m, m / q, -m}, one / q};
    }
    case 4: {
      const X n = X::root(ctx, "n");
      return {{one / n, (q - one) / n, n / (one - q), -one / n}, one / (q - one)};
    }
  }
  throw std::out_of_range("Gamma index must be 1, 3 or 4");
}

int weight_of_gamma(int k) { return k == 1 ? 1 : k; }

}  // namespace

ExtMatrix lift(const Matrix& m) {
  ExtMatrix out;
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      if (!m(i, j).is_zero()) out(i, j) = X(m(i, j));
  return out;
}

Matrix rational_part(const ExtMatrix& m) {
  Matrix out;
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      if (!m(i, j).is_rational())
        throw TemplateMismatch("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not rational: " +
                               m(i, j).str());
      out(i, j) = m(i, j).rational_part();
    }
  return out;
}

Matrix z_dz(const Matrix& m) {
  return m.map([](const RF& f) { return z_dz_entry(f); });
}

ExtMatrix z_dz(const ExtMatrix& m) {
  return m.map([](const X& f) { return z_dz_entry(f); });
}

const Matrix& J() {
  static const Matrix j = [] {
    Matrix m;
    for (int i = 1; i <= 8; ++i) m(i, 9 - i) = rf(1);
    return m;
  }();
  return j;
}

bool in_algebra(const Matrix& x) { return (J() * x + x.transpose() * J()).is_zero(); }

bool in_group(const Matrix& x) { return x.transpose() * J() * x == J(); }

bool in_group(const ExtMatrix& x) { return (x.transpose() * lift(J()) * x - lift(J())).is_zero(); }

Matrix cartan_element(const std::array<RF, 4>& a) {
  Matrix m;
  for (int i = 0; i < 4; ++i) {
    m(i + 1, i + 1) = a[i];
    m(8 - i, 8 - i) = -a[i];
  }
  return m;
}

ExtMatrix diagonal_D(const std::array<X, 4>& a) {
  ExtMatrix m;
  for (int i = 0; i < 4; ++i) {
    m(i + 1, i + 1) = a[i];
    m(8 - i, 8 - i) = a[i].inverse();
  }
  return m;
}

const Matrix& E(int j) {
  static const std::array<Matrix, 5> e = [] {
    std::array<Matrix, 5> out;
    out[0] = Matrix::unit(8, 2, vars::z()) - Matrix::unit(7, 1, vars::z());
    out[1] = Matrix::unit(1, 2) - Matrix::unit(7, 8);
    out[2] = Matrix::unit(2, 3) - Matrix::unit(6, 7);
    out[3] = Matrix::unit(3, 4) - Matrix::unit(5, 6);
    out[4] = Matrix::unit(3, 5) - Matrix::unit(4, 6);
    return out;
  }();
  check_index(j, 0, 4, "Chevalley");
  return e[j];
}

const Matrix& F(int j) {
  static const std::array<Matrix, 5> f = [] {
    std::array<Matrix, 5> out;
    const RF zi = vars::z().inverse();
    out[0] = Matrix::unit(2, 8, zi) - Matrix::unit(1, 7, zi);
    out[1] = Matrix::unit(2, 1) - Matrix::unit(8, 7);
    out[2] = Matrix::unit(3, 2) - Matrix::unit(7, 6);
    out[3] = Matrix::unit(4, 3) - Matrix::unit(6, 5);
    out[4] = Matrix::unit(5, 3) - Matrix::unit(6, 4);
    return out;
  }();
  check_index(j, 0, 4, "Chevalley");
  return f[j];
}

const Matrix& H(int j) {
  static const std::array<Matrix, 5> h = [] {
    std::array<Matrix, 5> out;
    for (int k = 0; k < 5; ++k) out[k] = commutator(E(k), F(k));
    return out;
  }();
  check_index(j, 0, 4, "Chevalley");
  return h[j];
}

const std::array<RF, 4>& symbolic_epsilon() {
  static const std::array<RF, 4> eps = [] {
    const auto v = hamiltonian::convert(hamiltonian::ParamVec::symbolic_alpha(), hamiltonian::Repr::epsilon).values;
    return std::array<RF, 4>{v[0], v[1], v[2], v[3]};
  }();
  return eps;
}

Matrix build_M(const std::array<RF, 4>& e, const RF& q, const RF& p, const RF& t) {
  const RF& z = vars::z();
  const RF one(1);
  Matrix m;
  m(1, 1) = e[0];
  m(1, 2) = one;
  m(2, 2) = e[1];
  m(2, 3) = -p;
  m(2, 4) = -one;
  m(2, 5) = -one;
  m(3, 3) = e[2];
  m(3, 4) = q - one;
  m(3, 5) = q;
  m(4, 4) = e[3];
  m(4, 6) = -q;
  m(4, 7) = one;
  m(5, 5) = -e[3];
  m(5, 6) = one - q;
  m(5, 7) = one;
  m(6, 1) = -z;
  m(6, 6) = -e[2];
  m(6, 7) = p;
  m(7, 1) = (t - q) * z;
  m(7, 7) = -e[1];
  m(7, 8) = -one;
  m(8, 2) = (q - t) * z;
  m(8, 3) = z;
  m(8, 8) = -e[0];
  return m;
}

const Matrix& build_M() {
  static const Matrix m = build_M(symbolic_epsilon(), vars::q(), vars::p(), vars::t());
  return m;
}

Matrix build_M_borel() {
  const RF q = vars::q(), p = vars::p(), t = vars::t(), one(1);
  return cartan_element(symbolic_epsilon()) + (q - t) * E(0) + E(1) + (-p) * E(2) + (q - one) * E(3) + q * E(4) +
         commutator(E(0), E(2)) + commutator(E(3), E(2)) + commutator(E(4), E(2));
}

const BCoefficients& b_coefficients() {
  static const BCoefficients c = [] {
    const RF q = vars::q(), p = vars::p(), t = vars::t(), one(1), half(Rational(1, 2));
    const RF a0 = vars::a0(), a1 = vars::a1(), a2 = vars::a2(), a3 = vars::a3(), a4 = vars::a4();
    const RF tt = t * (t - one);
    BCoefficients b;
    b.x[0] = (q - t) / tt;
    b.x[1] = -((q - t) * p + a1 + a2) / tt;
    b.x[2] = -q / t;
    b.x[3] = -(q - one) / (t - one);
    b.y1 = one / tt;
    b.y3 = -one / t;
    b.y4 = -one / (t - one);
    const RF c04 = half * (a0 + a4 - one);
    b.u[0] = (-q * (q - one) * p - a2 * q + half * (a0 - a1 - one) * t - c04) / tt;
    b.u[1] = (-q * (q - one) * p - (a1 + a2) * q + half * (a0 + a1 - one) * t - c04) / tt;
    b.u[2] = ((RF(2) * q - one) * (q - t) * p + (a1 + RF(2) * a2) * q + half * (a3 + a4) * t + c04) / tt;
    b.u[3] = (-(q - t) * p + half * (a3 - a4) * t + c04) / tt;
    return b;
  }();
  return c;
}

const Matrix& build_B() {
  static const Matrix m = [] {
    const auto& c = b_coefficients();
    const RF& z = vars::z();
    Matrix b;
    b(1, 1) = c.u[0];
    b(1, 2) = c.x[0];
    b(1, 3) = c.y1;
    b(2, 2) = c.u[1];
    b(2, 3) = c.x[1];
    b(2, 4) = -c.y3;
    b(2, 5) = -c.y4;
    b(3, 3) = c.u[2];
    b(3, 4) = c.x[2];
    b(3, 5) = c.x[3];
    b(4, 4) = c.u[3];
    b(4, 6) = -c.x[3];
    b(4, 7) = c.y4;
    b(5, 5) = -c.u[3];
    b(5, 6) = -c.x[2];
    b(5, 7) = c.y3;
    b(6, 6) = -c.u[2];
    b(6, 7) = -c.x[1];
    b(6, 8) = -c.y1;
    b(7, 1) = -z;
    b(7, 7) = -c.u[1];
    b(7, 8) = -c.x[0];
    b(8, 2) = z;
    b(8, 8) = -c.u[0];
    return b;
  }();
  return m;
}

Matrix build_B_borel() {
  const auto& c = b_coefficients();
  Matrix b = cartan_element(c.u) + E(0);
  for (int j = 1; j <= 4; ++j) b += c.x[j - 1] * E(j);
  b += c.y1 * commutator(E(1), E(2));
  b += c.y3 * commutator(E(3), E(2));
  b += c.y4 * commutator(E(4), E(2));
  return b;
}

Matrix zero_curvature_residual(const std::function<RF(const RF&)>& d) {
  const Matrix& m = build_M();
  const Matrix& b = build_B();
  return m.map(d) + z_dz(b) + commutator(m, b);
}

Matrix zero_curvature_residual() {
  const auto& delta = hamiltonian::symbolic_delta();
  return zero_curvature_residual([&](const RF& f) { return delta(f); });
}

ConverseSolution solve_converse() {
  // With q, p frozen, entry (3,4) of the residual is missing qdot * d(q - 1)/dq
  // and entry (2,3) is missing pdot * d(-p)/dp.
  const Matrix r = zero_curvature_residual([](const RF& f) { return field::derivative(f, Var::t); });
  return {-r(3, 4), r(2, 3)};
}

Matrix gauge_G(int k) {
  check_index(k, 0, 4, "G");
  const RF q = vars::q(), p = vars::p(), t = vars::t(), one(1);
  const RF coeff[5] = {vars::a0() / (q - t), vars::a1(), -vars::a2() / p, vars::a3() / (q - one), vars::a4() / q};
  return Matrix::identity() + coeff[k] * F(k);
}

Matrix gauge_G_inverse(int k) { return RF(2) * Matrix::identity() - gauge_G(k); }

std::pair<Matrix, Matrix> gauge_residual(const Matrix& g, const Matrix& g_inv, const backlund::BirationalMap& m) {
  const auto apply = [&](const RF& f) { return m.apply(f); };
  const auto& delta = hamiltonian::symbolic_delta();
  const Matrix rm = build_M().map(apply) - (g * build_M() * g_inv - z_dz(g) * g_inv);
  const Matrix rb =
      build_B().map(apply) - (g * build_B() * g_inv + g.map([&](const RF& f) { return delta(f); }) * g_inv);
  return {rm, rb};
}

std::pair<Matrix, Matrix> gauge_residual_s(int k) {
  return gauge_residual(gauge_G(k), gauge_G_inverse(k), backlund::generator_map(weyl::kAllGens[k]));
}

field::RootContextPtr gamma_context(int k) {
  static const field::RootContextPtr c1 = field::make_context({{"s", vars::t() * (vars::t() - RF(1))}});
  static const field::RootContextPtr c3 = field::make_context({{"m", -vars::t()}, {"w", vars::z()}});
  static const field::RootContextPtr c4 = field::make_context({{"n", RF(1) - vars::t()}, {"w", vars::z()}});
  check_gamma_index(k);
  return k == 1 ? c1 : k == 3 ? c3 : c4;
}

ExtMatrix gauge_Gamma(int k) {
  check_gamma_index(k);
  const auto ctx = gamma_context(k);
  const X q(vars::q()), t(vars::t()), z(vars::z()), one(1);
  ExtMatrix g;
  if (k == 1) {
    const X s = X::root(ctx, "s");
    g(1, 8) = one / (z * s);
    g(2, 2) = (q - t) / s;
    g(2, 3) = one / s;
    g(3, 3) = -s / (q - t);
    g(4, 5) = -t / s;
    g(5, 4) = -s / t;
    g(6, 6) = -(q - t) / s;
    g(6, 7) = one / s;
    g(7, 7) = s / (q - t);
    g(8, 1) = z * s;
  } else if (k == 3) {
    const X m = X::root(ctx, "m"), w = X::root(ctx, "w");
    g(1, 4) = one / (m * w);
    g(2, 6) = -q / (m * w);
    g(2, 7) = one / (m * w);
    g(3, 7) = m / (q * w);
    g(4, 1) = m * w;
    g(5, 8) = one / (m * w);
    g(6, 2) = q * w / m;
    g(6, 3) = w / m;
    g(7, 3) = -m * w / q;
    g(8, 5) = m * w;
  } else {
    const X n = X::root(ctx, "n"), w = X::root(ctx, "w");
    g(1, 5) = one / (n * w);
    g(2, 6) = (one - q) / (n * w);
    g(2, 7) = one / (n * w);
    g(3, 7) = n / ((one - q) * w);
    g(4, 8) = one / (n * w);
    g(5, 1) = n * w;
    g(6, 2) = (one - q) * w / n;
    g(6, 3) = -w / n;
    g(7, 3) = n * w / (one - q);
    g(8, 4) = n * w;
  }
  return g;
}

ExtMatrix z_weight(int i, const field::RootContextPtr& ctx) {
  check_index(i, 1, 4, "weight");
  const X z(vars::z()), one(1);
  switch (i) {
    case 1: return diagonal_D({z, one, one, one});
    case 2: return diagonal_D({z, z, one, one});
  }
  const X w = X::root(ctx, "w");
  if (i == 3) return diagonal_D({w, w, w, w.inverse()});
  return diagonal_D({w, w, w, w});
}

Matrix c_matrix(int k) {
  check_gamma_index(k);
  const RF one(1), mone(-1);
  switch (k) {
    case 1: return permutation({8, 2, 3, 5, 4, 6, 7, 1});
    case 3: return rational_D({one, mone, one, mone}) * permutation({4, 6, 7, 1, 8, 2, 3, 5});
    default: return rational_D({one, mone, one, mone}) * permutation({5, 6, 7, 8, 1, 2, 3, 4});
  }
}

ExtMatrix gauge_Gamma_factored(int k) {
  check_gamma_index(k);
  const auto ctx = gamma_context(k);
  const auto [a, c] = gamma_factors(k, ctx);
  const ExtMatrix zw = z_weight(weight_of_gamma(k), ctx);
  const ExtMatrix zw_inv = zw.map([](const X& x) { return x.inverse(); });
  return diagonal_D(a) * exp_E2(c) * zw_inv * lift(c_matrix(k));
}

ExtMatrix gauge_Gamma_inverse(int k) {
  check_gamma_index(k);
  const auto ctx = gamma_context(k);
  const auto [a, c] = gamma_factors(k, ctx);
  std::array<X, 4> a_inv;
  for (int i = 0; i < 4; ++i) a_inv[i] = a[i].inverse();
  // C_k is a signed permutation, so its inverse is its transpose.
  return lift(c_matrix(k).transpose()) * z_weight(weight_of_gamma(k), ctx) * exp_E2(-c) * diagonal_D(a_inv);
}

namespace {

struct TemplateValues {
  std::array<RF, 4> eps;
  RF q, p, t;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw TemplateMismatch("gauge-transformed M does not match the template: " + what);
}

TemplateValues read_template(const Matrix& mt) {
  const RF& z = vars::z();
  TemplateValues v;
  for (int i = 0; i < 4; ++i) v.eps[i] = mt(i + 1, i + 1);
  v.q = mt(3, 5);
  v.p = -mt(2, 3);
  require(!mt(7, 1).is_zero(), "(7,1) vanishes");
  v.t = mt(7, 1) / z + v.q;
  require(mt(3, 4) == v.q - RF(1), "(3,4) disagrees with (3,5)");
  require(mt(6, 7) == v.p, "(6,7) disagrees with (2,3)");
  require(mt(8, 2) == (v.q - v.t) * z, "(8,2) disagrees with (7,1)");
  for (const auto& e : v.eps)
    for (Var x : {Var::q, Var::p, Var::t, Var::z}) require(!e.depends_on(x), "diagonal is not constant");
  require(!v.q.depends_on(Var::z) && !v.p.depends_on(Var::z) && !v.t.depends_on(Var::z),
          "q, p or t image depends on z");
  // The full shape: rebuild M from the read values and compare every entry.
  const Matrix rebuilt = build_M(v.eps, v.q, v.p, v.t);
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j)
      require(rebuilt(i, j) == mt(i, j), "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return v;
}

}  // namespace

backlund::BirationalMap derive_r_map(int k) {
  check_gamma_index(k);
  return read_gauge_map(gauge_Gamma(k), gauge_Gamma_inverse(k));
}

backlund::BirationalMap read_gauge_map(const ExtMatrix& g, const ExtMatrix& gi) {
  const ExtMatrix mt = g * lift(build_M()) * gi - z_dz(g) * gi;
  const TemplateValues v = read_template(rational_part(mt));
  backlund::BirationalMap out;
  const auto& e = v.eps;
  const RF one(1);
  const RF alpha[5] = {one - e[0] - e[1], e[0] - e[1], e[1] - e[2], e[2] - e[3], e[2] + e[3]};
  try {
    for (int j = 0; j < 5; ++j) out.roots[j] = weyl::Functional::from_rational_function(alpha[j]);
  } catch (const std::invalid_argument& err) {
    throw TemplateMismatch(err.what());
  }
  out.q = v.q;
  out.p = v.p;
  out.t = v.t;
  return out;
}

std::pair<ExtMatrix, ExtMatrix> gauge_residual_r(int k) {
  const auto m = backlund::generator_map(k == 1 ? weyl::Gen::r1 : k == 3 ? weyl::Gen::r3 : weyl::Gen::r4);
  const ExtMatrix g = gauge_Gamma(k);
  const ExtMatrix gi = gauge_Gamma_inverse(k);
  const auto apply = [&](const RF& f) { return m.apply(f); };
  const auto& delta = hamiltonian::symbolic_delta();
  const ExtMatrix rm = lift(build_M().map(apply)) - (g * lift(build_M()) * gi - z_dz(g) * gi);
  const ExtMatrix dg = g.map([&](const X& f) { return delta(f); });
  const ExtMatrix rb = lift(build_B().map(apply)) - (g * lift(build_B()) * gi + dg * gi);
  return {rm, rb};
}

Matrix weyl_lift_S(int k) {
  const Matrix one = Matrix::identity();
  return (one - E(k)) * (one + F(k)) * (one - E(k));
}

Matrix weyl_lift_S_inverse(int k) {
  const Matrix one = Matrix::identity();
  return (one + E(k)) * (one - F(k)) * (one + E(k));
}

std::vector<AutomorphismCheck> diagram_automorphism_check(int k) {
  check_gamma_index(k);
  const auto ctx = gamma_context(k);
  const ExtMatrix zw = z_weight(weight_of_gamma(k), ctx);
  const ExtMatrix zw_inv = zw.map([](const X& x) { return x.inverse(); });
  const ExtMatrix r = zw_inv * lift(c_matrix(k));
  const ExtMatrix r_inv = lift(c_matrix(k).transpose()) * zw;
  const auto& sigma = weyl::sigma(k);
  std::vector<AutomorphismCheck> out;
  for (int j = 0; j < 5; ++j) {
    const int sj = sigma[j];
    out.push_back({"E" + std::to_string(j) + " -> E" + std::to_string(sj),
                   (r * lift(E(j)) * r_inv - lift(E(sj))).is_zero()});
    out.push_back({"F" + std::to_string(j) + " -> F" + std::to_string(sj),
                   (r * lift(F(j)) * r_inv - lift(F(sj))).is_zero()});
  }
  return out;
}

std::pair<CMatrix, CMatrix> numeric_M(const hamiltonian::ParamVec& params, std::complex<double> q,
                                      std::complex<double> p, std::complex<double> t) {
  const auto a = hamiltonian::convert(params, hamiltonian::Repr::alpha).complex_values();
  field::ComplexPoint pt = {{Var::a1, a[1]}, {Var::a2, a[2]}, {Var::a3, a[3]}, {Var::a4, a[4]},
                            {Var::q, q},     {Var::p, p},     {Var::t, t},     {Var::z, 0.0}};
  CMatrix m0{}, m1{};
  const Matrix& m = build_M();
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      const RF& f = m(i, j);
      if (f.is_zero()) continue;
      m0[(i - 1) * 8 + (j - 1)] = field::eval_complex(f, pt);
      m1[(i - 1) * 8 + (j - 1)] = field::eval_complex(field::derivative(f, Var::z), pt);
    }
  return {m0, m1};
}

FrobeniusSeries frobenius_expand(const hamiltonian::ParamVec& params, std::complex<double> q,
                                 std::complex<double> p, std::complex<double> t, int order, double tol) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  const auto [m0, m1] = numeric_M(params, q, p, t);
  const auto eps = hamiltonian::convert(params, hamiltonian::Repr::epsilon).complex_values();
  FrobeniusSeries s;
  std::array<std::complex<double>, 8> h;
  for (int i = 0; i < 4; ++i) {
    h[i] = eps[i];
    h[7 - i] = -eps[i];
  }
  for (int i = 0; i < 8; ++i) s.exponent[i] = -h[i];
  auto at = [](const CMatrix& a, int i, int j) -> const std::complex<double>& { return a[i * 8 + j]; };

  // (h_i - h_j + n) X_ij + sum_{k > i} M0_ik X_kj = rhs_ij, solved from the last row up.
  auto solve = [&](int n, const CMatrix& rhs, bool upper_unit) {
    CMatrix x{};
    for (int j = 0; j < 8; ++j) {
      for (int i = 7; i >= 0; --i) {
        if (upper_unit && i > j) continue;
        if (upper_unit && i == j) {
          x[i * 8 + j] = 1.0;
          continue;
        }
        std::complex<double> acc = at(rhs, i, j);
        for (int k = i + 1; k < 8; ++k) acc -= at(m0, i, k) * x[k * 8 + j];
        const std::complex<double> div = h[i] - h[j] + static_cast<double>(n);
        if (std::abs(div) < tol)
          throw ResonanceError("resonant exponents at order " + std::to_string(n) + ", entry (" +
                               std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        x[i * 8 + j] = acc / div;
      }
    }
    return x;
  };

  auto residual = [&](int n, const CMatrix& x, const CMatrix* prev) {
    double worst = 0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        std::complex<double> r = x[i * 8 + j] * (-h[j] + static_cast<double>(n));
        for (int k = 0; k < 8; ++k) {
          r += at(m0, i, k) * x[k * 8 + j];
          if (prev) r += at(m1, i, k) * (*prev)[k * 8 + j];
        }
        worst = std::max(worst, std::abs(r));
      }
    return worst;
  };

  s.psi.push_back(solve(0, CMatrix{}, true));
  s.residual.push_back(residual(0, s.psi[0], nullptr));
  for (int n = 1; n <= order; ++n) {
    CMatrix rhs{};
    const CMatrix& prev = s.psi.back();
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        std::complex<double> acc = 0;
        for (int k = 0; k < 8; ++k) acc += at(m1, i, k) * prev[k * 8 + j];
        rhs[i * 8 + j] = -acc;
      }
    s.psi.push_back(solve(n, rhs, false));
    s.residual.push_back(residual(n, s.psi.back(), &s.psi[n - 1]));
  }
  return s;
}

template <class T>
std::string to_text(const LoopMatrix<T>& m) {
  std::array<std::string, 64> cells;
  std::array<std::size_t, 8> width{};
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      auto& c = cells[(i - 1) * 8 + (j - 1)];
      c = m(i, j).str();
      width[j - 1] = std::max(width[j - 1], c.size());
    }
  std::ostringstream out;
  for (int i = 1; i <= 8; ++i) {
    out << '[';
    for (int j = 1; j <= 8; ++j) {
      const auto& c = cells[(i - 1) * 8 + (j - 1)];
      out << ' ' << std::string(width[j - 1] - c.size(), ' ') << c;
    }
    out << " ]\n";
  }
  return out.str();
}

template <class T>
nlohmann::json to_json(const LoopMatrix<T>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= 8; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= 8; ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

template std::string to_text(const Matrix&);
template std::string to_text(const ExtMatrix&);
template nlohmann::json to_json(const Matrix&);
template nlohmann::json to_json(const ExtMatrix&);

}  // namespace pvi::lax
