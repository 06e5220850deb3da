#pragma once

// The so(8) loop-algebra Lax pair: Chevalley generators, M and B, the
// zero-curvature identity, the gauge matrices G_k, Gamma_k, S_k, and the
// Frobenius expansion of a fundamental solution at z = 0.
//
// Matrices are 8x8 with 1-based indexing. The loop variable z is the field
// variable Var::z; half-integer powers use a root symbol "w" with w^2 = z.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvi/backlund.hpp"
#include "pvi/field/root_ext.hpp"
#include "pvi/hamiltonian.hpp"

namespace pvi::lax {

using field::RationalFunction;
using field::RootExtElement;

template <class T>
class LoopMatrix {
 public:
  static constexpr int N = 8;

  LoopMatrix() : a_(N * N, T(0)) {}

  static LoopMatrix identity() {
    LoopMatrix m;
    for (int i = 1; i <= N; ++i) m(i, i) = T(1);
    return m;
  }
  /// Matrix unit E_ij (1-based) scaled by c.
  static LoopMatrix unit(int i, int j, T c = T(1)) {
    LoopMatrix m;
    m(i, j) = std::move(c);
    return m;
  }

  T& operator()(int i, int j) { return a_[(i - 1) * N + (j - 1)]; }
  const T& operator()(int i, int j) const { return a_[(i - 1) * N + (j - 1)]; }

  LoopMatrix& operator+=(const LoopMatrix& o) {
    for (int k = 0; k < N * N; ++k)
      if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
    return *this;
  }
  LoopMatrix& operator-=(const LoopMatrix& o) {
    for (int k = 0; k < N * N; ++k)
      if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
    return *this;
  }
  friend LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b) { return a += b; }
  friend LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b) { return a -= b; }
  LoopMatrix operator-() const {
    return map([](const T& x) { return -x; });
  }
  friend LoopMatrix operator*(const LoopMatrix& a, const LoopMatrix& b) {
    LoopMatrix c;
    for (int i = 1; i <= N; ++i)
      for (int k = 1; k <= N; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 1; j <= N; ++j) {
          const T& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    return c;
  }
  friend LoopMatrix operator*(const T& s, const LoopMatrix& m) {
    if (s.is_zero()) return LoopMatrix();
    return m.map([&](const T& x) { return x.is_zero() ? x : s * x; });
  }
  friend bool operator==(const LoopMatrix& a, const LoopMatrix& b) { return a.a_ == b.a_; }

  LoopMatrix transpose() const {
    LoopMatrix m;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  template <class F>
  LoopMatrix map(F&& f) const {
    LoopMatrix m;
    for (int k = 0; k < N * N; ++k) m.a_[k] = a_[k].is_zero() ? a_[k] : T(f(a_[k]));
    return m;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  int nonzero_count() const {
    int n = 0;
    for (const auto& x : a_) n += x.is_zero() ? 0 : 1;
    return n;
  }

 private:
  std::vector<T> a_;
};

using Matrix = LoopMatrix<RationalFunction>;
using ExtMatrix = LoopMatrix<RootExtElement>;

template <class T>
LoopMatrix<T> commutator(const LoopMatrix<T>& a, const LoopMatrix<T>& b) {
  return a * b - b * a;
}

ExtMatrix lift(const Matrix& m);
/// The rational matrix of an element with no root parts; throws
/// pvi::TemplateMismatch otherwise.
Matrix rational_part(const ExtMatrix& m);

/// z d/dz applied entrywise.
Matrix z_dz(const Matrix& m);
ExtMatrix z_dz(const ExtMatrix& m);

const Matrix& J();
/// J X + X^t J = 0.
bool in_algebra(const Matrix& x);
/// X^t J X = J.
bool in_group(const Matrix& x);
bool in_group(const ExtMatrix& x);

/// H(a) = sum a_i (E_ii - E_{9-i,9-i}).
Matrix cartan_element(const std::array<RationalFunction, 4>& a);
/// D(a) = diag(a1, a2, a3, a4, 1/a4, 1/a3, 1/a2, 1/a1).
ExtMatrix diagonal_D(const std::array<RootExtElement, 4>& a);

/// Chevalley generators, j = 0..4.
const Matrix& E(int j);
const Matrix& F(int j);
const Matrix& H(int j);

/// epsilon_1..epsilon_4 as rational functions of a1..a4.
const std::array<RationalFunction, 4>& symbolic_epsilon();

/// The displayed M with symbolic epsilon, q, p, t, z.
const Matrix& build_M();
/// H(eps) + (q-t)E0 + E1 - pE2 + (q-1)E3 + qE4 + [E0,E2] + [E3,E2] + [E4,E2].
Matrix build_M_borel();
/// M with arbitrary entries in place of (eps, q, p, t).
Matrix build_M(const std::array<RationalFunction, 4>& eps, const RationalFunction& q, const RationalFunction& p,
               const RationalFunction& t);

struct BCoefficients {
  std::array<RationalFunction, 4> x, u;  // x1..x4, u1..u4
  RationalFunction y1, y3, y4;
};
const BCoefficients& b_coefficients();
const Matrix& build_B();
Matrix build_B_borel();

/// delta(M) + z dB/dz + [M, B] with the given derivation on entries.
Matrix zero_curvature_residual(const std::function<RationalFunction(const RationalFunction&)>& d);
/// With the Hamiltonian derivation; identically zero.
Matrix zero_curvature_residual();

/// The residual with unknown time derivatives qdot, pdot of q and p, solved
/// from entries (3,4) and (2,3).
struct ConverseSolution {
  RationalFunction qdot, pdot;
};
ConverseSolution solve_converse();

/// G_k, k = 0..4, and its inverse 2 - G_k.
Matrix gauge_G(int k);
Matrix gauge_G_inverse(int k);

/// (m(M) - (G M G^-1 - z dG/dz G^-1), m(B) - (G B G^-1 + delta(G) G^-1)).
std::pair<Matrix, Matrix> gauge_residual(const Matrix& g, const Matrix& g_inv, const backlund::BirationalMap& m);
std::pair<Matrix, Matrix> gauge_residual_s(int k);

/// Root context for Gamma_k: k = 1 {s^2 = t(t-1)}, k = 3 {m^2 = -t, w^2 = z},
/// k = 4 {n^2 = 1-t, w^2 = z}.
field::RootContextPtr gamma_context(int k);
/// The explicit Gamma_k, k = 1, 3, 4.
ExtMatrix gauge_Gamma(int k);
/// D(a_k) exp(E2 / phi) z^{-varpi_k} C_k.
ExtMatrix gauge_Gamma_factored(int k);
/// Inverse from the factored form.
ExtMatrix gauge_Gamma_inverse(int k);

/// z^{varpi_i} (i = 1..4) as a diagonal matrix in the given context
/// (needs the root "w" for i = 3, 4).
ExtMatrix z_weight(int i, const field::RootContextPtr& ctx);
/// C_k, k = 1, 3, 4.
Matrix c_matrix(int k);

/// Gamma M Gamma^-1 - z dGamma/dz Gamma^-1 read against the shape of M.
/// Throws pvi::TemplateMismatch when the shape or redundant slots disagree.
backlund::BirationalMap derive_r_map(int k);
/// The same read-off for an arbitrary gauge matrix and its inverse.
backlund::BirationalMap read_gauge_map(const ExtMatrix& g, const ExtMatrix& g_inv);
std::pair<ExtMatrix, ExtMatrix> gauge_residual_r(int k);

/// S_k = exp(-E_k) exp(F_k) exp(-E_k), and its inverse.
Matrix weyl_lift_S(int k);
Matrix weyl_lift_S_inverse(int k);

struct AutomorphismCheck {
  std::string what;  // e.g. "E0 -> E1"
  bool pass = false;
};
/// Ad(z^{-varpi_k} C_k) on E_j and F_j against sigma_k.
std::vector<AutomorphismCheck> diagram_automorphism_check(int k);

using CMatrix = std::array<std::complex<double>, 64>;

struct FrobeniusSeries {
  std::array<std::complex<double>, 8> exponent;  // diagonal of D = -H(eps)
  std::vector<CMatrix> psi;                        // Psi_0..Psi_N
  std::vector<double> residual;                    // per-order recursion residual (max abs)
};

/// Psi = sum Psi_n z^{D + n} with Psi_0 upper triangular, unit diagonal.
/// Throws pvi::ResonanceError when a divisor falls below `tol`.
FrobeniusSeries frobenius_expand(const hamiltonian::ParamVec& params, std::complex<double> q, std::complex<double> p,
                                 std::complex<double> t, int order, double tol = 1e-9);

/// M = M0 + z M1 at a numeric point.
std::pair<CMatrix, CMatrix> numeric_M(const hamiltonian::ParamVec& params, std::complex<double> q,
                                      std::complex<double> p, std::complex<double> t);

template <class T>
std::string to_text(const LoopMatrix<T>& m);
template <class T>
nlohmann::json to_json(const LoopMatrix<T>& m);

}  // namespace pvi::lax
