#pragma once

// Extended affine Weyl group of type D4(1): words in s0..s4, r1, r3, r4,
// their action on the simple affine roots, relations, and translations.
//
// Word convention: a word g1 g2 ... gn is the product of automorphisms, so on
// a function f it acts as g1(g2(...gn(f))). The leftmost generator is applied
// last.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pvi/field/polynomial.hpp"
#include "pvi/field/rational_function.hpp"

namespace pvi::weyl {

using field::Rational;

enum class Gen : std::uint8_t { s0, s1, s2, s3, s4, r1, r3, r4 };

inline constexpr std::array<Gen, 8> kAllGens = {Gen::s0, Gen::s1, Gen::s2, Gen::s3,
                                                Gen::s4, Gen::r1, Gen::r3, Gen::r4};

std::string_view name(Gen g);
bool is_reflection(Gen g);
/// Index i of s_i, or k of r_k.
int gen_index(Gen g);

using GroupWord = std::vector<Gen>;

/// Whitespace-separated tags ("s0 s2 r1"); T1..T4 expand to translation words.
/// Throws pvi::ParseError on an unknown tag.
GroupWord parse_word(std::string_view text);
std::string to_string(const GroupWord& w);
GroupWord inverse(const GroupWord& w);

/// Affine functional on V = C^4: c + b1 e1 + b2 e2 + b3 e3 + b4 e4.
struct Functional {
  Rational c;
  std::array<Rational, 4> b;

  Functional operator+(const Functional& o) const;
  Functional operator-(const Functional& o) const;
  Functional operator*(const Rational& k) const;
  Functional operator-() const;
  bool operator==(const Functional&) const = default;

  static Functional constant(const Rational& c);
  /// Inverse of as_rational_function; throws std::invalid_argument unless f
  /// is affine in a1..a4 with no other variables.
  static Functional from_rational_function(const field::RationalFunction& f);
  bool is_constant() const;
  Rational evaluate(const std::array<Rational, 4>& eps) const;
  /// (c, m1..m4) with f = c + m1 a1 + m2 a2 + m3 a3 + m4 a4.
  std::array<Rational, 5> alpha_coords() const;
  /// The same functional as an element of Q(a1..a4).
  field::RationalFunction as_rational_function() const;
  std::string str() const;
};

/// Images (or values) of alpha_0..alpha_4 as affine functionals.
using AffineRootVec = std::array<Functional, 5>;

/// The simple affine roots alpha_j = their own functionals.
AffineRootVec simple_roots();
Functional null_root(const AffineRootVec& r);
bool satisfies_null_root(const AffineRootVec& r);

/// Replace each alpha_k inside f by images[k].
Functional substitute(const Functional& f, const AffineRootVec& images);

using Matrix5 = std::array<std::array<int, 5>, 5>;
const Matrix5& cartan();
/// sigma_k as an index permutation of 0..4 (k = 1, 3, 4).
const std::array<int, 5>& sigma(int k);

/// roots holds the images R_j = m(alpha_j) of some map m; the result is the
/// images of m g, i.e. g(alpha_j) with alpha replaced by R.
AffineRootVec root_action(Gen g, const AffineRootVec& roots);
AffineRootVec apply_word(const GroupWord& w, const AffineRootVec& roots);
inline AffineRootVec apply_word(const GroupWord& w) { return apply_word(w, simple_roots()); }

struct RelationCheck {
  std::string relation;  // e.g. "s0 s2 s0 = s2 s0 s2"
  GroupWord lhs, rhs;
  bool pass = false;
};

/// Every fundamental relation as a pair of words.
std::vector<RelationCheck> fundamental_relations();
/// Checks each relation as equality of affine maps on V.
std::vector<RelationCheck> verify_relations();

/// T_{varpi_i}, i = 1..4. Throws std::out_of_range otherwise.
GroupWord translation_word(int i);
/// Shift of (alpha_0..alpha_4) produced by T_{varpi_i}.
std::array<Rational, 5> translation_shift(int i);

using WeightVector = std::array<Rational, 4>;
/// varpi_i in epsilon coordinates.
WeightVector fundamental_weight(int i);
/// 2v integral with all coordinates of equal parity.
bool lattice_member(const WeightVector& v);

}  // namespace pvi::weyl
