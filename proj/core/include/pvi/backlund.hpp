#pragma once

// Fundamental Backlund transformations as automorphisms of
// K = Q(a1, a2, a3, a4, q, p, t), their composition, and the symbolic checks
// that they commute with delta and preserve the Poisson bracket.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvi/field/rational_function.hpp"
#include "pvi/weyl.hpp"

namespace pvi::backlund {

using field::RationalFunction;

/// An automorphism of K, stored by its images of the generators.
/// Parameters map affinely (roots), q, p, t map to rational functions.
struct BirationalMap {
  weyl::AffineRootVec roots = weyl::simple_roots();
  RationalFunction q = field::vars::q();
  RationalFunction p = field::vars::p();
  RationalFunction t = field::vars::t();

  static BirationalMap identity() { return {}; }

  /// Images of a1..a4, q, p, t as a substitution.
  field::Substitution substitution() const;
  /// m(f). Throws pvi::PoleError when f has a pole along the image.
  RationalFunction apply(const RationalFunction& f) const;

  bool operator==(const BirationalMap&) const = default;
  nlohmann::json to_json() const;
};

/// m1 m2, acting as f -> m1(m2(f)); matches the word convention of weyl.
/// Throws pvi::PoleError for a degenerate substitution.
BirationalMap compose(const BirationalMap& m1, const BirationalMap& m2);

/// s_i from the phi/U construction; r_k from the Gamma_k gauge (cached).
BirationalMap generator_map(weyl::Gen g);
BirationalMap word_map(const weyl::GroupWord& w);

/// A point with exact rational coordinates (a1..a4, q, p, t).
struct ExactPoint {
  std::array<field::Rational, 4> a;
  field::Rational q, p, t;
  bool operator==(const ExactPoint& o) const { return a == o.a && q == o.q && p == o.p && t == o.t; }
};

/// (m(a1), .., m(a4), m(q), m(p), m(t)) evaluated at x. Throws pvi::PoleError.
ExactPoint apply_at(const BirationalMap& m, const ExactPoint& x);
/// Equals apply_at(word_map(w), x), computed one generator at a time.
ExactPoint word_at(const weyl::GroupWord& w, const ExactPoint& x);
/// Exact comparison of two words as maps at `trials` random rational points
/// (points on a pole of either side are redrawn).
bool words_agree(const weyl::GroupWord& lhs, const weyl::GroupWord& rhs, int trials, std::uint64_t seed);

/// delta(m(x)) - m(delta(x)) for x = q and x = p.
std::array<RationalFunction, 2> delta_defect(const BirationalMap& m);
bool commutes_with_delta(const BirationalMap& m);

/// {m(p), m(q)} = 1, and m(t) brackets to zero with q and p.
bool canonical_check(const BirationalMap& m);

/// phi_0..phi_4 and U = ({phi_i, phi_j}).
struct PhiSystem {
  std::array<RationalFunction, 5> phi;
  std::array<std::array<int, 5>, 5> u;
  /// Recomputes every bracket and compares with u.
  bool consistent() const;
};
const PhiSystem& phi_system();

struct MapRelationCheck {
  std::string relation;
  bool roots_pass = false;
  bool map_pass = false;
  bool pass() const { return roots_pass && map_pass; }
};

/// Every fundamental relation checked on the roots and as birational maps.
std::vector<MapRelationCheck> verify_relations();

}  // namespace pvi::backlund
