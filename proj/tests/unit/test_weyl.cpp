#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pvi/errors.hpp"
#include "pvi/weyl.hpp"

using namespace pvi::weyl;

namespace {

// Independent model: images of alpha_j as integer vectors over the formal
// symbols alpha_0..alpha_4 (alpha_0 kept independent, no epsilon coordinates).
using IVec = std::array<long, 5>;
using IMap = std::array<IVec, 5>;

IMap identity_map() {
  IMap m{};
  for (int j = 0; j < 5; ++j) m[j][j] = 1;
  return m;
}

// Images of m g, where g acts on a formal symbol by the table below.
IMap oracle_step(const IMap& m, Gen g) {
  static const int A[5][5] = {{2, 0, -1, 0, 0}, {0, 2, -1, 0, 0}, {-1, -1, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}};
  IMap out{};
  const std::string n(name(g));
  const int i = n[1] - '0';
  for (int j = 0; j < 5; ++j) {
    if (n[0] == 's') {
      for (int k = 0; k < 5; ++k) out[j][k] = m[j][k] - A[i][j] * m[i][k];
    } else {
      // sigma_1 = (01)(34), sigma_3 = (03)(14), sigma_4 = (04)(13)
      static const int s1[5] = {1, 0, 2, 4, 3}, s3[5] = {3, 4, 2, 0, 1}, s4[5] = {4, 3, 2, 1, 0};
      const int* s = i == 1 ? s1 : i == 3 ? s3 : s4;
      out[j] = m[s[j]];
    }
  }
  return out;
}

IMap oracle_word(const GroupWord& w) {
  IMap m = identity_map();
  for (Gen g : w) m = oracle_step(m, g);
  return m;
}

// Evaluate the oracle images at a point given by its alpha values.
std::array<Rational, 5> oracle_eval(const IMap& m, const std::array<Rational, 5>& a) {
  std::array<Rational, 5> out;
  for (int j = 0; j < 5; ++j) {
    out[j] = 0;
    for (int k = 0; k < 5; ++k) out[j] += m[j][k] * a[k];
  }
  return out;
}

std::array<Rational, 5> alpha_values(const std::array<Rational, 4>& eps) {
  std::array<Rational, 5> a;
  const auto r = simple_roots();
  for (int j = 0; j < 5; ++j) a[j] = r[j].evaluate(eps);
  return a;
}

std::array<Rational, 5> eval_roots(const AffineRootVec& r, const std::array<Rational, 4>& eps) {
  std::array<Rational, 5> out;
  for (int j = 0; j < 5; ++j) out[j] = r[j].evaluate(eps);
  return out;
}

std::array<Rational, 4> random_eps(std::mt19937_64& rng) {
  return {pvi::testing::random_rational(rng), pvi::testing::random_rational(rng), pvi::testing::random_rational(rng),
          pvi::testing::random_rational(rng)};
}

GroupWord random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, 7);
  GroupWord w(len(rng));
  for (auto& g : w) g = kAllGens[gen(rng)];
  return w;
}

}  // namespace

TEST_CASE("cartan matrix") {
  const auto& a = cartan();
  CHECK(a[0][2] == -1);
  CHECK(a[0][1] == 0);
  int row2 = 0;
  for (int j = 0; j < 5; ++j) {
    CHECK(a[j][j] == 2);
    if (j != 2) row2 += a[2][j];
    for (int k = 0; k < 5; ++k) CHECK(a[j][k] == a[k][j]);
  }
  CHECK(row2 == -4);
}

TEST_CASE("epsilon functionals of the simple roots") {
  const auto r = simple_roots();
  CHECK(satisfies_null_root(r));
  CHECK(r[0].as_rational_function() == pvi::field::vars::a0());
  CHECK(r[3].as_rational_function() == pvi::field::vars::a3());
  CHECK(r[4].alpha_coords() == std::array<Rational, 5>{0, 0, 0, 0, 1});
}

TEST_CASE("root action of single generators") {
  const auto r = simple_roots();
  const auto s0 = root_action(Gen::s0, r);
  CHECK(s0[0] == -r[0]);
  CHECK(s0[2] == r[2] + r[0]);
  CHECK(s0[1] == r[1]);
  CHECK(s0[3] == r[3]);
  CHECK(s0[4] == r[4]);
  const auto r1 = root_action(Gen::r1, r);
  CHECK(r1[0] == r[1]);
  CHECK(r1[1] == r[0]);
  CHECK(r1[3] == r[4]);
  CHECK(r1[4] == r[3]);
  CHECK(r1[2] == r[2]);
  for (Gen g : kAllGens) {
    CHECK(root_action(g, root_action(g, r)) == r);
    CHECK(satisfies_null_root(root_action(g, r)));
  }
}

TEST_CASE("words") {
  CHECK(apply_word({}) == simple_roots());
  CHECK(apply_word(parse_word("s0 s0")) == simple_roots());
  CHECK(to_string(parse_word(" s0  s2\tr1 ")) == "s0 s2 r1");
  CHECK(parse_word("T1") == translation_word(1));
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("s5"), pvi::ParseError);
  CHECK_THROWS_AS(parse_word("r2"), pvi::ParseError);
  CHECK_THROWS_AS(translation_word(5), std::out_of_range);
}

TEST_CASE("translation words") {
  CHECK(to_string(translation_word(1)) == "r1 s1 s2 s3 s4 s2 s1");
  CHECK(to_string(translation_word(2)) == "s0 s2 s1 s3 s4 s2 s1 s3 s4 s2");
  CHECK(to_string(translation_word(3)) == "r3 s3 s2 s1 s4 s2 s3");
  CHECK(to_string(translation_word(4)) == "r4 s4 s2 s1 s3 s2 s4");
  // shift table: T1 row (a0 + 1, a1 - 1, a2, a3, a4), etc.
  const long table[4][5] = {{1, -1, 0, 0, 0}, {2, 0, -1, 0, 0}, {1, 0, 0, -1, 0}, {1, 0, 0, 0, -1}};
  const long null_root[5] = {1, 1, 2, 1, 1};
  const auto r = simple_roots();
  for (int i = 1; i <= 4; ++i) {
    const auto t = apply_word(translation_word(i));
    const auto shift = translation_shift(i);
    for (int j = 0; j < 5; ++j) {
      CHECK(shift[j] == table[i - 1][j]);
      CHECK(t[j] == r[j] + Functional::constant(table[i - 1][j]));
    }
    // oracle: image of alpha_j is alpha_j + shift_j * (null root)
    const auto m = oracle_word(translation_word(i));
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) CHECK(m[j][k] == (j == k ? 1 : 0) + table[i - 1][j] * null_root[k]);
  }
}

TEST_CASE("property: root action agrees with the integer-matrix oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = random_word(rng, 12);
    const auto eps = random_eps(rng);
    CHECK(eval_roots(apply_word(w), eps) == oracle_eval(oracle_word(w), alpha_values(eps)));
  }
}

TEST_CASE("property: null root is fixed; inverse words undo words") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = random_word(rng, 15);
    const auto img = apply_word(w);
    CHECK(satisfies_null_root(img));
    CHECK(apply_word(inverse(w), img) == simple_roots());
    const auto w2 = random_word(rng, 6);
    GroupWord cat = w;
    cat.insert(cat.end(), w2.begin(), w2.end());
    CHECK(apply_word(cat) == apply_word(w2, apply_word(w)));
  }
}

TEST_CASE("property: each s_i fixes its own hyperplane") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 5; ++i) {
    const Gen g = kAllGens[i];
    const auto r = simple_roots();
    const auto img = root_action(g, r);
    for (int trial = 0; trial < 20; ++trial) {
      auto eps = random_eps(rng);
      // project onto alpha_i = 0 along a direction with alpha_i(dir) != 0
      const Rational val = r[i].evaluate(eps);
      std::array<Rational, 4> dir = r[i].b;
      const Rational norm = r[i].b[0] * r[i].b[0] + r[i].b[1] * r[i].b[1] + r[i].b[2] * r[i].b[2] + r[i].b[3] * r[i].b[3];
      for (int k = 0; k < 4; ++k) eps[k] -= val / norm * dir[k];
      REQUIRE(r[i].evaluate(eps) == 0);
      CHECK(eval_roots(img, eps) == eval_roots(r, eps));
    }
    // and moves points off it
    const std::array<Rational, 4> off = {Rational(1, 3), Rational(1, 7), Rational(1, 11), Rational(1, 13)};
    CHECK(eval_roots(img, off) != eval_roots(r, off));
  }
}

TEST_CASE("fundamental relations hold on the root space") {
  const auto rel = verify_relations();
  CHECK(rel.size() == 5 + 6 + 4 + 3 + 6 + 15);
  for (const auto& c : rel) {
    INFO(c.relation);
    CHECK(c.pass);
  }
  CHECK(apply_word(parse_word("s0 s2 s0")) == apply_word(parse_word("s2 s0 s2")));
  CHECK(apply_word(parse_word("r1 r3")) == apply_word(parse_word("r4")));
  CHECK(apply_word(parse_word("s0 s2")) != apply_word(parse_word("s2 s0")));
}

TEST_CASE("property: translations commute and shift linearly") {
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto ij = translation_word(i), ji = translation_word(j);
      const auto tj = translation_word(j), ti = translation_word(i);
      ij.insert(ij.end(), tj.begin(), tj.end());
      ji.insert(ji.end(), ti.begin(), ti.end());
      CHECK(apply_word(ij) == apply_word(ji));
    }
  const auto r = simple_roots();
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) {
          GroupWord w;
          auto power = [&](int k, int e) {
            const auto t = e >= 0 ? translation_word(k) : inverse(translation_word(k));
            for (int c = 0; c < std::abs(e); ++c) w.insert(w.end(), t.begin(), t.end());
          };
          power(i, m);
          power(j, n);
          const auto img = apply_word(w);
          const auto si = translation_shift(i), sj = translation_shift(j);
          for (int a = 0; a < 5; ++a) CHECK(img[a] == r[a] + Functional::constant(m * si[a] + n * sj[a]));
        }
}

TEST_CASE("weight lattice membership") {
  CHECK(lattice_member(fundamental_weight(3)));
  CHECK(lattice_member({1, 0, 0, 0}));
  CHECK(!lattice_member({Rational(1, 2), 0, 0, 0}));
  CHECK(!lattice_member({Rational(1, 3), 0, 0, 0}));
  CHECK(lattice_member({Rational(-3, 2), Rational(1, 2), Rational(5, 2), Rational(-1, 2)}));
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    WeightVector v{0, 0, 0, 0};
    for (int i = 1; i <= 4; ++i) {
      const int c = coef(rng);
      const auto w = fundamental_weight(i);
      for (int k = 0; k < 4; ++k) v[k] += c * w[k];
    }
    CHECK(lattice_member(v));
  }
}
