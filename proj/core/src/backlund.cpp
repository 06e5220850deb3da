#include "pvi/backlund.hpp"

#include <mutex>
#include <random>

#include "pvi/errors.hpp"
#include "pvi/hamiltonian.hpp"
#include "pvi/lax.hpp"

namespace pvi::backlund {

using field::Var;
namespace vars = field::vars;

field::Substitution BirationalMap::substitution() const {
  return {{Var::a1, roots[1].as_rational_function()},
          {Var::a2, roots[2].as_rational_function()},
          {Var::a3, roots[3].as_rational_function()},
          {Var::a4, roots[4].as_rational_function()},
          {Var::q, q},
          {Var::p, p},
          {Var::t, t}};
}

RationalFunction BirationalMap::apply(const RationalFunction& f) const {
  return field::substitute(f, substitution());
}

nlohmann::json BirationalMap::to_json() const {
  nlohmann::json r = nlohmann::json::array();
  for (const auto& f : roots) {
    nlohmann::json c = nlohmann::json::array();
    c.push_back(field::to_string(f.c));
    for (const auto& b : f.b) c.push_back(field::to_string(b));
    r.push_back(std::move(c));
  }
  return {{"roots", r}, {"q", q.str()}, {"p", p.str()}, {"t", t.str()}};
}

BirationalMap compose(const BirationalMap& m1, const BirationalMap& m2) {
  BirationalMap out;
  for (int j = 0; j < 5; ++j) out.roots[j] = weyl::substitute(m2.roots[j], m1.roots);
  const auto s = m1.substitution();
  out.q = field::substitute(m2.q, s);
  out.p = field::substitute(m2.p, s);
  out.t = field::substitute(m2.t, s);
  return out;
}

const PhiSystem& phi_system() {
  static const PhiSystem sys = [] {
    const RationalFunction one(1);
    PhiSystem s;
    s.phi = {vars::q() - vars::t(), one, -vars::p(), vars::q() - one, vars::q()};
    s.u = {{{0, 0, 1, 0, 0}, {0, 0, 0, 0, 0}, {-1, 0, 0, -1, -1}, {0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}}};
    return s;
  }();
  return sys;
}

bool PhiSystem::consistent() const {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (hamiltonian::poisson(phi[i], phi[j]) != RationalFunction(u[i][j])) return false;
  return true;
}

namespace {

// s_i(phi_j) = phi_j + (alpha_i / phi_i) u_ij; q = phi_4 and p = -phi_2.
BirationalMap reflection_map(int i) {
  const auto& sys = phi_system();
  const auto roots = weyl::simple_roots();
  const RationalFunction ai = roots[i].as_rational_function();
  BirationalMap m;
  m.roots = weyl::root_action(weyl::kAllGens[i], roots);
  m.q = sys.phi[4] + ai / sys.phi[i] * RationalFunction(sys.u[i][4]);
  m.p = -(sys.phi[2] + ai / sys.phi[i] * RationalFunction(sys.u[i][2]));
  return m;
}

}  // namespace

BirationalMap generator_map(weyl::Gen g) {
  static std::once_flag once;
  static std::array<BirationalMap, 8> cache;
  std::call_once(once, [] {
    for (int i = 0; i < 5; ++i) cache[i] = reflection_map(i);
    cache[5] = lax::derive_r_map(1);
    cache[6] = lax::derive_r_map(3);
    cache[7] = lax::derive_r_map(4);
  });
  return cache[static_cast<int>(g)];
}

BirationalMap word_map(const weyl::GroupWord& w) {
  BirationalMap m;
  for (weyl::Gen g : w) m = compose(m, generator_map(g));
  return m;
}

ExactPoint apply_at(const BirationalMap& m, const ExactPoint& x) {
  const field::Substitution at = {{Var::a1, RationalFunction(x.a[0])}, {Var::a2, RationalFunction(x.a[1])},
                                  {Var::a3, RationalFunction(x.a[2])}, {Var::a4, RationalFunction(x.a[3])},
                                  {Var::q, RationalFunction(x.q)},     {Var::p, RationalFunction(x.p)},
                                  {Var::t, RationalFunction(x.t)}};
  auto value = [&](const RationalFunction& f) { return field::substitute(f, at).constant_value(); };
  ExactPoint y;
  for (int j = 0; j < 4; ++j) y.a[j] = value(m.roots[j + 1].as_rational_function());
  y.q = value(m.q);
  y.p = value(m.p);
  y.t = value(m.t);
  return y;
}

ExactPoint word_at(const weyl::GroupWord& w, const ExactPoint& x) {
  ExactPoint y = x;
  for (weyl::Gen g : w) y = apply_at(generator_map(g), y);
  return y;
}

bool words_agree(const weyl::GroupWord& lhs, const weyl::GroupWord& rhs, int trials, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num(-97, 97), den(1, 89);
  auto draw = [&] {
    field::Rational r(num(gen), den(gen));
    r.canonicalize();
    return r;
  };
  int done = 0;
  for (int attempt = 0; done < trials && attempt < 50 * trials; ++attempt) {
    ExactPoint x{{draw(), draw(), draw(), draw()}, draw(), draw(), draw()};
    try {
      if (!(word_at(lhs, x) == word_at(rhs, x))) return false;
      ++done;
    } catch (const PoleError&) {
    }
  }
  return done == trials;
}

std::array<RationalFunction, 2> delta_defect(const BirationalMap& m) {
  const auto& delta = hamiltonian::symbolic_delta();
  return {delta(m.q) - m.apply(delta.dq()), delta(m.p) - m.apply(delta.dp())};
}

bool commutes_with_delta(const BirationalMap& m) {
  const auto d = delta_defect(m);
  return d[0].is_zero() && d[1].is_zero() && hamiltonian::symbolic_delta()(m.t).is_one();
}

bool canonical_check(const BirationalMap& m) {
  using hamiltonian::poisson;
  return poisson(m.p, m.q).is_one() && poisson(m.t, vars::q()).is_zero() && poisson(m.t, vars::p()).is_zero();
}

std::vector<MapRelationCheck> verify_relations() {
  std::vector<MapRelationCheck> out;
  for (const auto& rel : weyl::verify_relations()) {
    MapRelationCheck c;
    c.relation = rel.relation;
    c.roots_pass = rel.pass;
    c.map_pass = word_map(rel.lhs) == word_map(rel.rhs);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pvi::backlund
