#include "pvi/weyl.hpp"

#include <sstream>
#include <stdexcept>

#include "pvi/errors.hpp"

namespace pvi::weyl {

namespace {

constexpr std::array<std::string_view, 8> kNames = {"s0", "s1", "s2", "s3", "s4", "r1", "r3", "r4"};

Functional eps_functional(Rational c, Rational b1, Rational b2, Rational b3, Rational b4) {
  return {std::move(c), {std::move(b1), std::move(b2), std::move(b3), std::move(b4)}};
}

std::string join(const GroupWord& w) { return w.empty() ? std::string("1") : to_string(w); }

}  // namespace

std::string_view name(Gen g) { return kNames[static_cast<int>(g)]; }

bool is_reflection(Gen g) { return static_cast<int>(g) < 5; }

int gen_index(Gen g) {
  switch (g) {
    case Gen::r1: return 1;
    case Gen::r3: return 3;
    case Gen::r4: return 4;
    default: return static_cast<int>(g);
  }
}

GroupWord parse_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  GroupWord w;
  std::string tok;
  while (in >> tok) {
    if (tok.size() == 2 && tok[0] == 'T' && tok[1] >= '1' && tok[1] <= '4') {
      const auto t = translation_word(tok[1] - '0');
      w.insert(w.end(), t.begin(), t.end());
      continue;
    }
    bool found = false;
    for (Gen g : kAllGens) {
      if (name(g) == tok) {
        w.push_back(g);
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("unknown generator '" + tok + "'");
  }
  return w;
}

std::string to_string(const GroupWord& w) {
  std::string out;
  for (Gen g : w) {
    if (!out.empty()) out += ' ';
    out += name(g);
  }
  return out;
}

GroupWord inverse(const GroupWord& w) { return {w.rbegin(), w.rend()}; }

Functional Functional::operator+(const Functional& o) const {
  Functional r = *this;
  r.c += o.c;
  for (int i = 0; i < 4; ++i) r.b[i] += o.b[i];
  return r;
}

Functional Functional::operator-() const {
  Functional r = *this;
  r.c = -r.c;
  for (auto& x : r.b) x = -x;
  return r;
}

Functional Functional::operator-(const Functional& o) const { return *this + (-o); }

Functional Functional::operator*(const Rational& k) const {
  Functional r = *this;
  r.c *= k;
  for (auto& x : r.b) x *= k;
  return r;
}

Functional Functional::constant(const Rational& c) { return {c, {0, 0, 0, 0}}; }

bool Functional::is_constant() const {
  for (const auto& x : b)
    if (x != 0) return false;
  return true;
}

Rational Functional::evaluate(const std::array<Rational, 4>& eps) const {
  Rational r = c;
  for (int i = 0; i < 4; ++i) r += b[i] * eps[i];
  return r;
}

std::array<Rational, 5> Functional::alpha_coords() const {
  const Rational m1 = b[0];
  const Rational m2 = b[1] + m1;
  const Rational m4 = (b[2] + m2 + b[3]) / 2;
  const Rational m3 = (b[2] + m2 - b[3]) / 2;
  return {c, m1, m2, m3, m4};
}

field::RationalFunction Functional::as_rational_function() const {
  using field::Polynomial;
  using field::Var;
  const auto m = alpha_coords();
  Polynomial p(m[0]);
  const Var v[4] = {Var::a1, Var::a2, Var::a3, Var::a4};
  for (int i = 0; i < 4; ++i)
    if (m[i + 1] != 0) p += Polynomial(m[i + 1]) * Polynomial::variable(v[i]);
  return field::RationalFunction(p);
}

Functional Functional::from_rational_function(const field::RationalFunction& f) {
  using field::Var;
  if (!f.den().is_constant()) throw std::invalid_argument("not affine in the parameters: " + f.str());
  const Rational scale = 1 / f.den().constant_value();
  const auto roots = simple_roots();
  Functional out = constant(0);
  for (const auto& term : f.num().terms()) {
    const auto& e = term.mono.e;
    const Rational c = term.coeff * scale;
    if (term.mono.degree() == 0) {
      out = out + constant(c);
      continue;
    }
    int which = -1;
    const Var v[4] = {Var::a1, Var::a2, Var::a3, Var::a4};
    for (int k = 0; k < 4; ++k)
      if (term.mono.degree() == 1 && e[field::index(v[k])] == 1) which = k;
    if (which < 0) throw std::invalid_argument("not affine in the parameters: " + f.str());
    out = out + roots[which + 1] * c;
  }
  return out;
}

std::string Functional::str() const { return as_rational_function().str(); }

AffineRootVec simple_roots() {
  return {eps_functional(1, -1, -1, 0, 0), eps_functional(0, 1, -1, 0, 0), eps_functional(0, 0, 1, -1, 0),
          eps_functional(0, 0, 0, 1, -1), eps_functional(0, 0, 0, 1, 1)};
}

Functional null_root(const AffineRootVec& r) { return r[0] + r[1] + r[2] * 2 + r[3] + r[4]; }

bool satisfies_null_root(const AffineRootVec& r) { return null_root(r) == Functional::constant(1); }

Functional substitute(const Functional& f, const AffineRootVec& images) {
  const auto m = f.alpha_coords();
  Functional out = Functional::constant(m[0]);
  for (int k = 1; k <= 4; ++k) out = out + images[k] * m[k];
  return out;
}

const Matrix5& cartan() {
  static const Matrix5 a = {{{2, 0, -1, 0, 0},
                             {0, 2, -1, 0, 0},
                             {-1, -1, 2, -1, -1},
                             {0, 0, -1, 2, 0},
                             {0, 0, -1, 0, 2}}};
  return a;
}

const std::array<int, 5>& sigma(int k) {
  static const std::array<int, 5> s1 = {1, 0, 2, 4, 3};
  static const std::array<int, 5> s3 = {3, 4, 2, 0, 1};
  static const std::array<int, 5> s4 = {4, 3, 2, 1, 0};
  switch (k) {
    case 1: return s1;
    case 3: return s3;
    case 4: return s4;
  }
  throw std::out_of_range("sigma index must be 1, 3 or 4");
}

AffineRootVec root_action(Gen g, const AffineRootVec& roots) {
  AffineRootVec out;
  const int i = gen_index(g);
  if (is_reflection(g)) {
    const auto& a = cartan();
    for (int j = 0; j < 5; ++j) out[j] = roots[j] - roots[i] * Rational(a[i][j]);
  } else {
    const auto& s = sigma(i);
    for (int j = 0; j < 5; ++j) out[j] = roots[s[j]];
  }
  return out;
}

AffineRootVec apply_word(const GroupWord& w, const AffineRootVec& roots) {
  AffineRootVec r = roots;
  for (Gen g : w) r = root_action(g, r);
  return r;
}

std::vector<RelationCheck> fundamental_relations() {
  std::vector<RelationCheck> out;
  auto add = [&](GroupWord lhs, GroupWord rhs) {
    RelationCheck c;
    c.relation = join(lhs) + " = " + join(rhs);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    out.push_back(std::move(c));
  };
  const Gen s[5] = {Gen::s0, Gen::s1, Gen::s2, Gen::s3, Gen::s4};
  for (Gen g : s) add({g, g}, {});
  const int outer[4] = {0, 1, 3, 4};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) add({s[outer[a]], s[outer[b]]}, {s[outer[b]], s[outer[a]]});
  for (int i : outer) add({s[i], Gen::s2, s[i]}, {Gen::s2, s[i], Gen::s2});
  const Gen r[3] = {Gen::r1, Gen::r3, Gen::r4};
  for (Gen g : r) add({g, g}, {});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) add({r[a], r[b]}, {r[3 - a - b]});
  for (Gen g : r) {
    const auto& sg = sigma(gen_index(g));
    for (int j = 0; j < 5; ++j) add({g, s[j]}, {s[sg[j]], g});
  }
  return out;
}

std::vector<RelationCheck> verify_relations() {
  auto rel = fundamental_relations();
  for (auto& c : rel) c.pass = apply_word(c.lhs) == apply_word(c.rhs);
  return rel;
}

GroupWord translation_word(int i) {
  switch (i) {
    case 1: return parse_word("r1 s1 s2 s3 s4 s2 s1");
    case 2: return parse_word("s0 s2 s1 s3 s4 s2 s1 s3 s4 s2");
    case 3: return parse_word("r3 s3 s2 s1 s4 s2 s3");
    case 4: return parse_word("r4 s4 s2 s1 s3 s2 s4");
  }
  throw std::out_of_range("translation index must be 1..4");
}

std::array<Rational, 5> translation_shift(int i) {
  switch (i) {
    case 1: return {1, -1, 0, 0, 0};
    case 2: return {2, 0, -1, 0, 0};
    case 3: return {1, 0, 0, -1, 0};
    case 4: return {1, 0, 0, 0, -1};
  }
  throw std::out_of_range("translation index must be 1..4");
}

WeightVector fundamental_weight(int i) {
  const Rational h(1, 2);
  switch (i) {
    case 1: return {1, 0, 0, 0};
    case 2: return {1, 1, 0, 0};
    case 3: return {h, h, h, -h};
    case 4: return {h, h, h, h};
  }
  throw std::out_of_range("weight index must be 1..4");
}

bool lattice_member(const WeightVector& v) {
  int parity = -1;
  for (const auto& x : v) {
    const Rational twice = x * 2;
    if (twice.get_den() != 1) return false;
    const mpz_class n = twice.get_num();
    const int par = mpz_odd_p(n.get_mpz_t()) ? 1 : 0;
    if (parity >= 0 && par != parity) return false;
    parity = par;
  }
  return true;
}

}  // namespace pvi::weyl
