#include "pvi/field/rational_function.hpp"

#include <cctype>
#include <cmath>

#include "pvi/errors.hpp"

namespace pvi::field {

namespace {

// Scales so the denominator is grlex-monic.
void normalize(Polynomial& num, Polynomial& den) {
  const Rational lc = den.leading_coeff();
  if (lc == 1) return;
  const Rational inv = 1 / lc;
  num *= inv;
  den *= inv;
}

}  // namespace

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den.is_constant()) {
    num_ = num * Rational(1 / den.constant_value());
    den_ = Polynomial(1);
    return;
  }
  const Polynomial g = gcd(num, den);
  if (g.is_one()) {
    num_ = num;
    den_ = den;
  } else {
    num_ = *divide_exact(num, g);
    den_ = *divide_exact(den, g);
  }
  normalize(num_, den_);
}

Rational RationalFunction::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_, Reduced{}}; }

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw DivisionByZero();
  Polynomial n = den_, d = num_;
  normalize(n, d);
  return {std::move(n), std::move(d), Reduced{}};
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    Polynomial n = num_ + o.num_;
    if (den_.is_one()) {
      num_ = std::move(n);
      return *this;
    }
    return *this = RationalFunction(n, den_);
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  const Polynomial g = gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  const Polynomial b1 = *divide_exact(den_, g);
  const Polynomial d1 = *divide_exact(o.den_, g);
  Polynomial n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = RationalFunction();
  Polynomial d = b1 * o.den_;
  const Polynomial h = gcd(n, g);
  if (!h.is_one()) {
    n = *divide_exact(n, h);
    d = *divide_exact(d, h);
  }
  normalize(n, d);
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    const Polynomial g1 = gcd(a, d);
    if (!g1.is_one()) {
      a = *divide_exact(a, g1);
      d = *divide_exact(d, g1);
    }
  }
  if (!b.is_one()) {
    const Polynomial g2 = gcd(c, b);
    if (!g2.is_one()) {
      c = *divide_exact(c, g2);
      b = *divide_exact(b, g2);
    }
  }
  Polynomial n = a * c, den = b * d;
  normalize(n, den);
  num_ = std::move(n);
  den_ = std::move(den);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  // Powers of coprime parts stay coprime.
  return {num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), Reduced{}};
}

std::string RationalFunction::str() const {
  if (den_.is_one()) return num_.str();
  auto wrap = [](const Polynomial& p) {
    return p.size() == 1 && p.terms()[0].coeff == 1 ? p.str() : "(" + p.str() + ")";
  };
  std::string n = num_.size() == 1 ? num_.str() : "(" + num_.str() + ")";
  return n + "/" + wrap(den_);
}

const RationalFunction& vars::a0() {
  static const RationalFunction v = RationalFunction(1) - a1() - RationalFunction(2) * a2() - a3() - a4();
  return v;
}

// ---------------------------------------------------------------------------

RationalFunction derivative(const RationalFunction& f, Var v) {
  if (!f.depends_on(v)) return {};
  if (f.is_polynomial()) return derivative(f.num(), v);
  const Polynomial dn = derivative(f.num(), v), dd = derivative(f.den(), v);
  return RationalFunction(dn * f.den() - f.num() * dd, f.den() * f.den());
}

RationalFunction derivative(const RationalFunction& f, std::string_view var) {
  auto v = parse_var(var);
  if (!v) throw UnknownVariable(std::string(var));
  return derivative(f, *v);
}

namespace {

// Substitutes rational images into a polynomial, returning numerator and
// denominator separately without any gcd computation.
std::pair<Polynomial, Polynomial> substitute_split(const Polynomial& f, const Substitution& images) {
  std::map<Var, Polynomial> poly_images;
  std::vector<Var> frac_vars;
  for (const auto& [v, img] : images) {
    if (!f.depends_on(v)) continue;
    if (img.is_polynomial())
      poly_images.emplace(v, img.num());
    else
      frac_vars.push_back(v);
  }
  Polynomial g = substitute(f, poly_images);
  if (frac_vars.empty()) return {std::move(g), Polynomial(1)};

  // g still contains the fractional variables untouched.
  std::map<Var, std::vector<Polynomial>> num_pow, den_pow;
  std::map<Var, unsigned> top;
  Polynomial common(1);
  for (Var v : frac_vars) {
    const unsigned e = g.degree(v);
    top[v] = e;
    auto& np = num_pow[v];
    auto& dp = den_pow[v];
    np.push_back(Polynomial(1));
    dp.push_back(Polynomial(1));
    for (unsigned k = 1; k <= e; ++k) {
      np.push_back(np.back() * images.at(v).num());
      dp.push_back(dp.back() * images.at(v).den());
    }
    common *= dp[e];
  }
  Polynomial result;
  for (const auto& t : g.terms()) {
    Monomial kept = t.mono;
    Polynomial factor(t.coeff);
    for (Var v : frac_vars) {
      const unsigned e = t.mono[v];
      kept.e[index(v)] = 0;
      factor = factor * num_pow[v][e] * den_pow[v][top[v] - e];
    }
    result += factor.multiply_monomial(kept, 1);
  }
  return {std::move(result), std::move(common)};
}

}  // namespace

RationalFunction substitute(const RationalFunction& f, const Substitution& images) {
  auto [n1, d1] = substitute_split(f.num(), images);
  if (f.is_polynomial()) return RationalFunction(n1, d1);
  auto [n2, d2] = substitute_split(f.den(), images);
  if (n2.is_zero()) throw PoleError("substitution makes the denominator vanish");
  return RationalFunction(n1 * d2, d1 * n2);
}

std::complex<double> eval_complex(const RationalFunction& f, const ComplexPoint& point) {
  std::array<std::complex<double>, kNumVars> values{};
  const std::uint32_t mask = f.num().support() | f.den().support();
  for (Var v : kAllVars) {
    if (!((mask >> index(v)) & 1u)) continue;
    auto it = point.find(v);
    if (it == point.end()) throw UnknownVariable(std::string(name(v)) + " (no value supplied)");
    values[index(v)] = it->second;
  }
  const std::complex<double> den = evaluate(f.den(), values);
  const double scale = magnitude(f.den(), values);
  if (den == 0.0 || std::abs(den) <= 1e-13 * scale) throw PoleError("pole of rational function at evaluation point");
  return evaluate(f.num(), values) / den;
}

RationalFunction residue(const RationalFunction& f, Var v, const Polynomial& c) {
  if (c.depends_on(v)) throw std::invalid_argument("residue point depends on the variable");
  const Polynomial linear = Polynomial::variable(v) - c;
  Polynomial rest = f.den();
  unsigned order = 0;
  while (auto q = divide_exact(rest, linear)) {
    rest = std::move(*q);
    ++order;
  }
  if (order == 0) return {};
  RationalFunction g(f.num(), rest);
  Rational factorial = 1;
  for (unsigned k = 1; k < order; ++k) {
    g = derivative(g, v);
    factorial *= k;
  }
  return substitute(g, {{v, RationalFunction(c)}}) * RationalFunction(Rational(1 / factorial));
}

RationalFunction residue_at_infinity(const RationalFunction& f, Var v) {
  std::vector<RationalFunction> num, den;
  for (auto& c : coefficients_in(f.num(), v)) num.emplace_back(std::move(c));
  for (auto& c : coefficients_in(f.den(), v)) den.emplace_back(std::move(c));
  if (num.empty()) return {};
  // Long division num = Q den + R over the coefficient field.
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd && !num.empty()) {
    const RationalFunction factor = num.back() / den.back();
    const std::size_t shift = num.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) num[i + shift] -= factor * den[i];
    num.pop_back();
    while (!num.empty() && num.back().is_zero()) num.pop_back();
  }
  if (num.size() != dd || dd == 0) return {};
  return -(num.back() / den.back());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RationalFunction parse_all() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }

  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (accept('*')) r *= unary();
      else if (accept('/')) r /= unary();
      else return r;
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!accept('^')) return base;
    bool neg = accept('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return base.pow(neg ? -k : k);
  }

  RationalFunction atom() {
    skip();
    if (accept('(')) {
      RationalFunction r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(Polynomial(Rational(mpz_class(std::string(s_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (id == "a0" || id == "alpha0") return vars::a0();
      if (auto v = parse_var(id)) return RationalFunction::variable(*v);
      throw UnknownVariable(std::string(id));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace pvi::field
