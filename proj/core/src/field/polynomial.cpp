#include "pvi/field/polynomial.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pvi/errors.hpp"

namespace pvi::field {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(Var v, unsigned k) {
  if (k > 255) throw std::overflow_error("monomial exponent exceeds 255");
  Monomial m;
  m.e[index(v)] = static_cast<std::uint8_t>(k);
  return m;
}

bool grlex_less(const Monomial& a, const Monomial& b) noexcept {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const unsigned s = unsigned{a.e[i]} + b.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent exceeds 255");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

bool divides(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kNumVars; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------
// Polynomial basics

namespace {

bool term_order(const Polynomial::Term& a, const Polynomial::Term& b) {
  return grlex_less(b.mono, a.mono);  // descending
}

}  // namespace

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(Var v) { return monomial(Monomial::of(v), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial r;
  if (c != 0) r.terms_.push_back({m, c});
  return r;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_order);
  Polynomial r;
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff += t.coeff;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.front();
}

unsigned Polynomial::degree(Var v) const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[v]);
  return d;
}

unsigned Polynomial::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Polynomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (t.mono.e[i]) mask |= 1u << i;
  return mask;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two canonical term lists with a sign on the second.
std::vector<Polynomial::Term> merge(std::span<const Polynomial::Term> a,
                                    std::span<const Polynomial::Term> b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_less(b[j].mono, a[i].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_less(a[i].mono, b[j].mono)) {
      out.push_back(b[j]);
      if (subtract) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.multiply_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.multiply_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  Rational prod;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      mpq_mul(prod.get_mpq_t(), x.coeff.get_mpq_t(), y.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(x.mono * y.mono, prod);
      if (!inserted) it->second += prod;
    }
  std::vector<Polynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(), term_order);
  Polynomial r;
  r.terms_ = std::move(terms);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1), base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_[0].coeff == 1) return *this;
  Rational inv = 1 / terms_[0].coeff;
  return *this * inv;
}

Polynomial Polynomial::multiply_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grlex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      os << to_string(c);
      wrote = true;
    }
    for (Var v : kAllVars) {
      const unsigned k = t.mono[v];
      if (!k) continue;
      if (wrote) os << '*';
      os << name(v);
      if (k > 1) os << '^' << k;
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Calculus, division, substitution, evaluation

Polynomial derivative(const Polynomial& f, Var v) {
  std::vector<Polynomial::Term> out;
  for (const auto& t : f.terms()) {
    const unsigned k = t.mono[v];
    if (!k) continue;
    Monomial m = t.mono;
    m.e[index(v)] = static_cast<std::uint8_t>(k - 1);
    out.push_back({m, t.coeff * k});
  }
  return Polynomial::from_terms(std::move(out));
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  for (Var v : kAllVars)
    if (b.degree(v) > a.degree(v)) return std::nullopt;
  const auto at = a.terms();
  const auto bt = b.terms();
  const auto& lb = bt[0];
  const Rational inv = 1 / lb.coeff;

  // Heap of products q_i * b_j (j >= 1), largest monomial on top.
  struct Entry {
    Monomial mono;
    std::size_t i, j;
  };
  auto less = [](const Entry& x, const Entry& y) { return grlex_less(x.mono, y.mono); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less);
  std::vector<Polynomial::Term> quotient;
  std::size_t ai = 0;
  Rational c, prod;
  while (ai < at.size() || !heap.empty()) {
    Monomial m;
    if (heap.empty() || (ai < at.size() && !grlex_less(at[ai].mono, heap.top().mono)))
      m = at[ai].mono;
    else
      m = heap.top().mono;
    c = 0;
    if (ai < at.size() && at[ai].mono == m) c = at[ai++].coeff;
    while (!heap.empty() && heap.top().mono == m) {
      const Entry e = heap.top();
      heap.pop();
      mpq_mul(prod.get_mpq_t(), quotient[e.i].coeff.get_mpq_t(), bt[e.j].coeff.get_mpq_t());
      c -= prod;
      if (e.j + 1 < bt.size()) heap.push({quotient[e.i].mono * bt[e.j + 1].mono, e.i, e.j + 1});
    }
    if (c == 0) continue;
    if (!divides(lb.mono, m)) return std::nullopt;
    quotient.push_back({m / lb.mono, c * inv});
    if (bt.size() > 1) heap.push({quotient.back().mono * bt[1].mono, quotient.size() - 1, 1});
  }
  return Polynomial::from_terms(std::move(quotient));
}

std::vector<Polynomial> coefficients_in(const Polynomial& f, Var v) {
  std::vector<std::vector<Polynomial::Term>> buckets(f.degree(v) + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    const unsigned k = m[v];
    m.e[index(v)] = 0;
    buckets[k].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(std::move(b)));
  if (f.is_zero()) out.clear();
  return out;
}

Polynomial from_coefficients(std::span<const Polynomial> coeffs, Var v) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) terms.push_back({t.mono * Monomial::of(v, k), t.coeff});
  return Polynomial::from_terms(std::move(terms));
}

Polynomial substitute(const Polynomial& f, const std::map<Var, Polynomial>& images) {
  if (images.empty()) return f;
  std::array<std::vector<Polynomial>, kNumVars> powers;
  std::array<bool, kNumVars> replaced{};
  for (const auto& [v, img] : images) {
    replaced[index(v)] = true;
    powers[index(v)].push_back(Polynomial(1));
  }
  auto power = [&](Var v, unsigned k) -> const Polynomial& {
    auto& cache = powers[index(v)];
    while (cache.size() <= k) cache.push_back(cache.back() * images.at(v));
    return cache[k];
  };
  // Group terms by their kept part to limit the number of products.
  Polynomial result;
  std::vector<Polynomial::Term> direct;
  for (const auto& t : f.terms()) {
    Monomial kept = t.mono;
    Polynomial factor(t.coeff);
    bool any = false;
    for (Var v : kAllVars) {
      if (!replaced[index(v)] || !t.mono[v]) continue;
      any = true;
      factor = factor * power(v, t.mono[v]);
      kept.e[index(v)] = 0;
    }
    if (!any) {
      direct.push_back(t);
      continue;
    }
    result += factor.multiply_monomial(kept, 1);
  }
  result += Polynomial::from_terms(std::move(direct));
  return result;
}

std::complex<double> evaluate(const Polynomial& f,
                              const std::array<std::complex<double>, kNumVars>& point) {
  std::complex<double> sum = 0;
  for (const auto& t : f.terms()) {
    std::complex<double> term = t.coeff.get_d();
    for (std::size_t i = 0; i < kNumVars; ++i)
      for (unsigned k = 0; k < t.mono.e[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

double magnitude(const Polynomial& f, const std::array<std::complex<double>, kNumVars>& point) {
  double sum = 0;
  for (const auto& t : f.terms()) {
    double term = std::abs(t.coeff.get_d());
    for (std::size_t i = 0; i < kNumVars; ++i)
      for (unsigned k = 0; k < t.mono.e[i]; ++k) term *= std::abs(point[i]);
    sum += term;
  }
  return sum;
}

}  // namespace pvi::field
