// Multivariate polynomial GCD over Q.
//
// Strategy: strip monomial content, then repeatedly eliminate variables the
// gcd provably cannot contain, and fall back to a primitive PRS in one main
// variable. Elimination uses two facts:
//   * a variable occurring in only one operand cannot occur in the gcd;
//   * if, after evaluating all other variables at a random point mod a prime
//     (leading coefficients kept nonzero), the univariate images are coprime,
//     the gcd has degree 0 in that variable.
// In both cases gcd(a, b) is the gcd of the coefficient lists in that variable.
// Randomness only affects speed; every result is exact.

#include <algorithm>
#include <map>
#include <span>
#include <bit>
#include <random>

#include "pvi/field/polynomial.hpp"

namespace pvi::field {
namespace {

// ---------------------------------------------------------------------------
// Arithmetic modulo the Mersenne prime 2^61 - 1.

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t s = lo + hi;
  while (s >= kPrime) s -= kPrime;
  return s;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::optional<std::uint64_t> to_mod(const Rational& r) {
  const std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), kPrime);
  return mulmod(num, invmod(den));
}

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Image of f in F_p[v] with the other variables evaluated at `point`.
std::optional<ModPoly> image(const Polynomial& f, Var v, const std::array<std::uint64_t, kNumVars>& point) {
  ModPoly out(f.degree(v) + 1, 0);
  for (const auto& t : f.terms()) {
    auto c = to_mod(t.coeff);
    if (!c) return std::nullopt;
    std::uint64_t val = *c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (i == index(v) || !t.mono.e[i]) continue;
      val = mulmod(val, powmod(point[i], t.mono.e[i]));
    }
    auto& slot = out[t.mono[v]];
    slot = addmod(slot, val);
  }
  return out;
}

std::size_t modular_gcd_degree(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    const std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

std::mt19937_64& rng() {
  thread_local std::mt19937_64 gen(0x5eed1234abcdULL);
  return gen;
}

// Upper bound on deg_v(gcd(a, b)), or nullopt when no good point was found.
std::optional<std::size_t> image_gcd_degree(const Polynomial& a, const Polynomial& b, Var v) {
  const unsigned da = a.degree(v), db = b.degree(v);
  std::uniform_int_distribution<std::uint64_t> dist(1, kPrime - 1);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::array<std::uint64_t, kNumVars> point{};
    for (auto& x : point) x = dist(rng());
    auto ia = image(a, v, point);
    auto ib = image(b, v, point);
    if (!ia || !ib) continue;
    if ((*ia)[da] == 0 || (*ib)[db] == 0) continue;
    return modular_gcd_degree(std::move(*ia), std::move(*ib));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact recursive algorithm.

Monomial min_monomial(const Polynomial& f) {
  Monomial m = f.terms().front().mono;
  for (const auto& t : f.terms()) m = gcd(m, t.mono);
  return m;
}

Polynomial divide_monomial(const Polynomial& f, const Monomial& m) {
  if (m.is_one()) return f;
  std::vector<Polynomial::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.mono / m, t.coeff});
  return Polynomial::from_terms(std::move(terms));
}

bool degrees_bounded_by(const Polynomial& small, const Polynomial& big) {
  for (Var v : kAllVars)
    if (small.degree(v) > big.degree(v)) return false;
  return true;
}

Polynomial gcd_list(Polynomial g, std::span<const Polynomial> list) {
  for (const auto& c : list) {
    if (g.is_one()) break;
    if (c.is_zero()) continue;
    g = gcd(g, c);
  }
  return g;
}

Polynomial content(std::span<const Polynomial> coeffs) {
  // Start from the smallest nonzero coefficient to keep intermediates small.
  const Polynomial* seed = nullptr;
  for (const auto& c : coeffs)
    if (!c.is_zero() && (!seed || c.size() < seed->size())) seed = &c;
  if (!seed) return {};
  return gcd_list(seed->monic(), coeffs);
}

using UniPoly = std::vector<Polynomial>;

void trim(UniPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

UniPoly primitive_part(UniPoly f) {
  Polynomial c = content(f);
  if (c.is_one() || c.is_zero()) return f;
  for (auto& x : f) x = *divide_exact(x, c);
  return f;
}

UniPoly pseudo_remainder(UniPoly r, const UniPoly& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const Polynomial lr = r.back();
    for (auto& x : r) x = x * lb;
    for (std::size_t i = 0; i <= db; ++i) r[i + dr - db] -= lr * b[i];
    r.pop_back();
    trim(r);
  }
  return r;
}

Polynomial gcd_prs(const Polynomial& a, const Polynomial& b, Var v) {
  UniPoly ua = coefficients_in(a, v), ub = coefficients_in(b, v);
  const Polynomial ca = content(ua), cb = content(ub);
  const Polynomial c = gcd(ca, cb);
  for (auto& x : ua) x = *divide_exact(x, ca);
  for (auto& x : ub) x = *divide_exact(x, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (true) {
    UniPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) return c;
    ua = std::move(ub);
    ub = primitive_part(std::move(r));
  }
  return (c * from_coefficients(ub, v)).monic();
}

// ---------------------------------------------------------------------------
// Modular algorithm: dense evaluation/interpolation over F_p (one variable at
// a time, images scaled by gcd of leading coefficients), coefficients lifted
// by CRT and rational reconstruction. Candidates are verified exactly: both
// cofactors exist and are certified coprime by univariate images.

constexpr std::array<std::uint64_t, 6> kPrimes = {4611686018427387847ULL, 4611686018427387817ULL,
                                                  4611686018427387787ULL, 4611686018427387761ULL,
                                                  4611686018427387751ULL, 4611686018427387737ULL};

struct Zp {
  std::uint64_t p;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

// Univariate polynomials mod p, low to high, no trailing zeros.
using UPoly = std::vector<std::uint64_t>;

std::uint64_t eval(const Zp& F, const UPoly& f, std::uint64_t x) {
  std::uint64_t r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

UPoly make_monic(const Zp& F, UPoly f) {
  if (f.empty() || f.back() == 1) return f;
  const std::uint64_t inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, inv);
  return f;
}

// a mod b, or the quotient when `quotient` is given.
UPoly divmod(const Zp& F, UPoly a, const UPoly& b, UPoly* quotient = nullptr) {
  const std::uint64_t inv = F.inv(b.back());
  if (quotient) quotient->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    const std::uint64_t f = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    if (quotient) (*quotient)[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = F.sub(a[i + shift], F.mul(f, b[i]));
    trim(a);
  }
  return a;
}

UPoly ugcd(const Zp& F, UPoly a, UPoly b) {
  while (!b.empty()) {
    a = divmod(F, std::move(a), b);
    std::swap(a, b);
  }
  return make_monic(F, std::move(a));
}

UPoly umul(const Zp& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  return c;
}

struct ModTerm {
  Monomial m;
  std::uint64_t c;
};
using MPoly = std::vector<ModTerm>;  // distinct monomials, any order

struct LexLess {
  std::span<const int> vars;  // most significant first
  bool operator()(const Monomial& a, const Monomial& b) const {
    for (int v : vars)
      if (a.e[v] != b.e[v]) return a.e[v] < b.e[v];
    return false;
  }
};

void make_monic(const Zp& F, MPoly& f, const LexLess& less) {
  const auto lead = std::max_element(f.begin(), f.end(), [&](const ModTerm& x, const ModTerm& y) { return less(x.m, y.m); });
  const std::uint64_t inv = F.inv(lead->c);
  for (auto& t : f) t.c = F.mul(t.c, inv);
}

// gcd over F_p[vars], monic in lex(vars); nullopt when no stable image was found.
std::optional<MPoly> pgcd(const Zp& F, const MPoly& A, const MPoly& B, std::span<const int> vars, std::mt19937_64& gen) {
  const int xk = vars.back();
  if (vars.size() == 1) {
    auto to_u = [&](const MPoly& f) {
      UPoly u;
      for (const auto& t : f) {
        if (u.size() <= t.m.e[xk]) u.resize(t.m.e[xk] + 1, 0);
        u[t.m.e[xk]] = F.add(u[t.m.e[xk]], t.c);
      }
      trim(u);
      return u;
    };
    const UPoly g = ugcd(F, to_u(A), to_u(B));
    MPoly out;
    for (std::size_t d = 0; d < g.size(); ++d)
      if (g[d]) out.push_back({Monomial::of(static_cast<Var>(xk), static_cast<unsigned>(d)), g[d]});
    return out;
  }

  const LexLess less{vars.first(vars.size() - 1)};
  using Rec = std::map<Monomial, UPoly, LexLess>;
  auto group = [&](const MPoly& f) {
    Rec r(less);
    for (const auto& t : f) {
      Monomial m = t.m;
      const unsigned d = m.e[xk];
      m.e[xk] = 0;
      auto& u = r[m];
      if (u.size() <= d) u.resize(d + 1, 0);
      u[d] = F.add(u[d], t.c);
    }
    for (auto& [m, u] : r) trim(u);
    return r;
  };
  auto content = [&](Rec& r) {
    UPoly c;
    for (const auto& [m, u] : r) {
      c = ugcd(F, std::move(c), u);
      if (c.size() == 1) break;
    }
    if (c.size() > 1)
      for (auto& [m, u] : r) {
        UPoly q;
        divmod(F, u, c, &q);
        u = std::move(q);
      }
    return c;
  };
  Rec ra = group(A), rb = group(B);
  const UPoly cont = ugcd(F, content(ra), content(rb));
  const UPoly& lca = ra.rbegin()->second;
  const UPoly& lcb = rb.rbegin()->second;
  const UPoly gamma = ugcd(F, lca, lcb);
  std::size_t da = 0, db = 0;
  for (const auto& [m, u] : ra) da = std::max(da, u.size() - 1);
  for (const auto& [m, u] : rb) db = std::max(db, u.size() - 1);
  const std::size_t bound = gamma.size() - 1 + std::min(da, db);

  auto at = [&](const Rec& r, std::uint64_t x) {
    MPoly out;
    for (const auto& [m, u] : r)
      if (const std::uint64_t c = eval(F, u, x)) out.push_back({m, c});
    return out;
  };
  auto from_cont = [&] {
    MPoly out;
    for (std::size_t d = 0; d < cont.size(); ++d)
      if (cont[d]) out.push_back({Monomial::of(static_cast<Var>(xk), static_cast<unsigned>(d)), cont[d]});
    return out;
  };

  std::uniform_int_distribution<std::uint64_t> dist(1, F.p - 1);
  Rec h(less);
  UPoly q{1};
  std::size_t points = 0;
  std::optional<Monomial> lead;
  for (std::size_t attempt = 0; attempt < 2 * bound + 8; ++attempt) {
    const std::uint64_t r = dist(gen);
    if (!eval(F, lca, r) || !eval(F, lcb, r)) continue;
    auto g = pgcd(F, at(ra, r), at(rb, r), less.vars, gen);
    if (!g) return std::nullopt;
    const auto top = std::max_element(g->begin(), g->end(), [&](const ModTerm& x, const ModTerm& y) { return less(x.m, y.m); });
    if (top->m.is_one()) return from_cont();
    if (!lead || less(top->m, *lead)) {
      h.clear();
      q = {1};
      points = 0;
      lead = top->m;
    } else if (less(*lead, top->m)) {
      continue;
    }
    const std::uint64_t scale = eval(F, gamma, r);
    const std::uint64_t qinv = F.inv(eval(F, q, r));
    bool changed = false;
    auto update = [&](UPoly& hm, std::uint64_t value) {
      const std::uint64_t diff = F.sub(value, eval(F, hm, r));
      if (!diff) return;
      changed = true;
      const std::uint64_t f = F.mul(diff, qinv);
      if (hm.size() < q.size()) hm.resize(q.size(), 0);
      for (std::size_t i = 0; i < q.size(); ++i) hm[i] = F.add(hm[i], F.mul(f, q[i]));
      trim(hm);
    };
    Rec gm(less);
    for (const auto& t : *g) gm[t.m] = {F.mul(t.c, scale)};
    for (const auto& [m, v] : gm) update(h[m], v[0]);
    for (auto& [m, hm] : h)
      if (!gm.count(m)) update(hm, 0);
    q = umul(F, q, UPoly{F.sub(0, r), 1});
    ++points;
    if ((changed || points < 2) && points <= bound) continue;

    std::erase_if(h, [](const auto& kv) { return kv.second.empty(); });
    content(h);
    MPoly out;
    for (auto& [m, hm] : h) {
      const UPoly full = umul(F, hm, cont);
      for (std::size_t d = 0; d < full.size(); ++d) {
        if (!full[d]) continue;
        Monomial mm = m;
        mm.e[xk] = static_cast<std::uint8_t>(d);
        out.push_back({mm, full[d]});
      }
    }
    make_monic(F, out, LexLess{vars});
    return out;
  }
  return std::nullopt;
}

std::optional<MPoly> reduce_mod(const Polynomial& f, const Zp& F) {
  MPoly out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    const std::uint64_t den = mpz_fdiv_ui(t.coeff.get_den_mpz_t(), F.p);
    if (!den) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(t.coeff.get_num_mpz_t(), F.p);
    if (num) out.push_back({t.mono, F.mul(num, F.inv(den))});
  }
  return out;
}

std::optional<Rational> rational_reconstruct(const mpz_class& x, const mpz_class& m) {
  mpz_class bound = sqrt(m / 2);
  mpz_class r0 = m, r1 = x, s0 = 0, s1 = 1, qt, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(qt.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - qt * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - qt * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (abs(s1) > bound || gcd(r1, s1) != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

bool certified_coprime(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return true;
  const std::uint32_t s = a.support() | b.support();
  for (Var v : kAllVars) {
    if (!((s >> index(v)) & 1u)) continue;
    bool ok = false;
    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
      const auto bound = image_gcd_degree(a, b, v);
      ok = bound && *bound == 0;
    }
    if (!ok) return false;
  }
  return true;
}

std::optional<Polynomial> modular_gcd(const Polynomial& a, const Polynomial& b) {
  std::vector<int> vars;
  for (Var v : kAllVars)
    if (((a.support() | b.support()) >> index(v)) & 1u) vars.push_back(static_cast<int>(index(v)));
  // Highest degree innermost: the univariate base case absorbs it cheaply.
  std::stable_sort(vars.begin(), vars.end(), [&](int x, int y) {
    const auto dx = std::min(a.degree(static_cast<Var>(x)), b.degree(static_cast<Var>(x)));
    const auto dy = std::min(a.degree(static_cast<Var>(y)), b.degree(static_cast<Var>(y)));
    return dx > dy;
  });
  const LexLess less{vars};
  std::mt19937_64 gen(0x6d6f64756c6172ULL);

  std::map<Monomial, mpz_class, LexLess> acc(less);
  mpz_class modulus = 1;
  std::optional<Polynomial> previous;
  for (const std::uint64_t p : kPrimes) {
    const Zp F{p};
    auto ap = reduce_mod(a, F), bp = reduce_mod(b, F);
    if (!ap || !bp || ap->empty() || bp->empty()) continue;
    auto g = pgcd(F, *ap, *bp, vars, gen);
    if (!g) continue;
    std::map<Monomial, std::uint64_t, LexLess> image(less);
    for (const auto& t : *g) image[t.m] = t.c;
    if (!acc.empty()) {
      const Monomial& old_lead = acc.rbegin()->first;
      const Monomial& new_lead = image.rbegin()->first;
      if (less(old_lead, new_lead)) continue;
      bool same = acc.size() == image.size();
      auto j = image.begin();
      for (auto i = acc.begin(); same && i != acc.end(); ++i, ++j) same = i->first == j->first;
      if (!same) {
        acc.clear();
        modulus = 1;
        previous.reset();
      }
    }
    const mpz_class pz(static_cast<unsigned long>(p));
    if (acc.empty()) {
      for (const auto& [m, c] : image) acc[m] = mpz_class(static_cast<unsigned long>(c));
    } else {
      const std::uint64_t minv = F.inv(mpz_fdiv_ui(modulus.get_mpz_t(), p));
      for (auto& [m, x] : acc) {
        const std::uint64_t xr = mpz_fdiv_ui(x.get_mpz_t(), p);
        const std::uint64_t k = F.mul(F.sub(image[m], xr), minv);
        x += modulus * mpz_class(static_cast<unsigned long>(k));
      }
    }
    modulus *= pz;

    std::vector<Polynomial::Term> terms;
    bool reconstructed = true, small = true;
    const mpz_class slack = modulus >> 20;
    for (const auto& [m, x] : acc) {
      auto c = rational_reconstruct(x, modulus);
      if (!c) {
        reconstructed = false;
        break;
      }
      if (2 * abs(c->get_num()) * c->get_den() > slack) small = false;
      terms.push_back({m, std::move(*c)});
    }
    if (!reconstructed) continue;
    Polynomial cand = Polynomial::from_terms(std::move(terms));
    if (small || (previous && *previous == cand)) {
      if (const auto qa = divide_exact(a, cand)) {
        if (const auto qb = divide_exact(b, cand)) {
          if (certified_coprime(*qa, *qb)) return cand.monic();
        }
      }
    }
    previous = std::move(cand);
  }
  return std::nullopt;
}

Polynomial gcd_without_monomials(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  const Polynomial am = a.monic(), bm = b.monic();
  if (am == bm) return am;
  if (degrees_bounded_by(b, a) && divide_exact(a, b)) return bm;
  if (degrees_bounded_by(a, b) && divide_exact(b, a)) return am;

  const std::uint32_t sa = a.support(), sb = b.support();
  if (const std::uint32_t only_a = sa & ~sb) {
    const Var v = static_cast<Var>(std::countr_zero(only_a));
    return gcd_list(bm, coefficients_in(a, v));
  }
  if (const std::uint32_t only_b = sb & ~sa) {
    const Var v = static_cast<Var>(std::countr_zero(only_b));
    return gcd_list(am, coefficients_in(b, v));
  }

  std::optional<Var> main;
  std::size_t best = SIZE_MAX;
  for (Var v : kAllVars) {
    if (!((sa >> index(v)) & 1u)) continue;
    auto bound = image_gcd_degree(a, b, v);
    if (bound && *bound == 0) {
      auto ca = coefficients_in(a, v);
      auto cb = coefficients_in(b, v);
      ca.insert(ca.end(), cb.begin(), cb.end());
      return content(ca);
    }
    const std::size_t cost = std::max(a.degree(v), b.degree(v));
    if (cost < best) {
      best = cost;
      main = v;
    }
  }
  if (auto g = modular_gcd(a, b)) return *g;
  return gcd_prs(a, b, *main);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  const Monomial ma = min_monomial(a), mb = min_monomial(b);
  const Polynomial g = gcd_without_monomials(divide_monomial(a, ma), divide_monomial(b, mb));
  return g.multiply_monomial(gcd(ma, mb), 1).monic();
}

}  // namespace pvi::field
