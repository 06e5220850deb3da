#include "pvi/field/root_ext.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "pvi/errors.hpp"

namespace pvi::field {

RootContext::RootContext(std::vector<Root> roots) : roots_(std::move(roots)) {
  if (roots_.size() > 8) throw std::invalid_argument("at most 8 root symbols per context");
  for (const auto& r : roots_)
    if (r.square.is_zero()) throw std::invalid_argument("root '" + r.name + "' has a zero square");
}

std::size_t RootContext::find(std::string_view name) const {
  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (roots_[k].name == name) return k;
  throw std::invalid_argument("unknown root symbol '" + std::string(name) + "'");
}

RootContextPtr make_context(std::vector<RootContext::Root> roots) {
  return std::make_shared<const RootContext>(std::move(roots));
}

RootExtElement::RootExtElement(RootContextPtr ctx, std::vector<RationalFunction> components)
    : ctx_(std::move(ctx)), comps_(std::move(components)) {
  const std::size_t expected = std::size_t{1} << root_count();
  if (comps_.size() != expected) throw std::invalid_argument("component count does not match root context");
}

RootExtElement RootExtElement::root(const RootContextPtr& ctx, std::size_t k) {
  std::vector<RationalFunction> comps(std::size_t{1} << ctx->size());
  comps.at(std::size_t{1} << k) = RationalFunction(1);
  return RootExtElement(ctx, std::move(comps));
}

const RationalFunction& RootExtElement::component(unsigned mask) const { return comps_.at(mask); }

bool RootExtElement::is_zero() const noexcept {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool RootExtElement::is_rational() const noexcept {
  for (std::size_t i = 1; i < comps_.size(); ++i)
    if (!comps_[i].is_zero()) return false;
  return true;
}

void RootExtElement::adopt(const RootContextPtr& ctx) {
  if (!ctx || ctx == ctx_) return;
  if (ctx_) throw RootContextMismatch();
  ctx_ = ctx;
  comps_.resize(std::size_t{1} << ctx_->size());
}

RootExtElement RootExtElement::operator-() const {
  RootExtElement r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

RootExtElement& RootExtElement::operator+=(const RootExtElement& o) {
  adopt(o.ctx_);
  if (o.ctx_ != ctx_ && o.ctx_) throw RootContextMismatch();
  for (std::size_t i = 0; i < o.comps_.size(); ++i)
    if (!o.comps_[i].is_zero()) comps_[i] += o.comps_[i];
  return *this;
}

RootExtElement& RootExtElement::operator-=(const RootExtElement& o) { return *this += -o; }

RootExtElement operator*(const RootExtElement& a, const RootExtElement& b) {
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) throw RootContextMismatch();
  RootExtElement r;
  r.ctx_ = a.ctx_ ? a.ctx_ : b.ctx_;
  r.comps_.assign(std::size_t{1} << r.root_count(), RationalFunction());
  for (unsigned i = 0; i < a.comps_.size(); ++i) {
    if (a.comps_[i].is_zero()) continue;
    for (unsigned j = 0; j < b.comps_.size(); ++j) {
      if (b.comps_[j].is_zero()) continue;
      RationalFunction term = a.comps_[i] * b.comps_[j];
      // r_k * r_k = square_k for every root in both subsets.
      for (unsigned common = i & j; common; common &= common - 1)
        term *= r.ctx_->root(static_cast<std::size_t>(std::countr_zero(common))).square;
      r.comps_[i ^ j] += term;
    }
  }
  return r;
}

RootExtElement& RootExtElement::operator*=(const RootExtElement& o) { return *this = *this * o; }

RootExtElement RootExtElement::conjugate(std::size_t k) const {
  RootExtElement r = *this;
  for (unsigned i = 0; i < r.comps_.size(); ++i)
    if ((i >> k) & 1u) r.comps_[i] = -r.comps_[i];
  return r;
}

RootExtElement RootExtElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  // Multiply by conjugates until the norm is rational.
  RootExtElement norm = *this, cofactor(1);
  for (std::size_t k = 0; k < root_count(); ++k) {
    bool has_k = false;
    for (unsigned i = 0; i < norm.comps_.size(); ++i)
      if (((i >> k) & 1u) && !norm.comps_[i].is_zero()) has_k = true;
    if (!has_k) continue;
    RootExtElement c = norm.conjugate(k);
    norm *= c;
    cofactor *= c;
  }
  const RationalFunction inv = norm.comps_[0].inverse();
  return cofactor.map_components([&](const RationalFunction& f) { return f * inv; });
}

RootExtElement& RootExtElement::operator/=(const RootExtElement& o) { return *this *= o.inverse(); }

bool operator==(const RootExtElement& a, const RootExtElement& b) {
  const std::size_t n = std::max(a.comps_.size(), b.comps_.size());
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) return false;
  static const RationalFunction zero;
  for (std::size_t i = 0; i < n; ++i) {
    const RationalFunction& x = i < a.comps_.size() ? a.comps_[i] : zero;
    const RationalFunction& y = i < b.comps_.size() ? b.comps_[i] : zero;
    if (!(x == y)) return false;
  }
  return true;
}

std::string RootExtElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << comps_[i].str() << ')';
    for (std::size_t k = 0; k < root_count(); ++k)
      if ((i >> k) & 1u) os << '*' << ctx_->root(k).name;
  }
  return first ? "0" : os.str();
}

RootExtElement derivative(const RootExtElement& f, Var v) {
  const std::size_t n = f.root_count();
  std::vector<RationalFunction> log_derivs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& g = f.context()->root(k).square;
    log_derivs[k] = derivative(g, v) / (RationalFunction(2) * g);
  }
  std::vector<RationalFunction> out(std::size_t{1} << n);
  for (unsigned i = 0; i < out.size(); ++i) {
    const auto& c = f.component(i);
    if (c.is_zero()) continue;
    RationalFunction d = derivative(c, v);
    for (std::size_t k = 0; k < n; ++k)
      if ((i >> k) & 1u) d += c * log_derivs[k];
    out[i] = std::move(d);
  }
  if (!f.context()) return RootExtElement(std::move(out[0]));
  return RootExtElement(f.context(), std::move(out));
}

RootExtElement derivative(const RootExtElement& f, std::string_view var) {
  auto v = parse_var(var);
  if (!v) throw UnknownVariable(std::string(var));
  return derivative(f, *v);
}

std::complex<double> eval_complex(const RootExtElement& f, const ComplexPoint& point,
                                  const std::map<std::string, std::complex<double>>& branch) {
  const std::size_t n = f.root_count();
  std::vector<std::complex<double>> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& r = f.context()->root(k);
    auto it = branch.find(r.name);
    if (it == branch.end()) throw BranchError("no branch value for root '" + r.name + "'");
    const std::complex<double> sq = eval_complex(r.square, point);
    const std::complex<double> b = it->second;
    if (std::abs(b * b - sq) > 1e-8 * std::max(1.0, std::abs(sq)))
      throw BranchError("branch value for '" + r.name + "' does not square to its relation");
    roots[k] = b;
  }
  std::complex<double> sum = 0;
  for (unsigned i = 0; i < (1u << n); ++i) {
    const auto& c = f.component(i);
    if (c.is_zero()) continue;
    std::complex<double> term = eval_complex(c, point);
    for (std::size_t k = 0; k < n; ++k)
      if ((i >> k) & 1u) term *= roots[k];
    sum += term;
  }
  return sum;
}

}  // namespace pvi::field
