#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pvi/field/rational_function.hpp"

namespace pvi::field {

/// A set of adjoined square-root symbols r_k with r_k^2 = square_k.
/// Roots in one context are treated as algebraically independent, so a
/// context must never hold two roots whose product is rational.
class RootContext {
 public:
  struct Root {
    std::string name;
    RationalFunction square;
  };

  /// Throws std::invalid_argument when a square has zero numerator.
  explicit RootContext(std::vector<Root> roots);

  std::size_t size() const noexcept { return roots_.size(); }
  const Root& root(std::size_t k) const { return roots_.at(k); }
  std::size_t find(std::string_view name) const;  // throws when absent
  const std::vector<Root>& roots() const noexcept { return roots_; }

 private:
  std::vector<Root> roots_;
};

using RootContextPtr = std::shared_ptr<const RootContext>;

RootContextPtr make_context(std::vector<RootContext::Root> roots);

/// Element of K(r_1, ..., r_n) in multilinear normal form: a coefficient per
/// subset of roots (bitmask index), each root appearing with exponent 0 or 1.
/// An element without a context is a plain rational function and combines
/// with elements of any context.
class RootExtElement {
 public:
  RootExtElement() : comps_(1) {}
  RootExtElement(long c) : comps_{RationalFunction(c)} {}  // NOLINT(google-explicit-constructor)
  RootExtElement(RationalFunction f) : comps_{std::move(f)} {}  // NOLINT(google-explicit-constructor)
  RootExtElement(RootContextPtr ctx, std::vector<RationalFunction> components);

  /// The root symbol itself.
  static RootExtElement root(const RootContextPtr& ctx, std::size_t k);
  static RootExtElement root(const RootContextPtr& ctx, std::string_view name) {
    return root(ctx, ctx->find(name));
  }

  const RootContextPtr& context() const noexcept { return ctx_; }
  std::size_t root_count() const noexcept { return ctx_ ? ctx_->size() : 0; }
  /// Coefficient of the product of the roots in `mask`.
  const RationalFunction& component(unsigned mask) const;
  bool is_zero() const noexcept;
  bool is_rational() const noexcept;  // only the empty-subset component is nonzero
  RationalFunction rational_part() const { return comps_[0]; }

  RootExtElement operator-() const;
  RootExtElement inverse() const;
  RootExtElement& operator+=(const RootExtElement& o);
  RootExtElement& operator-=(const RootExtElement& o);
  RootExtElement& operator*=(const RootExtElement& o);
  RootExtElement& operator/=(const RootExtElement& o);
  friend RootExtElement operator+(RootExtElement a, const RootExtElement& b) { return a += b; }
  friend RootExtElement operator-(RootExtElement a, const RootExtElement& b) { return a -= b; }
  friend RootExtElement operator*(const RootExtElement& a, const RootExtElement& b);
  friend RootExtElement operator/(RootExtElement a, const RootExtElement& b) { return a /= b; }
  friend bool operator==(const RootExtElement& a, const RootExtElement& b);

  /// Conjugate under r_k -> -r_k.
  RootExtElement conjugate(std::size_t k) const;
  /// Applies a map to every coefficient (e.g. a substitution fixing the roots).
  template <class F>
  RootExtElement map_components(F&& f) const {
    std::vector<RationalFunction> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(f(c));
    return RootExtElement(ctx_, std::move(out));
  }

  std::string str() const;

 private:
  void adopt(const RootContextPtr& ctx);

  RootContextPtr ctx_;
  std::vector<RationalFunction> comps_;
};

/// Derivative; for a root r with r^2 = g, d r = r * dg / (2 g).
RootExtElement derivative(const RootExtElement& f, Var v);
RootExtElement derivative(const RootExtElement& f, std::string_view var);

/// `branch` assigns a value to every root symbol of f's context by name; each
/// must square to the root's declared value at the point (relative tolerance
/// 1e-8), otherwise BranchError.
std::complex<double> eval_complex(const RootExtElement& f, const ComplexPoint& point,
                                  const std::map<std::string, std::complex<double>>& branch);

inline std::ostream& operator<<(std::ostream& os, const RootExtElement& f) { return os << f.str(); }

}  // namespace pvi::field
