#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pvi::field {

// Ring variables in monomial-order priority. a1..a4 are the simple affine
// roots alpha_1..alpha_4; alpha_0 is never a variable.
enum class Var : std::uint8_t { a1, a2, a3, a4, q, p, t, z, x };

inline constexpr std::size_t kNumVars = 9;

inline constexpr std::array<Var, kNumVars> kAllVars = {
    Var::a1, Var::a2, Var::a3, Var::a4, Var::q, Var::p, Var::t, Var::z, Var::x};

constexpr std::size_t index(Var v) noexcept { return static_cast<std::size_t>(v); }

std::string_view name(Var v) noexcept;

/// Accepts "a1".."a4" (also "alpha1".."alpha4"), q, p, t, z, x.
std::optional<Var> parse_var(std::string_view s) noexcept;

}  // namespace pvi::field
