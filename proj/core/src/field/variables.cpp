#include "pvi/field/variables.hpp"

namespace pvi::field {

std::string_view name(Var v) noexcept {
  switch (v) {
    case Var::a1: return "a1";
    case Var::a2: return "a2";
    case Var::a3: return "a3";
    case Var::a4: return "a4";
    case Var::q: return "q";
    case Var::p: return "p";
    case Var::t: return "t";
    case Var::z: return "z";
    case Var::x: return "x";
  }
  return "?";
}

std::optional<Var> parse_var(std::string_view s) noexcept {
  // "alpha3" -> "a3"
  if (s.size() == 6 && s.starts_with("alpha")) s.remove_prefix(4);
  for (Var v : kAllVars)
    if (name(v) == s) return v;
  return std::nullopt;
}

}  // namespace pvi::field
