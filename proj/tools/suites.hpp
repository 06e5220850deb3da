#pragma once

// Named verification suites shared by the `pvi` tool and the acceptance gate.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvi/hamiltonian.hpp"
#include "pvi/numeric.hpp"
#include "pvi/weyl.hpp"

namespace pvi::suites {

struct Entry {
  std::string check;
  bool pass = false;
  std::string detail;
  std::string ref;  // module.operation that produced the value
};

struct SuiteResult {
  std::string suite;
  bool mutated = false;
  std::vector<Entry> entries;

  bool pass() const;
  int passed() const;
  /// One JSON object per entry.
  std::vector<nlohmann::json> json_lines() const;
};

struct SuiteOptions {
  bool mutate = false;  // apply one seeded single-constant corruption
  std::uint64_t seed = numeric::kDefaultSeed;
  int trials = 100;
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);
/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts = {});

/// Transform a trajectory by one generator and compare with direct
/// re-integration under the transformed parameters.
struct BtCheck {
  weyl::Gen gen;
  double endpoint_error = 0;
  double residual_original = 0;
  double residual_transformed = 0;
  double residual_direct = 0;
  bool pass(double endpoint_tol, double residual_tol) const;
  nlohmann::json to_json() const;
};

BtCheck bt_check(weyl::Gen g, const hamiltonian::ParamVec& pv, const numeric::PhasePoint& start,
                 std::complex<double> t_end, double rel_tol, bool mutate = false);

}  // namespace pvi::suites
