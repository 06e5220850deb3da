#pragma once

// Numerical integration of the Hamiltonian system, trajectory-level checks of
// Backlund transformations, and random-point sampling of identities.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvi/backlund.hpp"
#include "pvi/field/root_ext.hpp"
#include "pvi/hamiltonian.hpp"

namespace pvi::numeric {

using cplx = std::complex<double>;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct PhasePoint {
  cplx t, q, p;
};

struct IntegratorInfo {
  double rel_tol = 1e-9;
  double guard = 1e-3;
  int accepted = 0;
  int rejected = 0;
  int rhs_evals = 0;
};

/// Samples lie on a uniform grid of the straight path from t_start to t_end
/// (every grid point is a step endpoint);
/// err[k] is the local error estimate of the step that produced sample k.
struct Trajectory {
  hamiltonian::ParamVec params;  // alpha form, exact
  std::vector<PhasePoint> samples;
  std::vector<double> err;
  IntegratorInfo info;

  const PhasePoint& front() const { return samples.front(); }
  const PhasePoint& back() const { return samples.back(); }
};

struct IntegrateOptions {
  double guard = 1e-3;
  int max_steps = 200000;
  int samples = 101;
  double min_step = 1e-13;  // in units of the path parameter s in [0, 1]
};

/// q' and p' of the expanded system at (t, q, p); kappa = (k0, k1, kt, kinf, rho).
std::array<cplx, 2> hamiltonian_rhs(const std::array<cplx, 5>& kappa, const PhasePoint& x);

/// DOPRI5(4) along t = t0 + s (t_end - t0), s in [0, 1]. q within `guard` of
/// {0, 1, t} or beyond 1/guard counts as a singularity. Throws
/// pvi::IntegrationError (singularity, step_underflow, step_limit).
Trajectory integrate(const hamiltonian::ParamVec& pv, const PhasePoint& start, cplx t_end, double rel_tol,
                     const IntegrateOptions& opts = {});

/// Applies m to every sample and to the parameters. Throws pvi::PoleError.
Trajectory transform_trajectory(const backlund::BirationalMap& m, const Trajectory& traj);

/// m(a1..a4) at the exact parameters of pv, as an alpha-form ParamVec.
hamiltonian::ParamVec transform_params(const backlund::BirationalMap& m, const hamiltonian::ParamVec& pv);

struct ResidualReport {
  double max_abs = 0;  // max |y'' - RHS(y, y', t)|
  double max_rel = 0;  // max of the same divided by max(1, |y''|)
  int points = 0;
};

/// P_VI residual at interior samples, with y' and y'' from five-point central
/// differences of the samples (stencil width `stride` grid steps).
ResidualReport pvi_residual(const Trajectory& traj, int stride = 1);

/// Relative endpoint distance max(|dq|, |dp|) / max(1, |q|, |p|).
double endpoint_error(const PhasePoint& a, const PhasePoint& b);

std::string to_csv(const Trajectory& traj);
nlohmann::json to_json(const Trajectory& traj);

/// A random point with values for every ring variable and every root symbol.
struct Sample {
  field::ComplexPoint point;
  std::map<std::string, cplx> branch;
};

struct SampleReport {
  int trials = 0;
  int evaluated = 0;
  int rejected = 0;
  double tol = 0;
  double max_deviation = 0;  // |l - r| / max(1, |l|, |r|)
  bool pass = false;
  std::vector<std::string> failures;
  nlohmann::json to_json() const;
};

using SampledFn = std::function<cplx(const Sample&)>;

/// Draws points with rational real and imaginary parts. Draws that hit a pole
/// (PoleError, BranchError, non-finite or a near-zero denominator) are redrawn.
/// Root symbols of `contexts` get the principal square root of their square.
SampleReport sample_identity(const SampledFn& lhs, const SampledFn& rhs,
                             const std::vector<field::RootContextPtr>& contexts, int trials, double tol,
                             std::uint64_t seed = kDefaultSeed);
SampleReport sample_identity(const field::RootExtElement& lhs, const field::RootExtElement& rhs, int trials,
                             double tol, std::uint64_t seed = kDefaultSeed);

}  // namespace pvi::numeric
