#include "pvi/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "pvi/errors.hpp"

namespace pvi::numeric {

using field::Var;
using hamiltonian::ParamVec;
using hamiltonian::Repr;

namespace {

using State = std::array<cplx, 2>;

// Dormand-Prince 5(4) tableau, FSAL.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms)
    for (int i = 0; i < 2; ++i) out[i] += h * c * (*k)[i];
  return out;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Distance from z to the segment [a, b].
double segment_distance(cplx z, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0) return std::abs(z - a);
  const double s = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + s * d));
}

std::string fmt(cplx t) {
  std::ostringstream os;
  os << std::setprecision(6) << t.real() << (t.imag() < 0 ? "-" : "+") << std::abs(t.imag()) << "i";
  return os.str();
}

void check_guard(const PhasePoint& x, double guard) {
  if (!finite(x.q) || !finite(x.p))
    throw IntegrationError(IntegrationError::Kind::singularity, "non-finite state near t = " + fmt(x.t));
  if (std::abs(x.q) < guard || std::abs(x.q - 1.0) < guard || std::abs(x.q - x.t) < guard)
    throw IntegrationError(IntegrationError::Kind::singularity, "q within guard distance of {0, 1, t} at t = " + fmt(x.t));
  if (std::abs(x.q) > 1 / guard)
    throw IntegrationError(IntegrationError::Kind::singularity, "q approaching a pole at t = " + fmt(x.t));
}

std::array<cplx, 5> kappa_values(const ParamVec& pv) {
  const auto k = hamiltonian::convert(pv, Repr::kappa).complex_values();
  return {k[0], k[1], k[2], k[3], k[4]};
}

}  // namespace

std::array<cplx, 2> hamiltonian_rhs(const std::array<cplx, 5>& kappa, const PhasePoint& x) {
  const auto& [k0, k1, kt, kinf, rho] = kappa;
  const cplx q = x.q, p = x.p, t = x.t;
  const cplx tt = t * (t - 1.0);
  const cplx dq = 2.0 * p * q * (q - 1.0) * (q - t) -
                  (k0 * (q - 1.0) * (q - t) + k1 * q * (q - t) + (kt - 1.0) * q * (q - 1.0));
  const cplx dp = -p * p * (3.0 * q * q - 2.0 * (1.0 + t) * q + t) +
                  p * (2.0 * (k0 + k1 + kt - 1.0) * q - k0 * (1.0 + t) - k1 * t - kt + 1.0) - rho * (kinf + rho);
  return {dq / tt, dp / tt};
}

Trajectory integrate(const ParamVec& pv, const PhasePoint& start, cplx t_end, double rel_tol,
                     const IntegrateOptions& opts) {
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");
  if (opts.samples < 2) throw std::invalid_argument("at least two samples are required");
  Trajectory traj;
  traj.params = hamiltonian::convert(pv, Repr::alpha);
  traj.info.rel_tol = rel_tol;
  traj.info.guard = opts.guard;
  check_guard(start, opts.guard);
  if (t_end == start.t) {
    traj.samples = {start};
    traj.err = {0.0};
    return traj;
  }
  for (double fixed : {0.0, 1.0})
    if (segment_distance(fixed, start.t, t_end) < opts.guard)
      throw IntegrationError(IntegrationError::Kind::singularity,
                             "path passes within guard distance of t = " + std::to_string(int(fixed)));

  const auto kappa = kappa_values(traj.params);
  const cplx t0 = start.t, span = t_end - t0;
  auto f = [&](double s, const State& y) {
    const PhasePoint x{t0 + s * span, y[0], y[1]};
    check_guard(x, opts.guard);
    ++traj.info.rhs_evals;
    const auto d = hamiltonian_rhs(kappa, x);
    return State{span * d[0], span * d[1]};
  };

  const int n = opts.samples;
  auto grid = [&](int k) { return double(k) / (n - 1); };
  traj.samples.reserve(n);
  traj.err.reserve(n);
  traj.samples.push_back(start);
  traj.err.push_back(0.0);

  State y{start.q, start.p};
  State k1 = f(0.0, y);
  double s = 0.0, h = 1e-2;
  int next = 1;
  while (next < n) {
    if (traj.info.accepted + traj.info.rejected >= opts.max_steps)
      throw IntegrationError(IntegrationError::Kind::step_limit, "step limit reached at t = " + fmt(t0 + s * span));
    if (h < opts.min_step)
      throw IntegrationError(IntegrationError::Kind::step_underflow, "step size underflow at t = " + fmt(t0 + s * span));
    const bool clipped = h >= grid(next) - s;
    const double h_try = h;
    if (clipped) h = grid(next) - s;
    const State k2 = f(s + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = f(s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = f(s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = f(s + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State k7 = f(s + h, y1);
    double err = 0, local = 0;
    for (int i = 0; i < 2; ++i) {
      const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = rel_tol * std::max({1.0, std::abs(y[i]), std::abs(y1[i])});
      err = std::max(err, std::abs(e) / sc);
      local = std::max(local, std::abs(e));
    }
    if (!std::isfinite(err)) {
      ++traj.info.rejected;
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      ++traj.info.accepted;
      s = clipped ? grid(next) : s + h;
      y = y1;
      k1 = k7;
      if (clipped) {
        const PhasePoint x{next == n - 1 ? t_end : t0 + s * span, y[0], y[1]};
        traj.samples.push_back(x);
        traj.err.push_back(local);
        ++next;
      }
    } else {
      ++traj.info.rejected;
    }
    const double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = (clipped && err <= 1.0 ? std::max(h, h_try) : h) * (err <= 1.0 ? fac : std::min(1.0, fac));
  }
  return traj;
}

ParamVec transform_params(const backlund::BirationalMap& m, const ParamVec& pv) {
  const auto a = hamiltonian::convert(pv, Repr::alpha).rationals();
  std::array<field::Rational, 4> out;
  for (int j = 1; j <= 4; ++j) {
    const auto c = m.roots[j].alpha_coords();
    field::Rational v = c[0];
    for (int k = 1; k <= 4; ++k) v += c[k] * a[k];
    out[j - 1] = v;
  }
  return ParamVec::alpha_from(out);
}

Trajectory transform_trajectory(const backlund::BirationalMap& m, const Trajectory& traj) {
  Trajectory out;
  out.params = transform_params(m, traj.params);
  out.err = traj.err;
  out.info = traj.info;
  const auto a = hamiltonian::convert(traj.params, Repr::alpha).complex_values();
  field::ComplexPoint pt = {{Var::a1, a[1]}, {Var::a2, a[2]}, {Var::a3, a[3]}, {Var::a4, a[4]}};
  out.samples.reserve(traj.samples.size());
  for (const auto& x : traj.samples) {
    pt[Var::q] = x.q;
    pt[Var::p] = x.p;
    pt[Var::t] = x.t;
    out.samples.push_back({field::eval_complex(m.t, pt), field::eval_complex(m.q, pt), field::eval_complex(m.p, pt)});
  }
  return out;
}

ResidualReport pvi_residual(const Trajectory& traj, int stride) {
  ResidualReport rep;
  const int n = int(traj.samples.size());
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  if (n < 4 * stride + 1) return rep;
  const auto c = hamiltonian::pvi_constants(traj.params).to_complex();
  const cplx dt = (traj.back().t - traj.front().t) / double(n - 1) * double(stride);
  for (int k = 2 * stride; k + 2 * stride < n; ++k) {
    auto y = [&](int j) { return traj.samples[k + j * stride].q; };
    const cplx y1 = (-y(2) + 8.0 * y(1) - 8.0 * y(-1) + y(-2)) / (12.0 * dt);
    const cplx y2 = (-y(2) + 16.0 * y(1) - 30.0 * y(0) + 16.0 * y(-1) - y(-2)) / (12.0 * dt * dt);
    const double r = std::abs(hamiltonian::pvi_residual(y(0), y1, y2, traj.samples[k].t, c));
    rep.max_abs = std::max(rep.max_abs, r);
    rep.max_rel = std::max(rep.max_rel, r / std::max(1.0, std::abs(y2)));
    ++rep.points;
  }
  return rep;
}

double endpoint_error(const PhasePoint& a, const PhasePoint& b) {
  const double scale = std::max({1.0, std::abs(a.q), std::abs(a.p)});
  return std::max(std::abs(a.q - b.q), std::abs(a.p - b.p)) / scale;
}

std::string to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << std::setprecision(17) << "t_re,t_im,q_re,q_im,p_re,p_im,err\n";
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& x = traj.samples[k];
    os << x.t.real() << ',' << x.t.imag() << ',' << x.q.real() << ',' << x.q.imag() << ',' << x.p.real() << ','
       << x.p.imag() << ',' << traj.err[k] << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const Trajectory& traj) {
  nlohmann::json j;
  auto& alpha = j["alpha"] = nlohmann::json::array();
  for (const auto& a : traj.params.rationals()) alpha.push_back(a.get_str());
  j["rel_tol"] = traj.info.rel_tol;
  j["guard"] = traj.info.guard;
  j["accepted_steps"] = traj.info.accepted;
  j["rejected_steps"] = traj.info.rejected;
  j["rhs_evals"] = traj.info.rhs_evals;
  auto& rows = j["samples"] = nlohmann::json::array();
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& x = traj.samples[k];
    rows.push_back({{"t_re", x.t.real()}, {"t_im", x.t.imag()}, {"q_re", x.q.real()}, {"q_im", x.q.imag()},
                    {"p_re", x.p.real()}, {"p_im", x.p.imag()}, {"err", traj.err[k]}});
  }
  return j;
}

nlohmann::json SampleReport::to_json() const {
  return {{"trials", trials},        {"evaluated", evaluated}, {"rejected", rejected}, {"tol", tol},
          {"max_deviation", max_deviation}, {"pass", pass}, {"failures", failures}};
}

SampleReport sample_identity(const SampledFn& lhs, const SampledFn& rhs,
                             const std::vector<field::RootContextPtr>& contexts, int trials, double tol,
                             std::uint64_t seed) {
  SampleReport rep;
  rep.trials = trials;
  rep.tol = tol;
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num(-97, 97), den(1, 89);
  auto draw = [&] {
    const double re = double(num(gen)) / den(gen);
    const double im = double(num(gen)) / den(gen);
    return cplx(re, im);
  };
  for (int attempt = 0; rep.evaluated < trials && attempt < 50 * trials + 50; ++attempt) {
    Sample smp;
    for (Var v : field::kAllVars) smp.point[v] = draw();
    try {
      bool near_pole = false;
      for (const auto& ctx : contexts) {
        if (!ctx) continue;
        for (const auto& r : ctx->roots()) {
          const cplx sq = field::eval_complex(r.square, smp.point);
          if (std::abs(sq) < 1e-8) near_pole = true;
          smp.branch.emplace(r.name, std::sqrt(sq));
        }
      }
      if (near_pole) {
        ++rep.rejected;
        continue;
      }
      const cplx l = lhs(smp), r = rhs(smp);
      if (!finite(l) || !finite(r)) {
        ++rep.rejected;
        continue;
      }
      const double dev = std::abs(l - r) / std::max({1.0, std::abs(l), std::abs(r)});
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > tol) {
        std::ostringstream os;
        os << "trial " << rep.evaluated << ": deviation " << dev;
        rep.failures.push_back(os.str());
      }
      ++rep.evaluated;
    } catch (const PoleError&) {
      ++rep.rejected;
    } catch (const BranchError&) {
      ++rep.rejected;
    }
  }
  if (rep.evaluated < trials) rep.failures.push_back("too many rejected draws");
  rep.pass = rep.failures.empty();
  return rep;
}

SampleReport sample_identity(const field::RootExtElement& lhs, const field::RootExtElement& rhs, int trials,
                             double tol, std::uint64_t seed) {
  auto near_pole = [](const field::RootExtElement& f, const field::ComplexPoint& point) {
    std::array<cplx, field::kNumVars> pt{};
    for (const auto& [v, z] : point) pt[field::index(v)] = z;
    for (unsigned mask = 0; mask < (1u << f.root_count()); ++mask)
      if (!f.component(mask).is_zero() && std::abs(field::evaluate(f.component(mask).den(), pt)) < 1e-8) return true;
    return false;
  };
  auto side = [&](const field::RootExtElement& f) {
    return [&f, near_pole](const Sample& s) {
      if (near_pole(f, s.point)) return cplx(NAN, NAN);
      return field::eval_complex(f, s.point, s.branch);
    };
  };
  return sample_identity(side(lhs), side(rhs), {lhs.context(), rhs.context()}, trials, tol, seed);
}

}  // namespace pvi::numeric
