#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pvi/backlund.hpp"
#include "pvi/errors.hpp"
#include "pvi/lax.hpp"
#include "pvi/numeric.hpp"
#include "suites.hpp"

namespace {

using pvi::field::Rational;
using pvi::hamiltonian::ParamVec;

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> alpha;
  std::optional<std::string> q, p, t, t_end;
  double rel_tol = 1e-9;
  int trials = 100;
  std::uint64_t seed = pvi::numeric::kDefaultSeed;
  std::string out;
  std::string format;
  bool mutate = false;
  // subcommand arguments
  std::string suite, word, gen, which = "M";
  int steps = 3;
  int samples = 101;
  bool symbolic = false;
};

Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    if (r.get_den() == 0) throw UsageError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not an exact rational: '" + s + "'");
  }
}

// "re" or "re,im", both exact rationals.
std::complex<double> parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return parse_rational(s).get_d();
  return {parse_rational(s.substr(0, comma)).get_d(), parse_rational(s.substr(comma + 1)).get_d()};
}

std::array<Rational, 4> alpha_of(const Config& c) {
  if (c.alpha.size() != 4) throw UsageError("--alpha takes exactly four values a1 a2 a3 a4");
  return {parse_rational(c.alpha[0]), parse_rational(c.alpha[1]), parse_rational(c.alpha[2]), parse_rational(c.alpha[3])};
}

const std::string& required(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string format_or(const Config& c, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("format '" + f + "' is not supported here");
}

int cmd_verify(const Config& c) {
  if (!pvi::suites::is_suite(c.suite)) {
    std::string names;
    for (const auto& n : pvi::suites::suite_names()) names += " " + n;
    throw UsageError("unknown suite '" + c.suite + "'; available:" + names);
  }
  const auto fmt = format_or(c, "json", {"json", "text"});
  pvi::suites::SuiteOptions opts;
  opts.mutate = c.mutate;
  opts.seed = c.seed;
  opts.trials = c.trials;
  const auto r = pvi::suites::run_suite(c.suite, opts);
  Output out(c.out);
  if (fmt == "json") {
    for (const auto& line : r.json_lines()) out.os() << line.dump() << '\n';
    out.os() << nlohmann::json{{"suite", r.suite}, {"summary", true}, {"pass", r.pass()},
                               {"passed", r.passed()}, {"total", r.entries.size()}}
                    .dump()
             << '\n';
  } else {
    for (const auto& e : r.entries)
      out.os() << (e.pass ? "PASS " : "FAIL ") << e.check << (e.detail.empty() ? "" : "  [" + e.detail + "]") << '\n';
    out.os() << r.suite << ": " << r.passed() << "/" << r.entries.size() << (r.pass() ? " pass" : " FAIL") << '\n';
  }
  return r.pass() ? kOk : kFail;
}

nlohmann::json shifts(const pvi::backlund::BirationalMap& m) {
  nlohmann::json s = nlohmann::json::array();
  for (int j = 0; j < 5; ++j) {
    const auto d = m.roots[j] - pvi::weyl::simple_roots()[j];
    if (!d.is_constant()) return nullptr;
    s.push_back(d.c.get_str());
  }
  return s;
}

int cmd_apply(const Config& c) {
  const auto w = pvi::weyl::parse_word(c.word);
  const bool numeric = !c.alpha.empty() || c.q || c.p || c.t;
  Output out(c.out);
  if (!numeric) {
    const auto m = pvi::backlund::word_map(w);
    auto j = m.to_json();
    j["word"] = pvi::weyl::to_string(w);
    j["shift"] = shifts(m);
    out.os() << j.dump() << '\n';
    return kOk;
  }
  pvi::backlund::ExactPoint x{alpha_of(c), parse_rational(required(c.q, "--q")), parse_rational(required(c.p, "--p")),
                              parse_rational(required(c.t, "--t"))};
  const auto y = pvi::backlund::word_at(w, x);
  const auto alpha = ParamVec::alpha_from(y.a).rationals();
  nlohmann::json j = {{"word", pvi::weyl::to_string(w)}, {"q", y.q.get_str()}, {"p", y.p.get_str()}, {"t", y.t.get_str()}};
  for (const auto& a : alpha) j["alpha"].push_back(a.get_str());
  out.os() << j.dump() << '\n';
  return kOk;
}

pvi::numeric::PhasePoint start_of(const Config& c) {
  return {parse_complex(required(c.t, "--t")), parse_complex(required(c.q, "--q")), parse_complex(required(c.p, "--p"))};
}

int cmd_integrate(const Config& c) {
  const auto fmt = format_or(c, "csv", {"csv", "json", "text"});
  const auto pv = ParamVec::alpha_from(alpha_of(c));
  pvi::numeric::IntegrateOptions opts;
  opts.samples = c.samples;
  const auto traj = pvi::numeric::integrate(pv, start_of(c), parse_complex(required(c.t_end, "--t-end")), c.rel_tol, opts);
  Output out(c.out);
  if (fmt == "csv") {
    out.os() << pvi::numeric::to_csv(traj);
  } else if (fmt == "json") {
    out.os() << pvi::numeric::to_json(traj).dump() << '\n';
  } else {
    const auto& e = traj.back();
    out.os() << "t = " << e.t << "  q = " << e.q << "  p = " << e.p << "\n"
             << "steps " << traj.info.accepted << " accepted, " << traj.info.rejected << " rejected\n";
  }
  return kOk;
}

int cmd_bt_check(const Config& c) {
  const auto fmt = format_or(c, "json", {"json", "text"});
  const auto pv = ParamVec::alpha_from(alpha_of(c));
  std::vector<pvi::weyl::Gen> gens;
  if (c.gen.empty() || c.gen == "all") {
    gens.assign(pvi::weyl::kAllGens.begin(), pvi::weyl::kAllGens.end());
  } else {
    const auto w = pvi::weyl::parse_word(c.gen);
    if (w.size() != 1) throw UsageError("--gen takes a single generator");
    gens = w;
  }
  const auto t_end = parse_complex(required(c.t_end, "--t-end"));
  Output out(c.out);
  bool ok = true;
  for (auto g : gens) {
    const auto r = pvi::suites::bt_check(g, pv, start_of(c), t_end, c.rel_tol, c.mutate);
    const bool pass = r.pass(1e-6, 1e-6);
    ok = ok && pass;
    if (fmt == "json") {
      auto j = r.to_json();
      j["pass"] = pass;
      out.os() << j.dump() << '\n';
    } else {
      out.os() << (pass ? "PASS " : "FAIL ") << pvi::weyl::name(g) << "  endpoint " << r.endpoint_error
               << "  residual " << std::max({r.residual_original, r.residual_transformed, r.residual_direct}) << '\n';
    }
  }
  return ok ? kOk : kFail;
}

int cmd_orbit(const Config& c) {
  const auto fmt = format_or(c, "json", {"json", "text"});
  if (c.steps < 0) throw UsageError("--steps must be non-negative");
  const auto w = pvi::weyl::parse_word(c.word);
  std::optional<std::array<Rational, 4>> a;
  if (!c.alpha.empty()) a = alpha_of(c);
  Output out(c.out);
  auto roots = pvi::weyl::simple_roots();
  for (int k = 0; k <= c.steps; ++k) {
    std::vector<std::string> vals;
    for (const auto& f : roots) {
      if (a) {
        const auto m = f.alpha_coords();
        Rational v = m[0];
        for (int i = 1; i <= 4; ++i) v += m[i] * (*a)[i - 1];
        vals.push_back(v.get_str());
      } else {
        vals.push_back(f.str());
      }
    }
    if (fmt == "json") {
      out.os() << nlohmann::json{{"step", k}, {"alpha", vals}}.dump() << '\n';
    } else {
      out.os() << k << ":";
      for (const auto& v : vals) out.os() << "  " << v;
      out.os() << '\n';
    }
    roots = pvi::weyl::apply_word(w, roots);
  }
  return kOk;
}

pvi::lax::Matrix named_matrix(const std::string& which) {
  using namespace pvi::lax;
  if (which == "M") return build_M();
  if (which == "B") return build_B();
  if (which == "J") return J();
  if (which.size() == 2 && which[1] >= '0' && which[1] <= '4') {
    const int k = which[1] - '0';
    if (which[0] == 'E') return E(k);
    if (which[0] == 'F') return F(k);
    if (which[0] == 'H') return H(k);
    if (which[0] == 'G') return gauge_G(k);
    if (which[0] == 'S') return weyl_lift_S(k);
  }
  throw UsageError("unknown matrix '" + which + "' (M, B, J, E0..E4, F0..F4, H0..H4, G0..G4, S0..S4, Gamma1, Gamma3, Gamma4)");
}

int cmd_matrices(const Config& c) {
  const auto fmt = format_or(c, "text", {"text", "json"});
  Output out(c.out);
  auto emit = [&](const auto& m) {
    if (fmt == "json")
      out.os() << pvi::lax::to_json(m).dump() << '\n';
    else
      out.os() << pvi::lax::to_text(m);
  };
  if (c.which.rfind("Gamma", 0) == 0) {
    const std::string k = c.which.substr(5);
    if (k != "1" && k != "3" && k != "4") throw UsageError("Gamma index must be 1, 3 or 4");
    emit(pvi::lax::gauge_Gamma(std::stoi(k)));
    return kOk;
  }
  auto m = named_matrix(c.which);
  const bool values = !c.alpha.empty() || c.q || c.p || c.t;
  if (values && c.symbolic) throw UsageError("--symbolic cannot be combined with values");
  if (values) {
    using pvi::field::Var;
    const auto a = alpha_of(c);
    pvi::field::Substitution sub = {{Var::a1, a[0]}, {Var::a2, a[1]}, {Var::a3, a[2]}, {Var::a4, a[3]}};
    if (c.q) sub[Var::q] = parse_rational(*c.q);
    if (c.p) sub[Var::p] = parse_rational(*c.p);
    if (c.t) sub[Var::t] = parse_rational(*c.t);
    m = m.map([&](const pvi::field::RationalFunction& f) { return pvi::field::substitute(f, sub); });
  }
  emit(m);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sixth Painleve equation: Hamiltonian system, Backlund transformations and Lax pair"};
  app.require_subcommand(1);
  Config c;

  auto params = [&](CLI::App* s) {
    s->add_option("--alpha", c.alpha, "a1 a2 a3 a4 as exact rationals (alpha_0 is completed)")->expected(4);
    s->add_option("--q", c.q, "q (rational, or re,im)");
    s->add_option("--p", c.p, "p (rational, or re,im)");
    s->add_option("--t", c.t, "t (rational, or re,im)");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "write output to a file");
    s->add_option("--format", c.format, "json | csv | text");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--trials", c.trials, "random trials");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", c.suite, "suite name")->required();
  verify->add_flag("--mutate", c.mutate, "apply a seeded corruption; the suite must then fail");
  common(verify);

  auto* apply = app.add_subcommand("apply", "apply a word of generators");
  apply->add_option("word", c.word, "e.g. \"s0 s2\", \"T1\"; empty for the identity");
  params(apply);
  common(apply);

  auto* integ = app.add_subcommand("integrate", "integrate the Hamiltonian system");
  params(integ);
  integ->add_option("--t-end", c.t_end, "end time (rational, or re,im)");
  integ->add_option("--rel-tol", c.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
  integ->add_option("--samples", c.samples, "output samples")->check(CLI::Range(2, 1000000));
  common(integ);

  auto* bt = app.add_subcommand("bt-check", "transform a trajectory and compare with re-integration");
  bt->add_option("--gen", c.gen, "generator (default: all)");
  params(bt);
  bt->add_option("--t-end", c.t_end, "end time");
  bt->add_option("--rel-tol", c.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
  bt->add_flag("--mutate", c.mutate, "corrupt the map; the check must then fail");
  common(bt);

  auto* orbit = app.add_subcommand("orbit", "parameters along repeated application of a word");
  orbit->add_option("--word", c.word, "word, e.g. T1")->required();
  orbit->add_option("--steps", c.steps, "number of applications");
  orbit->add_option("--alpha", c.alpha, "a1 a2 a3 a4")->expected(4);
  common(orbit);

  auto* mats = app.add_subcommand("matrices", "print loop-algebra matrices");
  mats->add_option("--which", c.which, "M, B, J, E0..E4, F0..F4, H0..H4, G0..G4, S0..S4, Gamma1/3/4");
  mats->add_flag("--symbolic", c.symbolic, "print symbolic entries (default)");
  params(mats);
  common(mats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(c);
    if (*apply) return cmd_apply(c);
    if (*integ) return cmd_integrate(c);
    if (*bt) return cmd_bt_check(c);
    if (*orbit) return cmd_orbit(c);
    if (*mats) return cmd_matrices(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const pvi::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
