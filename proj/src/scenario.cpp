#include "sgreen/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "sgreen/errors.hpp"
#include "sgreen/regularization.hpp"
#include "sgreen/version.hpp"
#include "sgreen/wavepacket.hpp"

namespace sgreen {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return x;
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void say(const RunOptions& o, const std::string& msg) {
  if (o.log) o.log(msg);
}

SingularParams singular_of(const ScenarioConfig& c) {
  return {c.singular.alpha, c.singular.beta, c.singular.P};
}

ResultTable green_table(const ScenarioConfig& c, bool dressed, const RunOptions& o) {
  ProblemSpec p = make_problem(c);
  G0Evaluator g0 = build_g0(p);
  say(o, "reduced constant spread " + format_double(g0.constant().spread));
  DressedGreen g = dressed ? dress(g0, singular_of(c)) : bare(g0);
  if (dressed) say(o, "dressing: " + to_string(g.provenance()));
  auto xs = linspace(c.grid.xmin, c.grid.xmax, c.grid.n);
  auto m = g.matrix(xs, xs);
  ResultTable t;
  t.columns = {"x", "x_prime", "re_g", "im_g"};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      cplx v = m[i * xs.size() + j];
      t.add_row({xs[i], xs[j], v.real(), v.imag()});
    }
  return t;
}

ResultTable scatter_table(const ScenarioConfig& c, const RunOptions& o) {
  ProblemSpec p = make_problem(c);
  DressedGreen g = dress(build_g0(p), singular_of(c));
  Interval w = interaction_window(p);
  double x = c.scatter.x.value_or(w.hi + 1.0);
  double xp = c.scatter.x_prime.value_or(w.lo - 1.0);
  say(o, "probes x = " + format_double(x) + ", x' = " + format_double(xp));
  ScatteringResult r = transmission_from_green(g, channel_of(p), x, xp);
  ResultTable t;
  t.columns = {"T", "R", "re_t", "im_t", "re_r", "im_r"};
  t.add_row({r.T, r.R, r.t.real(), r.t.imag(), r.r.real(), r.r.imag()});
  return t;
}

ResultTable wavepacket_table(const ScenarioConfig& c, const RunOptions& o) {
  ProblemSpec p = make_problem(c);
  const auto& pk = c.packet;
  WavePacket packet = WavePacket::gaussian(pk.x0, pk.k0, pk.sigma);
  SpectralOptions so;
  so.panels = pk.panels;
  so.support = pk.support;
  so.eta = pk.eta;
  so.threads = o.threads;

  ProblemSpec free;
  free.mass = MassProfile::constant(p.mass.left());
  free.potential = PotentialSpec::free(p.potential.left());
  free.margin = p.margin;
  const double duration = *std::max_element(pk.times.begin(), pk.times.end());
  auto cal_grid = covering_grid(packet, p.mass.left(), duration);
  Calibration cal = calibrate_propagator(GreenFamily(free, {}), packet, duration, cal_grid, so);
  say(o, "kernel constant " + format_double(cal.constant.real()) + " " +
             format_double(cal.constant.imag()) + ", norm drift " +
             format_double(cal.norm_drift));

  auto xs = linspace(c.grid.xmin, c.grid.xmax, c.grid.n);
  Propagation prop =
      propagate_wavepacket(GreenFamily(p, singular_of(c)), packet, pk.times, xs, cal.constant, so);
  ResultTable t;
  t.columns = {"t", "x", "re_psi", "im_psi", "prob"};
  for (std::size_t k = 0; k < prop.times.size(); ++k)
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cplx v = prop.psi[k][i];
      t.add_row({prop.times[k], xs[i], v.real(), v.imag(), std::norm(v)});
    }
  t.metadata.push_back("kernel constant: " + format_double(cal.constant.real()) + " " +
                       format_double(cal.constant.imag()));
  return t;
}

ResultTable scan_table(const ScenarioConfig& c, const RunOptions& o) {
  const auto& s = c.scan;
  ScanOptions so;
  so.shape = parse_shape(s.shape);
  so.cutoff = s.cutoff;
  so.mass = make_mass(c).left();
  so.layers_per_epsilon = s.layers_per_epsilon;
  so.threads = o.threads;
  const double energy = s.k * s.k / (2.0 * so.mass);
  ScanResult r = epsilon_scan(s.alpha, s.beta, energy, s.epsilons, so);
  ResultTable t = r.table();
  t.metadata.push_back("fitted exponent of T in epsilon: " + format_double(r.exponent));
  for (std::size_t i = 0; i < r.nonmonotone.size(); ++i)
    if (r.nonmonotone[i])
      t.metadata.push_back("non-monotone: T rises at epsilon = " + format_double(r.rows[i].epsilon));
  say(o, r.monotone() ? "scan monotone" : "scan has non-monotone rows");
  return t;
}

ResultTable validate_table(const ScenarioConfig& c, const RunOptions& o) {
  auto checks = invariant_suite(Frequency(c.frequency.re, c.frequency.im));
  std::vector<std::string> names, backgrounds;
  auto index = [](std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it != v.end()) return double(it - v.begin());
    v.push_back(s);
    return double(v.size() - 1);
  };
  ResultTable t;
  t.columns = {"check", "background", "value", "tolerance", "pass"};
  std::size_t failed = 0;
  for (const auto& ch : checks) {
    t.add_row({index(names, ch.name), index(backgrounds, ch.background), ch.value, ch.tolerance,
               ch.pass ? 1.0 : 0.0});
    if (!ch.pass) ++failed;
    say(o, (ch.pass ? "PASS " : "FAIL ") + ch.background + " " + ch.name + " " +
               format_double(ch.value));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    t.metadata.push_back("check " + std::to_string(i) + ": " + names[i]);
  for (std::size_t i = 0; i < backgrounds.size(); ++i)
    t.metadata.push_back("background " + std::to_string(i) + ": " + backgrounds[i]);
  t.metadata.push_back("failed checks: " + std::to_string(failed));
  return t;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

ScenarioConfig resolved(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioConfig c = config;
  if (options.eta) {
    c.frequency.im = *options.eta;
    c.packet.eta = *options.eta;
  }
  validate(c);
  return c;
}

ResultTable run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const ScenarioConfig c = resolved(config, options);
  ResultTable t;
  try {
    switch (c.scenario) {
      case Scenario::G0: t = green_table(c, false, options); break;
      case Scenario::Dress: t = green_table(c, true, options); break;
      case Scenario::Scatter: t = scatter_table(c, options); break;
      case Scenario::Wavepacket: t = wavepacket_table(c, options); break;
      case Scenario::Scan: t = scan_table(c, options); break;
      case Scenario::Validate: t = validate_table(c, options); break;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), e.category(), to_string(c.scenario) + ": " + e.what());
  }
  std::vector<std::string> meta = {std::string("artifact ") + kVersion,
                                   "generated " + timestamp(), "config:"};
  std::istringstream dump(dump_config(c));
  for (std::string line; std::getline(dump, line);) meta.push_back("  " + line);
  meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
  t.metadata = std::move(meta);
  return t;
}

std::vector<std::pair<std::string, ProblemSpec>> canonical_backgrounds(const Frequency& omega) {
  std::vector<std::pair<std::string, ProblemSpec>> out;
  ProblemSpec p;
  p.omega = omega;
  out.emplace_back("free", p);

  p.potential = PotentialSpec::harmonic(0.5, 4.0);
  out.emplace_back("harmonic", p);

  p.potential = PotentialSpec::linear_field(0.05, 5.0);
  out.emplace_back("linear-field", p);

  p.potential = PotentialSpec::free();
  p.mass = MassProfile::smooth(1.0, 1.5, 0.5, 1.0, 0.3, -0.5, 1.0);
  out.emplace_back("variable-mass", p);
  return out;
}

std::vector<InvariantCheck> invariant_suite(const Frequency& omega) {
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, const std::string& bg, double v, double tol) {
    out.push_back({std::move(name), bg, v, tol, v < tol});
  };
  const auto xs = linspace(-4.0, 4.0, 17);
  std::vector<double> right, left;
  for (double x : xs) (x > 0.0 ? right : left).push_back(x);
  left.pop_back();  // drop the origin itself

  for (const auto& [name, problem] : canonical_backgrounds(omega)) {
    HomogeneousPair pair = solve_pair(problem);
    G0Evaluator g(pair);
    add("reduced-constant-spread", name, g.constant().spread, 1e-8);

    auto m = bare(g).matrix(xs, xs);
    const double scale = max_abs(m);
    double asym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j)
        asym = std::max(asym, std::abs(m[i * xs.size() + j] - m[j * xs.size() + i]));
    add("symmetry", name, asym / scale, 1e-10);

    double jump = 0.0;
    for (double xp : xs) {
      const double h = 1e-7;
      cplx d = g.d_left(xp + h, xp) - g.d_left(xp - h, xp);
      double mx = problem.mass(xp);
      jump = std::max(jump, std::abs(d - mx) / mx);
    }
    add("derivative-jump", name, jump, 1e-6);

    HomogeneousPair scaled{pair.y1.rescaled(cplx(3.7, -1.2)), pair.y2.rescaled(cplx(4e-4, 2e-3))};
    auto m2 = bare(G0Evaluator(scaled)).matrix(xs, xs);
    double gauge = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) gauge = std::max(gauge, std::abs(m[i] - m2[i]));
    add("gauge-invariance", name, gauge / scale, 1e-12);

    double residual = 0.0;
    for (double x : xs) {
      // The 7-point stencil must not straddle a kink of the coefficients.
      const auto bps = problem.breakpoints();
      bool near = std::any_of(bps.begin(), bps.end(), [x](double b) { return std::abs(x - b) < 0.01; });
      if (!near)
        residual = std::max({residual, ode_residual(pair.y1, x), ode_residual(pair.y2, x)});
    }
    add("ode-residual", name, residual, 1e-6);

    DressedGreen lim = dress_delta_prime(g);
    std::vector<double> origin = {0.0};
    double cross = std::max({max_abs(lim.matrix(right, left)), max_abs(lim.matrix(left, right)),
                             max_abs(lim.matrix(origin, xs))});
    add("zero-transmission", name, cross / scale, 1e-12);

    auto a0 = dress(g, {0.0, 1.0, std::nullopt}).matrix(xs, xs);
    double spread = 0.0;
    for (double alpha : {1.0, 10.0}) {
      auto a = dress(g, {alpha, 0.7, std::nullopt}).matrix(xs, xs);
      for (std::size_t i = 0; i < a.size(); ++i) spread = std::max(spread, std::abs(a[i] - a0[i]));
    }
    add("alpha-independence", name, spread / scale, 1e-12);
  }
  return out;
}

}  // namespace sgreen
