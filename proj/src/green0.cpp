#include "sgreen/green0.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgreen/errors.hpp"

namespace sgreen {

HomogeneousPair solve_pair(const ProblemSpec& problem, const IntegrationOptions& options) {
  return {solve_homogeneous(problem, Side::Lower, options),
          solve_homogeneous(problem, Side::Upper, options)};
}

cplx wronskian(const HomogeneousPair& pair, double x) {
  ScaledState a = pair.y1.state(x);
  ScaledState b = pair.y2.state(x);
  return (a.y * b.dy - a.dy * b.y) * std::exp(a.log_scale + b.log_scale);
}

ReducedConstant reduced_constant(const HomogeneousPair& pair, const ProbeOptions& options) {
  const ProblemSpec& prob = pair.problem();
  const Interval dom = prob.domain();
  const std::size_t n = std::max<std::size_t>(options.points, 3);

  ReducedConstant rc;
  rc.x_ref = std::clamp(0.0, dom.lo, dom.hi);

  std::vector<double> xs(n + 1);
  const double lo = dom.lo - 1.0;
  const double hi = dom.hi + 1.0;
  for (std::size_t j = 0; j < n; ++j) xs[j] = lo + (hi - lo) * double(j) / double(n - 1);
  xs[n] = rc.x_ref;
  auto s1 = pair.y1.sample(xs);
  auto s2 = pair.y2.sample(xs);
  rc.log_ref1 = s1[n].log_scale;
  rc.log_ref2 = s2[n].log_scale;

  std::vector<cplx> cs;
  cs.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    cplx delta = s1[j].y * s2[j].dy - s1[j].dy * s2[j].y;
    double norm = std::abs(s1[j].y) * std::abs(s2[j].dy) + std::abs(s1[j].dy) * std::abs(s2[j].y);
    double ratio = norm > 0.0 ? std::abs(delta) / norm : 0.0;
    rc.dependence = std::min(rc.dependence, ratio);
    if (ratio < options.dependence_tol) {
      std::ostringstream msg;
      msg << "Wronskian vanishes (normalised " << ratio << " at x = " << xs[j]
          << "); omega is at or near a bound state";
      throw DependentSolutions(msg.str());
    }
    double shift = s1[j].log_scale + s2[j].log_scale - rc.log_ref1 - rc.log_ref2;
    cs.push_back(prob.mass(xs[j]) / delta * std::exp(-shift));
  }

  cplx mean = 0.0;
  for (cplx c : cs) mean += c;
  mean /= double(cs.size());
  double var = 0.0;
  for (cplx c : cs) var += std::norm(c - mean);
  rc.spread = std::sqrt(var / double(cs.size())) / std::abs(mean);
  rc.scaled = mean;
  if (!(rc.spread <= options.spread_tol)) {
    std::ostringstream msg;
    msg << "m/Wronskian varies by " << rc.spread << " (relative) across the domain";
    throw NonConstantReduced(msg.str());
  }
  return rc;
}

G0Evaluator::G0Evaluator(HomogeneousPair pair, const ProbeOptions& options)
    : pair_(std::move(pair)), constant_(reduced_constant(pair_, options)) {
  origin_ = point(0.0);
  const Point& o = origin_;
  const cplx c = constant_.scaled;
  boundary_.g00 = value(o, o);
  boundary_.dL = c * 0.5 * (o.dy1 * o.y2 + o.dy2 * o.y1);
  boundary_.dR = c * 0.5 * (o.y1 * o.dy2 + o.y2 * o.dy1);
}

G0Evaluator::Point G0Evaluator::make_point(double x, const ScaledState& s1,
                                           const ScaledState& s2) const {
  const double f1 = std::exp(s1.log_scale - constant_.log_ref1);
  const double f2 = std::exp(s2.log_scale - constant_.log_ref2);
  return {x, s1.y * f1, s1.dy * f1, s2.y * f2, s2.dy * f2};
}

G0Evaluator::Point G0Evaluator::point(double x) const {
  return make_point(x, pair_.y1.state(x), pair_.y2.state(x));
}

std::vector<G0Evaluator::Point> G0Evaluator::points(std::span<const double> xs) const {
  auto s1 = pair_.y1.sample(xs);
  auto s2 = pair_.y2.sample(xs);
  std::vector<Point> out;
  out.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out.push_back(make_point(xs[j], s1[j], s2[j]));
  return out;
}

cplx G0Evaluator::value(const Point& a, const Point& b) const {
  const double below = step_half(b.x - a.x);
  const double above = step_half(a.x - b.x);
  cplx acc = 0.0;
  if (below != 0.0) acc += below * (a.y1 * b.y2);
  if (above != 0.0) acc += above * (a.y2 * b.y1);
  return constant_.scaled * acc;
}

cplx G0Evaluator::d_left(const Point& a, const Point& b) const {
  const double below = step_half(b.x - a.x);
  const double above = step_half(a.x - b.x);
  cplx acc = 0.0;
  if (below != 0.0) acc += below * (a.dy1 * b.y2);
  if (above != 0.0) acc += above * (a.dy2 * b.y1);
  return constant_.scaled * acc;
}

cplx G0Evaluator::d_right(const Point& a, const Point& b) const {
  const double below = step_half(b.x - a.x);
  const double above = step_half(a.x - b.x);
  cplx acc = 0.0;
  if (below != 0.0) acc += below * (a.y1 * b.dy2);
  if (above != 0.0) acc += above * (a.y2 * b.dy1);
  return constant_.scaled * acc;
}

G0Evaluator g0(const HomogeneousPair& pair, const ProbeOptions& options) {
  return G0Evaluator(pair, options);
}

G0Evaluator build_g0(const ProblemSpec& problem, const IntegrationOptions& integration,
                     const ProbeOptions& probes) {
  return G0Evaluator(solve_pair(problem, integration), probes);
}

G0Partials g0_partials(const HomogeneousPair& pair, const ProbeOptions& options) {
  auto g = std::make_shared<const G0Evaluator>(pair, options);
  return {[g](double x, double xp) { return g->d_left(x, xp); },
          [g](double x, double xp) { return g->d_right(x, xp); }, g->boundary()};
}

}  // namespace sgreen
