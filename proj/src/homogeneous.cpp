#include "sgreen/homogeneous.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/numeric/odeint.hpp>

#include "sgreen/errors.hpp"

namespace sgreen {

namespace odeint = boost::numeric::odeint;

namespace {

// (y, p) with p = y'/m; both are continuous across jumps in v and m.
using State = std::array<cplx, 2>;

struct Cursor {
  State s;
  double x = 0.0;
  double log_scale = 0.0;
  double h = 0.0;  // step-size hint, signed
};

void renormalize(Cursor& c) {
  double mag = std::max(std::abs(c.s[0]), std::abs(c.s[1]));
  if (mag == 0.0 || !std::isfinite(mag)) return;
  if (mag > 1e16 || mag < 1e-16) {
    int e = std::ilogb(mag);
    c.s[0] = std::ldexp(c.s[0].real(), -e) + cplx(0.0, std::ldexp(c.s[0].imag(), -e));
    c.s[1] = std::ldexp(c.s[1].real(), -e) + cplx(0.0, std::ldexp(c.s[1].imag(), -e));
    c.log_scale += e * std::numbers::ln2;
  }
}

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// Exact propagation through a region of constant mass m and wavenumber k.
Cursor continue_flank(const Cursor& from, double m, cplx k, double x) {
  double d = x - from.x;
  cplx kd = k * d;
  Cursor out = from;
  out.x = x;
  const cplx y0 = from.s[0];
  const cplx p0 = from.s[1];
  if (std::abs(kd.imag()) < 20.0) {
    cplx c = std::cos(kd);
    cplx sc = sinc(kd);
    out.s[0] = y0 * c + m * p0 * d * sc;
    out.s[1] = -(k * k / m) * d * y0 * sc + p0 * c;
  } else {
    const cplx i(0.0, 1.0);
    cplx a = 0.5 * (y0 + m * p0 / (i * k));
    cplx b = 0.5 * (y0 - m * p0 / (i * k));
    cplx z = i * kd;
    double shift = std::abs(z.real());
    cplx ep = std::exp(z - shift);
    cplx em = std::exp(-z - shift);
    out.s[0] = a * ep + b * em;
    out.s[1] = (i * k / m) * (a * ep - b * em);
    out.log_scale += shift;
  }
  renormalize(out);
  return out;
}

}  // namespace

struct HomogeneousSolution::Data {
  ProblemSpec problem;
  Side side = Side::Lower;
  IntegrationOptions options;
  Interval domain;
  std::vector<double> breakpoints;  // sorted ascending, strictly inside domain
  std::function<cplx(double)> coefficient;
  cplx k_left, k_right;
  std::vector<Cursor> checkpoints;  // in integration order

  double direction() const { return side == Side::Lower ? 1.0 : -1.0; }
  double start() const { return side == Side::Lower ? domain.lo : domain.hi; }
  double end() const { return side == Side::Lower ? domain.hi : domain.lo; }

  // Strictly between a and b, nearest to a; returns b if none.
  double next_stop(double a, double b) const {
    if (b > a) {
      auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), a);
      if (it != breakpoints.end() && *it < b) return *it;
    } else if (b < a) {
      auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), a);
      if (it != breakpoints.begin() && *(it - 1) > b) return *(it - 1);
    }
    return b;
  }

  // One accepted step from c.x towards b; (c.x, b) must not contain a breakpoint.
  void step(Cursor& c, double b) const {
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    const double lo = std::nextafter(std::min(c.x, b), std::max(c.x, b));
    const double hi = std::nextafter(std::max(c.x, b), std::min(c.x, b));
    const auto& mass = problem.mass;
    auto rhs = [&](const State& s, State& ds, double x) {
      double xc = std::clamp(x, std::min(lo, hi), std::max(lo, hi));
      double m = mass(xc);
      if (!(m > 0.0)) throw NonPositiveMass("m(x) <= 0 at x = " + std::to_string(xc));
      ds[0] = m * s[1];
      ds[1] = -coefficient(xc) * s[0];
    };
    const double dir = b > c.x ? 1.0 : -1.0;
    double h = c.h * dir > 0.0 ? std::abs(c.h) : options.max_step;
    h = dir * std::min({h, options.max_step, std::abs(b - c.x)});
    const double hmin = 1e-13 * (1.0 + std::abs(c.x));
    for (int attempt = 0; attempt < 200; ++attempt) {
      bool last = std::abs(b - c.x) <= std::abs(h);
      if (last) h = b - c.x;
      double x = c.x;
      double dt = h;
      if (stepper.try_step(rhs, c.s, x, dt) == odeint::success) {
        c.x = last ? b : x;
        c.h = dir * std::min(std::abs(dt), options.max_step);
        renormalize(c);
        if (!std::isfinite(std::abs(c.s[0])) || !std::isfinite(std::abs(c.s[1])))
          throw IntegrationFailure("non-finite solution near x = " + std::to_string(c.x));
        return;
      }
      h = dt;
      if (std::abs(h) < hmin)
        throw IntegrationFailure("step size underflow near x = " + std::to_string(c.x));
    }
    throw IntegrationFailure("step control failed near x = " + std::to_string(c.x));
  }

  void advance(Cursor& c, double target) const {
    std::size_t guard = 0;
    while (c.x != target) {
      double stop = next_stop(c.x, target);
      while (c.x != stop) {
        step(c, stop);
        if (++guard > options.max_steps) throw IntegrationFailure("too many steps");
      }
    }
  }

  // Index of the last checkpoint at or before x in integration order.
  std::size_t anchor(double x) const {
    if (side == Side::Lower) {
      auto it = std::upper_bound(checkpoints.begin(), checkpoints.end(), x,
                                 [](double v, const Cursor& c) { return v < c.x; });
      return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - checkpoints.begin() - 1, 0));
    }
    auto it = std::upper_bound(checkpoints.begin(), checkpoints.end(), x,
                               [](double v, const Cursor& c) { return v > c.x; });
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - checkpoints.begin() - 1, 0));
  }

  bool before_start(double x) const { return direction() * (x - start()) < 0.0; }
  bool after_end(double x) const { return direction() * (x - end()) > 0.0; }

  Cursor flank(const Cursor& from, double x) const {
    bool left = x < domain.lo || (x == domain.lo && from.x == domain.lo);
    double m = left ? problem.mass.left() : problem.mass.right();
    cplx k = left ? k_left : k_right;
    return continue_flank(from, m, k, x);
  }

  ScaledState to_scaled(const Cursor& c) const {
    return {c.s[0], problem.mass(c.x) * c.s[1], c.log_scale};
  }

  Cursor evaluate(double x) const {
    if (before_start(x)) return flank(checkpoints.front(), x);
    if (after_end(x)) return flank(checkpoints.back(), x);
    Cursor c = checkpoints[anchor(x)];
    advance(c, x);
    return c;
  }
};

const ProblemSpec& HomogeneousSolution::problem() const { return data_->problem; }

std::size_t HomogeneousSolution::checkpoint_count() const { return data_->checkpoints.size(); }

ScaledState HomogeneousSolution::state(double x) const {
  ScaledState s = data_->to_scaled(data_->evaluate(x));
  s.y *= gauge_;
  s.dy *= gauge_;
  return s;
}

std::vector<ScaledState> HomogeneousSolution::sample(std::span<const double> xs) const {
  const Data& d = *data_;
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double dir = d.direction();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dir * xs[a] < dir * xs[b]; });

  std::vector<ScaledState> out(xs.size());
  bool sweeping = false;
  Cursor cur;
  for (std::size_t idx : order) {
    double x = xs[idx];
    Cursor c;
    if (d.before_start(x)) {
      c = d.flank(d.checkpoints.front(), x);
    } else {
      if (!sweeping) {
        double first = d.after_end(x) ? d.end() : x;
        cur = d.checkpoints[d.anchor(first)];
        sweeping = true;
      }
      if (d.after_end(x)) {
        d.advance(cur, d.end());
        c = d.flank(cur, x);
      } else {
        d.advance(cur, x);
        c = cur;
      }
    }
    ScaledState s = d.to_scaled(c);
    s.y *= gauge_;
    s.dy *= gauge_;
    out[idx] = s;
  }
  return out;
}

HomogeneousSolution HomogeneousSolution::rescaled(cplx s) const {
  if (s == cplx(0.0)) throw ValidationError("rescaling factor must be nonzero");
  HomogeneousSolution copy = *this;
  copy.gauge_ *= s;
  return copy;
}

HomogeneousSolution solve_homogeneous(const ProblemSpec& problem, Side side,
                                      const IntegrationOptions& options) {
  auto data = std::make_shared<HomogeneousSolution::Data>();
  data->problem = problem;
  data->side = side;
  data->options = options;
  data->domain = problem.domain();
  if (!(data->domain.hi > data->domain.lo))
    throw ValidationError("integration domain is empty (margin must be positive)");
  data->breakpoints = problem.breakpoints();
  data->coefficient = effective_coefficient(problem.potential, problem.omega);
  data->k_left = problem.k_left();
  data->k_right = problem.k_right();

  // Plane-wave start: exp(-i k_- x) at the lower end, exp(+i k_+ x) at the
  // upper end, split into phase and magnitude.
  const cplx i(0.0, 1.0);
  Cursor c;
  c.x = data->start();
  if (side == Side::Lower) {
    cplx z = -i * data->k_left * c.x;
    c.s[0] = std::exp(cplx(0.0, z.imag()));
    c.log_scale = z.real();
    c.s[1] = -i * data->k_left / problem.mass.left() * c.s[0];
  } else {
    cplx z = i * data->k_right * c.x;
    c.s[0] = std::exp(cplx(0.0, z.imag()));
    c.log_scale = z.real();
    c.s[1] = i * data->k_right / problem.mass.right() * c.s[0];
  }
  c.h = data->direction() * options.max_step;
  data->checkpoints.push_back(c);

  const double target = data->end();
  std::size_t steps = 0;
  while (c.x != target) {
    double stop = data->next_stop(c.x, target);
    while (c.x != stop) {
      data->step(c, stop);
      data->checkpoints.push_back(c);
      if (++steps > options.max_steps) throw IntegrationFailure("too many steps");
    }
  }
  return HomogeneousSolution(std::move(data), side);
}

double ode_residual(const HomogeneousSolution& solution, double x, double h) {
  // 7-point central first derivative, O(h^6).
  static constexpr std::array<double, 7> w = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                                              3.0 / 4,   -3.0 / 20, 1.0 / 60};
  std::array<double, 7> xs{};
  for (int j = 0; j < 7; ++j) xs[j] = x + (j - 3) * h;
  auto states = solution.sample(xs);
  const auto& prob = solution.problem();
  auto coeff = effective_coefficient(prob.potential, prob.omega);
  // Bring every point to the exponent of the centre point.
  const double ref = states[3].log_scale;
  cplx dp = 0.0;
  for (int j = 0; j < 7; ++j) {
    cplx p = states[j].dy / prob.mass(xs[j]) * std::exp(states[j].log_scale - ref);
    dp += w[j] * p;
  }
  dp /= h;
  cplx y = states[3].y;
  cplx resid = dp + coeff(x) * y;
  double y_true = std::abs(y) * std::exp(ref);
  return std::abs(resid) * std::exp(ref) / std::max(y_true, 1.0);
}

}  // namespace sgreen
