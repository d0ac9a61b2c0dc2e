#include "sgreen/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parallel.hpp"
#include "sgreen/errors.hpp"

namespace sgreen {

std::string to_string(MollifierShape s) {
  switch (s) {
    case MollifierShape::Gaussian: return "gaussian";
    case MollifierShape::LorentzianTruncated: return "lorentzian-truncated";
    case MollifierShape::PairedRectangles: return "paired-rectangles";
  }
  return "unknown";
}

MollifierShape parse_shape(const std::string& name) {
  if (name == "gaussian") return MollifierShape::Gaussian;
  if (name == "lorentzian-truncated") return MollifierShape::LorentzianTruncated;
  if (name == "paired-rectangles") return MollifierShape::PairedRectangles;
  throw ValidationError("unknown mollifier shape '" + name + "'");
}

void RegularizationSpec::validate() const {
  if (!(epsilon > 0.0)) throw ValidationError("mollifier width must be positive");
  if (cutoff < 0.0) throw ValidationError("mollifier cutoff must be non-negative");
  if (shape == MollifierShape::Gaussian && cutoff != 0.0 && cutoff < 8.0)
    throw ValidationError("gaussian support cutoff must be at least 8 widths");
  if (shape == MollifierShape::LorentzianTruncated && cutoff != 0.0 && cutoff <= 1.0)
    throw ValidationError("lorentzian support cutoff must exceed 1 width");
}

double RegularizationSpec::support() const {
  switch (shape) {
    case MollifierShape::Gaussian: return epsilon * (cutoff == 0.0 ? 10.0 : cutoff);
    case MollifierShape::LorentzianTruncated: return epsilon * (cutoff == 0.0 ? 40.0 : cutoff);
    case MollifierShape::PairedRectangles: return epsilon;
  }
  return epsilon;
}

Mollifier mollifier(const RegularizationSpec& spec) {
  spec.validate();
  const double e = spec.epsilon;
  const double xc = spec.support();
  Mollifier m;
  m.support = {-xc, xc};
  m.breakpoints = {-xc, xc};

  switch (spec.shape) {
    case MollifierShape::Gaussian: {
      const double a = 1.0 / (e * std::sqrt(2.0 * std::numbers::pi));
      m.g = [=](double x) { return std::abs(x) > xc ? 0.0 : a * std::exp(-0.5 * x * x / (e * e)); };
      m.dg = [=](double x) {
        return std::abs(x) > xc ? 0.0 : -x / (e * e) * a * std::exp(-0.5 * x * x / (e * e));
      };
      break;
    }
    case MollifierShape::LorentzianTruncated: {
      const double c = xc / e;
      const double a = e / (2.0 * (std::atan(c) - c / (1.0 + c * c)));
      const double floor = 1.0 / (xc * xc + e * e);
      m.g = [=](double x) { return std::abs(x) > xc ? 0.0 : a * (1.0 / (x * x + e * e) - floor); };
      m.dg = [=](double x) {
        if (std::abs(x) > xc) return 0.0;
        double d = x * x + e * e;
        return -2.0 * a * x / (d * d);
      };
      break;
    }
    case MollifierShape::PairedRectangles: {
      m.g = [=](double x) { return std::abs(x) >= e ? 0.0 : (1.0 - std::abs(x) / e) / e; };
      m.dg = [=](double x) {
        if (std::abs(x) >= e || x == 0.0) return 0.0;
        return x < 0.0 ? 1.0 / (e * e) : -1.0 / (e * e);
      };
      m.breakpoints = {-e, 0.0, e};
      break;
    }
  }
  return m;
}

MollifierMoments moments(const Mollifier& m) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  std::vector<double> nodes = m.breakpoints;
  nodes.push_back(m.support.lo);
  nodes.push_back(m.support.hi);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  MollifierMoments out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i], b = nodes[i + 1];
    out.mass += GK::integrate(m.g, a, b, 15, 1e-14);
    out.derivative += GK::integrate(m.dg, a, b, 15, 1e-14);
    out.first += GK::integrate([&](double x) { return x * m.dg(x); }, a, b, 15, 1e-14);
  }
  return out;
}

std::function<double(double)> coupling_profile(double alpha, double beta,
                                               const RegularizationSpec& spec) {
  Mollifier m = mollifier(spec);
  return [alpha, beta, g = m.g, dg = m.dg](double x) { return -alpha * g(x) + beta * dg(x); };
}

PotentialSpec build_regularized_potential(double alpha, double beta,
                                          const RegularizationSpec& spec,
                                          const PotentialSpec& background) {
  Mollifier m = mollifier(spec);
  auto u = [alpha, beta, g = m.g, dg = m.dg](double x) {
    return 0.5 * (-alpha * g(x) + beta * dg(x));
  };
  PotentialSpec reg = PotentialSpec::custom(u, m.support, 0.0, 0.0, m.breakpoints,
                                            "regularized-" + to_string(spec.shape));
  return background + reg;
}

namespace {

struct Amplitudes {
  cplx t, r;
};

// sin(z)/z
cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

Amplitudes transfer_once(const std::vector<double>& nodes, const PotentialSpec& v, double mass,
                         double energy, cplx kl, cplx kr, double step) {
  const cplx i(0.0, 1.0);
  const double b = nodes.back();
  const double a = nodes.front();
  cplx psi = std::exp(i * kr * b);
  cplx dpsi = i * kr * psi;
  for (std::size_t s = nodes.size() - 1; s-- > 0;) {
    const double lo = nodes[s], hi = nodes[s + 1];
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / step)));
    const double h = (hi - lo) / double(n);
    for (std::size_t j = n; j-- > 0;) {
      const double mid = lo + (double(j) + 0.5) * h;
      const cplx k = std::sqrt(cplx(2.0 * mass * (energy - v(mid))));
      const cplx c = std::cos(k * h);
      const cplx sk = h * sinc(k * h);  // sin(kh)/k
      const cplx p0 = psi;
      psi = c * p0 - sk * dpsi;
      dpsi = k * k * sk * p0 + c * dpsi;
    }
  }
  const cplx fwd = 0.5 * (psi + dpsi / (i * kl)) * std::exp(-i * kl * a);
  const cplx back = 0.5 * (psi - dpsi / (i * kl)) * std::exp(i * kl * a);
  if (!std::isfinite(std::abs(fwd)) || !std::isfinite(std::abs(back)) || std::abs(fwd) == 0.0)
    throw IntegrationFailure("transfer-matrix propagation overflowed");
  return {1.0 / fwd, back / fwd};
}

}  // namespace

ScatteringResult transfer_matrix_scatter(const PotentialSpec& potential, double mass, double energy,
                                         const TransferOptions& options) {
  if (!(mass > 0.0)) throw NonPositiveMass("transfer matrices need a positive constant mass");
  if (!(options.step > 0.0)) throw ValidationError("layer width must be positive");
  if (!(energy > potential.left()) || !(energy > potential.right()))
    throw EvanescentChannel("energy must lie above both flank potentials");

  const Interval w = potential.window();
  std::vector<double> nodes = {w.lo, w.hi};
  for (double bp : potential.breakpoints())
    if (bp > w.lo && bp < w.hi) nodes.push_back(bp);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.size() < 2) nodes = {w.lo - 1.0, w.lo + 1.0};

  const cplx kl = std::sqrt(cplx(2.0 * mass * (energy - potential.left())));
  const cplx kr = std::sqrt(cplx(2.0 * mass * (energy - potential.right())));

  Amplitudes amp = transfer_once(nodes, potential, mass, energy, kl, kr, options.step);
  if (options.richardson) {
    Amplitudes fine = transfer_once(nodes, potential, mass, energy, kl, kr, 0.5 * options.step);
    amp.t = (4.0 * fine.t - amp.t) / 3.0;
    amp.r = (4.0 * fine.r - amp.r) / 3.0;
  }
  ScatteringResult res;
  res.t = amp.t;
  res.r = amp.r;
  res.T = std::norm(amp.t) * kr.real() / kl.real();
  res.R = std::norm(amp.r);
  return res;
}

bool ScanResult::monotone() const {
  return std::none_of(nonmonotone.begin(), nonmonotone.end(), [](bool b) { return b; });
}

double ScanResult::max_unitarity_defect() const {
  double d = 0.0;
  for (const auto& r : rows) d = std::max(d, r.result.unitarity_defect());
  return d;
}

ResultTable ScanResult::table() const {
  ResultTable t;
  t.columns = {"epsilon", "T", "R", "re_t", "im_t", "re_r", "im_r"};
  for (const auto& r : rows) {
    const auto& s = r.result;
    t.add_row({r.epsilon, s.T, s.R, s.t.real(), s.t.imag(), s.r.real(), s.r.imag()});
  }
  return t;
}

ScanResult epsilon_scan(double alpha, double beta, double energy, std::span<const double> epsilons,
                        const ScanOptions& options) {
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1]))
      throw ValidationError("epsilon list must be strictly decreasing");
  if (!(options.layers_per_epsilon > 0.0)) throw ValidationError("layers per width must be positive");

  ScanResult out;
  out.rows.resize(epsilons.size());
  detail::parallel_for(epsilons.size(), options.threads, [&](std::size_t i) {
    RegularizationSpec spec{options.shape, epsilons[i], options.cutoff};
    PotentialSpec v = build_regularized_potential(alpha, beta, spec);
    TransferOptions to;
    to.step = epsilons[i] / options.layers_per_epsilon;
    out.rows[i] = {epsilons[i], transfer_matrix_scatter(v, options.mass, energy, to)};
  });

  out.nonmonotone.assign(out.rows.size(), false);
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    out.nonmonotone[i] = out.rows[i].result.T > out.rows[i - 1].result.T * (1.0 + 1e-12);

  out.exponent = std::numeric_limits<double>::quiet_NaN();
  if (out.rows.size() >= 2) {
    bool positive = std::all_of(out.rows.begin(), out.rows.end(),
                                [](const ScanRow& r) { return r.result.T > 0.0; });
    if (positive) {
      double mx = 0.0, my = 0.0;
      for (const auto& r : out.rows) {
        mx += std::log(r.epsilon);
        my += std::log(r.result.T);
      }
      mx /= double(out.rows.size());
      my /= double(out.rows.size());
      double sxy = 0.0, sxx = 0.0;
      for (const auto& r : out.rows) {
        double dx = std::log(r.epsilon) - mx;
        sxy += dx * (std::log(r.result.T) - my);
        sxx += dx * dx;
      }
      out.exponent = sxy / sxx;
    }
  }
  return out;
}

cplx oracle_green(const PotentialSpec& regularized, const MassProfile& mass, const Frequency& omega,
                  double x, double xp, const IntegrationOptions& options) {
  ProblemSpec p;
  p.mass = mass;
  p.potential = regularized;
  p.omega = omega;
  return build_g0(p, options).value(x, xp);
}

namespace {

template <class T>
T neville_at_zero(std::span<const double> eps, std::span<const T> values) {
  if (eps.size() != values.size() || eps.empty())
    throw ValidationError("extrapolation needs matching, non-empty inputs");
  std::vector<T> p(values.begin(), values.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (-eps[i + m] * p[i] + eps[i] * p[i + 1]) / (eps[i] - eps[i + m]);
  return p[0];
}

}  // namespace

cplx extrapolate_to_zero(std::span<const double> eps, std::span<const cplx> values) {
  return neville_at_zero<cplx>(eps, values);
}

double extrapolate_to_zero(std::span<const double> eps, std::span<const double> values) {
  return neville_at_zero<double>(eps, values);
}

}  // namespace sgreen
