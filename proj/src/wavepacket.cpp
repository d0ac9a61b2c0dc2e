#include "sgreen/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "parallel.hpp"
#include "sgreen/errors.hpp"

namespace sgreen {

namespace {

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double h = 0.5 * (x[i + 1] - x[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

}  // namespace

WavePacket WavePacket::gaussian(double x0, double k0, double sigma, double half_width,
                                double spacing) {
  if (!(sigma > 0.0)) throw ValidationError("packet width must be positive");
  if (spacing <= 0.0) spacing = sigma / 20.0;
  WavePacket p;
  p.x0 = x0;
  p.k0 = k0;
  p.sigma = sigma;
  const double lo = x0 - half_width * sigma;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width * sigma / spacing));
  const double h = 2.0 * half_width * sigma / double(n);
  for (std::size_t i = 0; i <= n; ++i) {
    double x = lo + h * double(i);
    p.grid.push_back(x);
    p.amplitude.push_back(p(x));
  }
  return p;
}

cplx WavePacket::operator()(double x) const {
  const double d = x - x0;
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  return norm * std::exp(cplx(-d * d / (4.0 * sigma * sigma), k0 * x));
}

double WavePacket::spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }

DressedGreen GreenFamily::at(const Frequency& omega) const {
  ProblemSpec p = base_;
  p.omega = omega;
  return dress(build_g0(p, options_), params_);
}

SpectralGrid spectral_grid(const WavePacket& packet, const ProblemSpec& problem,
                           const SpectralOptions& options) {
  if (options.panels == 0) throw ValidationError("spectral grid needs at least one panel");
  const double half = options.support / packet.sigma;
  const double k_lo = packet.k0 - half;
  const double k_hi = packet.k0 + half;
  const double m = problem.mass.left();
  const double v = problem.potential.left();
  const double kmin2 = (k_lo <= 0.0 && k_hi >= 0.0) ? 0.0 : std::min(k_lo * k_lo, k_hi * k_hi);
  const double kmax2 = std::max(k_lo * k_lo, k_hi * k_hi);

  SpectralGrid g;
  g.edge = std::min(problem.potential.left(), problem.potential.right());
  // |psi0(k)|^2 is normal with mean k0 and standard deviation 1/(2 sigma).
  g.tail = std::erfc(std::numbers::sqrt2 * options.support);
  if (g.tail > options.tail_tolerance)
    throw SpectralTruncation("packet tail outside the frequency grid is " + std::to_string(g.tail));

  const double s_lo = std::sqrt(std::max(v + kmin2 / (2.0 * m) - g.edge, 0.0));
  const double s_hi = std::sqrt(v + kmax2 / (2.0 * m) - g.edge);
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const auto& xa = Rule::abscissa();
  const auto& wa = Rule::weights();
  const double width = (s_hi - s_lo) / double(options.panels);
  for (std::size_t p = 0; p < options.panels; ++p) {
    const double mid = s_lo + width * (double(p) + 0.5);
    for (std::size_t j = xa.size(); j-- > 0;) {
      double s = mid - 0.5 * width * xa[j];
      g.omega.push_back(g.edge + s * s);
      g.weight.push_back(0.5 * width * wa[j] * 2.0 * s);
    }
    for (std::size_t j = 0; j < xa.size(); ++j) {
      if (xa[j] == 0.0) continue;
      double s = mid + 0.5 * width * xa[j];
      g.omega.push_back(g.edge + s * s);
      g.weight.push_back(0.5 * width * wa[j] * 2.0 * s);
    }
  }
  return g;
}

Propagation propagate_wavepacket(const GreenFamily& family, const WavePacket& packet,
                                 std::span<const double> times, std::span<const double> grid,
                                 cplx constant, const SpectralOptions& options) {
  const SpectralGrid sg = spectral_grid(packet, family.base(), options);
  const std::size_t nw = sg.omega.size();
  const std::size_t nx = grid.size();
  const std::size_t np = packet.grid.size();

  std::vector<cplx> source(np);
  auto wsrc = trapezoid_weights(packet.grid);
  for (std::size_t j = 0; j < np; ++j) source[j] = packet.amplitude[j] * wsrc[j];

  // Per-node spectral projections, reduced afterwards in node order so the
  // result does not depend on the thread count.
  std::vector<cplx> phi(nw * nx);
  detail::parallel_for(nw, options.threads, [&](std::size_t n) {
    DressedGreen g = family.at(Frequency(sg.omega[n], options.eta));
    std::vector<cplx> m = g.matrix(grid, packet.grid);
    for (std::size_t i = 0; i < nx; ++i) {
      cplx acc = 0.0;
      const cplx* row = m.data() + i * np;
      for (std::size_t j = 0; j < np; ++j) acc += row[j].imag() * source[j];
      phi[n * nx + i] = acc;
    }
  });

  Propagation out;
  out.times.assign(times.begin(), times.end());
  out.x.assign(grid.begin(), grid.end());
  for (double t : times) {
    std::vector<cplx> psi(nx, cplx(0.0));
    for (std::size_t n = 0; n < nw; ++n) {
      const cplx f = sg.weight[n] * std::exp(cplx(0.0, -sg.omega[n] * t));
      const cplx* row = phi.data() + n * nx;
      for (std::size_t i = 0; i < nx; ++i) psi[i] += f * row[i];
    }
    for (auto& v : psi) v *= constant;
    out.psi.push_back(std::move(psi));
  }
  out.eta_change = std::numeric_limits<double>::quiet_NaN();
  if (options.check_eta) {
    SpectralOptions half = options;
    half.eta *= 0.5;
    half.check_eta = false;
    Propagation ref = propagate_wavepacket(family, packet, times, grid, constant, half);
    out.eta_change = 0.0;
    for (std::size_t t = 0; t < times.size(); ++t)
      for (std::size_t i = 0; i < nx; ++i)
        out.eta_change = std::max(out.eta_change, std::abs(out.psi[t][i] - ref.psi[t][i]));
  }
  return out;
}

Calibration calibrate_propagator(const GreenFamily& free_family, const WavePacket& packet,
                                 double duration, std::span<const double> grid,
                                 const SpectralOptions& options, double tolerance) {
  if (!(duration >= 0.0)) throw ValidationError("calibration duration must be non-negative");
  const std::vector<double> times = {0.0, duration};
  SpectralOptions opts = options;
  opts.check_eta = false;
  Propagation raw = propagate_wavepacket(free_family, packet, times, grid, 1.0, opts);

  auto w = trapezoid_weights(grid);
  cplx num = 0.0;
  double den = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cplx target = packet(grid[i]);
    num += w[i] * std::conj(raw.psi[0][i]) * target;
    den += w[i] * std::norm(raw.psi[0][i]);
    ref += w[i] * std::norm(target);
  }
  if (!(den > 0.0)) throw CalibrationFailure("kernel annihilates the packet");

  Calibration cal;
  cal.constant = num / den;
  double err = 0.0, norm_t = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    err += w[i] * std::norm(cal.constant * raw.psi[0][i] - packet(grid[i]));
    norm_t += w[i] * std::norm(cal.constant * raw.psi[1][i]);
  }
  cal.reproduction_error = std::sqrt(err / ref);
  cal.norm_drift = std::abs(norm_t - ref);
  if (!(cal.reproduction_error <= tolerance) || !(cal.norm_drift <= tolerance)) {
    throw CalibrationFailure("no kernel constant reproduces free evolution (reproduction error " +
                             std::to_string(cal.reproduction_error) + ", norm drift " +
                             std::to_string(cal.norm_drift) + ")");
  }
  return cal;
}

cplx free_gaussian(const WavePacket& packet, double mass, double x, double t) {
  const cplx i(0.0, 1.0);
  const double s = packet.sigma;
  const double k0 = packet.k0;
  const double d = x - packet.x0 - k0 * t / mass;
  const cplx width = s + i * t / (2.0 * mass * s);
  return std::pow(2.0 * std::numbers::pi, -0.25) / std::sqrt(width) *
         std::exp(-d * d / (4.0 * s * s + 2.0 * i * t / mass) + i * k0 * (x - k0 * t / (2.0 * mass)));
}

std::vector<double> covering_grid(const WavePacket& packet, double mass, double duration,
                                  double widths, double spacing) {
  const double s = packet.sigma;
  const double spread = std::sqrt(s * s + std::pow(duration / (2.0 * mass * s), 2));
  const double shift = packet.k0 * duration / mass;
  const double lo = std::min(packet.x0, packet.x0 + shift) - widths * spread;
  const double hi = std::max(packet.x0, packet.x0 + shift) + widths * spread;
  if (spacing <= 0.0) spacing = s / 10.0;
  // nodes on integer multiples of the spacing, so the origin is one of them
  const auto first = static_cast<long long>(std::floor(lo / spacing));
  const auto last = static_cast<long long>(std::ceil(hi / spacing));
  std::vector<double> g;
  for (long long j = first; j <= last; ++j) g.push_back(double(j) * spacing);
  return g;
}

double probability(std::span<const double> grid, std::span<const cplx> psi, double lo, double hi) {
  // |psi|^2 is taken linear on each cell; cells cut by lo or hi count in part.
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = std::max(grid[i], lo), b = std::min(grid[i + 1], hi);
    if (!(b > a)) continue;
    const double h = grid[i + 1] - grid[i];
    const double pa = std::norm(psi[i]), pb = std::norm(psi[i + 1]);
    auto rho = [&](double x) { return pa + (pb - pa) * (x - grid[i]) / h; };
    acc += 0.5 * (b - a) * (rho(a) + rho(b));
  }
  return acc;
}

}  // namespace sgreen
