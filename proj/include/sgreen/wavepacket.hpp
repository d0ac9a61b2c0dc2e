#pragma once

// Time evolution synthesised from frequency-domain Green's functions:
//
//   psi(x, t) = c * sum_n W_n exp(-i w_n t) sum_j K(x, x'_j; w_n) psi0(x'_j) dx'_j
//
// with K = Im G(w + i eta), the spectral (anti-Hermitian) part of the
// retarded kernel. The constant c is not hard-coded; calibrate_propagator
// fixes it from free evolution.

#include <span>
#include <vector>

#include "sgreen/dressing.hpp"

namespace sgreen {

/// Gaussian packet psi0(x) = (2 pi sigma^2)^(-1/4) exp(-(x-x0)^2/(4 sigma^2) + i k0 x),
/// so |psi0|^2 has standard deviation sigma. Sampled on a uniform grid.
struct WavePacket {
  double x0 = 0.0;
  double k0 = 0.0;
  double sigma = 1.0;
  std::vector<double> grid;
  std::vector<cplx> amplitude;

  static WavePacket gaussian(double x0, double k0, double sigma, double half_width = 10.0,
                             double spacing = 0.0);

  cplx operator()(double x) const;
  /// Trapezoid weight of the sampling grid.
  double spacing() const;
};

/// omega -> G(omega) for a fixed problem and dressing.
class GreenFamily {
 public:
  GreenFamily(ProblemSpec base, SingularParams params, IntegrationOptions options = {})
      : base_(std::move(base)), params_(params), options_(options) {}

  DressedGreen at(const Frequency& omega) const;

  const ProblemSpec& base() const { return base_; }
  const SingularParams& params() const { return params_; }

 private:
  ProblemSpec base_;
  SingularParams params_;
  IntegrationOptions options_;
};

struct SpectralOptions {
  std::size_t panels = 16;      ///< Gauss-Legendre panels (16 nodes each)
  double support = 5.0;         ///< half-width of the k window, in units of 1/sigma
  double eta = 1e-10;           ///< Im omega at every node
  double tail_tolerance = 1e-10;
  unsigned threads = 0;         ///< 0: hardware concurrency
  /// Repeat the synthesis at eta/2 and report the largest change.
  bool check_eta = false;
};

/// Quadrature nodes over omega. The substitution omega = edge + s^2 removes
/// the band-edge square-root singularity; `weight` already includes 2 s.
struct SpectralGrid {
  std::vector<double> omega;
  std::vector<double> weight;
  double edge = 0.0;
  double tail = 0.0;  ///< packet probability outside the covered k window
};

/// Throws SpectralTruncation if the packet's momentum tail outside the grid
/// exceeds `tail_tolerance`.
SpectralGrid spectral_grid(const WavePacket& packet, const ProblemSpec& problem,
                           const SpectralOptions& options);

struct Propagation {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<std::vector<cplx>> psi;  ///< psi[t][i]
  /// max |psi(eta) - psi(eta/2)| when SpectralOptions::check_eta is set, else NaN.
  double eta_change = 0.0;
};

/// Evolves the packet to every entry of `times` on `grid`, with kernel
/// constant `constant` (see calibrate_propagator).
Propagation propagate_wavepacket(const GreenFamily& family, const WavePacket& packet,
                                 std::span<const double> times, std::span<const double> grid,
                                 cplx constant, const SpectralOptions& options = {});

struct Calibration {
  cplx constant;
  double reproduction_error = 0.0;  ///< ||c K psi0 - psi0|| / ||psi0|| at t = 0
  double norm_drift = 0.0;          ///< | ||psi(duration)||^2 - 1 |
};

/// Fixes the kernel constant on a free family: least-squares reproduction of
/// psi0 at t = 0, then checks that the norm is preserved up to `duration`.
/// Throws CalibrationFailure if either check exceeds `tolerance`.
Calibration calibrate_propagator(const GreenFamily& free_family, const WavePacket& packet,
                                 double duration, std::span<const double> grid,
                                 const SpectralOptions& options = {}, double tolerance = 1e-6);

/// Exact free evolution of the Gaussian packet for constant mass m:
///   psi(x,t) = (2 pi)^(-1/4) (sigma + i t/(2 m sigma))^(-1/2)
///              exp(-(x - x0 - k0 t/m)^2 / (4 sigma^2 + 2 i t/m) + i k0 (x - k0 t/(2 m))).
cplx free_gaussian(const WavePacket& packet, double mass, double x, double t);

/// Uniform grid holding the freely evolved packet for all t in [0, duration]
/// out to `widths` spreading widths on either side. Nodes sit on multiples of
/// `spacing` (default sigma/10), so x = 0 is always a node.
std::vector<double> covering_grid(const WavePacket& packet, double mass, double duration,
                                  double widths = 10.0, double spacing = 0.0);

/// Trapezoid integral of |psi|^2 over [lo, hi]; cells cut by a bound count in
/// part, with |psi|^2 interpolated linearly.
double probability(std::span<const double> grid, std::span<const cplx> psi,
                   double lo = -1e300, double hi = 1e300);

}  // namespace sgreen
