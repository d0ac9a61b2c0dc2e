#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sgreen/errors.hpp"
#include "sgreen/wavepacket.hpp"

using namespace sgreen;

namespace {

const cplx I(0.0, 1.0);

double l2(std::span<const double> x, std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (x[i + 1] - x[i]) * (std::norm(a[i] - b[i]) + std::norm(a[i + 1] - b[i + 1]));
  return std::sqrt(s);
}

SpectralOptions serial() {
  SpectralOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("gaussian packet is normalised") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  std::vector<cplx> amp(p.amplitude);
  CHECK(probability(p.grid, amp) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p(-10.0)) == doctest::Approx(std::pow(2.0 * std::numbers::pi, -0.25)));
  CHECK_THROWS_AS(WavePacket::gaussian(0.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("analytic free evolution solves the Schroedinger equation") {
  WavePacket p = WavePacket::gaussian(-2.0, 1.5, 0.8);
  const double m = 1.3;
  CHECK(std::abs(free_gaussian(p, m, -1.7, 0.0) - p(-1.7)) < 1e-15);
  // i dpsi/dt = -psi''/(2m), checked by central differences
  for (double x : {-3.0, -2.0, 0.5})
    for (double t : {0.4, 2.0}) {
      const double h = 1e-3;
      cplx dt = (free_gaussian(p, m, x, t + h) - free_gaussian(p, m, x, t - h)) / (2.0 * h);
      cplx dxx = (free_gaussian(p, m, x + h, t) - 2.0 * free_gaussian(p, m, x, t) +
                  free_gaussian(p, m, x - h, t)) /
                 (h * h);
      CHECK(std::abs(I * dt + dxx / (2.0 * m)) < 1e-5);
    }
  // norm is conserved
  auto grid = covering_grid(p, m, 5.0, 12.0, 0.01);
  std::vector<cplx> psi;
  for (double x : grid) psi.push_back(free_gaussian(p, m, x, 5.0));
  CHECK(probability(grid, psi) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spectral grid covers the packet or refuses") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  ProblemSpec free;
  auto g = spectral_grid(p, free, serial());
  CHECK(g.edge == 0.0);
  CHECK(g.tail < 1e-10);
  CHECK(g.omega.size() == 16 * serial().panels);
  // (k0 + 5/sigma)^2 / 2 is the top of the window
  CHECK(*std::max_element(g.omega.begin(), g.omega.end()) < 24.5);
  SpectralOptions narrow = serial();
  narrow.support = 2.0;
  CHECK_THROWS_AS(spectral_grid(p, free, narrow), SpectralTruncation);
}

TEST_CASE("calibration recovers the spectral constant") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  GreenFamily family(ProblemSpec{}, {});
  auto grid = covering_grid(p, 1.0, 2.0);
  Calibration c = calibrate_propagator(family, p, 2.0, grid, serial());
  // Im G = -(pi/2) delta(omega - H) for G = (1/2)(omega - H)^-1
  CHECK(std::abs(c.constant - (-2.0 / std::numbers::pi)) < 1e-8);
  CHECK(c.reproduction_error < 1e-6);
  CHECK(c.norm_drift < 1e-6);

  SpectralOptions fine = serial();
  fine.panels *= 2;
  Calibration c2 = calibrate_propagator(family, p, 2.0, grid, fine);
  CHECK(std::abs(c2.constant - c.constant) < 1e-6 * std::abs(c.constant));
}

TEST_CASE("calibration fails when the frequency grid is too coarse") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  GreenFamily family(ProblemSpec{}, {});
  SpectralOptions coarse = serial();
  coarse.panels = 1;
  auto grid = covering_grid(p, 1.0, 1.0);
  CHECK_THROWS_AS(calibrate_propagator(family, p, 1.0, grid, coarse), CalibrationFailure);
}

TEST_CASE("free evolution matches the spreading gaussian") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  GreenFamily family(ProblemSpec{}, {});
  const std::vector<double> times = {0.0, 1.5, 4.0};
  auto grid = covering_grid(p, 1.0, 4.0);
  auto prop = propagate_wavepacket(family, p, times, grid, -2.0 / std::numbers::pi, serial());
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<cplx> exact;
    for (double x : grid) exact.push_back(free_gaussian(p, 1.0, x, times[k]));
    CHECK(l2(grid, prop.psi[k], exact) < 1e-6);
  }
}

TEST_CASE("delta-prime interaction blocks the packet") {
  WavePacket p = WavePacket::gaussian(-10.0, 2.0, 1.0);
  GreenFamily family(ProblemSpec{}, {0.0, 0.7, std::nullopt});
  const std::vector<double> times = {8.0};
  auto grid = covering_grid(p, 1.0, 8.0);
  auto prop = propagate_wavepacket(family, p, times, grid, -2.0 / std::numbers::pi, serial());
  CHECK(probability(grid, prop.psi[0], 0.0, 1e300) < 1e-8);
  CHECK(probability(grid, prop.psi[0], -1e300, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  // hard wall at the origin: method of images
  std::vector<cplx> image;
  for (double x : grid)
    image.push_back(x < 0.0 ? free_gaussian(p, 1.0, x, 8.0) - free_gaussian(p, 1.0, -x, 8.0) : 0.0);
  CHECK(l2(grid, prop.psi[0], image) < 1e-6);
}

TEST_CASE("probability counts cells cut by the bounds") {
  std::vector<double> x = {0.0, 1.0, 2.0};
  std::vector<cplx> psi = {1.0, 1.0, 1.0};
  CHECK(probability(x, psi) == doctest::Approx(2.0));
  CHECK(probability(x, psi, 0.5, 1.25) == doctest::Approx(0.75));
  CHECK(probability(x, psi, 3.0, 4.0) == 0.0);
}

TEST_CASE("thread count does not change the result") {
  WavePacket p = WavePacket::gaussian(-6.0, 1.5, 1.0);
  GreenFamily family(ProblemSpec{}, {1.0, 0.0, std::nullopt});
  SpectralOptions a = serial();
  a.panels = 4;
  SpectralOptions b = a;
  b.threads = 3;
  const std::vector<double> times = {0.0, 3.0};
  std::vector<double> grid = {-8.0, -2.0, 0.5, 4.0};
  auto pa = propagate_wavepacket(family, p, times, grid, 1.0, a);
  auto pb = propagate_wavepacket(family, p, times, grid, 1.0, b);
  CHECK(pa.psi == pb.psi);
}

TEST_CASE("eta halving check is reported") {
  WavePacket p = WavePacket::gaussian(-6.0, 1.5, 1.0);
  GreenFamily family(ProblemSpec{}, {});
  SpectralOptions o = serial();
  o.panels = 4;
  o.check_eta = true;
  const std::vector<double> times = {1.0};
  std::vector<double> grid = {-6.0, -4.0};
  auto pr = propagate_wavepacket(family, p, times, grid, 1.0, o);
  CHECK(std::isfinite(pr.eta_change));
  CHECK(pr.eta_change < 1e-6);
}
