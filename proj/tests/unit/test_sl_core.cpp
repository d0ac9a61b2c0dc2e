#include <doctest.h>

#include <cmath>
#include <vector>

#include "sgreen/errors.hpp"
#include "sgreen/green0.hpp"

using namespace sgreen;

namespace {

const cplx kOmega(0.5, 1e-6);

ProblemSpec harmonic() {
  ProblemSpec p;
  p.potential = PotentialSpec::harmonic(0.5, 4.0);
  p.omega = Frequency(kOmega);
  return p;
}

ProblemSpec linear() {
  ProblemSpec p;
  p.potential = PotentialSpec::linear_field(0.05, 5.0);
  p.omega = Frequency(kOmega);
  return p;
}

ProblemSpec variable_mass() {
  ProblemSpec p;
  p.mass = MassProfile::smooth(1.0, 1.5, 0.5, 1.0, 0.3, -0.5, 1.0);
  p.omega = Frequency(kOmega);
  return p;
}

struct Reference {
  double x, xp;
  cplx g;
};

// Independent scipy DOP853 integration (tests/oracles/green_oracles.py).
void check_against(const ProblemSpec& p, const std::vector<Reference>& refs) {
  G0Evaluator g = build_g0(p);
  for (const auto& r : refs) {
    CAPTURE(r.x);
    CAPTURE(r.xp);
    CHECK(std::abs(g(r.x, r.xp) - r.g) / std::abs(r.g) < 1e-8);
  }
}

}  // namespace

TEST_CASE("upper solution of the free problem is a plane wave") {
  ProblemSpec p;
  p.omega = Frequency(kOmega);
  auto y2 = solve_homogeneous(p, Side::Upper);
  cplx k = p.k_right();
  for (double x : {-7.0, -1.0, 0.0, 0.5, 3.0, 12.0}) {
    cplx ratio = y2.value(x) / y2.value(0.0);
    CHECK(std::abs(ratio - std::exp(cplx(0.0, 1.0) * k * x)) < 1e-9);
  }
  auto y1 = solve_homogeneous(p, Side::Lower);
  CHECK(std::abs(y1.value(-3.0) / y1.value(0.0) - std::exp(cplx(0.0, 3.0) * k)) < 1e-9);
}

TEST_CASE("homogeneous solutions satisfy the ODE") {
  for (const auto& p : {harmonic(), linear(), variable_mass()}) {
    auto pair = solve_pair(p);
    for (double x : {-3.3, -0.7, 0.2, 1.9, 3.1}) {
      CHECK(ode_residual(pair.y1, x) < 1e-7);
      CHECK(ode_residual(pair.y2, x) < 1e-7);
    }
  }
}

TEST_CASE("sampling matches pointwise evaluation") {
  auto y = solve_homogeneous(linear(), Side::Lower);
  std::vector<double> xs = {4.0, -2.0, 0.0, 7.5, -8.0};
  auto states = y.sample(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(std::abs(states[i].true_y() - y.value(xs[i])) < 1e-9 * std::abs(y.value(xs[i])));
}

TEST_CASE("free G0 matches the closed form") {
  ProblemSpec p;
  p.omega = Frequency(kOmega);
  G0Evaluator g = build_g0(p);
  cplx k = std::sqrt(2.0 * kOmega);
  for (double x = -5.0; x <= 5.0; x += 1.25)
    for (double xp = -5.0; xp <= 5.0; xp += 1.25) {
      cplx exact = std::exp(cplx(0.0, 1.0) * k * std::abs(x - xp)) / (2.0 * cplx(0.0, 1.0) * k);
      CHECK(std::abs(g(x, xp) - exact) / std::abs(exact) < 1e-8);
    }
  // g00 = m / (2 i k)
  CHECK(std::abs(g.boundary().g00 - 1.0 / (2.0 * cplx(0.0, 1.0) * k)) < 1e-9);
}

TEST_CASE("G0 on a harmonic background") {
  check_against(harmonic(), {{1.0, -1.0, {1.003247614411010e+00, 4.468922050040747e-08}},
                             {-2.0, 3.0, {1.400880438745961e-01, 4.949373630625887e-07}},
                             {0.0, 0.0, {4.777070821706596e-01, -3.413293149512548e-06}},
                             {2.5, 2.5, {-5.927604284232755e-01, -1.328889165415988e-06}},
                             {-3.0, -0.5, {5.739184164524944e-02, -6.572962719116665e-07}}});
}

TEST_CASE("G0 in a linear field") {
  check_against(linear(), {{1.0, -1.0, {4.687571449049118e-01, 1.964274899408209e-01}},
                           {-2.0, 3.0, {-5.076364157565919e-01, -1.004480074891757e-01}},
                           {0.0, 0.0, {1.408737698307874e-02, -5.128760925893464e-01}},
                           {2.5, 2.5, {7.627050796989670e-03, -5.601982019501940e-01}},
                           {-3.0, -0.5, {1.784111125599180e-01, 4.239470885028711e-01}}});
}

TEST_CASE("G0 with a position-dependent mass") {
  check_against(variable_mass(),
                {{1.0, -1.0, {4.353792422190303e-01, 3.415322893403575e-01}},
                 {-2.0, 3.0, {-3.048156093477177e-01, -4.607701965386401e-01}},
                 {0.0, 0.0, {1.067536026353018e-02, -5.748663342190045e-01}},
                 {2.5, 2.5, {-3.910672506233621e-03, -6.464559406812943e-01}},
                 {-3.0, -0.5, {2.671741943076477e-01, 4.214985377372963e-01}}});
}

TEST_CASE("structural invariants of G0") {
  for (const auto& p : {harmonic(), linear(), variable_mass()}) {
    auto pair = solve_pair(p);
    G0Evaluator g(pair);
    CHECK(g.constant().spread < 1e-8);

    // jump of d/dx G0 across x = x' equals m(x')
    for (double xp : {-2.2, 0.0, 0.9}) {
      const double h = 1e-7;
      cplx jump = g.d_left(xp + h, xp) - g.d_left(xp - h, xp);
      CHECK(std::abs(jump - p.mass(xp)) / p.mass(xp) < 1e-6);
    }

    // symmetry and the d_right / d_left relation
    CHECK(std::abs(g(1.3, -0.4) - g(-0.4, 1.3)) < 1e-10 * std::abs(g(1.3, -0.4)));
    CHECK(std::abs(g.d_right(1.3, -0.4) - g.d_left(-0.4, 1.3)) <
          1e-10 * std::abs(g.d_right(1.3, -0.4)));

    // rescaling either solution leaves G0 unchanged
    HomogeneousPair scaled{pair.y1.rescaled(cplx(-2.0, 7.0)), pair.y2.rescaled(cplx(1e-5, 0.0))};
    G0Evaluator gs(scaled);
    for (double x : {-1.5, 0.0, 2.0})
      for (double xp : {-0.5, 1.0})
        CHECK(std::abs(gs(x, xp) - g(x, xp)) < 1e-12 * std::abs(g(x, xp)));
  }
}

TEST_CASE("coincidence derivatives use the half step") {
  CHECK(step_half(0.0) == 0.5);
  CHECK(step_half(1e-300) == 1.0);
  CHECK(step_half(-1e-300) == 0.0);
  G0Evaluator g = build_g0(linear());
  const BoundaryData& b = g.boundary();
  CHECK(b.dL == b.dR);
  // average of the two one-sided limits
  const double h = 1e-7;
  cplx avg = 0.5 * (g.d_left(h, 0.0) + g.d_left(-h, 0.0));
  CHECK(std::abs(b.dL - avg) < 1e-6);
}

TEST_CASE("bound-state pole is reported as dependent solutions") {
  // v = -1 on [-1, 1]; even ground state solves k tan k = kappa.
  const double e0 = -0.603897833863394554545;
  ProblemSpec p;
  p.potential = PotentialSpec::piecewise_polynomial({-1.0, 1.0}, {{-1.0}}, 0.0, 0.0);
  p.omega = Frequency(e0, 1e-12);
  CHECK_THROWS_AS(build_g0(p), DependentSolutions);
  p.omega = Frequency(e0, 0.1);
  CHECK_NOTHROW(build_g0(p));
}

TEST_CASE("reduced constant spread beyond tolerance is reported") {
  ProbeOptions probes;
  probes.spread_tol = 1e-20;
  CHECK_THROWS_AS(build_g0(variable_mass(), {}, probes), NonConstantReduced);
}

TEST_CASE("evanescent flanks stay finite far from the window") {
  ProblemSpec p = harmonic();  // flanks at v = 2 > Re omega
  G0Evaluator g = build_g0(p);
  cplx far = g(30.0, 0.0);
  CHECK(std::isfinite(std::abs(far)));
  CHECK(std::abs(far) < 1e-15);
  CHECK(std::abs(g(30.0, 29.0)) > 1e-3);
}
