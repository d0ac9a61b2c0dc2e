#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sgreen/homogeneous.hpp"

namespace sgreen {

/// y1 (lower) and y2 (upper) for one problem and frequency.
struct HomogeneousPair {
  HomogeneousSolution y1;
  HomogeneousSolution y2;

  const ProblemSpec& problem() const { return y1.problem(); }
};

HomogeneousPair solve_pair(const ProblemSpec& problem, const IntegrationOptions& options = {});

/// y1 y2' - y1' y2 at x.
cplx wronskian(const HomogeneousPair& pair, double x);

struct ProbeOptions {
  std::size_t points = 41;
  /// NonConstantReduced is raised above this relative spread of m/Delta.
  double spread_tol = 1e-6;
  /// DependentSolutions is raised when the normalised Wronskian
  /// |Delta| / (|y1||y2'| + |y1'||y2|) drops below this at any probe.
  double dependence_tol = 1e-8;
};

/// C = m(x)/Delta(x), position independent for this operator.
///
/// Stored relative to a reference point x_ref (the origin, clamped into the
/// domain): `scaled` multiplies y1(x) exp(-l1(x_ref)) y2(x') exp(-l2(x_ref)),
/// where l1, l2 are the solutions' log-scales, so products stay finite even
/// when the solutions themselves over- or underflow.
struct ReducedConstant {
  cplx scaled;
  double log_ref1 = 0.0;
  double log_ref2 = 0.0;
  double x_ref = 0.0;
  double spread = 0.0;      ///< stddev / |mean| over the probe grid
  double dependence = 1.0;  ///< smallest normalised Wronskian seen

  cplx value() const { return scaled * std::exp(-(log_ref1 + log_ref2)); }
};

ReducedConstant reduced_constant(const HomogeneousPair& pair, const ProbeOptions& options = {});

struct BoundaryData {
  cplx g00;  ///< G0(0,0)
  cplx dL;   ///< left derivative at (0,0), steps at 1/2
  cplx dR;   ///< right derivative at (0,0), steps at 1/2
};

/// Auxiliary Green's function
///
///   G0(x,x') = C [ H(x'-x) y1(x) y2(x') + H(x-x') y2(x) y1(x') ],  H(0) = 1/2,
///
/// with one-sided first derivatives in either argument. Immutable; safe for
/// concurrent use.
class G0Evaluator {
 public:
  /// Solution values at one abscissa, in the reference gauge of the constant.
  struct Point {
    double x = 0.0;
    cplx y1, dy1, y2, dy2;
  };

  explicit G0Evaluator(HomogeneousPair pair, const ProbeOptions& options = {});

  cplx operator()(double x, double xp) const { return value(x, xp); }
  cplx value(double x, double xp) const { return value(point(x), point(xp)); }
  /// d/dx G0(x, x')
  cplx d_left(double x, double xp) const { return d_left(point(x), point(xp)); }
  /// d/dx' G0(x, x')
  cplx d_right(double x, double xp) const { return d_right(point(x), point(xp)); }

  cplx value(const Point& a, const Point& b) const;
  cplx d_left(const Point& a, const Point& b) const;
  cplx d_right(const Point& a, const Point& b) const;

  Point point(double x) const;
  /// Batched evaluation; one sweep per solution.
  std::vector<Point> points(std::span<const double> xs) const;
  const Point& origin() const { return origin_; }

  const BoundaryData& boundary() const { return boundary_; }
  const HomogeneousPair& pair() const { return pair_; }
  const ReducedConstant& constant() const { return constant_; }
  cplx c() const { return constant_.value(); }

 private:
  Point make_point(double x, const ScaledState& s1, const ScaledState& s2) const;

  HomogeneousPair pair_;
  ReducedConstant constant_;
  Point origin_;
  BoundaryData boundary_;
};

/// Builds G0 (computing C) from the pair.
G0Evaluator g0(const HomogeneousPair& pair, const ProbeOptions& options = {});

/// Solves both homogeneous problems and builds G0 in one call.
G0Evaluator build_g0(const ProblemSpec& problem, const IntegrationOptions& integration = {},
                     const ProbeOptions& probes = {});

struct G0Partials {
  std::function<cplx(double, double)> d_left;
  std::function<cplx(double, double)> d_right;
  BoundaryData boundary;
};

G0Partials g0_partials(const HomogeneousPair& pair, const ProbeOptions& options = {});

/// Heaviside step with the coincidence value 1/2.
constexpr double step_half(double d) { return d > 0.0 ? 1.0 : (d < 0.0 ? 0.0 : 0.5); }

}  // namespace sgreen
