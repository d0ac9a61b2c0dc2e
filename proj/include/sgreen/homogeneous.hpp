#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sgreen/profiles.hpp"

namespace sgreen {

enum class Side { Lower, Upper };

/// Value and derivative of a solution, stored as mantissas with a common
/// exponent: the true pair is (y, dy) * exp(log_scale).
struct ScaledState {
  cplx y;
  cplx dy;
  double log_scale = 0.0;

  cplx true_y() const { return y * std::exp(log_scale); }
  cplx true_dy() const { return dy * std::exp(log_scale); }
};

struct IntegrationOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.25;
  std::size_t max_steps = 5'000'000;
};

/// One solution of d/dx[(1/m) dy/dx] + V(x; omega) y = 0, integrated across the
/// truncated domain and continued analytically (plane waves) beyond it.
///
/// The lower solution behaves as exp(-i k_- x) for x -> -inf, the upper one as
/// exp(+i k_+ x) for x -> +inf. Instances are immutable and cheap to copy.
class HomogeneousSolution {
 public:
  Side side() const { return side_; }
  const ProblemSpec& problem() const;

  ScaledState state(double x) const;
  cplx value(double x) const { return state(x).true_y(); }
  cplx derivative(double x) const { return state(x).true_dy(); }

  /// States at many points. The points are visited in integration order in a
  /// single continuous sweep, so results are smooth functions of x.
  std::vector<ScaledState> sample(std::span<const double> xs) const;

  /// Same solution times a constant s != 0.
  HomogeneousSolution rescaled(cplx s) const;

  std::size_t checkpoint_count() const;

 private:
  struct Data;
  friend HomogeneousSolution solve_homogeneous(const ProblemSpec&, Side,
                                               const IntegrationOptions&);

  HomogeneousSolution(std::shared_ptr<const Data> data, Side side)
      : data_(std::move(data)), side_(side) {}

  std::shared_ptr<const Data> data_;
  Side side_;
  cplx gauge_{1.0, 0.0};
};

/// Integrates the solution matching the plane-wave condition at the far end
/// of `side`, inward across the whole domain.
HomogeneousSolution solve_homogeneous(const ProblemSpec& problem, Side side,
                                      const IntegrationOptions& options = {});

/// |(y'/m)' + V y| / max(|y|, 1) at x, with (y'/m)' from a 7-point central
/// difference of spacing h taken along one sweep.
double ode_residual(const HomogeneousSolution& solution, double x, double h = 2e-3);

}  // namespace sgreen
