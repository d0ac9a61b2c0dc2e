#pragma once

// Dressing of G0 by the point interaction U(x) = -alpha delta(x) + beta delta'(x).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgreen/green0.hpp"

namespace sgreen {

struct SingularParams {
  double alpha = 0.0;
  double beta = 0.0;
  /// Finite stand-in for the divergent mixed derivative d2/dx dx' G0 at
  /// (0,0). Empty means the |P| -> infinity limit.
  std::optional<cplx> P;
};

enum class Dressing {
  Bare,             ///< U = 0
  DeltaOnly,        ///< beta = 0, exact
  DeltaPrimeLimit,  ///< beta != 0, |P| -> infinity; independent of alpha and of beta's value
  GeneralFinite,    ///< finite P
};

std::string to_string(Dressing d);

/// Full Green's function G(x,x') for one frequency. Immutable.
class DressedGreen {
 public:
  cplx operator()(double x, double xp) const { return value(x, xp); }
  cplx value(double x, double xp) const;

  /// Row-major |xs| x |xps| matrix of G(xs[i], xps[j]).
  std::vector<cplx> matrix(std::span<const double> xs, std::span<const double> xps) const;

  Dressing provenance() const { return mode_; }
  const SingularParams& params() const { return params_; }
  const G0Evaluator& g0() const { return g0_; }
  const BoundaryData& boundary() const { return g0_.boundary(); }

 private:
  using Point = G0Evaluator::Point;

  DressedGreen(G0Evaluator g, SingularParams p, Dressing mode)
      : g0_(std::move(g)), params_(p), mode_(mode) {}

  cplx value(const Point& a, const Point& b) const;
  cplx origin_value(const Point& b) const;       // G(0, x'), finite P
  cplx origin_derivative(const Point& b) const;  // dL G(0, x'), finite P

  friend DressedGreen bare(const G0Evaluator&);
  friend DressedGreen dress_delta(const G0Evaluator&, double);
  friend DressedGreen dress_delta_prime(const G0Evaluator&);
  friend DressedGreen assemble_general(const G0Evaluator&, const SingularParams&);

  G0Evaluator g0_;
  SingularParams params_;
  Dressing mode_;
  cplx delta_denominator_{1.0};  // 1 + alpha g00
  cplx d_{1.0};                  // 1 + beta dL
  cplx denominator_{1.0};        // outer bracket of G(0,x'), P inserted
  cplx ratio10_, ratio01_;       // y1(0)/y2(0), y2(0)/y1(0)
};

/// G = G0.
DressedGreen bare(const G0Evaluator& g);

/// beta = 0: G = G0 - alpha G0(x,0) G0(0,x') / (1 + alpha G0(0,0)).
/// Throws ResonantDenominator when 1 + alpha G0(0,0) vanishes.
DressedGreen dress_delta(const G0Evaluator& g, double alpha);

/// beta != 0 limit: G = G0 - G0(x,0) G0(0,x') / G0(0,0), evaluated in factored
/// form so that G vanishes identically whenever x and x' are on opposite
/// sides of the origin, or either is at it. Throws ZeroDiagonal if G0(0,0) ~ 0.
DressedGreen dress_delta_prime(const G0Evaluator& g);

/// G(0,x') and dL G(0,x') with the finite surrogate P.
struct BoundaryFunctionals {
  std::function<cplx(double)> value;       ///< x' -> G(0,x')
  std::function<cplx(double)> derivative;  ///< x' -> dL G(0,x')
  cplx d;                                  ///< 1 + beta dL G0(0,0)
  cplx denominator;                        ///< outer bracket of G(0,x')
};

BoundaryFunctionals dressed_boundary(const G0Evaluator& g, const SingularParams& p);

/// Full G with the finite surrogate P (P must be set).
DressedGreen assemble_general(const G0Evaluator& g, const SingularParams& p);

/// |P| -> infinity limit of dL G(0,x'), beta != 0.
std::function<cplx(double)> limit_derivative_boundary(const G0Evaluator& g, double beta);

/// Chooses the dressing for `p`: bare, delta-only, finite-P or the delta'
/// limit.
DressedGreen dress(const G0Evaluator& g, const SingularParams& p);

}  // namespace sgreen
