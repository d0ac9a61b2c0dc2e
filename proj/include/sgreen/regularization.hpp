#pragma once

// Brute-force cross-checks for the point interaction: the distributions are
// replaced by smooth mollifiers and the resulting ordinary potentials are
// solved directly.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sgreen/scattering.hpp"
#include "sgreen/table.hpp"

namespace sgreen {

enum class MollifierShape { Gaussian, LorentzianTruncated, PairedRectangles };

std::string to_string(MollifierShape s);
MollifierShape parse_shape(const std::string& name);

struct RegularizationSpec {
  MollifierShape shape = MollifierShape::Gaussian;
  double epsilon = 0.1;
  /// Support half-width in units of epsilon. 0 picks the shape default
  /// (gaussian 10, lorentzian 40). Paired rectangles always use 1.
  double cutoff = 0.0;

  /// Throws ValidationError on epsilon <= 0 or a gaussian cutoff below 8.
  void validate() const;
  double support() const;
};

/// g_eps with unit mass and its exact derivative.
///
///   gaussian:          exp(-x^2 / 2 eps^2) / (eps sqrt(2 pi)), cut at the support
///   lorentzian:        A [1/(x^2 + eps^2) - 1/(x_c^2 + eps^2)], zero at the cut x_c
///   paired rectangles: triangle (1 - |x|/eps)/eps, so g' is +-1/eps^2 on two
///                      adjacent rectangles
struct Mollifier {
  std::function<double(double)> g;
  std::function<double(double)> dg;
  Interval support;
  std::vector<double> breakpoints;  ///< kinks and jumps of g or g'
};

Mollifier mollifier(const RegularizationSpec& spec);

struct MollifierMoments {
  double mass = 0.0;          ///< integral of g
  double derivative = 0.0;    ///< integral of g'
  double first = 0.0;         ///< integral of x g'
};

/// Adaptive Gauss-Kronrod on each smooth piece.
MollifierMoments moments(const Mollifier& m);

/// U_eps(x) = -alpha g(x) + beta g'(x).
std::function<double(double)> coupling_profile(double alpha, double beta,
                                               const RegularizationSpec& spec);

/// Potential whose operator coefficient is that of `background` minus U_eps:
/// v = v_background + U_eps / 2. This is the sign under which G = G0 + G0 U G
/// holds, which is the relation the closed-form dressing solves.
PotentialSpec build_regularized_potential(double alpha, double beta,
                                          const RegularizationSpec& spec,
                                          const PotentialSpec& background = PotentialSpec::free());

struct TransferOptions {
  double step = 1e-3;       ///< layer width upper bound
  bool richardson = true;   ///< combine runs at step and step/2
};

/// Plane-wave transfer matrices through midpoint-sampled constant layers,
/// integrated from right to left. Constant mass, real energy above both
/// flanks (otherwise EvanescentChannel).
ScatteringResult transfer_matrix_scatter(const PotentialSpec& potential, double mass, double energy,
                                         const TransferOptions& options = {});

struct ScanRow {
  double epsilon = 0.0;
  ScatteringResult result;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  /// Least-squares slope of log T against log epsilon (NaN if some T <= 0).
  double exponent = 0.0;
  /// nonmonotone[i]: T grew going from rows[i-1] to rows[i] (beyond a relative 1e-12).
  std::vector<bool> nonmonotone;

  bool monotone() const;
  double max_unitarity_defect() const;
  /// Columns epsilon,T,R,re_t,im_t,re_r,im_r.
  ResultTable table() const;
};

struct ScanOptions {
  MollifierShape shape = MollifierShape::Gaussian;
  double cutoff = 0.0;
  double mass = 1.0;
  double layers_per_epsilon = 64.0;
  unsigned threads = 1;
};

/// One transfer-matrix run per epsilon; `epsilons` must be strictly
/// decreasing.
ScanResult epsilon_scan(double alpha, double beta, double energy, std::span<const double> epsilons,
                        const ScanOptions& options = {});

/// G(x, x') of the regularized problem, built directly from its homogeneous
/// solutions.
cplx oracle_green(const PotentialSpec& regularized, const MassProfile& mass,
                  const Frequency& omega, double x, double xp,
                  const IntegrationOptions& options = {});

/// Value at epsilon = 0 of the interpolating polynomial through
/// (eps[i], values[i]) (Neville).
cplx extrapolate_to_zero(std::span<const double> eps, std::span<const cplx> values);
double extrapolate_to_zero(std::span<const double> eps, std::span<const double> values);

}  // namespace sgreen
