#pragma once

#include "sgreen/dressing.hpp"

namespace sgreen {

/// Plane-wave data on the two flanks.
struct AsymptoticChannel {
  double m_left = 1.0;
  double m_right = 1.0;
  double v_left = 0.0;
  double v_right = 0.0;
  cplx omega;
  cplx k_left;
  cplx k_right;

  /// Re k > Im k on both flanks (Im k is only the retarded offset).
  bool propagating() const;
};

AsymptoticChannel channel_of(const ProblemSpec& problem);

struct ScatteringResult {
  cplx t;
  cplx r;
  double T = 0.0;  ///< |t|^2 m_- k_+ / (m_+ k_-)
  double R = 0.0;  ///< |r|^2

  double unitarity_defect() const { return std::abs(T + R - 1.0); }
};

/// Amplitudes for incidence from the left, read off G:
///   t = G(x, x') / [m_- exp(i(k_+ x - k_- x')) / (2 i k_-)],   x right, x' left,
///   r = [2 i k_- G(x', x') / m_- - 1] exp(2 i k_- x').
/// Throws WindowViolation if x, x' are not outside the interaction window
/// (which always includes the origin) and EvanescentChannel if either flank
/// does not propagate.
ScatteringResult transmission_from_green(const DressedGreen& g, const AsymptoticChannel& channel,
                                         double x, double xp);
ScatteringResult transmission_from_green(const G0Evaluator& g, const AsymptoticChannel& channel,
                                         double x, double xp);

/// The window outside which probes must lie: potential and mass windows plus
/// the origin.
Interval interaction_window(const ProblemSpec& problem);

}  // namespace sgreen
