#include "sgreen/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgreen/errors.hpp"

namespace sgreen {

bool AsymptoticChannel::propagating() const {
  return k_left.real() > k_left.imag() && k_right.real() > k_right.imag();
}

AsymptoticChannel channel_of(const ProblemSpec& p) {
  AsymptoticChannel ch;
  ch.m_left = p.mass.left();
  ch.m_right = p.mass.right();
  ch.v_left = p.potential.left();
  ch.v_right = p.potential.right();
  ch.omega = p.omega.value();
  ch.k_left = p.k_left();
  ch.k_right = p.k_right();
  return ch;
}

Interval interaction_window(const ProblemSpec& p) {
  Interval wv = p.potential.window();
  Interval wm = p.mass.window();
  return {std::min({wv.lo, wm.lo, 0.0}), std::max({wv.hi, wm.hi, 0.0})};
}

ScatteringResult transmission_from_green(const DressedGreen& g, const AsymptoticChannel& ch,
                                         double x, double xp) {
  const Interval w = interaction_window(g.g0().pair().problem());
  if (!(x > w.hi) || !(xp < w.lo)) {
    std::ostringstream msg;
    msg << "probe points must satisfy x > " << w.hi << " and x' < " << w.lo << " (got x = " << x
        << ", x' = " << xp << ")";
    throw WindowViolation(msg.str());
  }
  if (!ch.propagating()) throw EvanescentChannel("a flank channel is evanescent at this omega");

  const cplx i(0.0, 1.0);
  const cplx kl = ch.k_left;
  const cplx kr = ch.k_right;
  ScatteringResult res;
  res.t = g.value(x, xp) * 2.0 * i * kl / (ch.m_left * std::exp(i * (kr * x - kl * xp)));
  res.r = (2.0 * i * kl * g.value(xp, xp) / ch.m_left - 1.0) * std::exp(2.0 * i * kl * xp);
  res.T = std::norm(res.t) * (ch.m_left * kr.real()) / (ch.m_right * kl.real());
  res.R = std::norm(res.r);
  return res;
}

ScatteringResult transmission_from_green(const G0Evaluator& g, const AsymptoticChannel& ch,
                                         double x, double xp) {
  return transmission_from_green(bare(g), ch, x, xp);
}

}  // namespace sgreen
