#pragma once

// Problem description for the one-dimensional Sturm-Liouville operator
//
//   d/dx [ (1/m(x)) d/dx ] + 2 (omega - v(x))
//
// in units with hbar = 1. Both m and v are constant outside a finite
// interaction window, which lets the homogeneous solutions be continued
// analytically as plane waves beyond the integration domain.

#include <complex>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace sgreen {

using cplx = std::complex<double>;

/// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Two-column numeric table with strictly increasing abscissae.
struct Table {
  std::vector<double> x;
  std::vector<double> y;
};

/// Reads a two-column (x, value) text table. Columns may be separated by
/// whitespace or commas; blank lines and lines starting with '#' are skipped.
Table load_table(const std::filesystem::path& path);
Table parse_table(const std::string& text);

/// Continuous piecewise-linear interpolation, clamped to the end values.
double interpolate(const Table& table, double x);

class MassProfile {
 public:
  enum class Kind { Constant, Smooth, Tabulated };

  static MassProfile constant(double m);

  /// Smooth, compactly supported profile: a C2 quintic step from `left` to
  /// `right` across [center - width, center + width], plus an optional C2 bump
  /// `bump * (1 - u^2)^3`, u = (x - bump_center)/bump_width.
  static MassProfile smooth(double left, double right, double center, double width,
                            double bump = 0.0, double bump_center = 0.0,
                            double bump_width = 1.0);

  static MassProfile tabulated(Table table);

  double operator()(double x) const { return eval_(x); }

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  double left() const { return left_; }
  double right() const { return right_; }
  /// m(x) equals left()/right() exactly outside this interval.
  Interval window() const { return window_; }
  /// Points where m is not smooth; integration never steps across them.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  Kind kind_ = Kind::Constant;
  std::function<double(double)> eval_;
  double left_ = 1.0;
  double right_ = 1.0;
  Interval window_;
  std::vector<double> breakpoints_;
};

class PotentialSpec {
 public:
  enum class Kind { Free, Harmonic, LinearField, PiecewisePolynomial, Tabulated, Custom };

  static PotentialSpec free(double level = 0.0);

  /// v = (1/2) w^2 x^2 for |x| < half_width, held at its edge value beyond.
  static PotentialSpec harmonic(double w, double half_width);

  /// v = field * x for |x| < half_width, held at its edge value beyond.
  static PotentialSpec linear_field(double field, double half_width);

  /// Piece i covers [breaks[i], breaks[i+1]) and evaluates
  /// sum_j coeffs[i][j] * (x - breaks[i])^j. Outside [breaks.front(),
  /// breaks.back()] the potential is `left` / `right`.
  static PotentialSpec piecewise_polynomial(std::vector<double> breaks,
                                            std::vector<std::vector<double>> coeffs,
                                            double left = 0.0, double right = 0.0);

  static PotentialSpec tabulated(Table table);

  /// Arbitrary evaluator. The caller guarantees v == left / right outside
  /// `window` and lists every discontinuity in `breakpoints`.
  static PotentialSpec custom(std::function<double(double)> v, Interval window, double left,
                              double right, std::vector<double> breakpoints = {},
                              std::string label = "custom");

  /// Pointwise sum of two potentials.
  PotentialSpec operator+(const PotentialSpec& other) const;

  double operator()(double x) const { return eval_(x); }

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double left() const { return left_; }
  double right() const { return right_; }
  Interval window() const { return window_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  Kind kind_ = Kind::Free;
  std::string label_ = "free";
  std::function<double(double)> eval_;
  double left_ = 0.0;
  double right_ = 0.0;
  Interval window_;
  std::vector<double> breakpoints_;
};

/// Retarded complex frequency; Im(omega) > 0 is enforced.
class Frequency {
 public:
  static constexpr double kDefaultEta = 1e-6;

  Frequency(double re, double eta = kDefaultEta);
  explicit Frequency(cplx omega);

  cplx value() const { return omega_; }
  double re() const { return omega_.real(); }
  double eta() const { return omega_.imag(); }

 private:
  cplx omega_;
};

/// V(x; omega) = 2 (omega - v(x)): the coefficient multiplying y in the
/// homogeneous equation. All factor conventions live here.
std::function<cplx(double)> effective_coefficient(const PotentialSpec& v, const Frequency& omega);

/// Asymptotic wavenumber sqrt(2 m (omega - v)), principal branch (Im k >= 0
/// whenever Im omega > 0).
cplx wavenumber(double m, double v, cplx omega);

struct ProblemSpec {
  MassProfile mass = MassProfile::constant(1.0);
  PotentialSpec potential = PotentialSpec::free();
  Frequency omega{0.5};
  /// Distance between the interaction window and the truncation points.
  double margin = 1.0;

  /// Integration domain: union of the mass and potential windows, widened
  /// by `margin` on each side.
  Interval domain() const;

  /// Sorted, de-duplicated discontinuities strictly inside domain().
  std::vector<double> breakpoints() const;

  cplx k_left() const;
  cplx k_right() const;
};

}  // namespace sgreen
