#include "sgreen/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sgreen/errors.hpp"

namespace sgreen {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_table(const Table& t, const std::string& what) {
  if (t.x.size() != t.y.size()) throw ValidationError(what + ": column length mismatch");
  if (t.x.size() < 2) throw ValidationError(what + ": at least two rows required");
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (!std::isfinite(t.x[i]) || !std::isfinite(t.y[i]))
      throw ValidationError(what + ": non-finite entry at row " + std::to_string(i + 1));
    if (i > 0 && !(t.x[i] > t.x[i - 1]))
      throw ValidationError(what + ": abscissae must be strictly increasing (row " +
                            std::to_string(i + 1) + ")");
  }
}

// C2 quintic smoothstep on [0, 1].
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

}  // namespace

Table parse_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double a = 0.0, b = 0.0;
    if (!(fields >> a >> b))
      throw ParseError("table line " + std::to_string(lineno) + ": expected two numbers");
    std::string extra;
    if (fields >> extra)
      throw ParseError("table line " + std::to_string(lineno) + ": more than two columns");
    t.x.push_back(a);
    t.y.push_back(b);
  }
  check_table(t, "table");
  return t;
}

Table load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

double interpolate(const Table& t, double x) {
  if (x <= t.x.front()) return t.y.front();
  if (x >= t.x.back()) return t.y.back();
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t i = static_cast<std::size_t>(it - t.x.begin()) - 1;
  double w = (x - t.x[i]) / (t.x[i + 1] - t.x[i]);
  return (1.0 - w) * t.y[i] + w * t.y[i + 1];
}

// ---------------------------------------------------------------------------
// MassProfile

MassProfile MassProfile::constant(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("mass must be positive");
  MassProfile p;
  p.kind_ = Kind::Constant;
  p.eval_ = [m](double) { return m; };
  p.left_ = p.right_ = m;
  p.window_ = {0.0, 0.0};
  return p;
}

MassProfile MassProfile::smooth(double left, double right, double center, double width,
                                double bump, double bump_center, double bump_width) {
  if (!(left > 0.0) || !(right > 0.0)) throw ValidationError("asymptotic masses must be positive");
  if (!(width > 0.0) || !(bump_width > 0.0))
    throw ValidationError("smooth mass widths must be positive");
  MassProfile p;
  p.kind_ = Kind::Smooth;
  p.eval_ = [=](double x) {
    double m = left + (right - left) * smoothstep((x - center + width) / (2.0 * width));
    double u = (x - bump_center) / bump_width;
    if (bump != 0.0 && std::abs(u) < 1.0) {
      double s = 1.0 - u * u;
      m += bump * s * s * s;
    }
    return m;
  };
  p.left_ = left;
  p.right_ = right;
  p.window_ = {center - width, center + width};
  if (bump != 0.0) {
    p.window_.lo = std::min(p.window_.lo, bump_center - bump_width);
    p.window_.hi = std::max(p.window_.hi, bump_center + bump_width);
  }
  // the ramp and the bump are only C2 at their ends
  std::vector<double> bp = {center - width, center + width};
  if (bump != 0.0) bp.insert(bp.end(), {bump_center - bump_width, bump_center + bump_width});
  p.breakpoints_ = sorted_unique(std::move(bp));
  // Positivity on the window; the bump extremum sits at bump_center.
  for (int i = 0; i <= 2000; ++i) {
    double x = p.window_.lo + (p.window_.hi - p.window_.lo) * i / 2000.0;
    if (!(p.eval_(x) > 0.0)) throw NonPositiveMass("smooth mass profile is not positive");
  }
  if (bump != 0.0 && !(p.eval_(bump_center) > 0.0))
    throw NonPositiveMass("smooth mass profile is not positive");
  return p;
}

MassProfile MassProfile::tabulated(Table table) {
  check_table(table, "mass table");
  for (double m : table.y)
    if (!(m > 0.0)) throw NonPositiveMass("tabulated mass must be positive");
  MassProfile p;
  p.kind_ = Kind::Tabulated;
  p.left_ = table.y.front();
  p.right_ = table.y.back();
  p.window_ = {table.x.front(), table.x.back()};
  p.breakpoints_ = table.x;
  p.eval_ = [t = std::move(table)](double x) { return interpolate(t, x); };
  return p;
}

std::string MassProfile::kind_name() const {
  switch (kind_) {
    case Kind::Constant: return "constant";
    case Kind::Smooth: return "smooth";
    case Kind::Tabulated: return "tabulated";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PotentialSpec

PotentialSpec PotentialSpec::free(double level) {
  PotentialSpec p;
  p.kind_ = Kind::Free;
  p.label_ = "free";
  p.eval_ = [level](double) { return level; };
  p.left_ = p.right_ = level;
  p.window_ = {0.0, 0.0};
  return p;
}

PotentialSpec PotentialSpec::harmonic(double w, double half_width) {
  if (!(half_width > 0.0)) throw ValidationError("harmonic half-width must be positive");
  PotentialSpec p;
  p.kind_ = Kind::Harmonic;
  p.label_ = "harmonic";
  p.eval_ = [w, half_width](double x) {
    double xc = std::clamp(x, -half_width, half_width);
    return 0.5 * w * w * xc * xc;
  };
  p.left_ = p.right_ = 0.5 * w * w * half_width * half_width;
  p.window_ = {-half_width, half_width};
  p.breakpoints_ = {-half_width, half_width};
  return p;
}

PotentialSpec PotentialSpec::linear_field(double field, double half_width) {
  if (!(half_width > 0.0)) throw ValidationError("linear-field half-width must be positive");
  PotentialSpec p;
  p.kind_ = Kind::LinearField;
  p.label_ = "linear";
  p.eval_ = [field, half_width](double x) {
    return field * std::clamp(x, -half_width, half_width);
  };
  p.left_ = -field * half_width;
  p.right_ = field * half_width;
  p.window_ = {-half_width, half_width};
  p.breakpoints_ = {-half_width, half_width};
  return p;
}

PotentialSpec PotentialSpec::piecewise_polynomial(std::vector<double> breaks,
                                                  std::vector<std::vector<double>> coeffs,
                                                  double left, double right) {
  if (breaks.size() < 2 || coeffs.size() + 1 != breaks.size())
    throw ValidationError("piecewise potential needs n+1 breaks for n pieces");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw ValidationError("piecewise breaks must be strictly increasing");
  PotentialSpec p;
  p.kind_ = Kind::PiecewisePolynomial;
  p.label_ = "piecewise";
  p.left_ = left;
  p.right_ = right;
  p.window_ = {breaks.front(), breaks.back()};
  p.breakpoints_ = breaks;
  p.eval_ = [breaks, coeffs, left, right](double x) {
    if (x < breaks.front()) return left;
    if (x >= breaks.back()) return right;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breaks.begin()) - 1;
    double d = x - breaks[i];
    double acc = 0.0;
    const auto& c = coeffs[i];
    for (auto j = c.rbegin(); j != c.rend(); ++j) acc = acc * d + *j;
    return acc;
  };
  return p;
}

PotentialSpec PotentialSpec::tabulated(Table table) {
  check_table(table, "potential table");
  PotentialSpec p;
  p.kind_ = Kind::Tabulated;
  p.label_ = "tabulated";
  p.left_ = table.y.front();
  p.right_ = table.y.back();
  p.window_ = {table.x.front(), table.x.back()};
  p.breakpoints_ = table.x;
  p.eval_ = [t = std::move(table)](double x) { return interpolate(t, x); };
  return p;
}

PotentialSpec PotentialSpec::custom(std::function<double(double)> v, Interval window, double left,
                                    double right, std::vector<double> breakpoints,
                                    std::string label) {
  if (!(window.hi >= window.lo)) throw ValidationError("custom potential window is empty");
  PotentialSpec p;
  p.kind_ = Kind::Custom;
  p.label_ = std::move(label);
  p.eval_ = std::move(v);
  p.left_ = left;
  p.right_ = right;
  p.window_ = window;
  p.breakpoints_ = sorted_unique(std::move(breakpoints));
  return p;
}

PotentialSpec PotentialSpec::operator+(const PotentialSpec& other) const {
  PotentialSpec p = *this;
  p.eval_ = [a = eval_, b = other.eval_](double x) { return a(x) + b(x); };
  p.left_ += other.left_;
  p.right_ += other.right_;
  bool this_flat = window_.lo == window_.hi && kind_ == Kind::Free;
  bool other_flat = other.window_.lo == other.window_.hi && other.kind_ == Kind::Free;
  if (this_flat) {
    p.window_ = other.window_;
    p.kind_ = other.kind_;
    p.label_ = other.label_;
  } else if (!other_flat) {
    p.window_ = {std::min(window_.lo, other.window_.lo), std::max(window_.hi, other.window_.hi)};
    p.label_ = label_ + "+" + other.label_;
  }
  auto bp = breakpoints_;
  bp.insert(bp.end(), other.breakpoints_.begin(), other.breakpoints_.end());
  p.breakpoints_ = sorted_unique(std::move(bp));
  return p;
}

// ---------------------------------------------------------------------------

Frequency::Frequency(double re, double eta) : Frequency(cplx(re, eta)) {}

Frequency::Frequency(cplx omega) : omega_(omega) {
  if (!(omega.imag() > 0.0) || !std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
    throw ValidationError("frequency must satisfy Im(omega) > 0");
}

std::function<cplx(double)> effective_coefficient(const PotentialSpec& v, const Frequency& omega) {
  return [v, w = omega.value()](double x) { return 2.0 * (w - v(x)); };
}

cplx wavenumber(double m, double v, cplx omega) { return std::sqrt(2.0 * m * (omega - v)); }

Interval ProblemSpec::domain() const {
  Interval wv = potential.window();
  Interval wm = mass.window();
  return {std::min(wv.lo, wm.lo) - margin, std::max(wv.hi, wm.hi) + margin};
}

std::vector<double> ProblemSpec::breakpoints() const {
  Interval d = domain();
  std::vector<double> all = potential.breakpoints();
  all.insert(all.end(), mass.breakpoints().begin(), mass.breakpoints().end());
  all = sorted_unique(std::move(all));
  std::vector<double> inside;
  for (double b : all)
    if (b > d.lo && b < d.hi) inside.push_back(b);
  return inside;
}

cplx ProblemSpec::k_left() const { return wavenumber(mass.left(), potential.left(), omega.value()); }
cplx ProblemSpec::k_right() const {
  return wavenumber(mass.right(), potential.right(), omega.value());
}

}  // namespace sgreen
