#include "sgreen/dressing.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "sgreen/errors.hpp"

namespace sgreen {

namespace {

constexpr double kPoleTol = 1e-12;

void require_nonzero_beta(double beta) {
  if (beta == 0.0) throw ValidationError("delta-prime limit requires beta != 0");
}

void check_diagonal(const G0Evaluator::Point& o) {
  double scale = (std::abs(o.y1) + std::abs(o.dy1)) * (std::abs(o.y2) + std::abs(o.dy2));
  if (!(std::abs(o.y1 * o.y2) > kPoleTol * scale))
    throw ZeroDiagonal("G0(0,0) vanishes: a homogeneous solution has a node at the origin");
}

struct FiniteScalars {
  cplx d;
  cplx denominator;
};

FiniteScalars finite_scalars(const BoundaryData& b, const SingularParams& p) {
  const double a = p.alpha;
  const double be = p.beta;
  const cplx P = p.P.value_or(0.0);
  FiniteScalars s;
  s.d = 1.0 + be * b.dL;
  if (!(std::abs(s.d) > kPoleTol * (1.0 + std::abs(be * b.dL))))
    throw SingularDenominator("1 + beta dL G0(0,0) vanishes");
  cplx inner = be * b.g00 / s.d * (a * b.dL + be * P);
  s.denominator = 1.0 + a * b.g00 + be * b.dR - inner;
  double scale = 1.0 + std::abs(a * b.g00) + std::abs(be * b.dR) + std::abs(inner);
  if (!(std::abs(s.denominator) > kPoleTol * scale))
    throw SingularDenominator("denominator of G(0,x') vanishes");
  return s;
}

}  // namespace

std::string to_string(Dressing d) {
  switch (d) {
    case Dressing::Bare: return "bare";
    case Dressing::DeltaOnly: return "delta-only";
    case Dressing::DeltaPrimeLimit: return "delta-prime-limit";
    case Dressing::GeneralFinite: return "general-finite";
  }
  return "unknown";
}

DressedGreen bare(const G0Evaluator& g) { return DressedGreen(g, {}, Dressing::Bare); }

DressedGreen dress_delta(const G0Evaluator& g, double alpha) {
  DressedGreen out(g, {alpha, 0.0, std::nullopt}, Dressing::DeltaOnly);
  const cplx ag = alpha * g.boundary().g00;
  out.delta_denominator_ = 1.0 + ag;
  if (!(std::abs(out.delta_denominator_) > kPoleTol * (1.0 + std::abs(ag)))) {
    std::ostringstream msg;
    msg << "1 + alpha G0(0,0) vanishes (alpha = " << alpha << ")";
    throw ResonantDenominator(msg.str());
  }
  return out;
}

DressedGreen dress_delta_prime(const G0Evaluator& g) {
  check_diagonal(g.origin());
  // alpha and the magnitude of beta drop out; only beta != 0 is recorded.
  DressedGreen out(g, {0.0, 1.0, std::nullopt}, Dressing::DeltaPrimeLimit);
  out.ratio10_ = g.origin().y1 / g.origin().y2;
  out.ratio01_ = g.origin().y2 / g.origin().y1;
  return out;
}

BoundaryFunctionals dressed_boundary(const G0Evaluator& g, const SingularParams& p) {
  FiniteScalars s = finite_scalars(g.boundary(), p);
  auto gp = std::make_shared<const G0Evaluator>(g);
  const BoundaryData b = g.boundary();
  const double be = p.beta;
  const cplx coupling = p.alpha * b.dL + be * p.P.value_or(0.0);
  auto value = [gp, s, b, be](double xp) {
    auto o = gp->origin();
    auto q = gp->point(xp);
    return (gp->value(o, q) - be * b.g00 / s.d * gp->d_left(o, q)) / s.denominator;
  };
  auto derivative = [gp, s, coupling, value](double xp) {
    auto q = gp->point(xp);
    return (gp->d_left(gp->origin(), q) - coupling * value(xp)) / s.d;
  };
  return {value, derivative, s.d, s.denominator};
}

DressedGreen assemble_general(const G0Evaluator& g, const SingularParams& p) {
  if (!p.P) throw ValidationError("assemble_general needs a finite P");
  FiniteScalars s = finite_scalars(g.boundary(), p);
  DressedGreen out(g, p, Dressing::GeneralFinite);
  out.d_ = s.d;
  out.denominator_ = s.denominator;
  out.delta_denominator_ = 1.0 + p.alpha * g.boundary().g00;
  return out;
}

std::function<cplx(double)> limit_derivative_boundary(const G0Evaluator& g, double beta) {
  require_nonzero_beta(beta);
  check_diagonal(g.origin());
  const BoundaryData b = g.boundary();
  const cplx d = 1.0 + beta * b.dL;
  if (!(std::abs(d) > kPoleTol * (1.0 + std::abs(beta * b.dL))))
    throw SingularDenominator("1 + beta dL G0(0,0) vanishes");
  auto gp = std::make_shared<const G0Evaluator>(g);
  return [gp, b, d, beta](double xp) {
    auto o = gp->origin();
    auto q = gp->point(xp);
    cplx dl0 = gp->d_left(o, q);
    cplx g0 = gp->value(o, q);
    return dl0 / d + (g0 - beta * b.g00 * dl0 / d) / (beta * b.g00);
  };
}

DressedGreen dress(const G0Evaluator& g, const SingularParams& p) {
  if (p.beta == 0.0 && !p.P) {
    return p.alpha == 0.0 ? bare(g) : dress_delta(g, p.alpha);
  }
  if (p.P) return assemble_general(g, p);
  return dress_delta_prime(g);
}

// ---------------------------------------------------------------------------

cplx DressedGreen::origin_value(const Point& b) const {
  const Point& o = g0_.origin();
  const BoundaryData& bd = g0_.boundary();
  return (g0_.value(o, b) - params_.beta * bd.g00 / d_ * g0_.d_left(o, b)) / denominator_;
}

cplx DressedGreen::origin_derivative(const Point& b) const {
  const Point& o = g0_.origin();
  const cplx coupling = params_.alpha * g0_.boundary().dL + params_.beta * params_.P.value_or(0.0);
  return (g0_.d_left(o, b) - coupling * origin_value(b)) / d_;
}

cplx DressedGreen::value(const Point& a, const Point& b) const {
  const Point& o = g0_.origin();
  switch (mode_) {
    case Dressing::Bare:
      return g0_.value(a, b);

    case Dressing::DeltaOnly:
      return g0_.value(a, b) -
             params_.alpha * g0_.value(a, o) * g0_.value(o, b) / delta_denominator_;

    case Dressing::GeneralFinite: {
      cplx g0b = origin_value(b);
      cplx dlb = origin_derivative(b);
      cplx ga0 = g0_.value(a, o);
      return g0_.value(a, b) - params_.alpha * ga0 * g0b - params_.beta * g0_.d_right(a, o) * g0b -
             params_.beta * ga0 * dlb;
    }

    case Dressing::DeltaPrimeLimit: {
      // Opposite half-lines or either point at the origin: the subtracted
      // term equals G0 identically.
      if (a.x == 0.0 || b.x == 0.0 || (a.x > 0.0) != (b.x > 0.0)) return cplx(0.0);
      const cplx c = g0_.constant().scaled;
      if (a.x > 0.0) {
        // phi(x) = y1(x) - y1(0)/y2(0) y2(x) vanishes at the origin.
        auto phi = [&](const Point& p) { return p.y1 - ratio10_ * p.y2; };
        cplx lo = a.x < b.x ? b.y2 * phi(a) : a.y2 * phi(b);
        if (a.x == b.x) lo = 0.5 * (b.y2 * phi(a) + a.y2 * phi(b));
        return c * lo;
      }
      auto psi = [&](const Point& p) { return p.y2 - ratio01_ * p.y1; };
      cplx hi = a.x < b.x ? a.y1 * psi(b) : b.y1 * psi(a);
      if (a.x == b.x) hi = 0.5 * (a.y1 * psi(b) + b.y1 * psi(a));
      return c * hi;
    }
  }
  return cplx(0.0);
}

cplx DressedGreen::value(double x, double xp) const {
  return value(g0_.point(x), g0_.point(xp));
}

std::vector<cplx> DressedGreen::matrix(std::span<const double> xs,
                                       std::span<const double> xps) const {
  auto pa = g0_.points(xs);
  auto pb = g0_.points(xps);
  std::vector<cplx> out(xs.size() * xps.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xps.size(); ++j) out[i * xps.size() + j] = value(pa[i], pb[j]);
  return out;
}

}  // namespace sgreen
