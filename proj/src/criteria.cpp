#include "robinstab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "robinstab/spectrum.hpp"

namespace robinstab::criteria {

namespace {

constexpr double kZeroTrace = 1e-12;

double strict_threshold(double scale) { return -kStrictTol * (1.0 + std::abs(scale)); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Unstable: return "Unstable";
    case Classification::AsymptoticallyStable: return "AsymptoticallyStable";
    case Classification::NeutrallyStable: return "NeutrallyStable";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Classification classify(const std::optional<double>& lambda1, bool any_instability_holds,
                        bool barta_passed) {
  if (lambda1.has_value()) {
    if (*lambda1 > kLambdaTol) return Classification::AsymptoticallyStable;
    if (*lambda1 < -kLambdaTol) return Classification::Unstable;
    return Classification::NeutrallyStable;
  }
  if (any_instability_holds) return Classification::Unstable;
  if (barta_passed) return Classification::AsymptoticallyStable;
  return Classification::Inconclusive;
}

PlaneCriteria plane_criteria(std::span<const BoundaryComponent> boundary, double alpha,
                             const stationary::Nonlinearity& nl, bool radial_u) {
  if (alpha == 0.0) throw std::invalid_argument("plane_criteria: alpha must be nonzero");
  if (boundary.empty()) throw std::invalid_argument("plane_criteria: empty boundary");

  PlaneCriteria out;
  // (C0): oint alpha^2 u^2 (alpha - kappa) + alpha u f(u) ds, written without
  // the f(u)/(alpha u) quotient so zero traces are harmless.
  double c0 = 0.0;
  double c0_scale = 0.0;
  for (const auto& comp : boundary) {
    const double term = alpha * alpha * comp.u * comp.u * (alpha - comp.kappa) +
                        alpha * comp.u * nl.f(comp.u);
    c0 += comp.length * term;
    c0_scale = std::max(c0_scale, std::abs(comp.length * term));
  }
  out.c0.id = "plane.C0";
  out.c0.witness = c0;
  out.c0.verdict = c0 < strict_threshold(c0_scale) ? Verdict::Holds : Verdict::Fails;

  // (C1): alpha + kappa_min >= 0.
  double kappa_min = boundary.front().kappa;
  for (const auto& comp : boundary) kappa_min = std::min(kappa_min, comp.kappa);
  out.c1.id = "plane.C1";
  out.c1.witness = alpha + kappa_min;
  if (radial_u) {
    out.c1.verdict = Verdict::NotApplicable;
    out.c1.note = "boundary is a level line of u; dropped";
  } else {
    out.c1.verdict = out.c1.witness >= -kStrictTol * (1.0 + std::abs(kappa_min))
                         ? Verdict::Holds
                         : Verdict::Fails;
  }

  // (C2): per component, alpha - kappa + f(u)/(alpha u) < 0.
  out.c2.id = "plane.C2";
  double c2_max = -std::numeric_limits<double>::infinity();
  bool c2_applicable = true;
  for (const auto& comp : boundary) {
    if (std::abs(comp.u) < kZeroTrace) {
      c2_applicable = false;
      out.c2.note = "u vanishes on a boundary component";
      continue;
    }
    c2_max = std::max(c2_max, alpha - comp.kappa + nl.f(comp.u) / (alpha * comp.u));
  }
  if (!c2_applicable) {
    out.c2.verdict = Verdict::NotApplicable;
  } else {
    out.c2.witness = c2_max;
    out.c2.verdict = c2_max < strict_threshold(c2_max) ? Verdict::Holds : Verdict::Fails;
  }

  const bool c1_ok = radial_u || out.c1.verdict == Verdict::Holds;
  out.unstable = out.c0.verdict == Verdict::Holds && c1_ok;
  return out;
}

PlaneCriteria plane_criteria(const geometry::PlaneAnnulus& annulus, double u_inner,
                             double u_outer, double alpha, const stationary::Nonlinearity& nl,
                             bool radial_u) {
  const BoundaryComponent comps[2] = {
      {annulus.kappa_inner(), annulus.length_inner(), u_inner},
      {annulus.kappa_outer(), annulus.length_outer(), u_outer},
  };
  return plane_criteria(comps, alpha, nl, radial_u);
}

double boundary_expression(const geometry::RadialDomain& dom, double v_lo, double v_hi,
                           double alpha, const stationary::Nonlinearity& nl) {
  const double w_lo = dom.weight(dom.lo), w_hi = dom.weight(dom.hi);
  const double mH_hi = -dom.weight_prime(dom.hi) / w_hi;  // (m-1)H, outer normal
  const double mH_lo = dom.weight_prime(dom.lo) / w_lo;
  const double a = alpha;
  return w_hi * (mH_hi * a * a * v_hi * v_hi + a * v_hi * nl.f(v_hi) + a * a * a * v_hi * v_hi) +
         w_lo * (mH_lo * a * a * v_lo * v_lo + a * v_lo * nl.f(v_lo) + a * a * a * v_lo * v_lo);
}

namespace {

AnnulusInstability annulus_instability(const geometry::RadialDomain& dom,
                                       const std::function<double(double)>& shape_indicator,
                                       const char* conv_id, const char* bd_id,
                                       const stationary::RadialSolution& sol, double alpha) {
  AnnulusInstability out;
  // Convexity hypothesis: -(indicator) >= 0 on the grid.
  double max_indicator = -std::numeric_limits<double>::infinity();
  const int samples = std::max(sol.cells(), 256);
  for (int i = 0; i <= samples; ++i) {
    const double r = dom.lo + dom.length() * i / double(samples);
    max_indicator = std::max(max_indicator, shape_indicator(r));
  }
  out.convexity.id = conv_id;
  out.convexity.witness = -max_indicator;  // min of -(indicator)
  out.convexity.verdict =
      max_indicator <= kStrictTol * (1.0 + std::abs(max_indicator)) ? Verdict::Holds : Verdict::Fails;

  const double value = boundary_expression(dom, sol.v.front(), sol.v.back(), alpha,
                                           sol.nonlinearity);
  out.boundary.id = bd_id;
  out.boundary.witness = value;
  out.boundary.verdict = value < strict_threshold(value) ? Verdict::Holds : Verdict::Fails;
  if (out.convexity.verdict != Verdict::Holds) {
    out.boundary.note = "convexity hypothesis fails; criterion not applicable";
    out.unstable = false;
  } else {
    out.unstable = out.boundary.verdict == Verdict::Holds;
  }
  return out;
}

}  // namespace

AnnulusInstability revolution_instability(const geometry::ProfileSurface& s,
                                          const stationary::RadialSolution& sol, double alpha) {
  auto indicator = [&s](double r) { return convexity_indicator(s, r); };
  auto out = annulus_instability(s.domain(), indicator, "revolution.convexity",
                                 "revolution.boundary", sol, alpha);
  if (out.convexity.verdict != Verdict::Holds) {
    out.convexity.note = "(psi'/psi)' > 0 somewhere";
    out.convexity.verdict = Verdict::NotApplicable;
  }
  return out;
}

AnnulusInstability model_instability(const geometry::ModelManifold& m, double rho, double R,
                                     const stationary::RadialSolution& sol, double alpha) {
  auto indicator = [&m](double r) {
    const double p = m.phi(r), dp = m.phi_prime(r);
    return m.phi_second(r) / p - (dp / p) * (dp / p);  // (phi'/phi)'
  };
  auto out = annulus_instability(m.annulus(rho, R), indicator, "model.convexity",
                                 "model.boundary", sol, alpha);
  if (out.convexity.verdict != Verdict::Holds) {
    out.convexity.note = "(phi'/phi)' > 0 somewhere";
    out.convexity.verdict = Verdict::NotApplicable;
  }
  return out;
}

ConstantSolutionResult constant_solution(const geometry::RadialDomain& dom,
                                         const stationary::Nonlinearity& nl, double alpha,
                                         int n) {
  ConstantSolutionResult out;
  if (alpha == 0.0) throw std::invalid_argument("constant_solution: alpha must be nonzero");
  if (std::abs(nl.f(0.0)) > kZeroTrace) {
    out.exists = false;
    out.note = "no constant solution exists (f(0) != 0)";
    return out;
  }
  out.exists = true;
  out.f_prime_at_zero = nl.f_prime(0.0);
  out.Lambda1 = spectrum::linear_lambda(dom, alpha, n);
  const double gap = out.f_prime_at_zero - out.Lambda1;
  const double tol = kLambdaTol * (1.0 + std::abs(out.Lambda1));
  if (gap > tol) {
    out.verdict = Classification::Unstable;
  } else if (gap < -tol) {
    out.verdict = Classification::AsymptoticallyStable;
  } else {
    out.verdict = Classification::Inconclusive;
    out.note = "f'(0) within tolerance of Lambda_1";
  }
  return out;
}

CylinderCriteria cylinder_criteria(const StraightCylinder& cyl, std::span<const double> u_axial,
                                   double alpha, const stationary::Nonlinearity& nl) {
  if (u_axial.size() < 2) throw std::invalid_argument("cylinder_criteria: need axial samples");
  CylinderCriteria out;
  const double u0 = u_axial.front(), u1 = u_axial.back();
  const double term0 = alpha * alpha * alpha * u0 * u0 + alpha * u0 * nl.f(u0);
  const double term1 = alpha * alpha * alpha * u1 * u1 + alpha * u1 * nl.f(u1);
  out.integral = cyl.cross_length * (term0 + term1);
  const double scale = 1.0 + std::abs(out.integral);

  double sup = 0.0, min_u = u_axial[0], max_u = u_axial[0];
  for (double u : u_axial) {
    sup = std::max(sup, std::abs(u));
    min_u = std::min(min_u, u);
    max_u = std::max(max_u, u);
  }
  const bool nontrivial = sup > kZeroTrace;
  const bool one_sign = min_u >= -kZeroTrace || max_u <= kZeroTrace;

  out.strict.id = "cylinder.i";
  out.strict.witness = out.integral;
  out.strict.verdict = out.integral < -kStrictTol * scale ? Verdict::Holds : Verdict::Fails;

  out.weak_pos.id = "cylinder.ii";
  out.weak_pos.witness = out.integral;
  if (alpha > 0.0 && nontrivial) {
    out.weak_pos.verdict =
        out.integral <= kStrictTol * scale ? Verdict::Holds : Verdict::Fails;
  } else {
    out.weak_pos.verdict = Verdict::NotApplicable;
    out.weak_pos.note = nontrivial ? "alpha <= 0" : "u vanishes identically";
  }

  out.weak_sign.id = "cylinder.iii";
  out.weak_sign.witness = out.integral;
  if (alpha < 0.0 && nontrivial && one_sign) {
    out.weak_sign.verdict =
        out.integral <= kStrictTol * scale ? Verdict::Holds : Verdict::Fails;
  } else {
    out.weak_sign.verdict = Verdict::NotApplicable;
    if (!nontrivial) {
      out.weak_sign.note = "u vanishes identically";
    } else if (alpha >= 0.0) {
      out.weak_sign.note = "alpha >= 0";
    } else {
      out.weak_sign.note = "u changes sign";
    }
  }

  out.unstable = out.strict.verdict == Verdict::Holds ||
                 out.weak_pos.verdict == Verdict::Holds ||
                 out.weak_sign.verdict == Verdict::Holds;
  return out;
}

CylinderCriteria cylinder_criteria(const StraightCylinder& cyl,
                                   const std::vector<std::vector<double>>& u_grid, double alpha,
                                   const stationary::Nonlinearity& nl, double tangential_tol) {
  if (u_grid.empty()) throw std::invalid_argument("cylinder_criteria: empty 2D grid");
  std::vector<double> axial(u_grid.size());
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const auto& row = u_grid[i];
    if (row.empty()) throw std::invalid_argument("cylinder_criteria: empty tangential row");
    const auto [mn, mx] = std::minmax_element(row.begin(), row.end());
    if (*mx - *mn > tangential_tol * (1.0 + std::abs(*mx))) {
      throw std::invalid_argument("cylinder_criteria: u varies tangentially");
    }
    axial[i] = row.front();
  }
  return cylinder_criteria(cyl, axial, alpha, nl);
}

ManifoldSufficient manifold_sufficient(const stationary::RadialSolution& sol, double alpha) {
  ManifoldSufficient out;
  const auto& dom = sol.domain;
  out.ric_min = std::numeric_limits<double>::infinity();
  const int samples = std::max(sol.cells(), 256);
  for (int i = 0; i <= samples; ++i) {
    const double r = dom.lo + dom.length() * i / double(samples);
    out.ric_min = std::min(out.ric_min, dom.ricci_min(r));
  }
  out.ric_ok = out.ric_min >= -kStrictTol * (1.0 + std::abs(out.ric_min));
  out.boundary_sum = boundary_expression(dom, sol.v.front(), sol.v.back(), alpha,
                                         sol.nonlinearity);
  const double scale = 1.0 + std::abs(out.boundary_sum);

  double sup = 0.0, min_u = sol.v[0], max_u = sol.v[0];
  for (double u : sol.v) {
    sup = std::max(sup, std::abs(u));
    min_u = std::min(min_u, u);
    max_u = std::max(max_u, u);
  }
  const bool nontrivial = sup > kZeroTrace;
  const bool one_sign = min_u >= -kZeroTrace || max_u <= kZeroTrace;

  out.strict.id = "manifold.strict";
  out.strict.witness = out.boundary_sum;
  if (!out.ric_ok) {
    out.strict.verdict = Verdict::NotApplicable;
    out.strict.note = "Ricci negative somewhere";
  } else {
    out.strict.verdict =
        out.boundary_sum < -kStrictTol * scale ? Verdict::Holds : Verdict::Fails;
  }

  out.weak.id = "manifold.weak";
  out.weak.witness = out.boundary_sum;
  if (!out.ric_ok) {
    out.weak.verdict = Verdict::NotApplicable;
    out.weak.note = "Ricci negative somewhere";
  } else if (!nontrivial) {
    out.weak.verdict = Verdict::NotApplicable;
    out.weak.note = "u vanishes identically";
  } else if (alpha > 0.0 || (alpha < 0.0 && one_sign)) {
    out.weak.verdict = out.boundary_sum <= kStrictTol * scale ? Verdict::Holds : Verdict::Fails;
  } else {
    out.weak.verdict = Verdict::NotApplicable;
    out.weak.note = alpha == 0.0 ? "alpha = 0" : "u changes sign";
  }

  // alpha > 0 with t f(t) <= -alpha^2 m t^2 sampled over the solution range.
  if (alpha > 0.0) {
    const double m = double(dom.dim);
    double span = std::max(1.0, sup);
    out.auto_satisfied = true;
    for (int i = 0; i <= 100; ++i) {
      const double t = -span + 2.0 * span * i / 100.0;
      if (t * sol.nonlinearity.f(t) > -alpha * alpha * m * t * t + kStrictTol * (1.0 + t * t)) {
        out.auto_satisfied = false;
        break;
      }
    }
  }

  out.unstable = out.strict.verdict == Verdict::Holds || out.weak.verdict == Verdict::Holds;
  return out;
}

std::vector<StableEstimate> stable_solution_estimates(const stationary::RadialSolution& sol,
                                                      double lambda1, double alpha) {
  std::vector<StableEstimate> out;
  const auto& dom = sol.domain;
  if (lambda1 < -kLambdaTol) {
    StableEstimate e;
    e.id = "stable.estimates";
    e.verdict = Verdict::NotApplicable;
    e.note = "solution not certified stable";
    out.push_back(e);
    return out;
  }
  // (m-1) H_max over the two boundary components, outer-normal convention.
  const double mH_hi = -dom.weight_prime(dom.hi) / dom.weight(dom.hi);
  const double mH_lo = dom.weight_prime(dom.lo) / dom.weight(dom.lo);
  const double mH_max = std::max(mH_hi, mH_lo);
  const double bound = -(alpha * alpha + mH_max * alpha);

  const auto& nl = sol.nonlinearity;
  if (nl.name == "linear" && nl.params.size() == 1) {
    StableEstimate e;
    e.id = "stable.linear";
    e.lhs = nl.params[0];  // lambda in f = lambda u equals lambda1 of the solution
    e.rhs = bound;
    e.verdict = e.lhs >= e.rhs - kStrictTol * (1.0 + std::abs(e.rhs)) ? Verdict::Holds
                                                                      : Verdict::Fails;
    out.push_back(e);
  } else if (nl.name == "power" && nl.params.size() == 2) {
    const double c = nl.params[0], p = nl.params[1];
    double sup = 0.0;
    for (double u : sol.v) sup = std::max(sup, std::abs(u));
    StableEstimate e;
    e.id = "stable.power";
    e.lhs = std::pow(sup, p - 1.0);
    e.rhs = bound + c * c;
    e.verdict = e.lhs >= e.rhs - kStrictTol * (1.0 + std::abs(e.rhs)) ? Verdict::Holds
                                                                      : Verdict::Fails;
    out.push_back(e);
  } else {
    StableEstimate e;
    e.id = "stable.estimates";
    e.verdict = Verdict::NotApplicable;
    e.note = "nonlinearity is neither the linear nor the power form";
    out.push_back(e);
  }
  return out;
}

BartaResult barta_certificate(const stationary::RadialSolution& Z, std::span<const double> w,
                              double alpha, double margin) {
  const std::size_t n = Z.grid.size();
  if (w.size() != n) throw std::invalid_argument("barta_certificate: w size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] > 0.0)) {
      throw std::invalid_argument("barta_certificate: w must be positive everywhere");
    }
  }
  const double h = Z.h();
  BartaResult out;
  out.min_interior_margin = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double wp = (w[i + 1] - w[i - 1]) / (2.0 * h);
    const double wpp = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
    const double lap = wpp + Z.domain.drift(Z.grid[i]) * wp;
    const double value = lap + Z.nonlinearity.f_prime(Z.v[i]) * w[i];
    scale = std::max(scale, std::abs(value));
    if (value > out.min_interior_margin) {
      out.min_interior_margin = value;
      out.worst_r = Z.grid[i];
    }
  }
  const double wp_lo = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
  const double wp_hi = (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) / (2.0 * h);
  out.boundary_inner = -wp_lo + alpha * w[0];
  out.boundary_outer = wp_hi + alpha * w[n - 1];

  const double interior_tol = std::max(margin, kStrictTol * (1.0 + scale));
  const double bd_tol = kStrictTol * (1.0 + std::abs(alpha) * (w[0] + w[n - 1]));
  const bool interior_ok = out.min_interior_margin < -interior_tol;
  const bool inner_ok = out.boundary_inner >= -bd_tol;
  const bool outer_ok = out.boundary_outer >= -bd_tol;
  out.pass = interior_ok && inner_ok && outer_ok;
  if (!interior_ok) {
    out.failure = "interior supersolution inequality fails at r = " + std::to_string(out.worst_r);
  } else if (!inner_ok) {
    out.failure = "inner Robin inequality fails";
  } else if (!outer_ok) {
    out.failure = "outer Robin inequality fails";
  }
  return out;
}

std::string report_text(const StabilityReport& report) {
  std::ostringstream os;
  os << "classification: " << to_string(report.classification) << "\n";
  if (report.lambda1.has_value()) {
    os << "lambda1: " << *report.lambda1 << "\n";
  }
  if (!report.headline.empty()) os << report.headline << "\n";
  os << "criterion                     verdict          witness\n";
  for (const auto& c : report.verdicts) {
    os << c.id;
    for (std::size_t i = c.id.size(); i < 30; ++i) os << ' ';
    std::string v = to_string(c.verdict);
    os << v;
    for (std::size_t i = v.size(); i < 17; ++i) os << ' ';
    os << c.witness;
    if (!c.note.empty()) os << "   (" << c.note << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace robinstab::criteria
