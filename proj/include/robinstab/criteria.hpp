#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robinstab/geometry.hpp"
#include "robinstab/stationary.hpp"

namespace robinstab::criteria {

enum class Verdict { Holds, Fails, NotApplicable };
enum class Classification { Unstable, AsymptoticallyStable, NeutrallyStable, Inconclusive };

std::string to_string(Verdict v);
std::string to_string(Classification c);

struct CriterionResult {
  std::string id;
  Verdict verdict = Verdict::NotApplicable;
  double witness = 0.0;
  std::string note;
};

struct StabilityReport {
  std::vector<CriterionResult> verdicts;
  std::optional<double> lambda1;
  Classification classification = Classification::Inconclusive;
  std::string headline;
};

// Strictness conventions: strict "< 0" means < -1e-10 * scale, weak
// inequalities carry the same +-1e-10 * scale slack.
inline constexpr double kStrictTol = 1e-10;
inline constexpr double kLambdaTol = 1e-6;

// Classifies from computed lambda1 (which overrides) and criterion verdicts.
Classification classify(const std::optional<double>& lambda1, bool any_instability_holds,
                        bool barta_passed);

// --- Planar domains -------------------------------------------------------

// One closed boundary curve of constant curvature (circle) carrying the
// boundary trace of u.
struct BoundaryComponent {
  double kappa = 0.0;   // signed curvature, positively oriented boundary
  double length = 0.0;
  double u = 0.0;       // trace of the solution
};

struct PlaneCriteria {
  CriterionResult c0;  // boundary integral, division-free form
  CriterionResult c1;  // min(alpha + kappa) >= 0
  CriterionResult c2;  // per-component pointwise condition
  bool unstable = false;
};

// Theorem-2.1-style planar test. With radial_u the tangential term drops and
// (C0) alone decides. f(u)/(alpha u) terms with |u| < 1e-12 mark the
// component not-applicable for (C2).
PlaneCriteria plane_criteria(std::span<const BoundaryComponent> boundary, double alpha,
                             const stationary::Nonlinearity& f, bool radial_u);
PlaneCriteria plane_criteria(const geometry::PlaneAnnulus& annulus, double u_inner,
                             double u_outer, double alpha, const stationary::Nonlinearity& f,
                             bool radial_u = true);

// --- Annular domains on surfaces and models -------------------------------

// Boundary expression
//   w(hi)[H_hi a^2 v_hi^2 + a v_hi f(v_hi) + a^3 v_hi^2]
//   + w(lo)[H_lo a^2 v_lo^2 + a v_lo f(v_lo) + a^3 v_lo^2],
// with (m-1)H = -w'/w at hi and +w'/w at lo (outer normals).
double boundary_expression(const geometry::RadialDomain& dom, double v_lo, double v_hi,
                           double alpha, const stationary::Nonlinearity& f);

struct AnnulusInstability {
  CriterionResult convexity;  // -(w'/w-shape)' >= 0 on the grid
  CriterionResult boundary;   // boundary expression < 0
  bool unstable = false;
};

// Sufficient instability test for radial solutions on a revolution surface:
// -(psi'/psi)' >= 0 together with a negative boundary expression.
AnnulusInstability revolution_instability(const geometry::ProfileSurface& s,
                                          const stationary::RadialSolution& sol, double alpha);

// Same test on a model-manifold annulus (S(r) replacing 2 pi psi). The
// convexity hypothesis is -(phi'/phi)' >= 0.
AnnulusInstability model_instability(const geometry::ModelManifold& m, double rho, double R,
                                     const stationary::RadialSolution& sol, double alpha);

// --- Constant solutions ----------------------------------------------------

struct ConstantSolutionResult {
  bool exists = false;       // f(0) = 0 required
  double f_prime_at_zero = 0.0;
  double Lambda1 = 0.0;
  Classification verdict = Classification::Inconclusive;
  std::string note;
};

ConstantSolutionResult constant_solution(const geometry::RadialDomain& dom,
                                         const stationary::Nonlinearity& f, double alpha,
                                         int n);

// --- Straight cylinders ----------------------------------------------------

struct StraightCylinder {
  double cross_length;  // length of the closed cross-section curve
  double axial_length;
};

struct CylinderCriteria {
  double integral = 0.0;  // oint alpha^3 u^2 + alpha u f(u)
  CriterionResult strict;     // i)
  CriterionResult weak_pos;   // ii) alpha > 0
  CriterionResult weak_sign;  // iii) alpha < 0 and u of one sign
  bool unstable = false;
};

// u given by its axial profile; the boundary circles carry u(first), u(last).
CylinderCriteria cylinder_criteria(const StraightCylinder& cyl, std::span<const double> u_axial,
                                   double alpha, const stationary::Nonlinearity& f);
// 2D overload: rows are axial samples, each row holds tangential samples;
// tangential variation above tol is a precondition failure.
CylinderCriteria cylinder_criteria(const StraightCylinder& cyl,
                                   const std::vector<std::vector<double>>& u_grid, double alpha,
                                   const stationary::Nonlinearity& f, double tangential_tol = 1e-10);

// --- Curvature-based sufficient conditions on manifolds --------------------

struct ManifoldSufficient {
  double ric_min = 0.0;          // min Ricci eigenvalue over the grid
  bool ric_ok = false;
  double boundary_sum = 0.0;     // same expression as boundary_expression
  CriterionResult strict;        // Ric >= 0 and boundary sum < 0
  CriterionResult weak;          // relaxed <= 0 with sign conditions on alpha, u
  bool auto_satisfied = false;   // alpha > 0 and t f(t) <= -alpha^2 m t^2 sampled
  bool unstable = false;
};

// For radial solutions the second-fundamental-form hypothesis is waived
// (the boundary trace is constant on each component).
ManifoldSufficient manifold_sufficient(const stationary::RadialSolution& sol, double alpha);

// --- Estimates for certified-stable solutions ------------------------------

struct StableEstimate {
  std::string id;
  Verdict verdict = Verdict::NotApplicable;
  double lhs = 0.0, rhs = 0.0;
  std::string note;
};

// Lower bounds implied by stability (lambda1 >= 0): the linear-eigenfunction
// bound lambda1 >= -[alpha^2 + (m-1)H_max alpha] and the power-nonlinearity
// bound max|u|^(p-1) >= -[alpha^2 + (m-1)H_max alpha] + c^2.
std::vector<StableEstimate> stable_solution_estimates(const stationary::RadialSolution& sol,
                                                      double lambda1, double alpha);

// --- Positive-supersolution certificate ------------------------------------

struct BartaResult {
  bool pass = false;
  double min_interior_margin = 0.0;  // max over interior of Lap w + f'(Z) w (want < 0)
  double worst_r = 0.0;
  double boundary_inner = 0.0;  // -w'(lo) + alpha w(lo), want >= 0
  double boundary_outer = 0.0;  // w'(hi) + alpha w(hi), want >= 0
  std::string failure;
};

// Checks Lap w + f'(Z) w < -margin in the interior (finite differences on
// the shared grid) and the Robin supersolution inequalities at both ends.
// A pass certifies lambda1 > 0. Requires w > 0 everywhere.
BartaResult barta_certificate(const stationary::RadialSolution& Z, std::span<const double> w,
                              double alpha, double margin = 0.0);

// Text rendering of a report (one line per criterion plus the headline).
std::string report_text(const StabilityReport& report);

}  // namespace robinstab::criteria
