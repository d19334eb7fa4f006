#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "robinstab/geometry.hpp"
#include "robinstab/stationary.hpp"

namespace robinstab::spectrum {

// Self-adjoint discretization of
//   (p g')' + q g + lambda w g = 0,   g'(lo) = alpha g(lo), g'(hi) = -alpha g(hi)
// on a uniform grid. p and w are the domain weight, q = w (f'(v) - k^2/psi^2).
struct SturmLiouvilleProblem {
  std::vector<double> p;  // nodal weight
  std::vector<double> q;  // nodal potential times weight
  std::vector<double> w;  // nodal weight
  double alpha = 0.0;
  int mode_k = 0;
  double h = 0.0;
  double lo = 0.0;

  int cells() const { return static_cast<int>(p.size()) - 1; }

  // Assembled pencil A g = lambda M g: A symmetric tridiagonal (diag/off),
  // M diagonal. The quadratic forms reproduce the trapezoid Rayleigh
  // quotient exactly.
  void assemble(std::vector<double>& a_diag, std::vector<double>& a_off,
                std::vector<double>& m_diag) const;
};

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> eigenfunction;  // unit discrete L^2(w dr) norm
  int mode_k = 0;
  int n = 0;
  double residual = 0.0;
  std::optional<double> extrapolated;  // Richardson value when computed
};

// Discretization of the linearization around a radial solution for the
// Fourier mode k (surface path; k uses the 1/psi^2 angular term).
SturmLiouvilleProblem discretize(const geometry::ProfileSurface& s,
                                 const stationary::RadialSolution& sol, int mode_k, int n);

// Radial-only discretization with an arbitrary potential f'(r); used for
// model-manifold annuli and the linear problem. mode_k > 0 requires the
// domain to carry an angular metric factor.
SturmLiouvilleProblem discretize_potential(const geometry::RadialDomain& dom,
                                           const std::function<double(double)>& fprime_of_r,
                                           double alpha, int mode_k, int n);

// Minimal eigenvalue via Sturm-sequence bisection plus inverse iteration.
// For mode_k = 0 the eigenfunction is sign-fixed positive at the left
// endpoint and checked to have no sign change.
EigenResult smallest_eigenvalue(const SturmLiouvilleProblem& prob);

// lambda_1(k) for k = 0..k_max; returns the minimizer (k = 0 by
// monotonicity, which is asserted).
EigenResult lambda1_full(const geometry::ProfileSurface& s,
                         const stationary::RadialSolution& sol, int k_max, int n);

// Richardson-extrapolated principal eigenvalue from grids n and 2n.
EigenResult lambda1_extrapolated(const geometry::ProfileSurface& s,
                                 const stationary::RadialSolution& sol, int k_max, int n);
EigenResult lambda1_extrapolated(const geometry::RadialDomain& dom,
                                 const std::function<double(double)>& fprime_of_r,
                                 double alpha, int n);

// Discrete Rayleigh quotient of a radial test function (trapezoid rule;
// identical to the assembled quadratic form).
double rayleigh_quotient(const geometry::ProfileSurface& s, std::span<const double> test_fn,
                         const stationary::RadialSolution& sol, double alpha);
double rayleigh_quotient(const geometry::RadialDomain& dom, std::span<const double> test_fn,
                         const std::function<double(double)>& fprime_of_r, double alpha);

// Principal eigenvalue Lambda_1 of the linear problem (f' = 0, k = 0).
double linear_lambda(const geometry::ProfileSurface& s, double alpha, int n);
double linear_lambda(const geometry::RadialDomain& dom, double alpha, int n);

// Energy of a radial state:
//   E(u) = int |grad u|^2 dmu + alpha oint u^2 dS - 2 int F(u) dmu.
double energy(const geometry::ProfileSurface& s, std::span<const double> u,
              const stationary::Nonlinearity& nl, double alpha);
double energy(const geometry::RadialDomain& dom, std::span<const double> u,
              const stationary::Nonlinearity& nl, double alpha);

// Slack of the boundary-decomposition eigenvalue estimate for a radial
// stationary solution:
//   slack = RHS - lambda1 * int |grad u|^2 dmu,  RHS the boundary sum minus
//   the radial Ricci integral. Nonnegative slack (up to tolerance) is the
//   certified inequality.
struct BoundarySlack {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double scale = 1.0;
};
BoundarySlack boundary_estimate_slack(const stationary::RadialSolution& sol, double lambda1);

}  // namespace robinstab::spectrum
