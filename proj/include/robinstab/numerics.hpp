#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

// Small numerical kernels shared across the library: quadrature, Hermite
// interpolation, shape-preserving cubic interpolation, and a symmetric
// tridiagonal eigensolver (Sturm-sequence bisection plus inverse iteration).
namespace robinstab::numerics {

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10);

// Composite trapezoid of nodal values on a uniform grid with spacing h.
double trapezoid(std::span<const double> values, double h);

// Cumulative integral on a uniform grid using the derivative-corrected
// trapezoid rule (exact for cubics on each cell):
//   I_{i+1} = I_i + h*(f_i + f_{i+1})/2 + h^2*(fp_i - fp_{i+1})/12.
// Returns the running integral at every node, starting at 0.
std::vector<double> cumulative_integral_hermite(std::span<const double> values,
                                                std::span<const double> derivs, double h);

// Piecewise cubic Hermite evaluation on a uniform grid [lo, lo + n*h].
// `values` and `derivs` hold nodal f and f'. Clamps x to the grid range.
double hermite_eval(std::span<const double> values, std::span<const double> derivs,
                    double lo, double h, double x);
double hermite_eval_deriv(std::span<const double> values, std::span<const double> derivs,
                          double lo, double h, double x);

// Monotone (Fritsch-Carlson) piecewise cubic through strictly increasing
// abscissae. Shape preserving: monotone data yields a monotone interpolant.
class PchipInterpolant {
 public:
  PchipInterpolant() = default;
  PchipInterpolant(std::vector<double> x, std::vector<double> y);

  double operator()(double u) const;
  double derivative(double u) const;
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, slope_;
};

// Quintic Hermite polynomial on [x0, x1] matching value, first and second
// derivative at both ends. Used for C^2 joins.
class QuinticHermite {
 public:
  QuinticHermite() = default;
  QuinticHermite(double x0, double x1, double f0, double df0, double d2f0, double f1,
                 double df1, double d2f1);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

 private:
  double x0_ = 0.0, width_ = 1.0;
  double c_[6] = {0, 0, 0, 0, 0, 0};  // coefficients in t = (x - x0)/width
};

// Symmetric tridiagonal matrix: diag has size n, off has size n-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;
};

struct TridiagEigenResult {
  double lambda = 0.0;
  std::vector<double> vector;   // 2-norm normalized
  double residual = 0.0;        // ||T v - lambda v||_2 / max(1, ||T||_inf)
  int bisect_steps = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool converged = false;
};

// Number of eigenvalues of T strictly less than x (Sturm sequence count).
int sturm_count(const SymTridiag& t, double x);

// Smallest eigenvalue by bisection on the Sturm count, then the eigenvector
// by inverse iteration with the LDL^T factorization of the shifted matrix.
TridiagEigenResult smallest_eigenpair(const SymTridiag& t, int max_bisect = 200,
                                      int max_inverse_iters = 8);

// Least-squares slope of y against x. Returns {slope, intercept}.
std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace robinstab::numerics
