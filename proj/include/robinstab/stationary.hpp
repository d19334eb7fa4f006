#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robinstab/geometry.hpp"

namespace robinstab::stationary {

// Reaction term f with derivative and antiderivative F, F(0) = 0.
struct Nonlinearity {
  enum class Kind { ClosedForm, Constructed };

  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::function<double(double)> F;
  Kind kind = Kind::ClosedForm;
  std::string name = "custom";
  // Defining parameters of the built-in forms, e.g. {a, b} for the cubic.
  std::vector<double> params;
  // u-locations where f'' jumps; derivative spot checks step around these.
  std::vector<double> kinks;

  // Validates f' against central differences of f and F' against f on a
  // sample grid spanning [u_lo, u_hi].
  void validate(double u_lo = -2.0, double u_hi = 2.0) const;
};

Nonlinearity make_zero_nonlinearity();
Nonlinearity make_linear(double lambda);                  // f = lambda u
Nonlinearity make_cubic(double a, double b);              // f = a u + b u^3
Nonlinearity make_power(double c, double p);              // f = -c^2 u + |u|^(p-1) u
Nonlinearity make_custom(std::function<double(double)> f,
                         std::function<double(double)> f_prime,
                         std::function<double(double)> F, std::string name = "custom");

// A radial stationary solution of  v'' + (w'/w) v' + f(v) = 0  with Robin
// conditions -v'(lo) + alpha v(lo) = 0 and v'(hi) + alpha v(hi) = 0.
struct RadialSolution {
  std::vector<double> grid;     // uniform nodes lo..hi, n+1 entries
  std::vector<double> v;
  std::vector<double> v_prime;
  double alpha = 0.0;
  geometry::RadialDomain domain;
  Nonlinearity nonlinearity;

  int cells() const { return static_cast<int>(grid.size()) - 1; }
  double h() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
  // Hermite evaluation of v, v' between the stored nodes.
  double value(double r) const;
  double deriv(double r) const;
};

struct ShootResult {
  std::vector<double> grid, v, v_prime;
  double terminal_residual = 0.0;  // v'(hi) + alpha v(hi)
  bool diverged = false;
  double blowup_at = 0.0;          // r where the blowup bound tripped
};

// Integrates the IVP v(lo) = c, v'(lo) = alpha c with classical RK4 on a
// uniform grid of n cells. `blowup_factor` scales the divergence bound
// 1e8 * (1 + |c|).
ShootResult shoot(const geometry::RadialDomain& dom, const Nonlinearity& f, double alpha,
                  double c, int n, double blowup_factor = 1.0);
ShootResult shoot(const geometry::ProfileSurface& s, const Nonlinearity& f, double alpha,
                  double c, int n, double blowup_factor = 1.0);

struct ScanResult {
  std::vector<RadialSolution> solutions;
  int diverged_shots = 0;
  bool plateau_detected = false;  // near-zero residual run (linear family)
};

// Scans c over n_scan points in [c_lo, c_hi], brackets sign changes of the
// terminal residual and refines each bracket by bisection. Near-zero
// plateaus (one-parameter linear families) yield one sup-norm-normalized
// representative.
ScanResult solve_stationary(const geometry::RadialDomain& dom, const Nonlinearity& f,
                            double alpha, double c_lo, double c_hi, int n_scan, int n);
ScanResult solve_stationary(const geometry::ProfileSurface& s, const Nonlinearity& f,
                            double alpha, double c_lo, double c_hi, int n_scan, int n);

struct ValidationReport {
  double max_ode_residual = 0.0;      // fourth-order check using stored v'
  double max_ode_residual_fd2 = 0.0;  // plain second-order check from values only
  double robin_residual_inner = 0.0;
  double robin_residual_outer = 0.0;
  double tolerance = 0.0;
  bool valid = false;
};

// Residual tolerance used by validate: max(1e-8, 100 h^4 scale).
double residual_tolerance(const RadialSolution& sol);

ValidationReport validate(const RadialSolution& sol);

// Builds a RadialSolution directly from tabulated data (used when loading
// references from disk; performs no solving).
RadialSolution make_solution(const geometry::RadialDomain& dom, const Nonlinearity& f,
                             double alpha, std::vector<double> grid, std::vector<double> v,
                             std::vector<double> v_prime);

}  // namespace robinstab::stationary
