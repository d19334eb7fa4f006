#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace robinstab::geometry {

// A scalar function with analytic first and second derivatives.
struct SmoothFn {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
};

// Builds a SmoothFn whose derivatives come from 5-point central stencils,
// for table- or expression-defined profiles without analytic derivatives.
SmoothFn finite_difference_fn(std::function<double(double)> f, double h = 1e-4);

// Shared view of a radial problem: the Laplacian of a radial function is
// u'' + (w'/w) u', the volume element is d(mu) = w dr, and each boundary
// component at r in {lo, hi} has measure w(r). Surfaces of revolution use
// w = 2*pi*psi, model-manifold annuli use w = S(r) = omega_m * phi^(m-1).
struct RadialDomain {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  int dim = 2;  // manifold dimension m
  SmoothFn weight_fn;
  std::function<double(double)> ricci_radial;  // Ric(d_r, d_r), unit radial direction
  std::function<double(double)> ricci_min;     // smallest Ricci eigenvalue at r
  std::function<double(double)> angular_inv2;  // 1/psi(r)^2 for Fourier modes; null if n/a

  double length() const { return hi - lo; }
  double weight(double r) const { return weight_fn.f(r); }
  double weight_prime(double r) const { return weight_fn.df(r); }
  double weight_second(double r) const { return weight_fn.d2f(r); }
  // Drift coefficient w'/w of the radial Laplacian.
  double drift(double r) const { return weight_fn.df(r) / weight_fn.f(r); }
  // (w'/w)' = w''/w - (w'/w)^2; for surfaces this equals (psi'/psi)'.
  double drift_prime(double r) const {
    const double w = weight_fn.f(r), wp = weight_fn.df(r);
    return weight_fn.d2f(r) / w - (wp / w) * (wp / w);
  }
  void require_inside(double r, const char* op) const;
};

// Surface of revolution with unit-speed profile psi on [r_lo, r_hi].
// The metric is dr^2 + psi(r)^2 dtheta^2; chi is implied by
// chi' = sqrt(1 - psi'^2) and never stored.
class ProfileSurface {
 public:
  ProfileSurface(std::string name, SmoothFn psi, double r_lo, double r_hi);

  const std::string& name() const { return name_; }
  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }
  double length() const { return r_hi_ - r_lo_; }

  double psi(double r) const { return psi_.f(r); }
  double psi_prime(double r) const { return psi_.df(r); }
  double psi_second(double r) const { return psi_.d2f(r); }

  void require_inside(double r, const char* op) const;

  // Radial-problem view with weight 2*pi*psi.
  RadialDomain domain() const;

 private:
  std::string name_;
  SmoothFn psi_;
  double r_lo_, r_hi_;
};

// Spherically symmetric manifold M_phi of dimension m with warping function
// phi in class A: phi(0) = 0, phi'(0) = 1, phi > 0 on (0, r_max).
class ModelManifold {
 public:
  ModelManifold(std::string name, SmoothFn phi, int dim_m, double r_max);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double r_max() const { return r_max_; }
  double unit_sphere_area() const { return omega_; }

  double phi(double r) const { return phi_.f(r); }
  double phi_prime(double r) const { return phi_.df(r); }
  double phi_second(double r) const { return phi_.d2f(r); }

  // Boundary area S(r) = omega_m phi^(m-1)(r) of the geodesic sphere.
  double sphere_area(double r) const;

  // Radial-problem view of the annulus B_R \ B_rho with weight S(r).
  RadialDomain annulus(double rho, double R) const;

 private:
  std::string name_;
  SmoothFn phi_;
  int dim_;
  double r_max_;
  double omega_;
};

struct PlaneAnnulus {
  double r0;  // inner radius, > 0
  double R;   // outer radius, > r0

  PlaneAnnulus(double inner, double outer);
  // Signed curvature of the positively oriented boundary circles.
  double kappa_inner() const { return -1.0 / r0; }
  double kappa_outer() const { return 1.0 / R; }
  double length_inner() const;
  double length_outer() const;
};

// Boundary circle data of an annular revolution-surface domain.
struct BoundaryData {
  double H_inner = 0.0, H_outer = 0.0;        // mean curvature w.r.t. outer normal
  double L_inner = 0.0, L_outer = 0.0;        // circle lengths 2*pi*psi
  double kappa_g_inner = 0.0, kappa_g_outer = 0.0;  // geodesic curvature psi'/psi
};

// Gaussian (= Ricci) curvature -psi''/psi of the surface.
double ricci_revolution(const ProfileSurface& s, double r);

// Radial Ricci curvature -(m-1) phi''/phi of a model manifold.
double ricci_model(const ModelManifold& m, double r);

// Smallest eigenvalue of the Ricci tensor of a model at radius r:
// min of the radial value and -phi''/phi + (m-2)(1 - phi'^2)/phi^2.
double ricci_model_min(const ModelManifold& m, double r);

// Geodesic curvature psi'/psi of the parallel circle r = const.
double geodesic_curvature(const ProfileSurface& s, double r);

// (psi'/psi)'(r); positive values open the pattern-construction window,
// nonpositive values feed the instability criteria.
double convexity_indicator(const ProfileSurface& s, double r);

// Data of the two boundary circles. `a` must be the surface's outer endpoint.
BoundaryData boundary_data(const ProfileSurface& s, double a);

// (boundary area S(R), ball volume Vol(B_R)) of a model manifold.
std::pair<double, double> model_area_volume(const ModelManifold& m, double R);

// Max pointwise defect of the Bochner identity
//   1/2 Lap |grad u|^2 = |Hess u|^2 + Ric(grad u, grad u) + <grad Lap u, grad u>
// for a radial u tabulated on a uniform grid over the surface's interval.
double bochner_residual(const ProfileSurface& s, std::span<const double> u,
                        std::span<const double> grid);

// Built-in profiles. All intervals are [r_lo, r_hi] with r_lo < r_hi.
ProfileSurface make_cylinder(double c, double r_lo, double r_hi);
ProfileSurface make_cone(double c, double k, double r_lo, double r_hi);      // psi = c + k r
ProfileSurface make_catenoid(double c, double r_lo, double r_hi);            // psi = sqrt(1+(r-c)^2)
ProfileSurface make_sphere_profile(double r_lo, double r_hi);                // psi = sin r

// Built-in models.
ModelManifold make_euclidean_model(int dim_m, double r_max);  // phi = r
ModelManifold make_sphere_model(int dim_m, double r_max);     // phi = sin r, r_max <= pi
ModelManifold make_hyperbolic_model(int dim_m, double r_max); // phi = sinh r

}  // namespace robinstab::geometry
