#include "robinstab/geometry.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "robinstab/numerics.hpp"

namespace robinstab::geometry {

namespace {

constexpr double kUnitSpeedTol = 1e-9;
constexpr int kValidationSamples = 257;

[[noreturn]] void domain_failure(const std::string& what, double r, double lo, double hi) {
  throw std::domain_error(what + ": coordinate " + std::to_string(r) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// Spot check that analytic derivatives agree with central differences.
void check_derivatives(const SmoothFn& fn, double lo, double hi, const std::string& name) {
  const double h = (hi - lo) * 1e-5;
  for (int i = 1; i < 16; ++i) {
    const double r = lo + (hi - lo) * i / 16.0;
    const double fd1 = (fn.f(r + h) - fn.f(r - h)) / (2.0 * h);
    const double fd2 = (fn.f(r + h) - 2.0 * fn.f(r) + fn.f(r - h)) / (h * h);
    const double s1 = 1.0 + std::abs(fn.df(r));
    const double s2 = 1.0 + std::abs(fn.d2f(r));
    if (std::abs(fd1 - fn.df(r)) > 1e-5 * s1 || std::abs(fd2 - fn.d2f(r)) > 1e-3 * s2) {
      throw std::invalid_argument(name + ": supplied derivatives disagree with finite differences");
    }
  }
}

double omega_unit_sphere(int m) {
  // Area of S^(m-1) in R^m: 2 pi^(m/2) / Gamma(m/2).
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

}  // namespace

SmoothFn finite_difference_fn(std::function<double(double)> f, double h) {
  auto base = std::make_shared<std::function<double(double)>>(std::move(f));
  SmoothFn out;
  out.f = [base](double r) { return (*base)(r); };
  out.df = [base, h](double r) {
    // 5-point stencil, O(h^4).
    return ((*base)(r - 2 * h) - 8 * (*base)(r - h) + 8 * (*base)(r + h) - (*base)(r + 2 * h)) /
           (12.0 * h);
  };
  out.d2f = [base, h](double r) {
    return (-(*base)(r - 2 * h) + 16 * (*base)(r - h) - 30 * (*base)(r) + 16 * (*base)(r + h) -
            (*base)(r + 2 * h)) /
           (12.0 * h * h);
  };
  return out;
}

void RadialDomain::require_inside(double r, const char* op) const {
  const double slack = 1e-12 * (1.0 + std::abs(hi - lo));
  if (r < lo - slack || r > hi + slack) domain_failure(op, r, lo, hi);
}

ProfileSurface::ProfileSurface(std::string name, SmoothFn psi, double r_lo, double r_hi)
    : name_(std::move(name)), psi_(std::move(psi)), r_lo_(r_lo), r_hi_(r_hi) {
  if (!(r_hi_ > r_lo_)) throw std::invalid_argument("ProfileSurface: empty interval");
  for (int i = 0; i < kValidationSamples; ++i) {
    const double r = r_lo_ + (r_hi_ - r_lo_) * i / double(kValidationSamples - 1);
    const double v = psi_.f(r);
    if (!(v > 0.0) && i != 0 && i != kValidationSamples - 1) {
      throw std::invalid_argument("ProfileSurface " + name_ + ": psi must be positive");
    }
    if (!(v >= 0.0)) {
      throw std::invalid_argument("ProfileSurface " + name_ + ": psi must be nonnegative");
    }
    if (std::abs(psi_.df(r)) > 1.0 + kUnitSpeedTol) {
      throw std::invalid_argument("ProfileSurface " + name_ +
                                  ": |psi'| exceeds 1, profile is not unit speed");
    }
  }
  check_derivatives(psi_, r_lo_, r_hi_, "ProfileSurface " + name_);
}

void ProfileSurface::require_inside(double r, const char* op) const {
  const double slack = 1e-12 * (1.0 + length());
  if (r < r_lo_ - slack || r > r_hi_ + slack) domain_failure(op, r, r_lo_, r_hi_);
}

RadialDomain ProfileSurface::domain() const {
  RadialDomain d;
  d.name = name_;
  d.lo = r_lo_;
  d.hi = r_hi_;
  d.dim = 2;
  const SmoothFn psi = psi_;
  const double two_pi = 2.0 * std::numbers::pi;
  d.weight_fn.f = [psi, two_pi](double r) { return two_pi * psi.f(r); };
  d.weight_fn.df = [psi, two_pi](double r) { return two_pi * psi.df(r); };
  d.weight_fn.d2f = [psi, two_pi](double r) { return two_pi * psi.d2f(r); };
  d.ricci_radial = [psi](double r) { return -psi.d2f(r) / psi.f(r); };
  d.ricci_min = d.ricci_radial;
  d.angular_inv2 = [psi](double r) {
    const double p = psi.f(r);
    return 1.0 / (p * p);
  };
  return d;
}

ModelManifold::ModelManifold(std::string name, SmoothFn phi, int dim_m, double r_max)
    : name_(std::move(name)), phi_(std::move(phi)), dim_(dim_m), r_max_(r_max) {
  if (dim_ < 2) throw std::invalid_argument("ModelManifold: dimension must be >= 2");
  if (!(r_max_ > 0.0)) throw std::invalid_argument("ModelManifold: r_max must be positive");
  if (std::abs(phi_.f(0.0)) > 1e-12) {
    throw std::invalid_argument("ModelManifold " + name_ + ": phi(0) must vanish");
  }
  // phi'(0) = 1 checked by limit phi(r)/r -> 1.
  const double r_small = std::min(1e-6, r_max_ * 1e-6);
  if (std::abs(phi_.f(r_small) / r_small - 1.0) > 1e-4) {
    throw std::invalid_argument("ModelManifold " + name_ + ": phi'(0) must equal 1");
  }
  for (int i = 1; i < kValidationSamples; ++i) {
    const double r = r_max_ * i / double(kValidationSamples);
    if (!(phi_.f(r) > 0.0)) {
      throw std::invalid_argument("ModelManifold " + name_ + ": phi must be positive on (0, r_max)");
    }
  }
  check_derivatives(phi_, r_max_ * 0.05, r_max_ * 0.95, "ModelManifold " + name_);
  omega_ = omega_unit_sphere(dim_);
}

double ModelManifold::sphere_area(double r) const {
  return omega_ * std::pow(phi_.f(r), dim_ - 1);
}

RadialDomain ModelManifold::annulus(double rho, double R) const {
  if (!(rho > 0.0 && R > rho && R < r_max_ * (1.0 + 1e-12))) {
    throw std::invalid_argument("ModelManifold::annulus: need 0 < rho < R <= r_max");
  }
  RadialDomain d;
  d.name = name_ + "_annulus";
  d.lo = rho;
  d.hi = R;
  d.dim = dim_;
  const SmoothFn phi = phi_;
  const int m = dim_;
  const double om = omega_;
  d.weight_fn.f = [phi, m, om](double r) { return om * std::pow(phi.f(r), m - 1); };
  d.weight_fn.df = [phi, m, om](double r) {
    return om * (m - 1) * std::pow(phi.f(r), m - 2) * phi.df(r);
  };
  d.weight_fn.d2f = [phi, m, om](double r) {
    const double p = phi.f(r), dp = phi.df(r);
    return om * (m - 1) *
           ((m - 2) * std::pow(p, m - 3) * dp * dp + std::pow(p, m - 2) * phi.d2f(r));
  };
  d.ricci_radial = [phi, m](double r) { return -(m - 1) * phi.d2f(r) / phi.f(r); };
  d.ricci_min = [phi, m](double r) {
    const double p = phi.f(r), dp = phi.df(r);
    const double radial = -(m - 1) * phi.d2f(r) / p;
    const double tangential = -phi.d2f(r) / p + (m - 2) * (1.0 - dp * dp) / (p * p);
    return std::min(radial, tangential);
  };
  d.angular_inv2 = nullptr;
  return d;
}

PlaneAnnulus::PlaneAnnulus(double inner, double outer) : r0(inner), R(outer) {
  if (!(0.0 < r0 && r0 < R)) throw std::invalid_argument("PlaneAnnulus: need 0 < r0 < R");
}

double PlaneAnnulus::length_inner() const { return 2.0 * std::numbers::pi * r0; }
double PlaneAnnulus::length_outer() const { return 2.0 * std::numbers::pi * R; }

double ricci_revolution(const ProfileSurface& s, double r) {
  s.require_inside(r, "ricci_revolution");
  return -s.psi_second(r) / s.psi(r);
}

double ricci_model(const ModelManifold& m, double r) {
  if (!(r > 0.0) || r >= m.r_max()) domain_failure("ricci_model", r, 0.0, m.r_max());
  return -(m.dim() - 1) * m.phi_second(r) / m.phi(r);
}

double ricci_model_min(const ModelManifold& m, double r) {
  if (!(r > 0.0) || r >= m.r_max()) domain_failure("ricci_model_min", r, 0.0, m.r_max());
  const double p = m.phi(r), dp = m.phi_prime(r);
  const double radial = -(m.dim() - 1) * m.phi_second(r) / p;
  const double tangential = -m.phi_second(r) / p + (m.dim() - 2) * (1.0 - dp * dp) / (p * p);
  return std::min(radial, tangential);
}

double geodesic_curvature(const ProfileSurface& s, double r) {
  s.require_inside(r, "geodesic_curvature");
  return s.psi_prime(r) / s.psi(r);
}

double convexity_indicator(const ProfileSurface& s, double r) {
  s.require_inside(r, "convexity_indicator");
  const double kg = s.psi_prime(r) / s.psi(r);
  return s.psi_second(r) / s.psi(r) - kg * kg;
}

BoundaryData boundary_data(const ProfileSurface& s, double a) {
  if (std::abs(a - s.r_hi()) > 1e-12 * (1.0 + std::abs(a))) {
    throw std::invalid_argument("boundary_data: a must be the outer interval endpoint");
  }
  const double lo = s.r_lo();
  BoundaryData b;
  b.L_inner = 2.0 * std::numbers::pi * s.psi(lo);
  b.L_outer = 2.0 * std::numbers::pi * s.psi(a);
  b.kappa_g_inner = s.psi_prime(lo) / s.psi(lo);
  b.kappa_g_outer = s.psi_prime(a) / s.psi(a);
  // Outer normal flips the sign at the inner circle.
  b.H_inner = b.kappa_g_inner;
  b.H_outer = -b.kappa_g_outer;
  return b;
}

std::pair<double, double> model_area_volume(const ModelManifold& m, double R) {
  if (!(R > 0.0) || R >= m.r_max() * (1.0 + 1e-12)) {
    domain_failure("model_area_volume", R, 0.0, m.r_max());
  }
  const double area = m.sphere_area(R);
  const double vol = numerics::adaptive_simpson([&m](double r) { return m.sphere_area(r); },
                                                0.0, R, 1e-10);
  return {area, vol};
}

double bochner_residual(const ProfileSurface& s, std::span<const double> u,
                        std::span<const double> grid) {
  const std::size_t n = u.size();
  if (n < 8 || grid.size() != n) {
    throw std::invalid_argument("bochner_residual: need a >= 8 point matching grid");
  }
  const double h = grid[1] - grid[0];
  // Central differences for u', u'', and the tabulated Laplacian.
  std::vector<double> up(n, 0.0), upp(n, 0.0), lap(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    up[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
    upp[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    lap[i] = upp[i] + geodesic_curvature(s, grid[i]) * up[i];
  }
  double max_res = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double r = grid[i];
    const double kg = geodesic_curvature(s, r);
    const double grad2_p = 2.0 * up[i] * upp[i];  // (|grad u|^2)' = 2 u' u''
    const double grad2_pp =
        (up[i + 1] * up[i + 1] - 2.0 * up[i] * up[i] + up[i - 1] * up[i - 1]) / (h * h);
    const double lhs = 0.5 * (grad2_pp + kg * grad2_p);
    const double hess2 = upp[i] * upp[i] + (kg * up[i]) * (kg * up[i]);
    const double ric = ricci_revolution(s, r) * up[i] * up[i];
    const double lap_p = (lap[i + 1] - lap[i - 1]) / (2.0 * h);
    const double rhs = hess2 + ric + lap_p * up[i];
    max_res = std::max(max_res, std::abs(lhs - rhs));
  }
  return max_res;
}

ProfileSurface make_cylinder(double c, double r_lo, double r_hi) {
  if (!(c > 0.0)) throw std::invalid_argument("make_cylinder: radius must be positive");
  SmoothFn psi{[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  return ProfileSurface("cylinder", std::move(psi), r_lo, r_hi);
}

ProfileSurface make_cone(double c, double k, double r_lo, double r_hi) {
  SmoothFn psi{[c, k](double r) { return c + k * r; }, [k](double) { return k; },
               [](double) { return 0.0; }};
  return ProfileSurface("cone", std::move(psi), r_lo, r_hi);
}

ProfileSurface make_catenoid(double c, double r_lo, double r_hi) {
  SmoothFn psi;
  psi.f = [c](double r) { return std::sqrt(1.0 + (r - c) * (r - c)); };
  psi.df = [c](double r) {
    const double s = r - c;
    return s / std::sqrt(1.0 + s * s);
  };
  psi.d2f = [c](double r) {
    const double s = r - c;
    const double q = 1.0 + s * s;
    return 1.0 / (q * std::sqrt(q));
  };
  return ProfileSurface("catenoid", std::move(psi), r_lo, r_hi);
}

ProfileSurface make_sphere_profile(double r_lo, double r_hi) {
  SmoothFn psi{[](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
               [](double r) { return -std::sin(r); }};
  return ProfileSurface("sphere", std::move(psi), r_lo, r_hi);
}

ModelManifold make_euclidean_model(int dim_m, double r_max) {
  SmoothFn phi{[](double r) { return r; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
  return ModelManifold("euclidean", std::move(phi), dim_m, r_max);
}

ModelManifold make_sphere_model(int dim_m, double r_max) {
  if (r_max > std::numbers::pi) {
    throw std::invalid_argument("make_sphere_model: r_max must not exceed pi");
  }
  SmoothFn phi{[](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
               [](double r) { return -std::sin(r); }};
  return ModelManifold("sphere", std::move(phi), dim_m, r_max);
}

ModelManifold make_hyperbolic_model(int dim_m, double r_max) {
  SmoothFn phi{[](double r) { return std::sinh(r); }, [](double r) { return std::cosh(r); },
               [](double r) { return std::sinh(r); }};
  return ModelManifold("hyperbolic", std::move(phi), dim_m, r_max);
}

}  // namespace robinstab::geometry
