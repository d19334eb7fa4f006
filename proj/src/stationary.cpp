#include "robinstab/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "robinstab/numerics.hpp"

namespace robinstab::stationary {

namespace {

constexpr double kBisectTarget = 1e-10;
constexpr double kPlateauTol = 1e-7;

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void Nonlinearity::validate(double u_lo, double u_hi) const {
  const double h = (u_hi - u_lo) * 1e-6;
  auto near_kink = [&](double u) {
    for (double k : kinks) {
      if (std::abs(u - k) < 4.0 * h) return true;
    }
    return false;
  };
  for (int i = 0; i <= 32; ++i) {
    const double u = u_lo + (u_hi - u_lo) * i / 32.0;
    if (near_kink(u)) continue;
    const double fd = (f(u + h) - f(u - h)) / (2.0 * h);
    if (std::abs(fd - f_prime(u)) > 1e-4 * (1.0 + std::abs(f_prime(u)))) {
      throw std::invalid_argument("Nonlinearity " + name + ": f' disagrees with differences of f");
    }
    const double dF = (F(u + h) - F(u - h)) / (2.0 * h);
    if (std::abs(dF - f(u)) > 1e-4 * (1.0 + std::abs(f(u)))) {
      throw std::invalid_argument("Nonlinearity " + name + ": F' disagrees with f");
    }
  }
}

Nonlinearity make_zero_nonlinearity() {
  Nonlinearity nl;
  nl.f = [](double) { return 0.0; };
  nl.f_prime = [](double) { return 0.0; };
  nl.F = [](double) { return 0.0; };
  nl.name = "zero";
  return nl;
}

Nonlinearity make_linear(double lambda) {
  Nonlinearity nl;
  nl.f = [lambda](double u) { return lambda * u; };
  nl.f_prime = [lambda](double) { return lambda; };
  nl.F = [lambda](double u) { return 0.5 * lambda * u * u; };
  nl.name = "linear";
  nl.params = {lambda};
  return nl;
}

Nonlinearity make_cubic(double a, double b) {
  Nonlinearity nl;
  nl.f = [a, b](double u) { return a * u + b * u * u * u; };
  nl.f_prime = [a, b](double u) { return a + 3.0 * b * u * u; };
  nl.F = [a, b](double u) { return 0.5 * a * u * u + 0.25 * b * u * u * u * u; };
  nl.name = "cubic";
  nl.params = {a, b};
  return nl;
}

Nonlinearity make_power(double c, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("make_power: exponent p must exceed 1");
  Nonlinearity nl;
  const double c2 = c * c;
  nl.f = [c2, p](double u) { return -c2 * u + std::pow(std::abs(u), p - 1.0) * u; };
  nl.f_prime = [c2, p](double u) { return -c2 + p * std::pow(std::abs(u), p - 1.0); };
  nl.F = [c2, p](double u) {
    return -0.5 * c2 * u * u + std::pow(std::abs(u), p + 1.0) / (p + 1.0);
  };
  nl.name = "power";
  nl.params = {c, p};
  return nl;
}

Nonlinearity make_custom(std::function<double(double)> f, std::function<double(double)> f_prime,
                         std::function<double(double)> F, std::string name) {
  Nonlinearity nl;
  nl.f = std::move(f);
  nl.f_prime = std::move(f_prime);
  nl.F = std::move(F);
  nl.name = std::move(name);
  return nl;
}

double RadialSolution::value(double r) const {
  return numerics::hermite_eval(v, v_prime, grid.front(), h(), r);
}

double RadialSolution::deriv(double r) const {
  return numerics::hermite_eval_deriv(v, v_prime, grid.front(), h(), r);
}

ShootResult shoot(const geometry::RadialDomain& dom, const Nonlinearity& nl, double alpha,
                  double c, int n, double blowup_factor) {
  if (n < 16) throw std::invalid_argument("shoot: need n >= 16");
  const double h = dom.length() / n;
  const double bound = 1e8 * (1.0 + std::abs(c)) * blowup_factor;

  ShootResult out;
  out.grid.resize(n + 1);
  out.v.resize(n + 1);
  out.v_prime.resize(n + 1);
  for (int i = 0; i <= n; ++i) out.grid[i] = dom.lo + i * h;

  double y = c;
  double yp = alpha * c;
  out.v[0] = y;
  out.v_prime[0] = yp;
  auto accel = [&](double r, double v, double vp) { return -dom.drift(r) * vp - nl.f(v); };
  for (int i = 0; i < n; ++i) {
    const double r = out.grid[i];
    const double k1v = yp, k1p = accel(r, y, yp);
    const double k2v = yp + 0.5 * h * k1p, k2p = accel(r + 0.5 * h, y + 0.5 * h * k1v, yp + 0.5 * h * k1p);
    const double k3v = yp + 0.5 * h * k2p, k3p = accel(r + 0.5 * h, y + 0.5 * h * k2v, yp + 0.5 * h * k2p);
    const double k4v = yp + h * k3p, k4p = accel(r + h, y + h * k3v, yp + h * k3p);
    y += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    out.v[i + 1] = y;
    out.v_prime[i + 1] = yp;
    if (!std::isfinite(y) || !std::isfinite(yp) || std::abs(y) > bound) {
      out.diverged = true;
      out.blowup_at = out.grid[i + 1];
      out.v.resize(i + 2);
      out.v_prime.resize(i + 2);
      out.grid.resize(i + 2);
      out.terminal_residual = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
  }
  out.terminal_residual = yp + alpha * y;
  return out;
}

ShootResult shoot(const geometry::ProfileSurface& s, const Nonlinearity& nl, double alpha,
                  double c, int n, double blowup_factor) {
  return shoot(s.domain(), nl, alpha, c, n, blowup_factor);
}

namespace {

RadialSolution to_solution(const geometry::RadialDomain& dom, const Nonlinearity& nl,
                           double alpha, ShootResult&& shot) {
  RadialSolution sol;
  sol.grid = std::move(shot.grid);
  sol.v = std::move(shot.v);
  sol.v_prime = std::move(shot.v_prime);
  sol.alpha = alpha;
  sol.domain = dom;
  sol.nonlinearity = nl;
  return sol;
}

bool duplicate_of(const RadialSolution& a, std::span<const double> v) {
  double dist = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    dist = std::max(dist, std::abs(a.v[i] - v[i]));
    norm = std::max(norm, std::abs(v[i]));
  }
  return dist < 1e-6 * (1.0 + norm);
}

}  // namespace

ScanResult solve_stationary(const geometry::RadialDomain& dom, const Nonlinearity& nl,
                            double alpha, double c_lo, double c_hi, int n_scan, int n) {
  if (n_scan < 2) throw std::invalid_argument("solve_stationary: need n_scan >= 2");
  if (!(c_hi > c_lo)) throw std::invalid_argument("solve_stationary: empty c range");

  ScanResult out;
  std::vector<double> cs(n_scan), res(n_scan);
  std::vector<bool> ok(n_scan, false);
  for (int i = 0; i < n_scan; ++i) {
    cs[i] = c_lo + (c_hi - c_lo) * i / double(n_scan - 1);
    auto shot = shoot(dom, nl, alpha, cs[i], n);
    if (shot.diverged) {
      ++out.diverged_shots;
      continue;
    }
    ok[i] = true;
    res[i] = shot.terminal_residual;
  }

  auto add_solution = [&](double c) {
    auto shot = shoot(dom, nl, alpha, c, n);
    if (shot.diverged) return;
    for (const auto& s : out.solutions) {
      if (duplicate_of(s, shot.v)) return;
    }
    out.solutions.push_back(to_solution(dom, nl, alpha, std::move(shot)));
  };

  // Exact zeros at scan points (fixed points of f are hit bitwise by RK4).
  for (int i = 0; i < n_scan; ++i) {
    if (ok[i] && res[i] == 0.0) add_solution(cs[i]);
  }

  // Plateau of near-zero residuals: a one-parameter family (linear f).
  // Each run of >= 3 such scan points yields one representative normalized
  // to unit sup norm; brackets inside a plateau run are not root-refined.
  std::vector<bool> plateau(n_scan, false);
  {
    int run_start = -1;
    int best_i = -1;
    for (int i = 0; i <= n_scan; ++i) {
      const bool small = i < n_scan && ok[i] &&
                         std::abs(res[i]) < kPlateauTol * (1.0 + std::abs(cs[i])) &&
                         cs[i] != 0.0;
      if (small) {
        if (run_start < 0) run_start = i;
        if (best_i < 0 || std::abs(res[i]) < std::abs(res[best_i])) best_i = i;
      } else if (run_start >= 0) {
        if (i - run_start >= 3) {
          out.plateau_detected = true;
          for (int j = run_start; j < i; ++j) plateau[j] = true;
          auto shot = shoot(dom, nl, alpha, cs[best_i], n);
          if (!shot.diverged) {
            const double scale = sup_norm(shot.v);
            if (scale > 0.0) {
              for (auto& x : shot.v) x /= scale;
              for (auto& x : shot.v_prime) x /= scale;
              bool dup = false;
              for (const auto& s : out.solutions) dup = dup || duplicate_of(s, shot.v);
              if (!dup) out.solutions.push_back(to_solution(dom, nl, alpha, std::move(shot)));
            }
          }
        }
        run_start = -1;
        best_i = -1;
      }
    }
  }

  for (int i = 0; i + 1 < n_scan; ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (plateau[i] && plateau[i + 1]) continue;
    if (res[i] == 0.0 || res[i + 1] == 0.0) continue;  // covered above
    if (res[i] * res[i + 1] > 0.0) continue;
    double a = cs[i], b = cs[i + 1];
    double fa = res[i];
    double root = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
      root = 0.5 * (a + b);
      auto shot = shoot(dom, nl, alpha, root, n);
      if (shot.diverged) break;
      const double fr = shot.terminal_residual;
      if (std::abs(fr) < kBisectTarget || b - a < 8.0 * std::numeric_limits<double>::epsilon() *
                                                      (1.0 + std::abs(root))) {
        break;
      }
      if (fa * fr <= 0.0) {
        b = root;
      } else {
        a = root;
        fa = fr;
      }
    }
    add_solution(root);
  }

  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const RadialSolution& x, const RadialSolution& y) { return x.v[0] < y.v[0]; });
  return out;
}

ScanResult solve_stationary(const geometry::ProfileSurface& s, const Nonlinearity& nl,
                            double alpha, double c_lo, double c_hi, int n_scan, int n) {
  return solve_stationary(s.domain(), nl, alpha, c_lo, c_hi, n_scan, n);
}

double residual_tolerance(const RadialSolution& sol) {
  const double h = sol.h();
  double scale = 1.0;
  for (std::size_t i = 0; i < sol.v.size(); ++i) {
    scale = std::max(scale, std::abs(sol.nonlinearity.f(sol.v[i])));
    scale = std::max(scale, std::abs(sol.domain.drift(sol.grid[i]) * sol.v_prime[i]));
  }
  return std::max(1e-8, 100.0 * h * h * h * h * scale);
}

ValidationReport validate(const RadialSolution& sol) {
  const std::size_t n = sol.grid.size();
  if (n < 3) throw std::invalid_argument("validate: solution grid too small");
  const double h = sol.h();
  ValidationReport rep;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double drift = sol.domain.drift(sol.grid[i]);
    const double fv = sol.nonlinearity.f(sol.v[i]);
    // Second-order residual from values alone.
    const double d1 = (sol.v[i + 1] - sol.v[i - 1]) / (2.0 * h);
    const double d2 = (sol.v[i + 1] - 2.0 * sol.v[i] + sol.v[i - 1]) / (h * h);
    rep.max_ode_residual_fd2 = std::max(rep.max_ode_residual_fd2, std::abs(d2 + drift * d1 + fv));
    // Fourth-order residual combining values with the stored derivative:
    // 2*D2(v) - D1(v') approximates v'' with O(h^4) truncation.
    const double dvp = (sol.v_prime[i + 1] - sol.v_prime[i - 1]) / (2.0 * h);
    const double d2h = 2.0 * d2 - dvp;
    rep.max_ode_residual =
        std::max(rep.max_ode_residual, std::abs(d2h + drift * sol.v_prime[i] + fv));
  }
  rep.robin_residual_inner = std::abs(-sol.v_prime.front() + sol.alpha * sol.v.front());
  rep.robin_residual_outer = std::abs(sol.v_prime.back() + sol.alpha * sol.v.back());
  rep.tolerance = residual_tolerance(sol);
  rep.valid = rep.max_ode_residual <= rep.tolerance &&
              rep.robin_residual_inner <= rep.tolerance &&
              rep.robin_residual_outer <= rep.tolerance;
  return rep;
}

RadialSolution make_solution(const geometry::RadialDomain& dom, const Nonlinearity& nl,
                             double alpha, std::vector<double> grid, std::vector<double> v,
                             std::vector<double> v_prime) {
  if (grid.size() != v.size() || grid.size() != v_prime.size() || grid.size() < 2) {
    throw std::invalid_argument("make_solution: inconsistent table sizes");
  }
  RadialSolution sol;
  sol.grid = std::move(grid);
  sol.v = std::move(v);
  sol.v_prime = std::move(v_prime);
  sol.alpha = alpha;
  sol.domain = dom;
  sol.nonlinearity = nl;
  return sol;
}

}  // namespace robinstab::stationary
