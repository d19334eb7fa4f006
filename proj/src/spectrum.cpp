#include "robinstab/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "robinstab/numerics.hpp"

namespace robinstab::spectrum {

namespace {

// Trapezoid node weight: 1/2 at the ends.
double theta(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

SturmLiouvilleProblem build_problem(const geometry::RadialDomain& dom,
                                    const std::function<double(double)>& fprime_of_r,
                                    double alpha, int mode_k, int n) {
  if (n < 32) throw std::invalid_argument("discretize: need n >= 32");
  if (mode_k < 0) throw std::invalid_argument("discretize: mode_k must be >= 0");
  if (mode_k > 0 && !dom.angular_inv2) {
    throw std::invalid_argument("discretize: domain has no angular metric for k > 0");
  }
  SturmLiouvilleProblem prob;
  prob.alpha = alpha;
  prob.mode_k = mode_k;
  prob.h = dom.length() / n;
  prob.lo = dom.lo;
  prob.p.resize(n + 1);
  prob.q.resize(n + 1);
  prob.w.resize(n + 1);
  const double k2 = double(mode_k) * double(mode_k);
  for (int i = 0; i <= n; ++i) {
    const double r = dom.lo + i * prob.h;
    const double wr = dom.weight(r);
    prob.p[i] = wr;
    prob.w[i] = wr;
    double pot = fprime_of_r(r);
    if (mode_k > 0) pot -= k2 * dom.angular_inv2(r);
    prob.q[i] = wr * pot;
  }
  return prob;
}

}  // namespace

void SturmLiouvilleProblem::assemble(std::vector<double>& a_diag, std::vector<double>& a_off,
                                     std::vector<double>& m_diag) const {
  const int n = cells();
  a_diag.assign(n + 1, 0.0);
  a_off.assign(n, 0.0);
  m_diag.assign(n + 1, 0.0);
  // Half-node weights from nodal averages keep the problem self-contained.
  for (int i = 0; i < n; ++i) {
    const double p_half = 0.5 * (p[i] + p[i + 1]);
    a_diag[i] += p_half / h;
    a_diag[i + 1] += p_half / h;
    a_off[i] = -p_half / h;
  }
  for (int i = 0; i <= n; ++i) {
    a_diag[i] -= h * theta(i, n) * q[i];
    m_diag[i] = h * theta(i, n) * w[i];
  }
  // Robin boundary terms alpha * w * g^2 at both ends.
  a_diag[0] += alpha * p[0];
  a_diag[n] += alpha * p[n];
}

SturmLiouvilleProblem discretize(const geometry::ProfileSurface& s,
                                 const stationary::RadialSolution& sol, int mode_k, int n) {
  const auto dom = s.domain();
  auto fprime = [&sol](double r) { return sol.nonlinearity.f_prime(sol.value(r)); };
  return build_problem(dom, fprime, sol.alpha, mode_k, n);
}

SturmLiouvilleProblem discretize_potential(const geometry::RadialDomain& dom,
                                           const std::function<double(double)>& fprime_of_r,
                                           double alpha, int mode_k, int n) {
  return build_problem(dom, fprime_of_r, alpha, mode_k, n);
}

EigenResult smallest_eigenvalue(const SturmLiouvilleProblem& prob) {
  const int n = prob.cells();
  std::vector<double> a_diag, a_off, m_diag;
  prob.assemble(a_diag, a_off, m_diag);

  // Reduce A g = lambda M g to standard form with C = M^{-1/2} A M^{-1/2}.
  numerics::SymTridiag tri;
  tri.diag.resize(n + 1);
  tri.off.resize(n);
  std::vector<double> m_sqrt(n + 1);
  for (int i = 0; i <= n; ++i) {
    m_sqrt[i] = std::sqrt(m_diag[i]);
    tri.diag[i] = a_diag[i] / m_diag[i];
  }
  for (int i = 0; i < n; ++i) tri.off[i] = a_off[i] / (m_sqrt[i] * m_sqrt[i + 1]);

  auto eig = numerics::smallest_eigenpair(tri);
  if (!eig.converged) {
    throw std::runtime_error("smallest_eigenvalue: bisection/inverse iteration failed to meet "
                             "the residual target in bracket [" +
                             std::to_string(eig.bracket_lo) + ", " +
                             std::to_string(eig.bracket_hi) + "]");
  }

  EigenResult res;
  res.lambda1 = eig.lambda;
  res.mode_k = prob.mode_k;
  res.n = n;
  res.residual = eig.residual;
  res.eigenfunction.resize(n + 1);
  // g = M^{-1/2} y; unit 2-norm y is exactly unit M-norm g.
  for (int i = 0; i <= n; ++i) res.eigenfunction[i] = eig.vector[i] / m_sqrt[i];
  if (prob.mode_k == 0) {
    if (res.eigenfunction.front() < 0.0) {
      for (auto& x : res.eigenfunction) x = -x;
    }
    int sign_changes = 0;
    for (int i = 0; i < n; ++i) {
      if (res.eigenfunction[i] * res.eigenfunction[i + 1] < 0.0) ++sign_changes;
    }
    if (sign_changes > 0) {
      throw std::runtime_error("smallest_eigenvalue: ground-state eigenfunction changed sign");
    }
  }
  return res;
}

EigenResult lambda1_full(const geometry::ProfileSurface& s,
                         const stationary::RadialSolution& sol, int k_max, int n) {
  if (k_max < 1) throw std::invalid_argument("lambda1_full: need k_max >= 1");
  EigenResult best;
  double prev = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    auto res = smallest_eigenvalue(discretize(s, sol, k, n));
    if (k == 0) {
      best = res;
    } else {
      const double scale = 1.0 + std::abs(prev) + std::abs(res.lambda1);
      if (res.lambda1 < prev - 1e-9 * scale) {
        throw std::runtime_error("lambda1_full: lambda_1(k) decreased with k, inconsistent "
                                 "discretization");
      }
      if (res.lambda1 < best.lambda1) best = res;
    }
    prev = res.lambda1;
  }
  return best;
}

EigenResult lambda1_extrapolated(const geometry::ProfileSurface& s,
                                 const stationary::RadialSolution& sol, int k_max, int n) {
  EigenResult coarse = lambda1_full(s, sol, k_max, n);
  EigenResult fine = lambda1_full(s, sol, k_max, 2 * n);
  fine.extrapolated = (4.0 * fine.lambda1 - coarse.lambda1) / 3.0;
  return fine;
}

EigenResult lambda1_extrapolated(const geometry::RadialDomain& dom,
                                 const std::function<double(double)>& fprime_of_r,
                                 double alpha, int n) {
  EigenResult coarse = smallest_eigenvalue(discretize_potential(dom, fprime_of_r, alpha, 0, n));
  EigenResult fine = smallest_eigenvalue(discretize_potential(dom, fprime_of_r, alpha, 0, 2 * n));
  fine.extrapolated = (4.0 * fine.lambda1 - coarse.lambda1) / 3.0;
  return fine;
}

namespace {

double quotient_from_problem(const SturmLiouvilleProblem& prob, std::span<const double> v) {
  const int n = prob.cells();
  if (static_cast<int>(v.size()) != n + 1) {
    throw std::invalid_argument("rayleigh_quotient: test function size mismatch");
  }
  std::vector<double> a_diag, a_off, m_diag;
  prob.assemble(a_diag, a_off, m_diag);
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    num += a_diag[i] * v[i] * v[i];
    den += m_diag[i] * v[i] * v[i];
    if (i < n) num += 2.0 * a_off[i] * v[i] * v[i + 1];
  }
  if (den <= 0.0) throw std::invalid_argument("rayleigh_quotient: test function vanishes");
  return num / den;
}

}  // namespace

double rayleigh_quotient(const geometry::ProfileSurface& s, std::span<const double> test_fn,
                         const stationary::RadialSolution& sol, double alpha) {
  const auto dom = s.domain();
  auto fprime = [&sol](double r) { return sol.nonlinearity.f_prime(sol.value(r)); };
  const int n = static_cast<int>(test_fn.size()) - 1;
  return quotient_from_problem(build_problem(dom, fprime, alpha, 0, n), test_fn);
}

double rayleigh_quotient(const geometry::RadialDomain& dom, std::span<const double> test_fn,
                         const std::function<double(double)>& fprime_of_r, double alpha) {
  const int n = static_cast<int>(test_fn.size()) - 1;
  return quotient_from_problem(build_problem(dom, fprime_of_r, alpha, 0, n), test_fn);
}

double linear_lambda(const geometry::ProfileSurface& s, double alpha, int n) {
  return linear_lambda(s.domain(), alpha, n);
}

double linear_lambda(const geometry::RadialDomain& dom, double alpha, int n) {
  auto zero = [](double) { return 0.0; };
  return smallest_eigenvalue(discretize_potential(dom, zero, alpha, 0, n)).lambda1;
}

double energy(const geometry::ProfileSurface& s, std::span<const double> u,
              const stationary::Nonlinearity& nl, double alpha) {
  return energy(s.domain(), u, nl, alpha);
}

double energy(const geometry::RadialDomain& dom, std::span<const double> u,
              const stationary::Nonlinearity& nl, double alpha) {
  const int n = static_cast<int>(u.size()) - 1;
  if (n < 2) throw std::invalid_argument("energy: need at least 3 nodes");
  const double h = dom.length() / n;
  std::vector<double> grad2(n + 1), Fval(n + 1);
  for (int i = 0; i <= n; ++i) {
    double du;
    if (i == 0) {
      du = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    } else if (i == n) {
      du = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
    } else {
      du = (u[i + 1] - u[i - 1]) / (2.0 * h);
    }
    const double r = dom.lo + i * h;
    const double w = dom.weight(r);
    grad2[i] = du * du * w;
    Fval[i] = nl.F(u[i]) * w;
  }
  const double grad_term = numerics::trapezoid(grad2, h);
  const double f_term = numerics::trapezoid(Fval, h);
  const double boundary = alpha * (dom.weight(dom.lo) * u.front() * u.front() +
                                   dom.weight(dom.hi) * u.back() * u.back());
  return grad_term + boundary - 2.0 * f_term;
}

BoundarySlack boundary_estimate_slack(const stationary::RadialSolution& sol, double lambda1) {
  const auto& dom = sol.domain;
  const int n = sol.cells();
  const double h = sol.h();
  std::vector<double> grad2(n + 1), ric_term(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double r = sol.grid[i];
    const double w = dom.weight(r);
    const double up2 = sol.v_prime[i] * sol.v_prime[i];
    grad2[i] = up2 * w;
    ric_term[i] = dom.ricci_radial(r) * up2 * w;
  }
  const double grad_int = numerics::trapezoid(grad2, h);
  const double ric_int = numerics::trapezoid(ric_term, h);

  const auto& f = sol.nonlinearity.f;
  const double a = sol.alpha;
  const double w_lo = dom.weight(dom.lo), w_hi = dom.weight(dom.hi);
  const double v_lo = sol.v.front(), v_hi = sol.v.back();
  // (m-1)H w.r.t. the outer normal equals -w'/w at hi and +w'/w at lo.
  const double mH_hi = -dom.weight_prime(dom.hi) / w_hi;
  const double mH_lo = dom.weight_prime(dom.lo) / w_lo;
  const double boundary =
      w_hi * (a * a * a * v_hi * v_hi + a * v_hi * f(v_hi) + a * a * mH_hi * v_hi * v_hi) +
      w_lo * (a * a * a * v_lo * v_lo + a * v_lo * f(v_lo) + a * a * mH_lo * v_lo * v_lo);

  BoundarySlack out;
  out.lhs = lambda1 * grad_int;
  out.rhs = boundary - ric_int;
  out.slack = out.rhs - out.lhs;
  out.scale = 1.0 + std::abs(out.lhs) + std::abs(out.rhs);
  return out;
}

}  // namespace robinstab::spectrum
