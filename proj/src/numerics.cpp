#include "robinstab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robinstab::numerics {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double m,
               double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double m, double fm, double b, double fb, double whole,
                            double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, lm, flm, m, fm);
  const double right = simpson(f, m, fm, rm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth >= 50 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson_rec(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(f, a, fa, m, fm, b, fb);
  return adaptive_simpson_rec(f, a, fa, m, fm, b, fb, whole, abs_tol, 0);
}

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

std::vector<double> cumulative_integral_hermite(std::span<const double> values,
                                                std::span<const double> derivs, double h) {
  if (values.size() != derivs.size()) {
    throw std::invalid_argument("cumulative_integral_hermite: size mismatch");
  }
  std::vector<double> out(values.size(), 0.0);
  const double h2_12 = h * h / 12.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    out[i + 1] = out[i] + 0.5 * h * (values[i] + values[i + 1]) +
                 h2_12 * (derivs[i] - derivs[i + 1]);
  }
  return out;
}

namespace {

// Cell-local Hermite basis on t in [0,1].
struct HermiteCell {
  double v0, v1, d0, d1, h, t;
};

HermiteCell locate_cell(std::span<const double> values, std::span<const double> derivs,
                        double lo, double h, double x) {
  const std::size_t n = values.size() - 1;
  double s = (x - lo) / h;
  if (s < 0.0) s = 0.0;
  if (s > static_cast<double>(n)) s = static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(s);
  if (i >= n) i = n - 1;
  return {values[i], values[i + 1], derivs[i], derivs[i + 1], h, s - static_cast<double>(i)};
}

}  // namespace

double hermite_eval(std::span<const double> values, std::span<const double> derivs,
                    double lo, double h, double x) {
  if (values.size() < 2) return values.empty() ? 0.0 : values[0];
  const auto c = locate_cell(values, derivs, lo, h, x);
  const double t = c.t, t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * c.v0 + h10 * c.h * c.d0 + h01 * c.v1 + h11 * c.h * c.d1;
}

double hermite_eval_deriv(std::span<const double> values, std::span<const double> derivs,
                          double lo, double h, double x) {
  if (values.size() < 2) return 0.0;
  const auto c = locate_cell(values, derivs, lo, h, x);
  const double t = c.t, t2 = t * t;
  const double dh00 = 6 * t2 - 6 * t;
  const double dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = -6 * t2 + 6 * t;
  const double dh11 = 3 * t2 - 2 * t;
  return (dh00 * c.v0 + dh10 * c.h * c.d0 + dh01 * c.v1 + dh11 * c.h * c.d1) / c.h;
}

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2) {
    throw std::invalid_argument("PchipInterpolant: need >= 2 matching points");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) {
      throw std::invalid_argument("PchipInterpolant: abscissae must increase strictly");
    }
  }
  std::vector<double> dx(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dx[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / dx[i];
  }
  slope_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      // Weighted harmonic mean (Fritsch-Carlson).
      const double w1 = 2.0 * dx[i] + dx[i - 1];
      const double w2 = dx[i] + 2.0 * dx[i - 1];
      slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  if (n == 2) {
    slope_[0] = slope_[1] = delta[0];
  } else {
    slope_[0] = end_slope(dx[0], dx[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(dx[n - 2], dx[n - 3], delta[n - 2], delta[n - 3]);
  }
}

double PchipInterpolant::operator()(double u) const {
  const std::size_t n = x_.size();
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), u) - x_.begin();
  if (i == 0) i = 1;
  if (i >= n) i = n - 1;
  --i;
  const double h = x_[i + 1] - x_[i];
  const double t = (u - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
         (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

double PchipInterpolant::derivative(double u) const {
  const std::size_t n = x_.size();
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), u) - x_.begin();
  if (i == 0) i = 1;
  if (i >= n) i = n - 1;
  --i;
  const double h = x_[i + 1] - x_[i];
  const double t = (u - x_[i]) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y_[i] + (3 * t2 - 4 * t + 1) * h * slope_[i] +
          (-6 * t2 + 6 * t) * y_[i + 1] + (3 * t2 - 2 * t) * h * slope_[i + 1]) /
         h;
}

QuinticHermite::QuinticHermite(double x0, double x1, double f0, double df0, double d2f0,
                               double f1, double df1, double d2f1)
    : x0_(x0), width_(x1 - x0) {
  if (!(width_ > 0.0)) throw std::invalid_argument("QuinticHermite: x1 must exceed x0");
  const double w = width_;
  const double a0 = f0;
  const double a1 = df0 * w;
  const double a2 = 0.5 * d2f0 * w * w;
  const double b0 = f1;
  const double b1 = df1 * w;
  const double b2 = 0.5 * d2f1 * w * w;
  c_[0] = a0;
  c_[1] = a1;
  c_[2] = a2;
  c_[3] = 10 * (b0 - a0) - 6 * a1 - 4 * b1 + b2 - 3 * a2;
  c_[4] = -15 * (b0 - a0) + 8 * a1 + 7 * b1 - 2 * b2 + 3 * a2;
  c_[5] = 6 * (b0 - a0) - 3 * (a1 + b1) + b2 - a2;
}

double QuinticHermite::value(double x) const {
  const double t = (x - x0_) / width_;
  double acc = 0.0;
  for (int k = 5; k >= 0; --k) acc = acc * t + c_[k];
  return acc;
}

double QuinticHermite::deriv(double x) const {
  const double t = (x - x0_) / width_;
  double acc = 0.0;
  for (int k = 5; k >= 1; --k) acc = acc * t + k * c_[k];
  return acc / width_;
}

double QuinticHermite::deriv2(double x) const {
  const double t = (x - x0_) / width_;
  double acc = 0.0;
  for (int k = 5; k >= 2; --k) acc = acc * t + k * (k - 1) * c_[k];
  return acc / (width_ * width_);
}

int sturm_count(const SymTridiag& t, double x) {
  const std::size_t n = t.diag.size();
  // pivmin guards the LDL^T recurrence against division by zero.
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(t.diag[i]));
  for (double e : t.off) norm = std::max(norm, std::abs(e));
  const double pivmin = std::max(norm, 1.0) * std::numeric_limits<double>::min() * 64.0 +
                        std::numeric_limits<double>::denorm_min();
  int count = 0;
  double d = t.diag[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    d = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

// One inverse-iteration solve of (T - sigma I) y = rhs via LDL^T with
// Wilkinson-style pivot perturbation.
void shifted_solve(const SymTridiag& t, double sigma, std::vector<double>& y) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(t.diag[i]));
  for (double e : t.off) norm = std::max(norm, std::abs(e));
  const double tiny = std::max(norm, 1.0) * std::numeric_limits<double>::epsilon() * 1e-3 +
                      std::numeric_limits<double>::denorm_min();
  d[0] = t.diag[0] - sigma;
  if (std::abs(d[0]) < tiny) d[0] = (d[0] < 0.0 ? -tiny : tiny);
  for (std::size_t i = 1; i < n; ++i) {
    l[i - 1] = t.off[i - 1] / d[i - 1];
    d[i] = t.diag[i] - sigma - l[i - 1] * t.off[i - 1];
    if (std::abs(d[i]) < tiny) d[i] = (d[i] < 0.0 ? -tiny : tiny);
  }
  for (std::size_t i = 1; i < n; ++i) y[i] -= l[i - 1] * y[i - 1];
  for (std::size_t i = 0; i < n; ++i) y[i] /= d[i];
  for (std::size_t i = n - 1; i-- > 0;) y[i] -= l[i] * y[i + 1];
}

}  // namespace

TridiagEigenResult smallest_eigenpair(const SymTridiag& t, int max_bisect,
                                      int max_inverse_iters) {
  TridiagEigenResult res;
  const std::size_t n = t.diag.size();
  if (n == 0) throw std::invalid_argument("smallest_eigenpair: empty matrix");
  if (t.off.size() + 1 != n) throw std::invalid_argument("smallest_eigenpair: bad shapes");

  // Gershgorin bracket.
  double lo = t.diag[0], hi = t.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double span = std::max(hi - lo, 1.0);
  double a = lo - 1e-12 * span;
  double b = hi + 1e-12 * span;
  const double eps = std::numeric_limits<double>::epsilon();
  int steps = 0;
  while (steps < max_bisect) {
    const double mid = 0.5 * (a + b);
    if (b - a <= eps * (std::abs(a) + std::abs(b)) + 1e-320) break;
    if (sturm_count(t, mid) >= 1) {
      b = mid;
    } else {
      a = mid;
    }
    ++steps;
  }
  res.lambda = 0.5 * (a + b);
  res.bracket_lo = a;
  res.bracket_hi = b;
  res.bisect_steps = steps;

  // Inverse iteration about the bisection value.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * std::sin(1.0 + 2.7 * double(i));
  auto normalize = [&](std::vector<double>& y) {
    double s = 0.0;
    for (double x : y) s += x * x;
    s = std::sqrt(s);
    if (s == 0.0) return false;
    for (double& x : y) x /= s;
    return true;
  };
  normalize(v);
  for (int it = 0; it < max_inverse_iters; ++it) {
    shifted_solve(t, res.lambda, v);
    if (!normalize(v)) break;
  }

  // Rayleigh sharpening and residual.
  double num = 0.0;
  std::vector<double> tv(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = t.diag[i] * v[i];
    if (i > 0) s += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) s += t.off[i] * v[i + 1];
    tv[i] = s;
    num += v[i] * s;
  }
  res.lambda = num;  // v has unit 2-norm
  double rnorm = 0.0, tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = tv[i] - res.lambda * v[i];
    rnorm += r * r;
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    tnorm = std::max(tnorm, row);
  }
  res.residual = std::sqrt(rnorm) / std::max(1.0, tnorm);
  res.vector = std::move(v);
  res.converged = res.residual < 1e-10;
  return res;
}

std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw std::invalid_argument("linear_fit: need >= 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return {0.0, sy / n};
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return {slope, intercept};
}

}  // namespace robinstab::numerics
