#include "fjc/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fjc {

namespace {

constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                 a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0, a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                 a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr double kBeta = 0.04;

double scaled_norm(const ComplexVector& v, const ComplexVector& y0, const ComplexVector& y1, double rtol,
                   double atol) {
  const Index n = v.size();
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(v[i]) / sk;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double initial_step(const ComplexRhs& rhs, double t0, const ComplexVector& y0, const ComplexVector& f0, double span,
                    const IntegratorOptions& o, long& nfev) {
  const double d0 = scaled_norm(y0, y0, y0, o.rel_tol, o.abs_tol);
  const double d1n = scaled_norm(f0, y0, y0, o.rel_tol, o.abs_tol);
  double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  if (!std::isfinite(h0)) h0 = 1e-6;
  h0 = std::min({h0, span, o.max_step});
  ComplexVector y1 = y0 + h0 * f0;
  ComplexVector f1(y0.size());
  rhs(t0 + h0, y1, f1);
  ++nfev;
  const double d2 = scaled_norm(f1 - f0, y0, y0, o.rel_tol, o.abs_tol) / h0;
  const double dm = std::max(d1n, d2);
  double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  if (std::isnan(h1)) h1 = h0;
  return std::min({100.0 * h0, h1, span, o.max_step});
}

}  // namespace

IntegratorStats integrate_dopri5(const ComplexRhs& rhs, const ComplexVector& y0, std::span<const double> times,
                                 const IntegratorOptions& o, const OutputObserver& observer) {
  IntegratorStats stats;
  if (times.empty()) return stats;
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("integrate_dopri5: output times must be strictly increasing");
  if (!(o.rel_tol > 0.0) || !(o.abs_tol > 0.0)) throw std::invalid_argument("integrate_dopri5: tolerances must be positive");

  const Index n = y0.size();
  double t = times.front();
  const double t_end = times.back();
  ComplexVector y = y0;
  if (observer) observer(0, t, y);
  if (times.size() == 1) return stats;

  ComplexVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  ComplexVector r1(n), r2(n), r3(n), r4(n), r5(n);
  rhs(t, y, k1);
  ++stats.rhs_evaluations;
  double h = initial_step(rhs, t, y, k1, t_end - t, o, stats.rhs_evaluations);
  double err_old = 1e-4;
  bool last_rejected = false;
  std::size_t next = 1;

  while (next < times.size()) {
    if (stats.accepted + stats.rejected >= o.max_steps)
      throw IntegratorError("integrate_dopri5: step budget exhausted at t=" + std::to_string(t), t);
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (!(h >= h_min)) throw IntegratorError("integrate_dopri5: step size underflow at t=" + std::to_string(t), t);
    h = std::min({h, o.max_step, t_end - t});

    ytmp = y + h * a21 * k1;
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(t + h, ynew, k7);
    stats.rhs_evaluations += 6;

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double e = scaled_norm(err, y, ynew, o.rel_tol, o.abs_tol);

    if (!std::isfinite(e)) {
      ++stats.rejected;
      h *= kFacMin;
      last_rejected = true;
      continue;
    }

    if (e <= 1.0) {
      const double t_new = (t_end - (t + h) <= h_min) ? t_end : t + h;
      if (next < times.size() && times[next] <= t_new) {
        r1 = y;
        r2 = ynew - y;
        r3 = h * k1 - r2;
        r4 = r2 - h * k7 - r3;
        r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next < times.size() && times[next] <= t_new) {
          if (times[next] == t_new) {
            if (observer) observer(next, times[next], ynew);
          } else {
            const double th = (times[next] - t) / h;
            const double th1 = 1.0 - th;
            ytmp = r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
            if (observer) observer(next, times[next], ytmp);
          }
          ++next;
        }
      }
      y.swap(ynew);
      k1.swap(k7);
      t = t_new;
      ++stats.accepted;
      double fac = kSafety * std::pow(std::max(e, 1e-10), -0.2 + 0.75 * kBeta) * std::pow(err_old, kBeta);
      fac = std::clamp(fac, kFacMin, kFacMax);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_old = std::max(e, 1e-4);
      h *= fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(kFacMin, kSafety * std::pow(e, -0.2));
      last_rejected = true;
    }
  }
  return stats;
}

void rk4_step(const ComplexRhs& rhs, double t, double h, ComplexVector& y) {
  const Index n = y.size();
  ComplexVector k1(n), k2(n), k3(n), k4(n);
  rhs(t, y, k1);
  rhs(t + 0.5 * h, y + 0.5 * h * k1, k2);
  rhs(t + 0.5 * h, y + 0.5 * h * k2, k3);
  rhs(t + h, y + h * k3, k4);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace fjc
