#include "fjc/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace fjc {

ExpectationRecord expectations(const Basis& basis, const ComplexVector& amplitudes, double t) {
  if (amplitudes.size() != basis.size()) throw std::invalid_argument("expectations: amplitude vector has wrong length");
  ExpectationRecord r;
  r.t = t;
  const int d = basis.mode_dim();
  double pe = 0.0;
  double pg = 0.0;
  for (int a = 0; a < 2; ++a) {
    const Atom atom = a == 0 ? Atom::ground : Atom::excited;
    for (int nx = 0; nx < d; ++nx) {
      double row = 0.0;
      double row_ny = 0.0;
      const Index base = basis.index(nx, 0, atom);
      for (int ny = 0; ny < d; ++ny) {
        const double p = std::norm(amplitudes[base + ny]);
        row += p;
        row_ny += ny * p;
      }
      r.n_x += nx * row;
      r.n_y += row_ny;
      (a == 0 ? pg : pe) += row;
    }
  }
  const double w = pe + pg;
  r.norm = std::sqrt(w);
  if (w > 0.0) {
    r.n_x /= w;
    r.n_y /= w;
    pe /= w;
    pg /= w;
  }
  r.sigma_z = pe - pg;
  r.N_total = r.n_x + r.n_y + pe;
  return r;
}

ExpectationRecord expectations(const CoupledState& state, double t) {
  return expectations(state.basis(), state.amplitudes(), t);
}

double mode_number_expectation(const CoupledState& state, Axis axis) {
  const ExpectationRecord r = expectations(state, 0.0);
  return axis == Axis::x ? r.n_x : r.n_y;
}

double atomic_inversion(const CoupledState& state) { return expectations(state, 0.0).sigma_z; }

RealVector mode_distribution(const CoupledState& state, Axis axis) {
  const Basis& basis = state.basis();
  const int d = basis.mode_dim();
  RealVector p = RealVector::Zero(d);
  for (int a = 0; a < 2; ++a) {
    const Atom atom = a == 0 ? Atom::ground : Atom::excited;
    for (int nx = 0; nx < d; ++nx)
      for (int ny = 0; ny < d; ++ny) p[axis == Axis::x ? nx : ny] += std::norm(state.amplitude(nx, ny, atom));
  }
  return p;
}

std::vector<ExpectationRecord> trajectory_expectations(const Trajectory& traj) {
  if (traj.states.size() != traj.times.size())
    throw std::invalid_argument("trajectory_expectations: trajectory carries no state snapshots");
  std::vector<ExpectationRecord> out;
  out.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ExpectationRecord r = expectations(traj.states[i], traj.times[i]);
    if (std::abs(r.N_total - (r.n_x + r.n_y + 0.5 * (1.0 + r.sigma_z))) > 1e-9)
      throw std::invalid_argument("trajectory_expectations: excitation bookkeeping violated");
    out.push_back(r);
  }
  return out;
}

double bare_rabi_period(double g_x, double g_y, double nbar_x, double nbar_y) {
  const double omega = 2.0 * std::sqrt(g_x * g_x * (nbar_x + 1.0) + g_y * g_y * (nbar_y + 1.0));
  if (!(omega > 0.0)) throw std::domain_error("bare_rabi_period: couplings are zero");
  return 2.0 * M_PI / omega;
}

std::vector<double> inversion_envelope(std::span<const double> times, std::span<const double> inversion,
                                       double window) {
  if (times.size() != inversion.size()) throw std::invalid_argument("inversion_envelope: length mismatch");
  const std::size_t n = times.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + inversion[i] * inversion[i];
  std::vector<double> env(n, 0.0);
  std::size_t lo = 0;
  std::size_t hi = 0;
  const double half = 0.5 * window;
  for (std::size_t i = 0; i < n; ++i) {
    while (lo < n && times[lo] < times[i] - half) ++lo;
    while (hi < n && times[hi] <= times[i] + half) ++hi;
    env[i] = std::sqrt((prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo));
  }
  return env;
}

std::optional<double> revival_time(std::span<const double> times, std::span<const double> inversion,
                                   double window) {
  const std::vector<double> env = inversion_envelope(times, inversion, window);
  const std::size_t n = env.size();
  if (n < 3) return std::nullopt;
  const double start = env.front();
  std::size_t k = 0;
  while (k < n && env[k] >= 0.1 * start) ++k;
  if (k >= n) return std::nullopt;
  std::size_t best = k;
  for (; k < n; ++k) {
    if (env[k] > env[best]) best = k;
    if (env[best] > 0.2 * start && env[k] < 0.5 * env[best]) break;
  }
  if (best == 0 || best + 1 >= n || env[best] <= 0.2 * start) return std::nullopt;
  const double y0 = env[best - 1];
  const double y1 = env[best];
  const double y2 = env[best + 1];
  const double curv = y0 - 2.0 * y1 + y2;
  const double offset = curv != 0.0 ? 0.5 * (y0 - y2) / curv : 0.0;
  const double dt = offset >= 0.0 ? times[best + 1] - times[best] : times[best] - times[best - 1];
  return times[best] + offset * dt;
}

}  // namespace fjc
