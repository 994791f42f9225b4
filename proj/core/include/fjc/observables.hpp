#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fjc/trajectory.hpp"

namespace fjc {

double mode_number_expectation(const CoupledState& state, Axis axis);

/// <sigma_z> = P(e) - P(g).
double atomic_inversion(const CoupledState& state);

/// Marginal probabilities of the chosen mode, length mode_dim.
RealVector mode_distribution(const CoupledState& state, Axis axis);

/// All diagonal observables in one pass. Works on raw (unnormalised) vectors:
/// populations are divided by the squared norm, `norm` is the 2-norm.
ExpectationRecord expectations(const Basis& basis, const ComplexVector& amplitudes, double t);
ExpectationRecord expectations(const CoupledState& state, double t);

/// Requires state snapshots; throws std::invalid_argument if they are missing
/// or if N_total = n_x + n_y + (1 + sigma_z)/2 is violated beyond 1e-9.
std::vector<ExpectationRecord> trajectory_expectations(const Trajectory& traj);

/// 2 pi / Omega with Omega = 2 sqrt(g_x^2 (nbar_x + 1) + g_y^2 (nbar_y + 1)).
double bare_rabi_period(double g_x, double g_y, double nbar_x, double nbar_y);

/// Moving RMS of the inversion over a centred window of width `window`.
std::vector<double> inversion_envelope(std::span<const double> times, std::span<const double> inversion,
                                       double window);

/// Peak time of the first revival lobe of the inversion envelope, refined by
/// a parabola through the three samples around the maximum. nullopt if the
/// envelope never collapses below 10% of its start value or never revives.
std::optional<double> revival_time(std::span<const double> times, std::span<const double> inversion,
                                   double window);

}  // namespace fjc
