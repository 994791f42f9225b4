#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "fjc/hamiltonians.hpp"
#include "fjc/integrator.hpp"
#include "fjc/sector_propagator.hpp"
#include "fjc/trajectory.hpp"

namespace fjc {

/// How the phase factors of the reduced equations are built.
///   half_atomic_gap:         Omega_a/2 - omega_k (1 - n_k/j)
///   exact_energy_difference: E(n_k, e) - E(n_k + 1, g) from the free Hamiltonian
enum class DetuningMode { half_atomic_gap, exact_energy_difference };

enum class Method { reduced_ode, exact_sector, resonant_closed_form };

struct PropagationSpec {
  std::vector<double> times;
  Method method = Method::exact_sector;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  DetuningMode detuning = DetuningMode::exact_energy_difference;
  bool keep_states = false;
  double sector_weight_floor = 1e-30;

  void validate() const;
};

std::vector<double> uniform_grid(double t_start, double t_end, std::size_t samples);

double detuning(const JcModel& model, int n_k, Axis axis, DetuningMode mode);
double detuning(const ModelParams& params, int n_k, Axis axis, DetuningMode mode);

/// Amplitudes of |n_x, n_y, e>, |n_x + 1, n_y, g>, |n_x, n_y + 1, g>.
struct AmplitudeTriple {
  cplx a{0.0};
  cplx b{0.0};
  cplx c{0.0};

  double weight() const { return std::norm(a) + std::norm(b) + std::norm(c); }
};

struct TripleLabel {
  int n_x;
  int n_y;
  friend auto operator<=>(const TripleLabel&, const TripleLabel&) = default;
};

using TripleMap = std::map<TripleLabel, AmplitudeTriple>;

/// Interaction-picture derivative of one triple:
///   i A' = hx e^{i Dx t} B + hy e^{i Dy t} C,  i B' = hx e^{-i Dx t} A,  i C' = hy e^{-i Dy t} A
/// with hk = g_k <n_k + 1|a†|n_k> and Dk the detuning at label n_k.
AmplitudeTriple triple_derivative(double t, const JcModel& model, TripleLabel label, const AmplitudeTriple& amps,
                                  DetuningMode mode);

/// Derivative of independent (isolated) triples.
TripleMap reduced_rhs(double t, const TripleMap& amplitudes, const JcModel& model, DetuningMode mode);

/// The reduced equations on the full coupled basis: each ground amplitude
/// |m_x, m_y, g> is the B entry of triple (m_x - 1, m_y) and the C entry of
/// triple (m_x, m_y - 1) at the same time, and collects both contributions.
class ReducedSystem {
 public:
  ReducedSystem(const JcModel& model, DetuningMode mode);

  void operator()(double t, const ComplexVector& c, ComplexVector& dc) const;
  const JcModel& model() const { return model_; }

 private:
  JcModel model_;
  int d_;
  std::vector<double> hop_x_, hop_y_, det_x_, det_y_;
};

Trajectory propagate_reduced(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec);
Trajectory propagate_reduced(const CoupledState& initial, const ModelParams& params, const PropagationSpec& spec);

struct TripleTrajectory {
  std::vector<double> times;
  std::vector<TripleMap> samples;
};

TripleTrajectory propagate_triples(const TripleMap& initial, const JcModel& model, const PropagationSpec& spec);

/// Closed-form solution of the resonant triple (omega_x = omega_y, g_x = g_y,
/// label n_x = n_y = n): A'' - i D A' + 2 g^2 (n+1)(1 - n/2j) A = 0 with roots
/// i (D +- Omega)/2 and Omega^2 = D^2 + 8 g^2 (n+1)(1 - n/2j).
class ResonantClosedForm {
 public:
  ResonantClosedForm(const JcModel& model, int n, AmplitudeTriple initial,
                     DetuningMode mode = DetuningMode::exact_energy_difference);
  ResonantClosedForm(const ModelParams& params, int n, AmplitudeTriple initial,
                     DetuningMode mode = DetuningMode::exact_energy_difference);

  AmplitudeTriple operator()(double t) const;

  double detuning() const { return detuning_; }
  double rabi_frequency() const { return omega_; }
  /// g sqrt((n+1)(1 - n/2j)).
  double bare_rabi_frequency() const { return hop_; }

 private:
  int n_;
  double hop_;
  double detuning_;
  double omega_;
  AmplitudeTriple init_;
  std::array<cplx, 2> roots_{};
  std::array<cplx, 2> weights_{};
};

/// Roots lambda of the cubic characteristic polynomial of the third-order
/// equation for A in an isolated triple:
///   lambda^3 - i(Dx + Dy) lambda^2 + (hx^2 + hy^2 - Dx Dy) lambda - i(hx^2 Dy + hy^2 Dx) = 0.
/// Sorted by imaginary part.
std::array<cplx, 3> nonresonant_characteristic_roots(const JcModel& model, int n_x, int n_y, DetuningMode mode);
std::array<cplx, 3> nonresonant_characteristic_roots(const ModelParams& params, int n_x, int n_y, DetuningMode mode);

/// Isolated-triple solution assembled from the three characteristic roots.
class RootSolution {
 public:
  RootSolution(const JcModel& model, TripleLabel label, AmplitudeTriple initial, DetuningMode mode);

  AmplitudeTriple operator()(double t) const;
  const std::array<cplx, 3>& roots() const { return roots_; }

 private:
  AmplitudeTriple init_;
  double hop_x_, hop_y_, det_x_, det_y_;
  std::array<cplx, 3> roots_{};
  std::array<cplx, 3> weights_{};
};

Trajectory propagate_exact(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec);
Trajectory propagate_exact(const CoupledState& initial, const ModelParams& params, const PropagationSpec& spec);

/// Trajectory of the resonant closed form started from |n, n, e>.
Trajectory propagate_closed_form(const JcModel& model, int n, const PropagationSpec& spec);

/// Dispatches on spec.method. resonant_closed_form requires `initial` to be
/// the basis state |n, n, e>.
Trajectory propagate(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec);

/// Max-norm difference between exp(i H0 t) V exp(-i H0 t), computed densely,
/// and the phase factors used by the reduced equations in `mode`. j <= 16.
double interaction_frame_check(const ModelParams& params, double t, DetuningMode mode);

}  // namespace fjc
