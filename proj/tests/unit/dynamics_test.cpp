#include <gtest/gtest.h>

#include <cmath>

#include "fjc/dynamics.hpp"
#include "fjc/observables.hpp"

using namespace fjc;

namespace {

ModelParams resonant(int j, double g = 1.0) {
  ModelParams p;
  p.j = j;
  p.g_x = p.g_y = g;
  return p;
}

ModelParams fig4(int j) {
  ModelParams p;
  p.j = j;
  p.omega_x = 1.0;
  p.omega_y = 0.9;
  p.omega_a = 0.1;
  p.g_x = 0.6;
  p.g_y = 0.5;
  return p;
}

CoupledState coherent_pair(int j, double nbar, Atom atom) {
  const ComplexVector f = coherent_coefficients(j, alpha_for_mean_n(j, nbar)).cast<cplx>();
  return product_state(f, f, atom);
}

PropagationSpec grid(double t_end, std::size_t n, double rel = 1e-10, double abs = 1e-12) {
  PropagationSpec s;
  s.times = uniform_grid(0.0, t_end, n);
  s.rel_tol = rel;
  s.abs_tol = abs;
  return s;
}

double triple_gap(const AmplitudeTriple& a, const AmplitudeTriple& b) {
  return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c)});
}

}  // namespace

TEST(Detuning, Modes) {
  ModelParams p = resonant(5);
  EXPECT_NEAR(detuning(p, 2, Axis::x, DetuningMode::exact_energy_difference), 0.4, 1e-15);
  for (int j : {1, 10, 1000}) EXPECT_EQ(detuning(resonant(j), 0, Axis::y, DetuningMode::exact_energy_difference), 0.0);
  p.j = 100000;
  EXPECT_NEAR(detuning(p, 0, Axis::x, DetuningMode::half_atomic_gap), 0.5 - 1.0, 1e-12);
  EXPECT_NEAR(detuning(p, 3, Axis::x, DetuningMode::half_atomic_gap), -0.5, 1e-4);
  EXPECT_THROW(detuning(resonant(2), 5, Axis::x, DetuningMode::half_atomic_gap), std::out_of_range);
  const JcModel m = JcModel::finite(fig4(7));
  for (int n = 0; n <= 14; ++n)
    EXPECT_NEAR(detuning(m, n, Axis::y, DetuningMode::exact_energy_difference),
                detuning(fig4(7), n, Axis::y, DetuningMode::exact_energy_difference), 1e-14);
  const JcModel b = JcModel::bosonic(fig4(1), 10);
  EXPECT_NEAR(detuning(b, 4, Axis::x, DetuningMode::exact_energy_difference), 0.1 - 1.0, 1e-15);
  EXPECT_NEAR(detuning(b, 4, Axis::x, DetuningMode::half_atomic_gap), 0.05 - 1.0, 1e-15);
}

TEST(ReducedRhs, ZeroCouplingAndBoundary) {
  ModelParams p = fig4(2);
  p.g_x = p.g_y = 0.0;
  TripleMap m{{{0, 0}, {1.0, 0.5, 0.25}}, {{1, 3}, {0.1, 0.2, 0.3}}};
  for (const auto& [l, d] : reduced_rhs(0.7, m, JcModel::finite(p), DetuningMode::exact_energy_difference))
    EXPECT_EQ(d.weight(), 0.0);
  const JcModel model = JcModel::finite(fig4(2));
  EXPECT_EQ(model.hop(Axis::x, 4), 0.0);
  const AmplitudeTriple d = triple_derivative(0.3, model, {4, 0}, {0.0, 1.0, 0.0}, DetuningMode::exact_energy_difference);
  EXPECT_EQ(d.a, 0.0);
  const TripleMap bad{{{5, 0}, {1.0, 0.0, 0.0}}};
  EXPECT_THROW(reduced_rhs(0.0, bad, model, DetuningMode::exact_energy_difference), std::out_of_range);
  // f_k approaches the bosonic element sqrt(n+1).
  EXPECT_NEAR(JcModel::finite(resonant(100000)).hop(Axis::x, 3), 2.0, 1e-4);
}

TEST(ReducedOde, FreeEvolutionKeepsPopulations) {
  ModelParams p = fig4(3);
  p.g_x = p.g_y = 0.0;
  const CoupledState psi = coherent_pair(3, 1.5, Atom::excited);
  const Trajectory t = propagate_reduced(psi, p, grid(10.0, 21));
  for (const auto& r : t.records) {
    EXPECT_NEAR(r.n_x, t.records[0].n_x, 1e-12);
    EXPECT_NEAR(r.sigma_z, 1.0, 1e-12);
  }
}

TEST(ClosedForm, RabiFrequencyValues) {
  const JcModel m1 = JcModel::finite(resonant(1));
  const ResonantClosedForm c1(m1, 0, {1.0, 0.0, 0.0});
  EXPECT_NEAR(c1.rabi_frequency() * c1.rabi_frequency(), 8.0, 1e-14);
  const ResonantClosedForm big(JcModel::finite(resonant(1000000)), 0, {1.0, 0.0, 0.0});
  EXPECT_NEAR(big.rabi_frequency(), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_THROW(ResonantClosedForm(JcModel::finite(fig4(3)), 0, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(ClosedForm, ResonantInversionIsCosine) {
  // Only the vacuum label is resonant in the finite model; higher n pick up omega*n/j.
  for (int j : {1, 5, 40}) {
    const JcModel m = JcModel::finite(resonant(j, 0.8));
    const ResonantClosedForm c(m, 0, {1.0, 0.0, 0.0});
    ASSERT_EQ(c.detuning(), 0.0);
    const double w0 = c.bare_rabi_frequency();
    for (double t : {0.0, 0.3, 1.7, 4.2}) {
      const double expected = std::pow(std::cos(0.5 * w0 * std::sqrt(8.0) * t), 2);
      EXPECT_NEAR(std::norm(c(t).a), expected, 1e-13);
      EXPECT_NEAR(c(t).weight(), 1.0, 1e-13);
    }
  }
}

TEST(ClosedForm, MatchesIsolatedTripleIntegration) {
  ModelParams p = resonant(5, 0.7);
  p.omega_a = 1.3;  // detuned, so the closed form carries both roots
  const JcModel m = JcModel::finite(p);
  for (int n : {0, 1, 5}) {
    const AmplitudeTriple init{std::sqrt(0.5), 0.5, cplx(0.0, 0.5)};
    const ResonantClosedForm c(m, n, init);
    const double period = 2.0 * M_PI / c.rabi_frequency();
    const TripleTrajectory num = propagate_triples({{{n, n}, init}}, m, grid(3.0 * period, 61, 1e-12, 1e-14));
    double worst = 0.0;
    for (std::size_t k = 0; k < num.times.size(); ++k)
      worst = std::max(worst, triple_gap(num.samples[k].at({n, n}), c(num.times[k])));
    EXPECT_LT(worst, 1e-8) << n;
  }
}

TEST(ClosedForm, VacuumTripleIsClosedInFullSystem) {
  const JcModel m = JcModel::finite(resonant(5));
  PropagationSpec s = grid(6.0, 41, 1e-12, 1e-14);
  s.keep_states = true;
  const Trajectory red = propagate_reduced(basis_state(m.basis(), 0, 0, Atom::excited), m, s);
  s.method = Method::resonant_closed_form;
  const Trajectory cf = propagate(basis_state(m.basis(), 0, 0, Atom::excited), m, s);
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    EXPECT_NEAR(red.records[k].sigma_z, cf.records[k].sigma_z, 1e-8);
    EXPECT_LT((red.states[k].amplitudes() - cf.states[k].amplitudes()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(CharacteristicRoots, Fig4VacuumLabel) {
  const auto r = nonresonant_characteristic_roots(fig4(50), 0, 0, DetuningMode::exact_energy_difference);
  // Eigenvalues of [[0, a, b], [a, Dx, 0], [b, 0, Dy]] with a = 0.6, b = 0.5, Dx = -0.9, Dy = -0.8.
  EXPECT_NEAR(r[0].imag(), -1.324551446433908, 1e-12);
  EXPECT_NEAR(r[1].imag(), -0.8377560673757867, 1e-12);
  EXPECT_NEAR(r[2].imag(), 0.46230751380969404, 1e-12);
  for (const auto& x : r) {
    EXPECT_EQ(x.real(), 0.0);
    // lambda = i mu solves the cubic  mu^3 - (Dx+Dy) mu^2 - (a^2+b^2-Dx Dy) mu + (a^2 Dy + b^2 Dx) = 0.
    const double mu = x.imag(), dx = -0.9, dy = -0.8, a2 = 0.36, b2 = 0.25;
    EXPECT_NEAR(mu * mu * mu - (dx + dy) * mu * mu - (a2 + b2 - dx * dy) * mu + (a2 * dy + b2 * dx), 0.0, 1e-13);
  }
}

TEST(CharacteristicRoots, DecoupledYMode) {
  ModelParams p = fig4(20);
  p.g_y = 0.0;
  const JcModel m = JcModel::finite(p);
  const int nx = 3, ny = 2;
  const auto r = nonresonant_characteristic_roots(m, nx, ny, DetuningMode::exact_energy_difference);
  const double dx = detuning(m, nx, Axis::x, DetuningMode::exact_energy_difference);
  const double dy = detuning(m, ny, Axis::y, DetuningMode::exact_energy_difference);
  const double a = m.hop(Axis::x, nx);
  const double disc = std::sqrt(dx * dx + 4.0 * a * a);
  std::vector<double> want{dy, 0.5 * (dx - disc), 0.5 * (dx + disc)};
  std::sort(want.begin(), want.end());
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(r[k].imag(), want[k], 1e-12);
}

TEST(CharacteristicRoots, ResonantLimitGivesClosedFormPair) {
  ModelParams p = resonant(50, 0.4);
  p.omega_a = 0.8;
  const JcModel m = JcModel::finite(p);
  for (int n : {0, 4, 9}) {
    const auto r = nonresonant_characteristic_roots(m, n, n, DetuningMode::exact_energy_difference);
    const ResonantClosedForm c(m, n, {1.0, 0.0, 0.0});
    const double d = c.detuning(), w = c.rabi_frequency();
    std::vector<double> want{0.5 * (d - w), d, 0.5 * (d + w)};
    std::sort(want.begin(), want.end());
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r[k].imag(), want[k], 1e-9) << n;
  }
}

TEST(RootSolution, ReproducesIsolatedTriple) {
  const JcModel m = JcModel::finite(fig4(50));
  for (TripleLabel l : {TripleLabel{0, 0}, TripleLabel{4, 2}, TripleLabel{7, 7}}) {
    const AmplitudeTriple init{cplx(0.6, 0.0), cplx(0.0, 0.64), cplx(0.48, 0.0)};
    const RootSolution sol(m, l, init, DetuningMode::exact_energy_difference);
    const TripleTrajectory num = propagate_triples({{l, init}}, m, grid(50.0 / 0.6, 200, 1e-12, 1e-14));
    double worst = 0.0;
    for (std::size_t k = 0; k < num.times.size(); ++k)
      worst = std::max(worst, triple_gap(num.samples[k].at(l), sol(num.times[k])));
    EXPECT_LT(worst, 1e-6) << l.n_x << ',' << l.n_y;
  }
}

TEST(IsolatedTriples, ConserveWeight) {
  const JcModel m = JcModel::finite(fig4(10));
  const PropagationSpec s = grid(20.0, 11, 1e-9, 1e-11);
  const TripleMap init{{{0, 0}, {1.0, 0.0, 0.0}}, {{2, 5}, {0.0, std::sqrt(0.5), std::sqrt(0.5)}}};
  const TripleTrajectory t = propagate_triples(init, m, s);
  for (const auto& sample : t.samples)
    for (const auto& [l, a] : sample) EXPECT_NEAR(a.weight(), init.at(l).weight(), 1e-8);
}

TEST(ExactSector, InitialStateAndFreeEvolution) {
  ModelParams p = fig4(4);
  const CoupledState psi = coherent_pair(4, 2.0, Atom::excited);
  PropagationSpec s = grid(5.0, 6);
  s.keep_states = true;
  const Trajectory t = propagate_exact(psi, p, s);
  EXPECT_EQ((t.states[0].amplitudes() - psi.amplitudes()).norm(), 0.0);

  p.g_x = p.g_y = 0.0;
  const Trajectory f = propagate_exact(basis_state(finite_basis(4), 2, 3, Atom::excited), p, s);
  for (const auto& r : f.records) {
    EXPECT_NEAR(r.n_x, 2.0, 1e-12);
    EXPECT_NEAR(r.n_y, 3.0, 1e-12);
    EXPECT_NEAR(r.sigma_z, 1.0, 1e-12);
  }
}

TEST(ExactSector, ConservesExcitationFig6) {
  ModelParams p = fig4(5);
  p.g_x = 0.11;
  p.g_y = 0.10;
  const Trajectory t = propagate_exact(basis_state(finite_basis(5), 1, 1, Atom::excited), p, grid(50.0 / 0.11, 400));
  for (const auto& r : t.records) {
    EXPECT_NEAR(r.N_total, 3.0, 1e-10);
    EXPECT_NEAR(r.norm, 1.0, 1e-10);
  }
}

TEST(ExactSector, BoundaryStatesStayInRange) {
  const ModelParams p = fig4(3);
  const Basis b = finite_basis(3);
  const ComplexVector v = (basis_state(b, 6, 6, Atom::excited).amplitudes() +
                           basis_state(b, 6, 0, Atom::ground).amplitudes()) /
                          std::sqrt(2.0);
  const CoupledState psi(b, v);
  const Trajectory a = propagate_exact(psi, p, grid(10.0, 11));
  const Trajectory r = propagate_reduced(psi, p, grid(10.0, 11));
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_NEAR(a.records[k].norm, 1.0, 1e-12);
    EXPECT_NEAR(r.records[k].norm, 1.0, 1e-8);
    EXPECT_NEAR(a.records[k].sigma_z, r.records[k].sigma_z, 1e-6);
  }
}

TEST(Propagators, ReducedMatchesExactSmallJ) {
  for (const ModelParams& p : {resonant(5), fig4(5)}) {
    const CoupledState psi = coherent_pair(5, 5.0, Atom::excited);
    const PropagationSpec s = grid(50.0, 201);
    const Trajectory a = propagate_exact(psi, p, s);
    const Trajectory r = propagate_reduced(psi, p, s);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      worst = std::max({worst, std::abs(a.records[k].n_x - r.records[k].n_x),
                        std::abs(a.records[k].n_y - r.records[k].n_y),
                        std::abs(a.records[k].sigma_z - r.records[k].sigma_z)});
      EXPECT_NEAR(r.records[k].N_total, r.records[0].N_total, 1e-8);
    }
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(Propagators, HalfGapModeDiffersFromExact) {
  const ModelParams p = fig4(5);
  const CoupledState psi = coherent_pair(5, 2.0, Atom::excited);
  PropagationSpec s = grid(20.0, 41);
  const Trajectory a = propagate_exact(psi, p, s);
  s.detuning = DetuningMode::half_atomic_gap;
  const Trajectory r = propagate_reduced(psi, p, s);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.records.size(); ++k)
    worst = std::max(worst, std::abs(a.records[k].sigma_z - r.records[k].sigma_z));
  EXPECT_GT(worst, 1e-3);
}

TEST(Propagators, ResonantModesStayDegenerate) {
  const CoupledState psi = coherent_pair(10, 5.0, Atom::excited);
  const Trajectory a = propagate_exact(psi, resonant(10), grid(50.0, 500));
  for (const auto& r : a.records) EXPECT_NEAR(r.n_x, r.n_y, 1e-9);
}

TEST(InteractionFrame, ResidualByMode) {
  const ModelParams p = fig4(3);
  EXPECT_EQ(interaction_frame_check(p, 0.0, DetuningMode::exact_energy_difference), 0.0);
  EXPECT_LT(interaction_frame_check(resonant(3), 1.0, DetuningMode::exact_energy_difference), 1e-10);
  EXPECT_LT(interaction_frame_check(p, 2.5, DetuningMode::exact_energy_difference), 1e-10);
  const double half = interaction_frame_check(p, 2.5, DetuningMode::half_atomic_gap);
  EXPECT_GT(half, 1e-3);
  std::cout << "[ info ] half_atomic_gap interaction-frame residual at t=2.5: " << half << '\n';
  ModelParams big = p;
  big.j = 17;
  EXPECT_THROW(interaction_frame_check(big, 1.0, DetuningMode::exact_energy_difference), std::invalid_argument);
}

TEST(PropagationSpec, Validation) {
  PropagationSpec s;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.times = {0.0, 1.0, 0.5};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.times = {0.0, 1.0};
  s.rel_tol = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}
