// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fjc/dynamics.hpp"
#include "fjc/io/commands.hpp"
#include "fjc/io/config.hpp"
#include "fjc/observables.hpp"

using namespace fjc;
namespace fs = std::filesystem;

namespace {

const fs::path kRecipes = FJC_RECIPE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

io::RunConfig recipe(const std::string& name, int j) {
  io::RunConfig c = io::load_config(kRecipes / name);
  c.params.j = j;
  c.validate();
  return c;
}

double max_abs(const SparseComplexMatrix& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseComplexMatrix::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

// 1. commutators, Casimir and ladder elements, absolute residuals.
Outcome algebra() {
  auto residual = [](int j) {
    const SpinRep rep(j);
    const SparseComplexMatrix x = rep.sparse(Generator::x), y = rep.sparse(Generator::y), z = rep.sparse(Generator::z);
    const SparseComplexMatrix p = rep.sparse(Generator::plus), m = rep.sparse(Generator::minus);
    const cplx i(0.0, 1.0);
    SparseComplexMatrix id(rep.dim(), rep.dim());
    id.setIdentity();
    double comm = std::max({max_abs(commutator(x, y) - i * z), max_abs(commutator(y, z) - i * x),
                            max_abs(commutator(z, x) - i * y), max_abs(commutator(z, p) - p),
                            max_abs(commutator(z, m) + m), max_abs(commutator(p, m) - 2.0 * z)});
    for (int n = 0; n < 2 * j; ++n) {
      const double want = std::sqrt((n + 1.0) * (2.0 * j - n));
      comm = std::max({comm, std::abs(p.coeff(n + 1, n) - want), std::abs(m.coeff(n, n + 1) - want)});
    }
    const SparseComplexMatrix c2 = SparseComplexMatrix(x * x) + SparseComplexMatrix(y * y) + SparseComplexMatrix(z * z);
    return std::pair{comm, max_abs(c2 - double(j) * (j + 1.0) * id)};
  };
  double worst = 0.0, worst_rel = 0.0, large = 0.0;
  int worst_j = 1;
  for (int j = 1; j <= 64; ++j) {
    const auto [c, s] = residual(j);
    if (std::max(c, s) > worst) worst_j = j;
    worst = std::max({worst, c, s});
    worst_rel = std::max(worst_rel, std::max(c, s) / (j * (j + 1.0)));
  }
  for (int j : {501, 600}) large = std::max(large, residual(j).second);
  return {worst < 1e-12 && large < 1e-10,
          "j=1..64 max residual " + sci(worst) + " at j=" + std::to_string(worst_j) + " (tol 1e-12; relative to j(j+1) " +
              sci(worst_rel) + "); Casimir residual j in {501,600} " + sci(large) + " (tol 1e-10)"};
}

// 2. coherent-state normalisation and mean.
Outcome coherent() {
  double norm_err = 0.0, mean_err = 0.0;
  for (int j : {1, 5, 50, 500})
    for (int k = 0; k <= 8; ++k) {
      const double alpha = k * M_PI / 8.0;
      const RealVector p = coherent_coefficients(j, alpha);
      long double s = 0.0L, mean = 0.0L;
      for (Index n = 0; n < p.size(); ++n) {
        const long double w = static_cast<long double>(p[n]) * p[n];
        s += w;
        mean += n * w;
      }
      const double want = 2.0 * j * std::pow(std::sin(0.5 * alpha), 2);
      norm_err = std::max(norm_err, static_cast<double>(std::abs(s - 1.0L)));
      mean_err = std::max(mean_err, static_cast<double>(std::abs(mean - want)));
    }
  return {norm_err < 1e-12 && mean_err < 1e-12,
          "max |sum p^2 - 1| " + sci(norm_err) + ", max |sum n p^2 - 2j sin^2(a/2)| " + sci(mean_err) + " (tol 1e-12)"};
}

// 3. norm and excitation drift of the sector propagator.
Outcome conservation() {
  double dn = 0.0, dN = 0.0;
  for (const char* name : {"fig3.cfg", "fig4.cfg"}) {
    io::RunConfig c = recipe(name, 20);
    PropagationSpec s = c.spec;
    s.times = uniform_grid(0.0, c.t_end, 2001);
    const Trajectory t = propagate_exact(io::make_initial_state(c), io::make_model(c), s);
    for (const auto& r : t.records) {
      dn = std::max(dn, std::abs(r.norm - t.records[0].norm));
      dN = std::max(dN, std::abs(r.N_total - t.records[0].N_total));
    }
  }
  return {dn < 1e-10 && dN < 1e-10, "norm drift " + sci(dn) + ", <N> drift " + sci(dN) + " (tol 1e-10)"};
}

// 4. reduced ODE against the sector propagator.
Outcome oracle() {
  double worst = 0.0;
  for (const char* name : {"fig3.cfg", "fig4.cfg"})
    for (int j : {5, 10}) {
      io::RunConfig c = recipe(name, j);
      PropagationSpec s = c.spec;
      s.times = uniform_grid(0.0, 50.0, 1001);
      s.rel_tol = 1e-10;
      s.abs_tol = 1e-12;
      s.detuning = DetuningMode::exact_energy_difference;
      const CoupledState psi = io::make_initial_state(c);
      const JcModel m = io::make_model(c);
      const Trajectory a = propagate_exact(psi, m, s);
      const Trajectory r = propagate_reduced(psi, m, s);
      for (std::size_t k = 0; k < a.records.size(); ++k)
        worst = std::max({worst, std::abs(a.records[k].n_x - r.records[k].n_x),
                          std::abs(a.records[k].n_y - r.records[k].n_y),
                          std::abs(a.records[k].sigma_z - r.records[k].sigma_z)});
    }
  return {worst < 1e-6, "max observable difference " + sci(worst) + " (tol 1e-6, rel_tol 1e-10)"};
}

// Angular frequency of P_e(t) = cos^2(W t / 2) from the first sampled quarter period.
double measured_frequency(const Trajectory& t, double guess) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    const double tk = t.times[k];
    if (tk * guess > 0.9 * M_PI) break;
    const double pe = 0.5 * (1.0 + t.records[k].sigma_z);
    sum += 2.0 * std::acos(std::sqrt(std::clamp(pe, 0.0, 1.0))) / tk;
    ++count;
  }
  return sum / count;
}

// 5. resonant closed form and the factor 8.
Outcome closed_form() {
  double worst = 0.0;
  ModelParams p;
  p.g_x = p.g_y = 1.0;
  for (int j : {5, 50})
    for (int n : {0, 1, 5}) {
      p.j = j;
      const JcModel m = JcModel::finite(p);
      const AmplitudeTriple init{1.0, 0.0, 0.0};
      const ResonantClosedForm cf(m, n, init);
      const double w_expected =
          std::sqrt(cf.detuning() * cf.detuning() + 8.0 * (n + 1.0) * (1.0 - n / (2.0 * j)));
      worst = std::max(worst, std::abs(cf.rabi_frequency() - w_expected));
      PropagationSpec s;
      s.times = uniform_grid(0.0, 3.0 * 2.0 * M_PI / cf.rabi_frequency(), 301);
      s.rel_tol = 1e-12;
      s.abs_tol = 1e-14;
      const TripleTrajectory num = propagate_triples({{{n, n}, init}}, m, s);
      for (std::size_t k = 0; k < num.times.size(); ++k) {
        const AmplitudeTriple a = num.samples[k].at({n, n}), b = cf(num.times[k]);
        worst = std::max({worst, std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c)});
      }
    }

  // Two-mode against single-mode (g_y = 0) vacuum Rabi oscillation, both from numerical runs.
  p.j = 50;
  PropagationSpec s;
  s.times = uniform_grid(0.0, 0.5, 201);
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-14;
  const Basis b = finite_basis(50);
  const double w2 = measured_frequency(propagate_reduced(basis_state(b, 0, 0, Atom::excited), p, s), std::sqrt(8.0));
  ModelParams single = p;
  single.g_y = 0.0;
  const double w1 =
      measured_frequency(propagate_reduced(basis_state(b, 0, 0, Atom::excited), single, s), std::sqrt(4.0));
  const double ratio = (w2 * w2) / (w1 * w1);
  return {worst < 1e-8 && std::abs(ratio - 2.0) < 1e-6,
          "closed form vs integration " + sci(worst) + " (tol 1e-8); squared-frequency ratio two-mode/single-mode " +
              std::to_string(ratio) + " (expected 2)"};
}

// 6. characteristic roots.
Outcome cubic_roots() {
  const io::RunConfig c = recipe("fig4.cfg", 50);
  const JcModel m = io::make_model(c);
  double worst = 0.0;
  PropagationSpec s;
  s.times = uniform_grid(0.0, c.t_end, 400);
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-14;
  for (TripleLabel l : {TripleLabel{0, 0}, TripleLabel{3, 1}, TripleLabel{5, 5}, TripleLabel{10, 4}}) {
    const AmplitudeTriple init{1.0, 0.0, 0.0};
    const RootSolution sol(m, l, init, DetuningMode::exact_energy_difference);
    const TripleTrajectory num = propagate_triples({{l, init}}, m, s);
    for (std::size_t k = 0; k < num.times.size(); ++k) {
      const AmplitudeTriple a = num.samples[k].at(l), b = sol(num.times[k]);
      worst = std::max({worst, std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c)});
    }
  }
  double limit = 0.0;
  ModelParams p;
  p.g_x = p.g_y = 0.7;
  p.omega_a = 1.2;
  for (int j : {5, 50}) {
    p.j = j;
    const JcModel r = JcModel::finite(p);
    for (int n : {0, 1, 5}) {
      const auto roots = nonresonant_characteristic_roots(r, n, n, DetuningMode::exact_energy_difference);
      const ResonantClosedForm cf(r, n, {1.0, 0.0, 0.0});
      const double d = cf.detuning(), w = cf.rabi_frequency();
      std::vector<double> want{0.5 * (d - w), d, 0.5 * (d + w)};
      std::sort(want.begin(), want.end());
      for (int k = 0; k < 3; ++k) limit = std::max(limit, std::abs(roots[k] - cplx(0.0, want[k])));
    }
  }
  return {worst < 1e-6 && limit < 1e-9,
          "root solution vs integration " + sci(worst) + " (tol 1e-6); resonant-limit root error " + sci(limit) +
              " (tol 1e-9)"};
}

// 7. convergence to the bosonic model.
Outcome convergence() {
  io::RunConfig c = io::load_config(kRecipes / "fig3.cfg");
  io::CompareOptions o;
  o.j_values = {50, 200, 800};
  o.cutoff = 40;
  const io::CompareReport r = io::compare_command(c, o);
  std::string d = "sup |d sigma_z|:";
  for (const auto& pt : r.points) d += " j=" + std::to_string(pt.j) + " " + sci(pt.sup_difference);
  d += "; revival:";
  for (const auto& pt : r.points) d += " " + (pt.revival ? std::to_string(*pt.revival) : std::string("none"));
  d += " (bosonic " + (r.reference_revival ? std::to_string(*r.reference_revival) : std::string("none")) + ")";
  return {r.difference_decreasing && r.revival_decreasing, d};
}

// 8. resonant symmetry and non-resonant splitting.
Outcome splitting() {
  auto split = [](const char* name) {
    const io::RunConfig c = recipe(name, 50);
    const Trajectory t = propagate_exact(io::make_initial_state(c), io::make_model(c), c.spec);
    double m = 0.0;
    for (const auto& r : t.records) m = std::max(m, std::abs(r.n_x - r.n_y));
    return m;
  };
  const double sym = split("fig3.cfg"), asym = split("fig4.cfg");
  return {sym < 1e-9 && asym > 0.05,
          "resonant max |n_x - n_y| " + sci(sym) + " (tol 1e-9); non-resonant max " + sci(asym) + " (need > 0.05)"};
}

// 9. beam-splitter frame.
Outcome beam_splitter() {
  const io::RunConfig c = recipe("fig4.cfg", 50);
  const ModelParams& p = c.params;
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) worst = std::max(worst, rotated_frame_residual(beam_splitter_frame(p, -M_PI + k * M_PI / 4 + 0.1, 10)));
  const RotatedFrame f = beam_splitter_frame(p, elimination_angle(p.g_x, p.g_y), 10);
  const double yb = y_coupling_block_norm(f.h_rotated, 10);
  const double gx = std::abs(std::abs(x_coupling_element(f.h_rotated, 10)) - std::hypot(p.g_x, p.g_y));
  return {worst < 1e-8 && yb < 1e-10 && gx < 1e-10,
          "conjugation vs analytic " + sci(worst) + " (tol 1e-8); y-coupling after elimination " + sci(yb) +
              ", x-coupling error " + sci(gx) + " (tol 1e-10)"};
}

// 10. step-time scaling of the sector propagator.
Outcome performance() {
  io::BenchOptions o;
  o.j_values = {32, 64, 128, 256};
  o.steps = 1000;
  o.repeats = 3;
  const io::BenchReport r = io::bench_command(o);
  const double slope = r.slopes.at("exact_sector");
  std::string d = "exact_sector step slope " + sci(slope) + " (limit 2.3)";
  if (r.slopes.count("exact_sector_observables"))
    d += "; with observables " + sci(r.slopes.at("exact_sector_observables"));
  if (r.slopes.count("reduced_ode")) d += "; reduced_ode " + sci(r.slopes.at("reduced_ode"));
  io::BenchOptions one;
  one.j_values = {100};
  one.steps = 1000;
  one.repeats = 1;
  const io::BenchReport ops = io::bench_command(one);
  for (const auto& row : ops.rows)
    if (row.method == "exact_sector") d += "; j=100 x 1000 steps: " + sci(row.operations) + " multiply-adds";
  return {slope <= 2.3, d};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "algebra", 10, algebra},          {2, "coherent states", 5, coherent},
      {3, "conservation", 60, conservation}, {4, "oracle equivalence", 300, oracle},
      {5, "resonant closed form", 60, closed_form}, {6, "cubic roots", 60, cubic_roots},
      {7, "convergence", 600, convergence},  {8, "symmetry and splitting", 60, splitting},
      {9, "beam splitter", 60, beam_splitter}, {10, "performance", 900, performance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget_seconds;
    failed += pass ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
