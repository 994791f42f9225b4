#include "fjc/io/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fjc/io/csv.hpp"
#include "fjc/io/plot.hpp"
#include "fjc/observables.hpp"

namespace fjc::io {

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& suffix, const std::string& ext) {
  std::filesystem::path out = p;
  out.replace_filename(p.stem().string() + suffix + ext);
  return out;
}

std::vector<double> column(const std::vector<ExpectationRecord>& r, double ExpectationRecord::*field) {
  std::vector<double> v;
  v.reserve(r.size());
  for (const auto& x : r) v.push_back(x.*field);
  return v;
}

void write_plots(const std::filesystem::path& csv, const Trajectory& traj, SimulationResult& result) {
  const std::vector<double> t = column(traj.records, &ExpectationRecord::t);
  const auto modes = with_suffix(csv, "_modes", ".svg");
  if (write_svg_plot(modes, {traj.method + ": mean mode numbers", "t", "<n>"},
                     {{"n_x", t, column(traj.records, &ExpectationRecord::n_x)},
                      {"n_y", t, column(traj.records, &ExpectationRecord::n_y)}}))
    result.plot_files.push_back(modes);
  const auto inv = with_suffix(csv, "_inversion", ".svg");
  if (write_svg_plot(inv, {traj.method + ": atomic inversion", "t", "<sigma_z>"},
                     {{"sigma_z", t, column(traj.records, &ExpectationRecord::sigma_z)}}))
    result.plot_files.push_back(inv);
}

double nbar_of(const InitialState& s, Axis axis) {
  if (s.kind == InitialState::Kind::coherent) return axis == Axis::x ? s.nbar_x : s.nbar_y;
  return axis == Axis::x ? s.n_x : s.n_y;
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SimulationResult run_simulation(const RunConfig& config, std::ostream& log) {
  const JcModel model = make_model(config);
  const CoupledState initial = make_initial_state(config);
  SimulationResult result;
  for (Method m : config.methods) {
    PropagationSpec spec = config.spec;
    spec.method = m;
    Trajectory traj = propagate(initial, model, spec);
    const auto csv = config.methods.size() == 1
                         ? config.output.csv
                         : with_suffix(config.output.csv, "_" + method_name(m), config.output.csv.extension().string());
    write_trajectory_csv(csv, traj.records);
    log << method_name(m) << ": " << traj.records.size() << " rows -> " << csv.string() << '\n';
    result.csv_files.push_back(csv);
    if (config.output.plot) write_plots(csv, traj, result);
    result.trajectories.push_back(std::move(traj));
  }
  return result;
}

CompareReport compare_command(const RunConfig& config, const CompareOptions& options) {
  if (options.j_values.empty()) throw ConfigError("--j: at least one value is required");
  CompareReport report;

  RunConfig ref = config;
  ref.model_kind = ModelKind::bosonic;
  ref.cutoff = options.cutoff;
  ref.validate();
  if (config.initial.kind == InitialState::Kind::coherent) {
    report.tail_mass = glauber_tail_mass(options.cutoff, config.initial.nbar_x) +
                       glauber_tail_mass(options.cutoff, config.initial.nbar_y);
  }
  if (report.tail_mass > options.tail_tolerance)
    throw ConfigError("--cutoff: truncated reference loses " + format_double(report.tail_mass) +
                      " of the initial state (limit " + format_double(options.tail_tolerance) + ")");

  const ModelParams& p = config.params;
  // Without coupling there is no Rabi period and no revival to look for.
  if (options.window)
    report.window = *options.window;
  else if (p.g_x != 0.0 || p.g_y != 0.0)
    report.window =
        5.0 * bare_rabi_period(p.g_x, p.g_y, nbar_of(config.initial, Axis::x), nbar_of(config.initial, Axis::y));
  auto revival = [&](const std::vector<double>& t, const std::vector<double>& sz) -> std::optional<double> {
    if (!(report.window > 0.0)) return std::nullopt;
    return revival_time(t, sz, report.window);
  };

  PropagationSpec spec = config.spec;
  spec.method = Method::exact_sector;
  spec.keep_states = false;
  report.reference = propagate(make_initial_state(ref), make_model(ref), spec).records;
  const std::vector<double> t = column(report.reference, &ExpectationRecord::t);
  const std::vector<double> ref_sz = column(report.reference, &ExpectationRecord::sigma_z);
  report.reference_revival = revival(t, ref_sz);

  for (int j : options.j_values) {
    RunConfig fin = config;
    fin.model_kind = ModelKind::finite;
    fin.params.j = j;
    fin.validate();
    ComparePoint pt;
    pt.j = j;
    pt.records = propagate(make_initial_state(fin), make_model(fin), spec).records;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = std::abs(pt.records[i].sigma_z - ref_sz[i]);
      pt.sup_difference = std::max(pt.sup_difference, d);
      if (!report.reference_revival || t[i] <= *report.reference_revival)
        pt.sup_difference_to_revival = std::max(pt.sup_difference_to_revival, d);
    }
    pt.revival = revival(t, column(pt.records, &ExpectationRecord::sigma_z));
    report.points.push_back(std::move(pt));
  }

  report.difference_decreasing = true;
  report.revival_decreasing = report.points.front().revival.has_value();
  for (std::size_t k = 1; k < report.points.size(); ++k) {
    const auto& a = report.points[k - 1];
    const auto& b = report.points[k];
    if (!(b.sup_difference < a.sup_difference)) report.difference_decreasing = false;
    if (!b.revival || !a.revival || !(*b.revival < *a.revival)) report.revival_decreasing = false;
  }
  return report;
}

void print_compare_report(std::ostream& out, const CompareReport& r) {
  out << "reference: bosonic, tail mass " << format_double(r.tail_mass) << ", revival "
      << (r.reference_revival ? format_double(*r.reference_revival) : "none") << '\n';
  out << "envelope window " << format_double(r.window) << '\n';
  for (const auto& p : r.points) {
    out << "j=" << p.j << "  sup|d sigma_z|=" << format_double(p.sup_difference)
        << "  up to reference revival=" << format_double(p.sup_difference_to_revival)
        << "  revival=" << (p.revival ? format_double(*p.revival) : "none") << '\n';
  }
  out << "difference strictly decreasing: " << (r.difference_decreasing ? "yes" : "no") << '\n';
  out << "revival time strictly decreasing: " << (r.revival_decreasing ? "yes" : "no") << '\n';
}

void write_compare_csv(const std::filesystem::path& path, const CompareReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : r.points)
    rows.push_back({std::to_string(p.j), format_double(p.sup_difference), format_double(p.sup_difference_to_revival),
                    p.revival ? format_double(*p.revival) : ""});
  write_table_csv(path, {"j", "sup_sigma_z_difference", "sup_difference_to_revival", "revival_time"}, rows);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (n * sxy - sx * sy) / den;
}

BenchReport bench_command(const BenchOptions& options) {
  for (std::size_t k = 1; k < options.j_values.size(); ++k)
    if (!(options.j_values[k] > options.j_values[k - 1])) throw ConfigError("--j: values must be ascending");
  if (options.steps < 0) throw ConfigError("--steps: must be >= 0");
  if (options.repeats < 1) throw ConfigError("--repeats: must be >= 1");
  auto best_of = [&](const std::function<void()>& batch) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < options.repeats; ++r) best = std::min(best, seconds(batch));
    return best / static_cast<double>(options.steps);
  };
  BenchReport report;
  if (options.steps == 0) return report;

  for (int j : options.j_values) {
    ModelParams p;
    p.j = j;
    p.omega_x = p.omega_y = p.omega_a = 1.0;
    p.g_x = p.g_y = 1.0;
    p.validate();
    const JcModel model = JcModel::finite(p);
    const Index dim = model.basis().size();
    const ComplexVector psi = ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));

    {
      BenchRow row{j, 2 * j, "exact_sector", options.steps};
      std::optional<SectorPropagator> prop;
      row.setup_seconds = seconds([&] { prop.emplace(model, psi, SectorPropagatorOptions{0.0, false}); });
      prop->advance(options.dt);  // warm the phase cache
      row.seconds_per_step = best_of([&] {
        for (long s = 0; s < options.steps; ++s) prop->advance(options.dt);
      });
      row.operations = static_cast<double>(prop->active_dimension()) * static_cast<double>(options.steps);
      report.rows.push_back(row);
    }
    if (j <= options.max_observable_j) {
      BenchRow row{j, 2 * j, "exact_sector_observables", options.steps};
      std::optional<SectorPropagator> prop;
      row.setup_seconds = seconds([&] { prop.emplace(model, psi, SectorPropagatorOptions{0.0, true}); });
      double sink = 0.0;
      row.seconds_per_step = best_of([&] {
        for (long s = 0; s < options.steps; ++s) {
          prop->advance(options.dt);
          sink += prop->expectations().sigma_z;
        }
      });
      double block_sq = 0.0;
      for (const auto& s : sector_decomposition(model.basis()))
        block_sq += static_cast<double>(s.size()) * static_cast<double>(s.size());
      row.operations = (static_cast<double>(dim) + 2.0 * block_sq) * static_cast<double>(options.steps);
      if (std::isfinite(sink)) report.rows.push_back(row);
    }
    {
      BenchRow row{j, 2 * j, "reduced_ode", options.steps};
      std::optional<ReducedSystem> sys;
      row.setup_seconds = seconds([&] { sys.emplace(model, DetuningMode::exact_energy_difference); });
      const ComplexRhs rhs = [&](double t, const ComplexVector& y, ComplexVector& dy) { (*sys)(t, y, dy); };
      ComplexVector y = psi;
      double t = 0.0;
      row.seconds_per_step = best_of([&] {
        for (long s = 0; s < options.steps; ++s) {
          rk4_step(rhs, t, options.dt, y);
          t += options.dt;
        }
      });
      // four right-hand sides, each touching every excited amplitude's two couplings twice
      row.operations = 4.0 * 2.0 * static_cast<double>(dim) * static_cast<double>(options.steps);
      report.rows.push_back(row);
    }
  }

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_method;
  for (const auto& r : report.rows) {
    by_method[r.method].first.push_back(r.N);
    by_method[r.method].second.push_back(std::max(r.seconds_per_step, 1e-12));
  }
  for (const auto& [m, xy] : by_method)
    if (xy.first.size() >= 2) report.slopes[m] = loglog_slope(xy.first, xy.second);
  return report;
}

void print_bench_report(std::ostream& out, const BenchReport& r) {
  if (r.rows.empty()) {
    out << "no steps requested\n";
    return;
  }
  for (const auto& row : r.rows) {
    out << row.method << "  N=" << row.N << "  setup " << format_double(row.setup_seconds) << " s  step "
        << format_double(row.seconds_per_step) << " s  ops " << format_double(row.operations) << '\n';
  }
  for (const auto& [m, s] : r.slopes) out << "slope " << m << ": " << format_double(s) << '\n';
}

void write_bench_csv(const std::filesystem::path& path, const BenchReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : r.rows)
    rows.push_back({row.method, std::to_string(row.j), std::to_string(row.N), std::to_string(row.steps),
                    format_double(row.setup_seconds), format_double(row.seconds_per_step),
                    format_double(row.operations)});
  write_table_csv(path, {"method", "j", "N", "steps", "setup_seconds", "seconds_per_step", "operations"}, rows);
}

RealVector spectrum_command(const RunConfig& config, int sector_number) {
  const JcModel model = make_model(config);
  if (sector_number < 0 || sector_number > model.basis().max_excitation())
    throw ConfigError("--sector: outside 0.." + std::to_string(model.basis().max_excitation()));
  RealVector evals;
  tridiagonal_eigensystem(tridiagonal_block(model, sector(model.basis(), sector_number)), evals, nullptr);
  return evals;
}

void write_spectrum_csv(std::ostream& out, int sector_number, const RealVector& eigenvalues) {
  out << "sector,index,energy\n";
  for (Index i = 0; i < eigenvalues.size(); ++i)
    out << sector_number << ',' << i << ',' << format_double(eigenvalues[i]) << '\n';
}

}  // namespace fjc::io
