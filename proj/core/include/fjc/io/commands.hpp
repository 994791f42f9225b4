#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fjc/io/config.hpp"

namespace fjc::io {

struct SimulationResult {
  std::vector<Trajectory> trajectories;
  std::vector<std::filesystem::path> csv_files;
  std::vector<std::filesystem::path> plot_files;  // only those written successfully
};

/// Runs every configured method. With several methods, the CSV name gets a
/// "_<method>" suffix before the extension.
SimulationResult run_simulation(const RunConfig& config, std::ostream& log);

struct CompareOptions {
  std::vector<int> j_values;
  int cutoff = 40;
  double tail_tolerance = 1e-8;
  /// Envelope window for revival detection; defaults to 5 bare Rabi periods.
  std::optional<double> window;
};

struct ComparePoint {
  int j = 0;
  double sup_difference = 0.0;            // over the whole grid
  double sup_difference_to_revival = 0.0; // over [t_start, reference revival]
  std::optional<double> revival;
  std::vector<ExpectationRecord> records;
};

struct CompareReport {
  std::vector<ComparePoint> points;
  std::vector<ExpectationRecord> reference;
  std::optional<double> reference_revival;
  double tail_mass = 0.0;
  double window = 0.0;
  bool difference_decreasing = false;
  bool revival_decreasing = false;
};

/// Finite model at each j against the truncated bosonic model, both
/// propagated with the sector propagator. Throws ConfigError if the cutoff
/// leaves more than tail_tolerance of the initial state outside the bosonic space.
CompareReport compare_command(const RunConfig& config, const CompareOptions& options);
void print_compare_report(std::ostream& out, const CompareReport& report);
void write_compare_csv(const std::filesystem::path& path, const CompareReport& report);

struct BenchOptions {
  std::vector<int> j_values;
  long steps = 100;
  double dt = 0.01;
  /// Each timing is the fastest of this many batches of `steps` steps.
  int repeats = 3;
  /// Largest j for the step-plus-observables timing (it retains all eigenvectors).
  int max_observable_j = 128;
};

struct BenchRow {
  int j = 0;
  int N = 0;  // 2j
  std::string method;
  long steps = 0;
  double setup_seconds = 0.0;
  double seconds_per_step = 0.0;
  double operations = 0.0;  // complex multiply-adds over all steps
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::map<std::string, double> slopes;  // log-log slope of seconds_per_step vs N
};

/// Timings on a state that occupies every sector.
///   exact_sector:             one phase advance of all dressed coefficients
///   exact_sector_observables: advance plus reconstruction of expectations
///   reduced_ode:              one fixed-step RK4 step of the reduced equations
BenchReport bench_command(const BenchOptions& options);
void print_bench_report(std::ostream& out, const BenchReport& report);
void write_bench_csv(const std::filesystem::path& path, const BenchReport& report);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Dressed-state energies of one excitation sector, ascending.
RealVector spectrum_command(const RunConfig& config, int sector);
void write_spectrum_csv(std::ostream& out, int sector, const RealVector& eigenvalues);

}  // namespace fjc::io
