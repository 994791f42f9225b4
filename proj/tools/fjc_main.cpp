#include <CLI11.hpp>

#include <iostream>

#include "fjc/io/commands.hpp"
#include "fjc/io/csv.hpp"

namespace {

fjc::io::RunConfig load(const std::string& path, int j_override) {
  fjc::io::RunConfig c = fjc::io::load_config(path);
  if (j_override > 0) {
    c.params.j = j_override;
    c.validate();
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode Jaynes-Cummings dynamics on finite su(2) oscillators"};
  app.require_subcommand(1);

  std::string cfg_path;
  int j_override = 0;
  std::string out_path;

  auto* sim = app.add_subcommand("simulate", "Propagate a configuration and write trajectory CSVs");
  sim->add_option("config", cfg_path, "configuration file")->required()->check(CLI::ExistingFile);
  sim->add_option("--j", j_override, "override model.j")->check(CLI::PositiveNumber);
  sim->add_option("--out", out_path, "override output.csv");
  bool plot = false;
  sim->add_flag("--plot", plot, "also write SVG line plots");

  auto* cmp = app.add_subcommand("compare", "Finite model at several j against the truncated bosonic model");
  std::vector<int> j_list;
  int cutoff = 40;
  cmp->add_option("config", cfg_path, "configuration file")->required()->check(CLI::ExistingFile);
  cmp->add_option("--j", j_list, "representation labels, in the order the difference should decrease")->required();
  cmp->add_option("--cutoff", cutoff, "bosonic mode dimension")->check(CLI::Range(2, 200));
  cmp->add_option("--out", out_path, "report CSV");

  auto* bench = app.add_subcommand("bench", "Time propagation steps against N = 2j");
  std::vector<int> bench_j;
  long steps = 100;
  int repeats = 3;
  int max_obs_j = 128;
  bench->add_option("--j", bench_j, "ascending representation labels")->required();
  bench->add_option("--steps", steps, "steps per timing")->check(CLI::NonNegativeNumber);
  bench->add_option("--repeats", repeats, "batches per timing; the fastest is kept")->check(CLI::PositiveNumber);
  bench->add_option("--max-observable-j", max_obs_j, "largest j timed with full observable reconstruction");
  bench->add_option("--out", out_path, "timing CSV");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dressed-state energies of one excitation sector as CSV");
  int sector_number = 0;
  spectrum_cmd->add_option("config", cfg_path, "configuration file")->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--sector", sector_number, "excitation number")->required();
  spectrum_cmd->add_option("--j", j_override, "override model.j")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      fjc::io::RunConfig c = load(cfg_path, j_override);
      if (!out_path.empty()) c.output.csv = out_path;
      if (plot) c.output.plot = true;
      fjc::io::run_simulation(c, std::cout);
    } else if (*cmp) {
      const fjc::io::RunConfig c = fjc::io::load_config(cfg_path);
      fjc::io::CompareOptions opts;
      opts.j_values = j_list;
      opts.cutoff = cutoff;
      const auto report = fjc::io::compare_command(c, opts);
      fjc::io::print_compare_report(std::cout, report);
      if (!out_path.empty()) fjc::io::write_compare_csv(out_path, report);
      return report.difference_decreasing ? 0 : 3;
    } else if (*bench) {
      fjc::io::BenchOptions opts;
      opts.j_values = bench_j;
      opts.steps = steps;
      opts.repeats = repeats;
      opts.max_observable_j = max_obs_j;
      const auto report = fjc::io::bench_command(opts);
      fjc::io::print_bench_report(std::cout, report);
      if (!out_path.empty()) fjc::io::write_bench_csv(out_path, report);
    } else if (*spectrum_cmd) {
      const fjc::io::RunConfig c = load(cfg_path, j_override);
      fjc::io::write_spectrum_csv(std::cout, sector_number, fjc::io::spectrum_command(c, sector_number));
    }
  } catch (const fjc::IntegratorError& e) {
    std::cerr << "integrator failure at t=" << fjc::io::format_double(e.time()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
