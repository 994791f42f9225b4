#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fjc/dynamics.hpp"

namespace fjc::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialState {
  enum class Kind { coherent, energy_mode };
  Kind kind = Kind::coherent;
  double nbar_x = 0.0;
  double nbar_y = 0.0;
  int n_x = 0;
  int n_y = 0;
  Atom atom = Atom::excited;
};

struct OutputOptions {
  std::filesystem::path csv = "trajectory.csv";
  bool plot = false;
};

struct RunConfig {
  ModelParams params;
  ModelKind model_kind = ModelKind::finite;
  int cutoff = 40;  // bosonic mode dimension
  InitialState initial;
  std::vector<Method> methods{Method::exact_sector};
  double t_start = 0.0;
  double t_end = 50.0;
  std::size_t samples = 2000;
  PropagationSpec spec;  // times filled from t_start, t_end, samples
  OutputOptions output;
  long seed = 0;

  int mode_dim() const { return model_kind == ModelKind::finite ? 2 * params.j + 1 : cutoff; }
  /// Re-runs every check and rebuilds spec.times. Throws ConfigError naming the field.
  void validate();
};

/// Reads an INI-style file with sections [model], [initial], [propagation],
/// [output], [run]. Unknown sections or keys are rejected.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& source_name = "<string>");

JcModel make_model(const RunConfig& config);
CoupledState make_initial_state(const RunConfig& config);

std::string method_name(Method m);
Method parse_method(const std::string& name);
std::string detuning_name(DetuningMode m);
DetuningMode parse_detuning(const std::string& name);

}  // namespace fjc::io
