#include "fjc/io/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fjc::io {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"model", {"j", "kind", "cutoff", "omega_x", "omega_y", "omega_a", "g_x", "g_y"}},
      {"initial", {"kind", "nbar_x", "nbar_y", "n_x", "n_y", "atom"}},
      {"propagation",
       {"methods", "t_start", "t_end", "samples", "rel_tol", "abs_tol", "detuning", "sector_weight_floor"}},
      {"output", {"csv", "plot"}},
      {"run", {"seed"}},
  };
  return s;
}

template <class T>
void read(const pt::ptree& section, const std::string& name, const std::string& key, T& out) {
  const auto child = section.get_child_optional(key);
  if (!child) return;
  const auto v = child->get_value_optional<T>();
  if (!v) throw ConfigError(name + "." + key + ": cannot parse '" + child->data() + "'");
  out = *v;
}

bool parse_bool(const std::string& field, std::string s) {
  boost::algorithm::to_lower(s);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError(field + ": expected a boolean, got '" + s + "'");
}

Atom parse_atom(const std::string& s) {
  if (s == "e" || s == "excited") return Atom::excited;
  if (s == "g" || s == "ground") return Atom::ground;
  throw ConfigError("initial.atom: expected e or g, got '" + s + "'");
}

RunConfig from_tree(const pt::ptree& tree) {
  for (const auto& [name, section] : tree) {
    const auto it = schema().find(name);
    if (section.empty()) {
      if (it != schema().end()) continue;  // empty section header
      throw ConfigError(name + ": keys must appear inside a section");
    }
    if (it == schema().end()) throw ConfigError(name + ": unknown section");
    for (const auto& [key, value] : section)
      if (!it->second.contains(key)) throw ConfigError(name + "." + key + ": unknown key");
  }

  RunConfig c;
  const pt::ptree empty;
  auto section = [&](const std::string& name) -> const pt::ptree& {
    const auto s = tree.get_child_optional(name);
    return s ? *s : empty;
  };

  const pt::ptree& model = section("model");
  read(model, "model", "j", c.params.j);
  read(model, "model", "cutoff", c.cutoff);
  read(model, "model", "omega_x", c.params.omega_x);
  read(model, "model", "omega_y", c.params.omega_y);
  read(model, "model", "omega_a", c.params.omega_a);
  read(model, "model", "g_x", c.params.g_x);
  read(model, "model", "g_y", c.params.g_y);
  std::string kind = "finite";
  read(model, "model", "kind", kind);
  if (kind == "finite")
    c.model_kind = ModelKind::finite;
  else if (kind == "bosonic")
    c.model_kind = ModelKind::bosonic;
  else
    throw ConfigError("model.kind: expected finite or bosonic, got '" + kind + "'");

  const pt::ptree& init = section("initial");
  std::string ikind = "coherent";
  read(init, "initial", "kind", ikind);
  if (ikind == "coherent")
    c.initial.kind = InitialState::Kind::coherent;
  else if (ikind == "energy_mode")
    c.initial.kind = InitialState::Kind::energy_mode;
  else
    throw ConfigError("initial.kind: expected coherent or energy_mode, got '" + ikind + "'");
  const bool coherent = c.initial.kind == InitialState::Kind::coherent;
  for (const char* k : {"nbar_x", "nbar_y"})
    if (!coherent && init.count(k)) throw ConfigError(std::string("initial.") + k + ": only valid with kind = coherent");
  for (const char* k : {"n_x", "n_y"})
    if (coherent && init.count(k)) throw ConfigError(std::string("initial.") + k + ": only valid with kind = energy_mode");
  read(init, "initial", "nbar_x", c.initial.nbar_x);
  read(init, "initial", "nbar_y", c.initial.nbar_y);
  read(init, "initial", "n_x", c.initial.n_x);
  read(init, "initial", "n_y", c.initial.n_y);
  std::string atom = "e";
  read(init, "initial", "atom", atom);
  c.initial.atom = parse_atom(atom);

  const pt::ptree& prop = section("propagation");
  std::string methods;
  read(prop, "propagation", "methods", methods);
  if (!methods.empty()) {
    std::vector<std::string> names;
    boost::algorithm::split(names, methods, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
    c.methods.clear();
    for (auto& n : names) {
      if (n.empty()) continue;
      try {
        const Method m = parse_method(n);
        if (std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end())
          throw ConfigError("propagation.methods: '" + n + "' listed twice");
        c.methods.push_back(m);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("propagation.methods: ") + e.what());
      }
    }
  }
  read(prop, "propagation", "t_start", c.t_start);
  read(prop, "propagation", "t_end", c.t_end);
  long samples = static_cast<long>(c.samples);
  read(prop, "propagation", "samples", samples);
  if (samples < 2 || samples > 100'000'000) throw ConfigError("propagation.samples: must be in 2..100000000");
  c.samples = static_cast<std::size_t>(samples);
  read(prop, "propagation", "rel_tol", c.spec.rel_tol);
  read(prop, "propagation", "abs_tol", c.spec.abs_tol);
  read(prop, "propagation", "sector_weight_floor", c.spec.sector_weight_floor);
  std::string det;
  read(prop, "propagation", "detuning", det);
  if (!det.empty()) {
    try {
      c.spec.detuning = parse_detuning(det);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("propagation.detuning: ") + e.what());
    }
  }

  const pt::ptree& out = section("output");
  std::string csv;
  read(out, "output", "csv", csv);
  if (!csv.empty()) c.output.csv = csv;
  std::string plot;
  read(out, "output", "plot", plot);
  if (!plot.empty()) c.output.plot = parse_bool("output.plot", plot);

  read(section("run"), "run", "seed", c.seed);

  c.validate();
  return c;
}

}  // namespace

void RunConfig::validate() {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model.") + e.what());
  }
  if (model_kind == ModelKind::bosonic && cutoff < 2) throw ConfigError("model.cutoff: must be >= 2");
  const int top = mode_dim() - 1;
  if (initial.kind == InitialState::Kind::coherent) {
    for (auto [name, v] : {std::pair{"nbar_x", initial.nbar_x}, std::pair{"nbar_y", initial.nbar_y}}) {
      if (!std::isfinite(v) || v < 0.0) throw ConfigError(std::string("initial.") + name + ": must be >= 0");
      if (model_kind == ModelKind::finite && v > 2.0 * params.j)
        throw ConfigError(std::string("initial.") + name + ": exceeds 2j = " + std::to_string(2 * params.j));
    }
  } else {
    for (auto [name, v] : {std::pair{"n_x", initial.n_x}, std::pair{"n_y", initial.n_y}})
      if (v < 0 || v > top)
        throw ConfigError(std::string("initial.") + name + ": outside 0.." + std::to_string(top));
  }
  if (methods.empty()) throw ConfigError("propagation.methods: at least one method is required");
  if (!std::isfinite(t_start)) throw ConfigError("propagation.t_start: must be finite");
  if (!std::isfinite(t_end) || !(t_end > t_start)) throw ConfigError("propagation.t_end: must exceed t_start");
  if (samples < 2) throw ConfigError("propagation.samples: must be >= 2");
  if (!(spec.rel_tol > 0.0)) throw ConfigError("propagation.rel_tol: must be positive");
  if (!(spec.abs_tol > 0.0)) throw ConfigError("propagation.abs_tol: must be positive");
  if (!(spec.sector_weight_floor >= 0.0)) throw ConfigError("propagation.sector_weight_floor: must be >= 0");
  for (Method m : methods) {
    if (m == Method::resonant_closed_form) {
      if (params.omega_x != params.omega_y || params.g_x != params.g_y)
        throw ConfigError("propagation.methods: resonant_closed_form needs omega_x == omega_y and g_x == g_y");
      if (initial.kind != InitialState::Kind::energy_mode || initial.n_x != initial.n_y ||
          initial.atom != Atom::excited)
        throw ConfigError("propagation.methods: resonant_closed_form needs an energy_mode start |n, n, e>");
    }
  }
  spec.times = uniform_grid(t_start, t_end, samples);
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return from_tree(tree);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

JcModel make_model(const RunConfig& c) {
  return c.model_kind == ModelKind::finite ? JcModel::finite(c.params) : JcModel::bosonic(c.params, c.cutoff);
}

CoupledState make_initial_state(const RunConfig& c) {
  const int d = c.mode_dim();
  auto field = [&](double nbar, int n) -> ComplexVector {
    if (c.initial.kind == InitialState::Kind::energy_mode) {
      ComplexVector v = ComplexVector::Zero(d);
      v[n] = 1.0;
      return v;
    }
    if (c.model_kind == ModelKind::finite)
      return coherent_coefficients(c.params.j, alpha_for_mean_n(c.params.j, nbar)).cast<cplx>();
    return glauber_coefficients(d, nbar).cast<cplx>();
  };
  ComplexVector fx = field(c.initial.nbar_x, c.initial.n_x);
  ComplexVector fy = field(c.initial.nbar_y, c.initial.n_y);
  // absorb the last-ulp error of the log-domain coefficients
  fx.normalize();
  fy.normalize();
  return product_state(fx, fy, c.initial.atom);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::reduced_ode:
      return "reduced_ode";
    case Method::exact_sector:
      return "exact_sector";
    case Method::resonant_closed_form:
      return "resonant_closed_form";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "reduced_ode") return Method::reduced_ode;
  if (name == "exact_sector") return Method::exact_sector;
  if (name == "resonant_closed_form") return Method::resonant_closed_form;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::string detuning_name(DetuningMode m) {
  return m == DetuningMode::exact_energy_difference ? "exact_energy_difference" : "half_atomic_gap";
}

DetuningMode parse_detuning(const std::string& name) {
  if (name == "exact_energy_difference") return DetuningMode::exact_energy_difference;
  if (name == "half_atomic_gap") return DetuningMode::half_atomic_gap;
  throw std::invalid_argument("unknown detuning mode '" + name + "'");
}

}  // namespace fjc::io
