#include "fjc/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjc {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + ": must be a finite number");
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= M_PI))
    throw std::domain_error("coherent-state angle alpha must lie in [0, pi], got " + std::to_string(alpha));
}

// Unnormalised p_n in extended precision, built outward from the peak with
// p_{n+1} / p_n = sqrt((2j - n) / (n + 1)) tan(alpha/2), then normalised.
std::vector<long double> coherent_profile(int j, double alpha) {
  const int top = 2 * j;
  const long double half = 0.5L * static_cast<long double>(alpha);
  const long double t = std::tan(half);
  const long double s2 = std::sin(half) * std::sin(half);
  const int peak = std::clamp(static_cast<int>(std::lround(static_cast<double>(top * s2))), 0, top);
  std::vector<long double> p(top + 1, 0.0L);
  p[peak] = 1.0L;
  for (int n = peak; n < top; ++n)
    p[n + 1] = p[n] * std::sqrt(static_cast<long double>(top - n) / (n + 1)) * t;
  for (int n = peak; n > 0; --n) p[n - 1] = p[n] / (std::sqrt(static_cast<long double>(top - n + 1) / n) * t);
  long double norm = 0.0L;
  for (long double v : p) norm += v * v;
  norm = std::sqrt(norm);
  for (long double& v : p) v /= norm;
  return p;
}

}  // namespace

void ModelParams::validate() const {
  if (j < 1) throw std::invalid_argument("j: must be an integer >= 1");
  require_finite(omega_x, "omega_x");
  require_finite(omega_y, "omega_y");
  require_finite(omega_a, "omega_a");
  require_finite(g_x, "g_x");
  require_finite(g_y, "g_y");
  if (g_x < 0.0) throw std::invalid_argument("g_x: coupling must be >= 0");
  if (g_y < 0.0) throw std::invalid_argument("g_y: coupling must be >= 0");
}

Basis::Basis(int mode_dim) : d_(mode_dim) {
  if (mode_dim < 2) throw std::domain_error("basis mode dimension must be >= 2");
}

BasisLabel Basis::label(Index flat) const {
  const Index dd = static_cast<Index>(d_) * d_;
  if (flat < 0 || flat >= size()) throw std::out_of_range("basis index out of range");
  const Atom atom = flat >= dd ? Atom::excited : Atom::ground;
  const Index rest = flat % dd;
  return {static_cast<int>(rest / d_), static_cast<int>(rest % d_), atom};
}

CoupledState::CoupledState(Basis basis, ComplexVector amplitudes) : basis_(basis), amps_(std::move(amplitudes)) {
  if (amps_.size() != basis_.size()) throw std::invalid_argument("CoupledState: amplitude vector has wrong length");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("CoupledState: state is not normalised (norm " + std::to_string(norm) + ")");
}

ComplexVector energy_mode_state(int j, int n) {
  if (j < 1) throw std::domain_error("energy_mode_state: j must be >= 1");
  if (n < 0 || n > 2 * j)
    throw std::domain_error("energy mode n=" + std::to_string(n) + " outside 0.." + std::to_string(2 * j));
  ComplexVector v = ComplexVector::Zero(2 * j + 1);
  v[n] = 1.0;
  return v;
}

RealVector coherent_coefficients(int j, double alpha) {
  if (j < 1) throw std::domain_error("coherent_coefficients: j must be >= 1");
  require_alpha(alpha);
  const int top = 2 * j;
  RealVector p = RealVector::Zero(top + 1);
  if (alpha == 0.0) {
    p[0] = 1.0;
    return p;
  }
  if (alpha == M_PI) {
    p[top] = 1.0;
    return p;
  }
  const std::vector<long double> q = coherent_profile(j, alpha);
  for (int n = 0; n <= top; ++n) p[n] = static_cast<double>(q[n]);
  return p;
}

ComplexVector coherent_state(const SpinRep& rep, double alpha, int base_n) {
  require_alpha(alpha);
  const ComplexVector base = energy_mode_state(rep.j(), base_n);
  if (alpha == 0.0) return base;
  // rotation generated by the momentum P = -Jy keeps the amplitudes p_n non-negative
  return hermitian_exponential(-rep.dense(Generator::y), alpha) * base;
}

double alpha_for_mean_n(int j, double nbar) {
  if (j < 1) throw std::domain_error("alpha_for_mean_n: j must be >= 1");
  if (!(nbar >= 0.0 && nbar <= 2.0 * j))
    throw std::domain_error("mean excitation " + std::to_string(nbar) + " outside [0, 2j=" + std::to_string(2 * j) + "]");
  return 2.0 * std::asin(std::sqrt(nbar / (2.0 * j)));
}

double coherent_mean_n(int j, double alpha) {
  const RealVector p = coherent_coefficients(j, alpha);
  long double mean = 0.0L;
  for (Index n = 0; n < p.size(); ++n) mean += static_cast<long double>(n) * p[n] * p[n];
  return static_cast<double>(mean);
}

RealVector glauber_coefficients(int cutoff, double nbar) {
  if (cutoff < 2) throw std::domain_error("glauber_coefficients: cutoff must be >= 2");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw std::domain_error("glauber_coefficients: nbar must be >= 0");
  RealVector c = RealVector::Zero(cutoff);
  if (nbar == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double ln = std::log(nbar);
  for (int n = 0; n < cutoff; ++n) c[n] = std::exp(-0.5 * nbar + 0.5 * n * ln - 0.5 * std::lgamma(n + 1.0));
  c /= c.norm();
  return c;
}

double glauber_tail_mass(int cutoff, double nbar) {
  if (nbar == 0.0) return 0.0;
  double head = 0.0;
  const double ln = std::log(nbar);
  for (int n = 0; n < cutoff; ++n) head += std::exp(-nbar + n * ln - std::lgamma(n + 1.0));
  return std::max(0.0, 1.0 - head);
}

CoupledState product_state(const ComplexVector& field_x, const ComplexVector& field_y, Atom atom) {
  if (field_x.size() != field_y.size())
    throw std::invalid_argument("product_state: field vectors have different dimensions");
  const Basis basis(static_cast<int>(field_x.size()));
  ComplexVector amps = ComplexVector::Zero(basis.size());
  for (int nx = 0; nx < basis.mode_dim(); ++nx)
    for (int ny = 0; ny < basis.mode_dim(); ++ny) amps[basis.index(nx, ny, atom)] = field_x[nx] * field_y[ny];
  return CoupledState(basis, std::move(amps));
}

CoupledState basis_state(const Basis& basis, int n_x, int n_y, Atom atom) {
  if (!basis.contains(n_x, n_y)) throw std::domain_error("basis_state: mode label out of range");
  ComplexVector amps = ComplexVector::Zero(basis.size());
  amps[basis.index(n_x, n_y, atom)] = 1.0;
  return CoupledState(basis, std::move(amps));
}

SectorBasis sector(const Basis& basis, int total_excitation) {
  if (total_excitation < 0 || total_excitation > basis.max_excitation())
    throw std::out_of_range("sector: excitation number out of range");
  SectorBasis s{total_excitation, {}, {}};
  const int top = basis.mode_dim() - 1;
  const int lo = std::max(0, total_excitation - 1 - top);
  const int hi = std::min(top, total_excitation);
  for (int nx = lo; nx <= hi; ++nx) {
    if (basis.contains(nx, total_excitation - nx)) s.members.push_back({nx, total_excitation - nx, Atom::ground});
    if (basis.contains(nx, total_excitation - 1 - nx))
      s.members.push_back({nx, total_excitation - 1 - nx, Atom::excited});
  }
  s.block_indices.reserve(s.members.size());
  for (const auto& m : s.members) s.block_indices.push_back(basis.index(m));
  return s;
}

std::vector<SectorBasis> sector_decomposition(const Basis& basis) {
  std::vector<SectorBasis> out;
  out.reserve(static_cast<std::size_t>(basis.max_excitation() + 1));
  for (int n = 0; n <= basis.max_excitation(); ++n) out.push_back(sector(basis, n));
  return out;
}

std::vector<SectorBasis> sector_decomposition(int j) {
  if (j < 1) throw std::domain_error("sector_decomposition: j must be >= 1");
  return sector_decomposition(finite_basis(j));
}

}  // namespace fjc
