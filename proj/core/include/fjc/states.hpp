#pragma once

#include <vector>

#include "fjc/su2_algebra.hpp"
#include "fjc/types.hpp"

namespace fjc {

/// Physical parameters of the two-mode finite Jaynes–Cummings system.
struct ModelParams {
  int j = 1;
  double omega_x = 1.0;
  double omega_y = 1.0;
  double omega_a = 1.0;
  double g_x = 0.0;
  double g_y = 0.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct BasisLabel {
  int n_x;
  int n_y;
  Atom atom;

  int excitation() const { return n_x + n_y + atom_excitation(atom); }
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Coupled atom ⊗ field ⊗ field basis with per-mode dimension `mode_dim`.
/// flat = atom * d^2 + n_x * d + n_y, atom g = 0, e = 1.
class Basis {
 public:
  explicit Basis(int mode_dim);

  int mode_dim() const { return d_; }
  Index size() const { return 2 * static_cast<Index>(d_) * d_; }
  int max_excitation() const { return 2 * (d_ - 1) + 1; }

  bool contains(int n_x, int n_y) const { return n_x >= 0 && n_y >= 0 && n_x < d_ && n_y < d_; }
  Index index(int n_x, int n_y, Atom atom) const {
    return static_cast<Index>(atom_excitation(atom)) * d_ * d_ + static_cast<Index>(n_x) * d_ + n_y;
  }
  Index index(const BasisLabel& l) const { return index(l.n_x, l.n_y, l.atom); }
  BasisLabel label(Index flat) const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  int d_;
};

inline Basis finite_basis(int j) { return Basis(2 * j + 1); }

/// Normalised state on the coupled basis.
class CoupledState {
 public:
  /// Throws std::invalid_argument when the vector is not unit norm within 1e-10.
  CoupledState(Basis basis, ComplexVector amplitudes);

  const Basis& basis() const { return basis_; }
  const ComplexVector& amplitudes() const { return amps_; }
  cplx amplitude(int n_x, int n_y, Atom atom) const { return amps_[basis_.index(n_x, n_y, atom)]; }

 private:
  Basis basis_;
  ComplexVector amps_;
};

/// Product states sharing one eigenvalue of the excitation operator.
/// Members follow the chain order g(n_x), e(n_x), g(n_x + 1), ... in which
/// every sector block of the Hamiltonian is tridiagonal.
struct SectorBasis {
  int total_excitation;
  std::vector<BasisLabel> members;
  std::vector<Index> block_indices;

  Index size() const { return static_cast<Index>(members.size()); }
};

ComplexVector energy_mode_state(int j, int n);

/// p_n = sqrt(C(2j,n)) cos(a/2)^(2j-n) sin(a/2)^n, built by an extended-precision
/// ratio recurrence from the peak and normalised (no tan or factorial overflow).
RealVector coherent_coefficients(int j, double alpha);

/// exp(-i alpha P) |j, base_n> with P = -Jy; for base_n = 0 the entries are p_n.
ComplexVector coherent_state(const SpinRep& rep, double alpha, int base_n = 0);

double alpha_for_mean_n(int j, double nbar);

/// sum_n n p_n(alpha)^2.
double coherent_mean_n(int j, double alpha);

/// Truncated Glauber coherent amplitudes e^{-nbar/2} nbar^{n/2} / sqrt(n!),
/// renormalised on the cutoff. Reference state for the bosonic model.
RealVector glauber_coefficients(int cutoff, double nbar);

/// Probability mass the untruncated Glauber state places on n >= cutoff.
double glauber_tail_mass(int cutoff, double nbar);

CoupledState product_state(const ComplexVector& field_x, const ComplexVector& field_y, Atom atom);

/// Single basis vector |n_x, n_y, atom>.
CoupledState basis_state(const Basis& basis, int n_x, int n_y, Atom atom);

SectorBasis sector(const Basis& basis, int total_excitation);
std::vector<SectorBasis> sector_decomposition(const Basis& basis);
std::vector<SectorBasis> sector_decomposition(int j);

}  // namespace fjc
