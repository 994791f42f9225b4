#pragma once

#include <vector>

#include "fjc/states.hpp"
#include "fjc/types.hpp"

namespace fjc {

/// Single-mode spectrum data: free energy of each level and the coupling
/// matrix element g <n+1|a†|n> for each upward transition.
struct ModeLadder {
  std::vector<double> energy;  // size d
  std::vector<double> hop;     // size d; hop[d-1] = 0
};

enum class ModelKind { finite, bosonic };

/// Two-mode Jaynes–Cummings model in the excitation-conserving (RWA) form,
/// either over two su(2) finite oscillators (mode_dim = 2j+1) or over two
/// truncated bosonic modes (mode_dim = cutoff).
class JcModel {
 public:
  static JcModel finite(const ModelParams& params);
  static JcModel bosonic(const ModelParams& params, int cutoff);

  const ModelParams& params() const { return params_; }
  ModelKind kind() const { return kind_; }
  const Basis& basis() const { return basis_; }
  const ModeLadder& ladder(Axis axis) const { return axis == Axis::x ? x_ : y_; }

  double free_energy(int n_x, int n_y, Atom atom) const {
    return x_.energy[n_x] + y_.energy[n_y] + 0.5 * params_.omega_a * atom_sign(atom);
  }
  double free_energy(const BasisLabel& l) const { return free_energy(l.n_x, l.n_y, l.atom); }

  /// Coupling between |.., n_k, e> and |.., n_k + 1, g> along `axis` (zero at the top level).
  double hop(Axis axis, int n_k) const { return ladder(axis).hop[n_k]; }

  /// Free-energy gap E(n_k, e) - E(n_k + 1, g) along `axis`.
  double energy_gap(Axis axis, int n_k) const;

 private:
  JcModel(const ModelParams& p, ModelKind kind, int mode_dim);

  ModelParams params_;
  ModelKind kind_;
  Basis basis_;
  ModeLadder x_;
  ModeLadder y_;
};

/// Full-space operators of one model, assembled sector by sector in sparse form.
struct HamiltonianSet {
  JcModel model;
  SparseComplexMatrix total;
  SparseComplexMatrix free;
  SparseComplexMatrix interaction;
  SparseComplexMatrix excitation;

  const ModelParams& params() const { return model.params(); }
  /// Dense copy; refused for mode_dim > 65 (j > 32).
  static ComplexMatrix dense(const SparseComplexMatrix& m);
};

HamiltonianSet build_hamiltonian(const JcModel& model);
HamiltonianSet build_finite_hamiltonian(const ModelParams& params);
HamiltonianSet build_bosonic_hamiltonian(const ModelParams& params, int cutoff);

SparseComplexMatrix build_excitation_operator(const Basis& basis);
SparseComplexMatrix build_excitation_operator(int j);

/// Real symmetric tridiagonal sector block in the sector's chain order.
struct TridiagonalBlock {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size n - 1

  Index size() const { return static_cast<Index>(diagonal.size()); }
  Eigen::MatrixXd dense() const;
};

TridiagonalBlock tridiagonal_block(const JcModel& model, const SectorBasis& sector);

/// Restriction of H.total to the sector's indices, read from the assembled matrix.
ComplexMatrix sector_block(const HamiltonianSet& h, const SectorBasis& sector);

struct DressedStates {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // sector-local, one column per eigenvalue
  std::vector<Index> indices; // full-space indices of the sector members
  Index full_size;

  ComplexVector embedded(Index k) const;
};

DressedStates dressed_states(const HamiltonianSet& h, const SectorBasis& sector);

/// Hamiltonian conjugated by the beam-splitter rotation R(theta) =
/// exp(theta (Ax† Ay - Ax Ay†)) on the truncated bosonic space.
struct RotatedFrame {
  double theta;
  double omega_bar_x;
  double omega_bar_y;
  double g_bar_x;      // coupling of the rotated x mode to the atom
  double g_bar_y;      // coupling of the rotated y mode to the atom
  double g_bar_cross;  // beam-splitter coefficient of (Ax† Ay + Ax Ay†)
  int cutoff;
  ComplexMatrix h_original;  // bosonic H_total
  ComplexMatrix h_rotated;   // R† H R, numerical
  ComplexMatrix h_analytic;  // assembled from the coefficients above
};

RotatedFrame beam_splitter_frame(const ModelParams& params, double theta, int cutoff);

/// Largest |R†HR - H_analytic| over basis pairs whose photon number n_x + n_y
/// stays below the cutoff (where the truncated rotation is exact).
double rotated_frame_residual(const RotatedFrame& frame);

/// Largest |<g, n_x, n_y+1| M |e, n_x, n_y>| over the exact subspace.
double y_coupling_block_norm(const ComplexMatrix& m, int cutoff);
/// <g, 1, 0| M |e, 0, 0>.
double x_coupling_element(const ComplexMatrix& m, int cutoff);

/// theta for which the rotated Hamiltonian has no y-mode/atom coupling.
double elimination_angle(double g_x, double g_y);

}  // namespace fjc
