#include "fjc/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fjc/su2_algebra.hpp"

namespace fjc {

namespace {

constexpr int kDenseModeDimLimit = 65;

// Coupling matrix element between two members of the same sector (zero if not adjacent).
double member_coupling(const JcModel& model, const BasisLabel& a, const BasisLabel& b) {
  if (a.atom == b.atom) return 0.0;
  const BasisLabel& e = a.atom == Atom::excited ? a : b;
  const BasisLabel& g = a.atom == Atom::excited ? b : a;
  if (g.n_x == e.n_x + 1 && g.n_y == e.n_y) return model.hop(Axis::x, e.n_x);
  if (g.n_x == e.n_x && g.n_y == e.n_y + 1) return model.hop(Axis::y, e.n_y);
  return 0.0;
}

// Dense full-space operator: atom ⊗ field_x ⊗ field_y.
ComplexMatrix kron3(const Eigen::Matrix2cd& atom, const ComplexMatrix& fx, const ComplexMatrix& fy) {
  const Index c = fx.rows();
  const Index dd = c * c;
  ComplexMatrix out = ComplexMatrix::Zero(2 * dd, 2 * dd);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      if (atom(a, b) == cplx(0.0)) continue;
      for (Index i = 0; i < c; ++i)
        for (Index k = 0; k < c; ++k) {
          if (fx(i, k) == cplx(0.0)) continue;
          out.block(a * dd + i * c, b * dd + k * c, c, c) += atom(a, b) * fx(i, k) * fy;
        }
    }
  return out;
}

}  // namespace

JcModel::JcModel(const ModelParams& p, ModelKind kind, int mode_dim) : params_(p), kind_(kind), basis_(mode_dim) {}

JcModel JcModel::finite(const ModelParams& params) {
  params.validate();
  const int j = params.j;
  JcModel m(params, ModelKind::finite, 2 * j + 1);
  auto fill = [&](ModeLadder& l, double omega, double g) {
    l.energy.resize(2 * j + 1);
    l.hop.resize(2 * j + 1);
    for (int n = 0; n <= 2 * j; ++n) {
      l.energy[n] = omega / (2.0 * j) * n * (2.0 * j - n + 1.0);
      l.hop[n] = n < 2 * j ? g * contracted_raise_element(j, n) : 0.0;
    }
  };
  fill(m.x_, params.omega_x, params.g_x);
  fill(m.y_, params.omega_y, params.g_y);
  return m;
}

JcModel JcModel::bosonic(const ModelParams& params, int cutoff) {
  params.validate();
  if (cutoff < 2) throw std::domain_error("bosonic model requires cutoff >= 2, got " + std::to_string(cutoff));
  JcModel m(params, ModelKind::bosonic, cutoff);
  auto fill = [&](ModeLadder& l, double omega, double g) {
    l.energy.resize(cutoff);
    l.hop.resize(cutoff);
    for (int n = 0; n < cutoff; ++n) {
      l.energy[n] = omega * n;
      l.hop[n] = n + 1 < cutoff ? g * std::sqrt(n + 1.0) : 0.0;
    }
  };
  fill(m.x_, params.omega_x, params.g_x);
  fill(m.y_, params.omega_y, params.g_y);
  return m;
}

double JcModel::energy_gap(Axis axis, int n_k) const {
  const double omega = axis == Axis::x ? params_.omega_x : params_.omega_y;
  if (kind_ == ModelKind::bosonic) return params_.omega_a - omega;
  return params_.omega_a - omega * (1.0 - static_cast<double>(n_k) / params_.j);
}

ComplexMatrix HamiltonianSet::dense(const SparseComplexMatrix& m) {
  if (m.rows() > 2 * static_cast<Index>(kDenseModeDimLimit) * kDenseModeDimLimit)
    throw std::length_error("dense full-space matrices are limited to j <= 32");
  return ComplexMatrix(m);
}

HamiltonianSet build_hamiltonian(const JcModel& model) {
  const Basis& basis = model.basis();
  const Index n = basis.size();
  std::vector<Eigen::Triplet<cplx>> diag;
  std::vector<Eigen::Triplet<cplx>> off;
  std::vector<Eigen::Triplet<cplx>> num;
  diag.reserve(static_cast<std::size_t>(n));
  off.reserve(static_cast<std::size_t>(2 * n));
  num.reserve(static_cast<std::size_t>(n));
  for (int e = 0; e <= basis.max_excitation(); ++e) {
    const SectorBasis s = sector(basis, e);
    const TridiagonalBlock block = tridiagonal_block(model, s);
    for (Index i = 0; i < s.size(); ++i) {
      diag.emplace_back(s.block_indices[i], s.block_indices[i], block.diagonal[i]);
      num.emplace_back(s.block_indices[i], s.block_indices[i], static_cast<double>(e));
      if (i + 1 < s.size() && block.off_diagonal[i] != 0.0) {
        off.emplace_back(s.block_indices[i], s.block_indices[i + 1], block.off_diagonal[i]);
        off.emplace_back(s.block_indices[i + 1], s.block_indices[i], block.off_diagonal[i]);
      }
    }
  }
  HamiltonianSet h{model, SparseComplexMatrix(n, n), SparseComplexMatrix(n, n), SparseComplexMatrix(n, n),
                   SparseComplexMatrix(n, n)};
  h.free.setFromTriplets(diag.begin(), diag.end());
  h.interaction.setFromTriplets(off.begin(), off.end());
  h.excitation.setFromTriplets(num.begin(), num.end());
  h.total = h.free + h.interaction;
  h.total.makeCompressed();
  return h;
}

HamiltonianSet build_finite_hamiltonian(const ModelParams& params) { return build_hamiltonian(JcModel::finite(params)); }

HamiltonianSet build_bosonic_hamiltonian(const ModelParams& params, int cutoff) {
  return build_hamiltonian(JcModel::bosonic(params, cutoff));
}

SparseComplexMatrix build_excitation_operator(const Basis& basis) {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(basis.size()));
  for (Index i = 0; i < basis.size(); ++i) t.emplace_back(i, i, static_cast<double>(basis.label(i).excitation()));
  SparseComplexMatrix m(basis.size(), basis.size());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseComplexMatrix build_excitation_operator(int j) {
  if (j < 1) throw std::domain_error("build_excitation_operator: j must be >= 1");
  return build_excitation_operator(finite_basis(j));
}

Eigen::MatrixXd TridiagonalBlock::dense() const {
  const Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = diagonal[i];
  for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off_diagonal[i];
  return m;
}

TridiagonalBlock tridiagonal_block(const JcModel& model, const SectorBasis& sector) {
  TridiagonalBlock b;
  const std::size_t n = sector.members.size();
  b.diagonal.resize(n);
  b.off_diagonal.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    b.diagonal[i] = model.free_energy(sector.members[i]);
    if (i + 1 < n) b.off_diagonal[i] = member_coupling(model, sector.members[i], sector.members[i + 1]);
  }
  return b;
}

ComplexMatrix sector_block(const HamiltonianSet& h, const SectorBasis& sector) {
  const Index n = sector.size();
  for (Index idx : sector.block_indices)
    if (idx < 0 || idx >= h.total.rows()) throw std::out_of_range("sector_block: sector index outside Hamiltonian");
  ComplexMatrix block(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) block(a, b) = h.total.coeff(sector.block_indices[a], sector.block_indices[b]);
  return block;
}

ComplexVector DressedStates::embedded(Index k) const {
  ComplexVector v = ComplexVector::Zero(full_size);
  for (std::size_t i = 0; i < indices.size(); ++i) v[indices[i]] = eigenvectors(static_cast<Index>(i), k);
  return v;
}

DressedStates dressed_states(const HamiltonianSet& h, const SectorBasis& sector) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sector_block(h, sector));
  if (es.info() != Eigen::Success) throw std::runtime_error("dressed_states: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors(), sector.block_indices, h.total.rows()};
}

RotatedFrame beam_splitter_frame(const ModelParams& params, double theta, int cutoff) {
  if (cutoff < 2 || cutoff > 24) throw std::domain_error("beam_splitter_frame: cutoff must lie in [2, 24]");
  const BosonRep b = build_boson_rep(cutoff);
  const ComplexMatrix id = ComplexMatrix::Identity(cutoff, cutoff);
  const Eigen::Matrix2cd atom_id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sigma_minus = Eigen::Matrix2cd::Zero();
  sigma_minus(0, 1) = 1.0;  // |g><e|
  const Eigen::Matrix2cd sigma_plus = sigma_minus.adjoint();
  Eigen::Matrix2cd sigma_z = Eigen::Matrix2cd::Zero();
  sigma_z(0, 0) = -1.0;
  sigma_z(1, 1) = 1.0;

  const ComplexMatrix ax = kron3(atom_id, b.a, id);
  const ComplexMatrix ay = kron3(atom_id, id, b.a);
  const ComplexMatrix nx = kron3(atom_id, b.number, id);
  const ComplexMatrix ny = kron3(atom_id, id, b.number);
  const ComplexMatrix sz = kron3(sigma_z, id, id);
  const ComplexMatrix jc_x = kron3(sigma_minus, b.adag, id) + kron3(sigma_plus, b.a, id);
  const ComplexMatrix jc_y = kron3(sigma_minus, id, b.adag) + kron3(sigma_plus, id, b.a);
  const ComplexMatrix hop = ax.adjoint() * ay + ax * ay.adjoint();

  RotatedFrame f;
  f.theta = theta;
  f.cutoff = cutoff;
  f.h_original = HamiltonianSet::dense(build_bosonic_hamiltonian(params, cutoff).total);

  const ComplexMatrix generator = ax.adjoint() * ay - ax * ay.adjoint();
  const ComplexMatrix rotation = hermitian_exponential(kI * generator, theta);
  f.h_rotated = rotation.adjoint() * f.h_original * rotation;

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  f.omega_bar_x = params.omega_x * c * c + params.omega_y * s * s;
  f.omega_bar_y = params.omega_y * c * c + params.omega_x * s * s;
  f.g_bar_cross = (params.omega_x - params.omega_y) * c * s;
  f.g_bar_x = params.g_x * c - params.g_y * s;
  f.g_bar_y = params.g_x * s + params.g_y * c;
  f.h_analytic = f.omega_bar_x * nx + f.omega_bar_y * ny + f.g_bar_cross * hop + 0.5 * params.omega_a * sz +
                 f.g_bar_x * jc_x + f.g_bar_y * jc_y;
  return f;
}

double rotated_frame_residual(const RotatedFrame& frame) {
  const Basis basis(frame.cutoff);
  double worst = 0.0;
  for (Index a = 0; a < basis.size(); ++a) {
    const BasisLabel la = basis.label(a);
    if (la.n_x + la.n_y > frame.cutoff - 1) continue;
    for (Index b = 0; b < basis.size(); ++b) {
      const BasisLabel lb = basis.label(b);
      if (lb.n_x + lb.n_y > frame.cutoff - 1) continue;
      worst = std::max(worst, std::abs(frame.h_rotated(a, b) - frame.h_analytic(a, b)));
    }
  }
  return worst;
}

double y_coupling_block_norm(const ComplexMatrix& m, int cutoff) {
  const Basis basis(cutoff);
  double worst = 0.0;
  for (int nx = 0; nx < cutoff; ++nx)
    for (int ny = 0; nx + ny + 1 <= cutoff - 1; ++ny)
      worst = std::max(worst, std::abs(m(basis.index(nx, ny + 1, Atom::ground), basis.index(nx, ny, Atom::excited))));
  return worst;
}

double x_coupling_element(const ComplexMatrix& m, int cutoff) {
  const Basis basis(cutoff);
  return m(basis.index(1, 0, Atom::ground), basis.index(0, 0, Atom::excited)).real();
}

double elimination_angle(double g_x, double g_y) {
  if (g_x == 0.0 && g_y == 0.0) throw std::domain_error("elimination_angle: both couplings are zero");
  if (g_y == 0.0) return 0.0;
  return -std::atan2(g_y, g_x);
}

}  // namespace fjc
