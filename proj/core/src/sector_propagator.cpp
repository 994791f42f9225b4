#include "fjc/sector_propagator.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fjc {

void tridiagonal_eigensystem(const TridiagonalBlock& block, RealVector& eigenvalues, Eigen::MatrixXd* eigenvectors) {
  const lapack_int n = static_cast<lapack_int>(block.size());
  eigenvalues.resize(n);
  if (n == 0) return;
  if (n == 1) {
    eigenvalues[0] = block.diagonal[0];
    if (eigenvectors) *eigenvectors = Eigen::MatrixXd::Ones(1, 1);
    return;
  }
  std::vector<double> d = block.diagonal;
  std::vector<double> e = block.off_diagonal;
  e.push_back(0.0);
  Eigen::MatrixXd z;
  const char jobz = eigenvectors ? 'V' : 'N';
  if (eigenvectors) z.resize(n, n);
  // divide and conquer; dstevr was ~10x slower on blocks of a few hundred
  const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, jobz, n, d.data(), e.data(), eigenvectors ? z.data() : nullptr, n);
  if (info != 0) throw std::runtime_error("dstevd failed with info " + std::to_string(info));
  eigenvalues = Eigen::Map<const RealVector>(d.data(), n);
  if (eigenvectors) *eigenvectors = std::move(z);
}

SectorPropagator::SectorPropagator(const JcModel& model, const ComplexVector& initial,
                                   SectorPropagatorOptions options)
    : basis_(model.basis()), options_(options) {
  if (initial.size() != basis_.size()) throw std::invalid_argument("SectorPropagator: initial vector has wrong length");
  for (int e = 0; e <= basis_.max_excitation(); ++e) {
    const SectorBasis s = sector(basis_, e);
    double weight = 0.0;
    for (Index idx : s.block_indices) weight += std::norm(initial[idx]);
    if (weight <= options_.weight_floor) {
      discarded_ += weight;
      continue;
    }
    Block b;
    b.excitation = e;
    b.indices = s.block_indices;
    for (const auto& m : s.members) {
      b.n_x.push_back(m.n_x);
      b.n_y.push_back(m.n_y);
      b.excited.push_back(atom_excitation(m.atom));
    }
    tridiagonal_eigensystem(tridiagonal_block(model, s), b.eigenvalues, &b.eigenvectors);
    const Index n = s.size();
    RealVector re(n), im(n);
    for (Index i = 0; i < n; ++i) {
      re[i] = initial[s.block_indices[i]].real();
      im[i] = initial[s.block_indices[i]].imag();
    }
    const RealVector cr = b.eigenvectors.transpose() * re;
    const RealVector ci = b.eigenvectors.transpose() * im;
    b.initial.resize(n);
    for (Index i = 0; i < n; ++i) b.initial[i] = cplx(cr[i], ci[i]);
    b.current = b.initial;
    if (!options_.retain_eigenvectors) b.eigenvectors.resize(0, 0);
    active_dim_ += n;
    sectors_.push_back(std::move(b));
  }
}

void SectorPropagator::set_time(double t) {
  for (Block& b : sectors_)
    for (Index i = 0; i < b.current.size(); ++i) b.current[i] = b.initial[i] * std::polar(1.0, -b.eigenvalues[i] * t);
  time_ = t;
}

void SectorPropagator::advance(double dt) {
  if (dt != cached_dt_ || (!sectors_.empty() && sectors_.front().step_phase.size() == 0)) {
    for (Block& b : sectors_) {
      b.step_phase.resize(b.eigenvalues.size());
      for (Index i = 0; i < b.eigenvalues.size(); ++i) b.step_phase[i] = std::polar(1.0, -b.eigenvalues[i] * dt);
    }
    cached_dt_ = dt;
  }
  for (Block& b : sectors_) b.current.array() *= b.step_phase.array();
  time_ += dt;
}

void SectorPropagator::reconstruct(const Block& b, ComplexVector& out) const {
  if (b.eigenvectors.size() == 0) throw std::logic_error("SectorPropagator: eigenvectors were not retained");
  const RealVector re = b.eigenvectors * b.current.real();
  const RealVector im = b.eigenvectors * b.current.imag();
  out.resize(re.size());
  for (Index i = 0; i < re.size(); ++i) out[i] = cplx(re[i], im[i]);
}

ExpectationRecord SectorPropagator::expectations() const {
  ExpectationRecord r;
  r.t = time_;
  ComplexVector psi;
  double pe = 0.0;
  double pg = 0.0;
  for (const Block& b : sectors_) {
    reconstruct(b, psi);
    for (Index i = 0; i < psi.size(); ++i) {
      const double p = std::norm(psi[i]);
      r.n_x += b.n_x[i] * p;
      r.n_y += b.n_y[i] * p;
      (b.excited[i] ? pe : pg) += p;
    }
  }
  r.norm = pe + pg;
  r.sigma_z = pe - pg;
  r.N_total = r.n_x + r.n_y + pe;
  return r;
}

ComplexVector SectorPropagator::state() const {
  ComplexVector full = ComplexVector::Zero(basis_.size());
  ComplexVector psi;
  for (const Block& b : sectors_) {
    reconstruct(b, psi);
    for (Index i = 0; i < psi.size(); ++i) full[b.indices[i]] = psi[i];
  }
  return full;
}

}  // namespace fjc
