#include "fjc/su2_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fjc {

SpinRep::SpinRep(int j) : j_(j) {
  if (j < 1) throw std::domain_error("su(2) representation requires integer j >= 1, got " + std::to_string(j));
  mu_.resize(static_cast<std::size_t>(dim()));
  for (int n = 0; n < dim(); ++n) mu_[n] = static_cast<double>(n - j_);
  raise_.resize(static_cast<std::size_t>(2 * j_));
  for (int n = 0; n < 2 * j_; ++n) raise_[n] = std::sqrt(static_cast<double>(n + 1) * static_cast<double>(2 * j_ - n));
}

SparseComplexMatrix SpinRep::sparse(Generator g) const {
  const Index d = dim();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(2 * d));
  switch (g) {
    case Generator::z:
      for (Index n = 0; n < d; ++n) t.emplace_back(n, n, mu_[n]);
      break;
    case Generator::plus:
      for (Index n = 0; n + 1 < d; ++n) t.emplace_back(n + 1, n, raise_[n]);
      break;
    case Generator::minus:
      for (Index n = 0; n + 1 < d; ++n) t.emplace_back(n, n + 1, raise_[n]);
      break;
    case Generator::x:
      for (Index n = 0; n + 1 < d; ++n) {
        t.emplace_back(n + 1, n, 0.5 * raise_[n]);
        t.emplace_back(n, n + 1, 0.5 * raise_[n]);
      }
      break;
    case Generator::y:
      // Jy = (J+ - J-) / 2i
      for (Index n = 0; n + 1 < d; ++n) {
        t.emplace_back(n + 1, n, cplx(0.0, -0.5 * raise_[n]));
        t.emplace_back(n, n + 1, cplx(0.0, 0.5 * raise_[n]));
      }
      break;
  }
  SparseComplexMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

ComplexMatrix SpinRep::dense(Generator g) const { return ComplexMatrix(sparse(g)); }

ComplexVector SpinRep::apply_raise(const ComplexVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("apply_raise: dimension mismatch");
  ComplexVector out = ComplexVector::Zero(dim());
  for (Index n = 0; n + 1 < dim(); ++n) out[n + 1] = raise_[n] * v[n];
  return out;
}

SpinRep build_spin_rep(double j) {
  if (!std::isfinite(j) || j != std::floor(j))
    throw std::domain_error("su(2) representation label must be an integer, got " + std::to_string(j));
  if (j < 1.0) throw std::domain_error("su(2) representation requires j >= 1, got " + std::to_string(j));
  return SpinRep(static_cast<int>(j));
}

OscillatorObservables oscillator_observables(const SpinRep& rep) {
  OscillatorObservables o;
  o.position = rep.dense(Generator::x);
  o.momentum = -rep.dense(Generator::y);
  o.hamiltonian = rep.dense(Generator::z);
  o.hamiltonian.diagonal().array() += rep.j() + 0.5;
  return o;
}

ComplexMatrix hermitian_exponential(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_exponential: eigensolver failed");
  const ComplexVector phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix kravchuk_rotation(const SpinRep& rep) {
  return hermitian_exponential(rep.dense(Generator::y), M_PI / 2.0);
}

double contracted_raise_element(int j, int n) {
  return std::sqrt(static_cast<double>(n + 1) * (1.0 - static_cast<double>(n) / (2.0 * j)));
}

ContractedLadders contracted_ladders(const SpinRep& rep) {
  const double scale = 1.0 / std::sqrt(2.0 * rep.j());
  return {rep.dense(Generator::minus) * scale, rep.dense(Generator::plus) * scale};
}

BosonRep build_boson_rep(int cutoff) {
  if (cutoff < 2) throw std::domain_error("boson truncation requires cutoff >= 2, got " + std::to_string(cutoff));
  BosonRep b{cutoff, ComplexMatrix::Zero(cutoff, cutoff), ComplexMatrix::Zero(cutoff, cutoff),
             ComplexMatrix::Zero(cutoff, cutoff)};
  for (int n = 0; n + 1 < cutoff; ++n) b.adag(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  b.a = b.adag.adjoint();
  b.number = b.adag * b.a;
  return b;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

SparseComplexMatrix commutator(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  SparseComplexMatrix ab = a * b;
  SparseComplexMatrix ba = b * a;
  return ab - ba;
}

}  // namespace fjc
