#pragma once

#include <span>
#include <vector>

#include "fjc/types.hpp"

namespace fjc {

enum class Generator { x, y, z, plus, minus };

/// Spin-j irreducible representation of su(2), stored in the energy-mode
/// ordering n = mu + j = 0..2j.
///
/// Only the band data is held: the diagonal of Jz and the single off-diagonal
/// band of J+ (<n+1|J+|n> = sqrt((n+1)(2j-n))). Dense and sparse matrices are
/// generated on request. Immutable after construction.
class SpinRep {
 public:
  explicit SpinRep(int j);

  int j() const { return j_; }
  int dim() const { return 2 * j_ + 1; }

  /// Jz eigenvalues mu = -j..j, ascending.
  std::span<const double> jz_diagonal() const { return mu_; }
  /// raise[n] = <n+1|J+|n> for n = 0..2j-1.
  std::span<const double> raise_band() const { return raise_; }

  ComplexMatrix dense(Generator g) const;
  SparseComplexMatrix sparse(Generator g) const;

  /// Applies J+ to a field vector using the band (no matrix materialised).
  ComplexVector apply_raise(const ComplexVector& v) const;

 private:
  int j_;
  std::vector<double> mu_;
  std::vector<double> raise_;
};

/// Truncated bosonic ladder operators on {|0>,...,|cutoff-1>}.
struct BosonRep {
  int cutoff;
  ComplexMatrix a;
  ComplexMatrix adag;
  ComplexMatrix number;
};

struct OscillatorObservables {
  ComplexMatrix position;     // Jx
  ComplexMatrix momentum;     // -Jy
  ComplexMatrix hamiltonian;  // Jz + (j + 1/2) I
};

struct ContractedLadders {
  ComplexMatrix lowering;  // J- / sqrt(2j)
  ComplexMatrix raising;   // J+ / sqrt(2j)
};

/// Rejects j < 1 and non-integer labels with std::domain_error.
SpinRep build_spin_rep(double j);

OscillatorObservables oscillator_observables(const SpinRep& rep);

/// K = exp(-i (pi/2) Jy). Column n is the Jx eigenvector with eigenvalue n - j.
ComplexMatrix kravchuk_rotation(const SpinRep& rep);

ContractedLadders contracted_ladders(const SpinRep& rep);

/// <n+1| J+/sqrt(2j) |n> = sqrt((n+1)(1 - n/2j)).
double contracted_raise_element(int j, int n);

BosonRep build_boson_rep(int cutoff);

/// exp(-i t H) for Hermitian H via eigendecomposition.
ComplexMatrix hermitian_exponential(const ComplexMatrix& h, double t);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
SparseComplexMatrix commutator(const SparseComplexMatrix& a, const SparseComplexMatrix& b);

}  // namespace fjc
