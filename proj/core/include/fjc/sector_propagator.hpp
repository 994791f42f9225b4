#pragma once

#include <vector>

#include "fjc/hamiltonians.hpp"
#include "fjc/trajectory.hpp"

namespace fjc {

struct SectorPropagatorOptions {
  /// Sectors whose initial weight is at or below this value are dropped.
  double weight_floor = 1e-30;
  /// Keep the dressed-state eigenvectors. Needed for any product-basis
  /// output; without them the propagator can only advance phases.
  bool retain_eigenvectors = true;
};

/// Exact propagator over the invariant excitation sectors.
///
/// Each occupied sector block is diagonalised once (divide and conquer on the real
/// tridiagonal block). The state is held as dressed-state coefficients, so
/// advancing time costs one complex multiply per retained amplitude;
/// reconstructing product-basis amplitudes costs O(sum block_size^2).
class SectorPropagator {
 public:
  SectorPropagator(const JcModel& model, const ComplexVector& initial, SectorPropagatorOptions options = {});

  double time() const { return time_; }

  /// Sets the evolution time measured from construction.
  void set_time(double t);
  /// Multiplies every dressed coefficient by exp(-i lambda dt).
  void advance(double dt);

  ExpectationRecord expectations() const;
  ComplexVector state() const;

  std::size_t active_sectors() const { return sectors_.size(); }
  Index active_dimension() const { return active_dim_; }
  double discarded_weight() const { return discarded_; }
  const Basis& basis() const { return basis_; }

 private:
  struct Block {
    int excitation;
    std::vector<Index> indices;
    std::vector<int> n_x;
    std::vector<int> n_y;
    std::vector<int> excited;
    RealVector eigenvalues;
    Eigen::MatrixXd eigenvectors;
    ComplexVector initial;  // dressed coefficients at t = 0
    ComplexVector current;
    ComplexVector step_phase;
  };

  void reconstruct(const Block& b, ComplexVector& out) const;

  Basis basis_;
  SectorPropagatorOptions options_;
  std::vector<Block> sectors_;
  Index active_dim_ = 0;
  double discarded_ = 0.0;
  double time_ = 0.0;
  double cached_dt_ = 0.0;
};

/// Eigenpairs of a real symmetric tridiagonal matrix (ascending).
void tridiagonal_eigensystem(const TridiagonalBlock& block, RealVector& eigenvalues, Eigen::MatrixXd* eigenvectors);

}  // namespace fjc
