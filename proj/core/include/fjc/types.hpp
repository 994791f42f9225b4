#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fjc {

using cplx = std::complex<double>;
using Index = Eigen::Index;

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using SparseComplexMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx kI{0.0, 1.0};

enum class Atom : int { ground = 0, excited = 1 };
enum class Axis : int { x = 0, y = 1 };

inline constexpr double atom_sign(Atom a) { return a == Atom::excited ? 1.0 : -1.0; }
inline constexpr int atom_excitation(Atom a) { return a == Atom::excited ? 1 : 0; }

}  // namespace fjc
