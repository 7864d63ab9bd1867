#ifndef TAUT_JACOBI_HPP
#define TAUT_JACOBI_HPP

#include <Eigen/Dense>

namespace taut::numeric
{

struct SymmetricEigen
{
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXd vectors;   // columns, matching values
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
/// Frobenius norm is at most tol * max(1, |A|_F). Only the upper triangle
/// is read.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd const &a, double tol = 1e-12, int max_sweeps = 100);

} // namespace taut::numeric

#endif // TAUT_JACOBI_HPP
