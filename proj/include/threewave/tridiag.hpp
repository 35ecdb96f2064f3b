#ifndef THREEWAVE_TRIDIAG_HPP
#define THREEWAVE_TRIDIAG_HPP

#include <Eigen/Dense>

namespace threewave {

struct TridiagEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal, column j pairs with values(j)
};

/// Eigensolve of the real symmetric tridiagonal matrix with the given
/// diagonal (length m) and offdiagonal (length m-1). Eigenvalues by bisection
/// on the sign count of the characteristic-minor recurrence
/// Delta_k = (d_k - lambda) Delta_{k-1} - b_{k-1}^2 Delta_{k-2}
/// (evaluated in pivot/ratio form), eigenvectors by inverse iteration.
TridiagEigen tridiag_eigen(const Eigen::VectorXd& diag,
                           const Eigen::VectorXd& offdiag);

/// Inverse-iteration eigenvector of the same matrix for a known eigenvalue.
Eigen::VectorXd tridiag_eigenvector(const Eigen::VectorXd& diag,
                                    const Eigen::VectorXd& offdiag,
                                    double lambda);

/// Number of eigenvalues strictly below x (the Sturm count).
int tridiag_count_below(const Eigen::VectorXd& diag,
                        const Eigen::VectorXd& offdiag, double x);

}  // namespace threewave

#endif
