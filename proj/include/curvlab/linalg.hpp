#pragma once

#include <complex>

#include <Eigen/Dense>

namespace curvlab {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Default relative tolerance; checks compare against tol * (1 + norm of input).
inline constexpr double kDefaultTol = 1e-9;

inline const cd kI{0.0, 1.0};

namespace linalg {

// Shape-checked matrix arithmetic. Mismatched shapes raise DimensionError.
CMat add(const CMat& a, const CMat& b);
CMat multiply(const CMat& a, const CMat& b);
CMat conjugate(const CMat& a);
CMat transpose(const CMat& a);
CMat adjoint(const CMat& a);
/// [a, b] = ab - ba
CMat commutator(const CMat& a, const CMat& b);
cd trace(const CMat& a);
double frob_norm(const CMat& a);
double max_abs(const CMat& a);
bool all_finite(const CMat& a);

struct Takagi {
  CMat U;          // unitary, U S U^T = diag(sigma)
  RVec sigma;      // non-negative, descending
};

/// Autonne-Takagi factorization of a complex symmetric matrix.
///
/// Throws PreconditionError if S is not square-symmetric within
/// tol * (1 + |S|_F) and NumericError if the eigensolver fails.
Takagi takagi(const CMat& s, double tol = kDefaultTol);

/// |U U^* - I|_F
double unitary_residual(const CMat& u);

}  // namespace linalg
}  // namespace curvlab
