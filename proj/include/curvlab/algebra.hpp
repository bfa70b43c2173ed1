#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "curvlab/linalg.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// Max-norm residuals of the three Jacobi/Bianchi systems in (C, D) form.
struct JacobiResidual {
  double ccc = 0.0;   // C C terms
  double ccd = 0.0;   // C D + D D terms
  double cdd = 0.0;   // C conj(D) + D conj(D) terms
  double max() const { return std::max({ccc, ccd, cdd}); }
  std::array<double, 3> as_array() const { return {ccc, ccd, cdd}; }
};

JacobiResidual jacobi_residual(const CTensor3& c, const CTensor3& d);

/// Lie algebra with a left-invariant Hermitian structure, stored through the
/// structure constants of a unitary (1,0)-frame e_1..e_n:
///
///   C^j_ik = <[e_i, e_k], conj(e_j)>,   D^j_ik = <[conj(e_j), e_k], e_i>,
///
/// so that [e_i, e_j] = sum_k C^k_ij e_k and
/// [e_i, conj(e_j)] = sum_k (conj(D^i_kj) e_k - D^j_ki conj(e_k)).
///
/// Complexified vectors are length-2n coordinate vectors in the basis
/// (e_1, ..., e_n, conj(e_1), ..., conj(e_n)). Immutable once built.
class HermitianLieAlgebra {
 public:
  /// Validates antisymmetry of C (tolerance tol * scale, then stored exactly
  /// antisymmetric) and the Jacobi residual (tolerance tol * scale).
  /// Throws DimensionError, StructureError or JacobiError.
  HermitianLieAlgebra(CTensor3 c, CTensor3 d, double tol = kDefaultTol);

  static HermitianLieAlgebra abelian(std::size_t n, double tol = kDefaultTol);

  std::size_t n() const noexcept { return n_; }
  const CTensor3& C() const noexcept { return c_; }
  const CTensor3& D() const noexcept { return d_; }
  double tol() const noexcept { return tol_; }
  /// 1 + |C|_F + |D|_F; linear quantities are compared against tol * scale,
  /// quadratic ones (curvature) against tol * scale^2.
  double scale() const noexcept { return 1.0 + c_.frob_norm() + d_.frob_norm(); }

  /// Bracket of two complexified vectors.
  CVec bracket(const CVec& u, const CVec& w) const;
  /// Coordinates of [b_a, b_b] for basis vectors b of the (e, conj e) basis.
  CVec basis_bracket(std::size_t a, std::size_t b) const;
  /// ad_u as a 2n x 2n matrix acting on coordinate vectors.
  CMat ad(const CVec& u) const;

  JacobiResidual jacobi() const { return jacobi_residual(c_, d_); }

 private:
  std::size_t n_;
  CTensor3 c_;
  CTensor3 d_;
  double tol_;
  // full[(a * 2n + b) * 2n + c]: coefficient of b_c in [b_a, b_b].
  std::vector<cd> full_;
};

/// Complex-bilinear extension of the metric to the complexification.
cd pairing(const CVec& u, const CVec& w);

/// Real Lie algebra with almost complex structure J and inner product G.
/// f(c, a, b) is the coefficient of x_c in [x_a, x_b].
struct RealLieData {
  std::size_t dim = 0;
  std::vector<double> f;  // dim^3, index (c * dim + a) * dim + b
  RMat J;
  RMat G;

  explicit RealLieData(std::size_t d = 0)
      : dim(d), f(d * d * d, 0.0), J(RMat::Zero(d, d)), G(RMat::Identity(d, d)) {}

  double& bracket_coeff(std::size_t c, std::size_t a, std::size_t b) { return f[(c * dim + a) * dim + b]; }
  double bracket_coeff(std::size_t c, std::size_t a, std::size_t b) const { return f[(c * dim + a) * dim + b]; }
  /// Sets [x_a, x_b] = value * x_c and the antisymmetric partner.
  void set_bracket(std::size_t a, std::size_t b, std::size_t c, double value) {
    bracket_coeff(c, a, b) = value;
    bracket_coeff(c, b, a) = -value;
  }
};

/// Builds a G-orthonormal J-adapted basis x_1, Jx_1, x_2, Jx_2, ..., sets
/// e_k = (x_k - i J x_k) / sqrt(2) and reads off (C, D).
/// Throws StructureError (antisymmetry, J^2 != -1, J/G incompatibility, G not
/// positive definite) or NotIntegrableError (Nijenhuis tensor non-zero).
HermitianLieAlgebra from_real(const RealLieData& data, double tol = kDefaultTol);

/// The complexified bracket of `data` applied to complex coordinate vectors
/// in the real basis x_1..x_dim.
CVec real_bracket(const RealLieData& data, const CVec& u, const CVec& w);

/// Coordinates, in the real basis of `data`, of the unitary frame used by
/// from_real: column k is e_k.
CMat adapted_frame(const RealLieData& data, double tol = kDefaultTol);

struct Unimodularity {
  bool unimodular = false;
  double max_trace = 0.0;  // max |tr ad| over the complexified basis
};

Unimodularity is_unimodular(const HermitianLieAlgebra& alg);

/// tr(ad_u) for a complexified vector u.
cd ad_trace(const HermitianLieAlgebra& alg, const CVec& u);

/// Constants with respect to e'_a = sum_b U_ab e_b. Throws PreconditionError
/// if U is not unitary within tol * sqrt(n).
HermitianLieAlgebra change_frame(const HermitianLieAlgebra& alg, const CMat& u);

/// Coordinates (length 2n) of the (1,0)-vector sum_i x_i e_i.
CVec lift10(const CVec& x);

}  // namespace curvlab
