#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "curvlab/algebra.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/linalg.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

// ---------------------------------------------------------------------------
// Almost abelian family. In an admissible frame the only non-zero constants
// are D^1_11 = lambda, D^1_i1 = v_i, D^j_i1 = A_ij, C^j_1i = -conj(A_ji)
// (i, j >= 2). Every (lambda, v, A) gives a Lie algebra.

struct AlmostAbelianParams {
  std::size_t n = 0;
  double lambda = 0.0;
  CVec v;  // n - 1
  CMat A;  // (n - 1) x (n - 1)
};

HermitianLieAlgebra build_almost_abelian(const AlmostAbelianParams& p, double tol = kDefaultTol);

struct FamilyClassification {
  bool unimodular = false;
  bool kahler = false;
  bool chern_flat = false;
};

/// Closed-form criteria: unimodular <=> lambda + 2 Re tr A = 0;
/// Kahler <=> v = 0 and A + A^* = 0; Chern flat <=> lambda = 0, v = 0, [A, A^*] = 0.
FamilyClassification aa_classify(const AlmostAbelianParams& p, double tol = kDefaultTol);

struct AaClosedForms {
  CTensor3 T;          // full torsion tensor assembled from T^1_1i = v_i, T^j_1i = A_ij + conj(A_ji)
  double R1111 = 0.0;  // -2 lambda^2 - |v|^2
  CVec R11i1;          // -A^* v
  CMat R11ij;          // v v^* + [A, A^*] - lambda (A + A^*)
  CTensor4 R;          // full Chern tensor: only R_{1 1bar k lbar} is non-zero
};

AaClosedForms aa_closed_forms(const AlmostAbelianParams& p);

// ---------------------------------------------------------------------------
// J-invariant abelian ideal of codimension 2. Admissible-frame constants:
// C^j_1i = X_ij, D^1_11 = lambda, D^j_i1 = Y_ij, D^1_ij = Z_ij, D^1_i1 = v_i,
// subject to
//   lambda (X^* + Y) + [X^*, Y] - Z conj(Z) = 0,
//   lambda Z - (Z X^T + Y Z) = 0.

struct Codim2Params {
  std::size_t n = 0;
  double lambda = 0.0;
  CVec v;
  CMat X;
  CMat Y;
  CMat Z;
};

struct Codim2Residual {
  double first = 0.0;   // |lambda (X^* + Y) + [X^*, Y] - Z conj(Z)|_F
  double second = 0.0;  // |lambda Z - (Z X^T + Y Z)|_F
  double threshold = 0.0;
  bool ok() const { return first <= threshold && second <= threshold; }
};

/// Constraint residuals against tol_scale * (1 + |X| + |Y| + |Z|); the
/// acceptance tolerance defaults to 1e-8.
Codim2Residual codim2_residual(const Codim2Params& p, double tol = 1e-8);

/// Throws ConstraintError if the constraints fail.
HermitianLieAlgebra build_codim2(const Codim2Params& p, double tol = kDefaultTol);

/// unimodular <=> lambda + tr(Y - X) = 0; Kahler <=> v = 0, Z^T = Z, X = Y;
/// Chern flat <=> lambda = 0, v = 0, Z = 0, [Y, Y^*] = 0, [Y, X^*] = 0.
/// Throws ConstraintError if the constraints fail.
FamilyClassification codim2_classify(const Codim2Params& p, double tol = kDefaultTol);

struct Codim2ClosedForms {
  CTensor3 T;                // T^1_1i = v_i, T^1_ij = Z_ji - Z_ij, T^j_1i = Y_ij - X_ij
  // Chern
  double R1111 = 0.0;        // -2 lambda^2 - |v|^2
  RVec Riiii;                // |Z_ii|^2, i >= 2
  RMat Rhat_iikk;            // |Z_ik + Z_ki|^2 / 4, i, k >= 2 (diagonal gives Riiii)
  CMat Rhat11ij;             // (v v^* + [Y,Y^*] - lambda(Y+Y^*) - Z conj Z - Z^T Z^* - Z^T conj Z) / 4
  double Rhat11_trace = 0.0; // (|v|^2 - lambda tr(Y+Y^*) - 2 tr(Z conj Z) - |Z|^2) / 4
  // Levi-Civita
  double Rr1111 = 0.0;       // -2 lambda^2 - 3/2 |v|^2
  RVec Rr_iiii;              // |Z_ii|^2 - |B_ii|^2 / 2, B = Y - X
  std::optional<RMat> Rrhat_iikk;  // -(|B_ik|^2 + |B_ki|^2 + 2 Re(B_ii conj B_kk)) / 8 off the diagonal,
                                   // Rr_iiii on it; normalized frames only
  double Rrhat11_trace = 0.0;      // Rhat11_trace - (|v|^2 + |B|^2 + |Z^T - Z|^2) / 8
  // Trace identity tr(Z conj Z) = lambda tr(X^* + Y)
  cd trZZbar{};
  cd lambda_trXsY{};
};

/// Closed-form values. Rrhat_iikk relies on Z^T + Z being diagonal and is
/// left empty otherwise; use codim2_lc_offdiag to require it.
Codim2ClosedForms codim2_closed_forms(const Codim2Params& p, double tol = kDefaultTol);

/// The convention-dependent off-diagonal LC values; throws PreconditionError
/// unless Z^T + Z is diagonal within tol * (1 + |Z|).
RMat codim2_lc_offdiag(const Codim2Params& p, double tol = kDefaultTol);

/// Unitary change of e_2..e_n by U: X -> U X U^*, Y -> U Y U^*, Z -> U Z U^T,
/// v -> U v. A phase p = +-1 on e_1 maps (lambda, X, Y, Z) to p times itself.
Codim2Params codim2_change_frame(const Codim2Params& p, const CMat& u);

/// Takagi-normalizes Z^T + Z to a non-negative diagonal and makes lambda >= 0.
/// The e_1 sign flip is applied only when lambda < -tol.
Codim2Params admissible_normalize(const Codim2Params& p, double tol = kDefaultTol);

/// Z^T + Z diagonal with non-negative real entries and lambda >= -tol.
bool codim2_is_normalized(const Codim2Params& p, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Sampling

enum class AaVariant { generic, kahler_flat, chern_flat };

struct AaSampleOptions {
  bool unimodular = true;
  AaVariant variant = AaVariant::generic;
};

/// Complex Gaussian (lambda, v, A); for unimodular samples A is shifted by a
/// real multiple of I so that lambda + 2 Re tr A = 0.
AlmostAbelianParams sample_aa(std::size_t n, Rng& rng, const AaSampleOptions& opts = {});
AlmostAbelianParams sample_unimodular_aa(std::size_t n, Rng& rng);

enum class Codim2Scheme { A, B };

/// Parses "A"/"B" (case-insensitive); throws UsageError otherwise.
Codim2Scheme parse_scheme(const std::string& s);

enum class Codim2Variant { generic, chern_flat, kahler_flat };

struct Codim2SampleOptions {
  bool unimodular = false;
  Codim2Variant variant = Codim2Variant::generic;
  /// Scheme B only; drawn as 0.5 + |N(0,1)| when absent.
  std::optional<double> lambda;
  /// Applies a Haar-random unitary frame change of e_2..e_n after sampling.
  bool random_frame = false;
};

/// Scheme A: lambda = 0, Z = 0, X and Y simultaneously diagonal in a random
/// unitary frame. Scheme B: X, Y, Z diagonal, y_i = lambda - x_i,
/// |z_i| = lambda with uniform phase. Both satisfy the constraints exactly.
Codim2Params sample_codim2(std::size_t n, Codim2Scheme scheme, Rng& rng, const Codim2SampleOptions& opts = {});

/// lambda = 1, v = 0, A = I_{n-1}. Throws UsageError for n < 2.
HermitianLieAlgebra example_algebra(std::size_t n, double tol = kDefaultTol);
AlmostAbelianParams example_params(std::size_t n);

}  // namespace curvlab
