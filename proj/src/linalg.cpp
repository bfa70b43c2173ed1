#include "curvlab/linalg.hpp"

#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab::linalg {

namespace {

std::string shape(const CMat& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

void require_same_shape(const CMat& a, const CMat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

void require_square(const CMat& a, const char* op) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(op) + ": matrix is " + shape(a));
}

}  // namespace

CMat add(const CMat& a, const CMat& b) {
  require_same_shape(a, b, "add");
  return a + b;
}

CMat multiply(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows())
    throw DimensionError("multiply: shape mismatch " + shape(a) + " * " + shape(b));
  return a * b;
}

CMat conjugate(const CMat& a) { return a.conjugate(); }

CMat transpose(const CMat& a) { return a.transpose(); }

CMat adjoint(const CMat& a) { return a.adjoint(); }

CMat commutator(const CMat& a, const CMat& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

cd trace(const CMat& a) {
  require_square(a, "trace");
  return a.trace();
}

double frob_norm(const CMat& a) { return a.norm(); }

double max_abs(const CMat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool all_finite(const CMat& a) { return a.allFinite(); }

double unitary_residual(const CMat& u) {
  require_square(u, "unitary_residual");
  const auto n = u.rows();
  return (u * u.adjoint() - CMat::Identity(n, n)).norm();
}

// With S = A + iB the real symmetric matrix M = [[A, B], [B, -A]] satisfies
// M [x; y] = s [x; y]  <=>  S conj(u) = s u  for u = x + iy.
// The s and -s eigenspaces are exchanged by [x; y] -> [-y; x], so unit
// eigenvectors of the top n eigenvalues give complex-orthonormal Takagi
// vectors q_k with S = Q diag(s) Q^T. Degenerate s need no special case.
Takagi takagi(const CMat& s, double tol) {
  require_square(s, "takagi");
  const Eigen::Index n = s.rows();
  const double scale = 1.0 + s.norm();
  if (!s.allFinite()) throw PreconditionError("takagi: non-finite input");
  const double asym = (s - s.transpose()).norm();
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "takagi: input is not symmetric (|S - S^T|_F = " << asym << ")";
    throw PreconditionError(os.str());
  }
  if (n == 0) return {CMat(0, 0), RVec(0)};

  const CMat sym = 0.5 * (s + s.transpose());
  RMat m(2 * n, 2 * n);
  m << sym.real(), sym.imag(), sym.imag(), -sym.real();
  Eigen::SelfAdjointEigenSolver<RMat> es(m);
  if (es.info() != Eigen::Success) throw NumericError("takagi: symmetric eigensolver did not converge");

  // Columns with numerically zero sigma are filled from the orthogonal
  // complement of the others, which is the conjugate null space of S.
  const double zero = 1e-14 * scale;
  CMat q = CMat::Zero(n, n);
  RVec sigma = RVec::Zero(n);
  Eigen::Index k = 0;
  for (; k < n; ++k) {
    const Eigen::Index col = 2 * n - 1 - k;
    if (es.eigenvalues()(col) <= zero) break;
    const auto v = es.eigenvectors().col(col);
    CVec u(n);
    for (Eigen::Index r = 0; r < n; ++r) u(r) = cd(v(r), v(n + r));
    // Phase-preserving Gram-Schmidt; only nearly-degenerate +-sigma pairs
    // close to zero can lose complex orthogonality.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < k; ++j) u -= q.col(j).dot(u) * q.col(j);
    if (u.norm() < 0.5) break;
    q.col(k) = u / u.norm();
    sigma(k) = es.eigenvalues()(col);
  }
  for (; k < n; ++k) {
    double best = -1.0;
    CVec pick;
    for (Eigen::Index e = 0; e < n; ++e) {
      CVec w = CVec::Unit(n, e);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = 0; j < k; ++j) w -= q.col(j).dot(w) * q.col(j);
      if (w.norm() > best + 1e-12) {
        best = w.norm();
        pick = w;
      }
    }
    q.col(k) = pick / best;
  }
  return {q.adjoint(), sigma};
}

}  // namespace curvlab::linalg
