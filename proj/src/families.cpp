#include "curvlab/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

void check_shapes(std::size_t n, const CVec& v, std::initializer_list<const CMat*> mats, const char* what) {
  if (n < 1) throw DimensionError(std::string(what) + ": n must be at least 1");
  const auto m = static_cast<Eigen::Index>(n - 1);
  if (v.size() != m) {
    std::ostringstream os;
    os << what << ": v has length " << v.size() << ", expected " << m;
    throw DimensionError(os.str());
  }
  for (const CMat* a : mats) {
    if (a->rows() != m || a->cols() != m) {
      std::ostringstream os;
      os << what << ": matrix is " << a->rows() << "x" << a->cols() << ", expected " << m << "x" << m;
      throw DimensionError(os.str());
    }
  }
}

double sq(double x) { return x * x; }

}  // namespace

// ---------------------------------------------------------------------------
// Almost abelian

HermitianLieAlgebra build_almost_abelian(const AlmostAbelianParams& p, double tol) {
  check_shapes(p.n, p.v, {&p.A}, "almost_abelian");
  const std::size_t n = p.n;
  CTensor3 c(n), d(n);
  d(0, 0, 0) = p.lambda;
  for (std::size_t i = 1; i < n; ++i) {
    d(0, i, 0) = p.v(i - 1);
    for (std::size_t j = 1; j < n; ++j) {
      d(j, i, 0) = p.A(i - 1, j - 1);
      const cd x = -std::conj(p.A(j - 1, i - 1));
      c(j, 0, i) = x;
      c(j, i, 0) = -x;
    }
  }
  return HermitianLieAlgebra(std::move(c), std::move(d), tol);
}

FamilyClassification aa_classify(const AlmostAbelianParams& p, double tol) {
  check_shapes(p.n, p.v, {&p.A}, "almost_abelian");
  const double s = 1.0 + std::abs(p.lambda) + p.v.norm() + p.A.norm();
  const CMat herm = p.A + p.A.adjoint();
  FamilyClassification out;
  out.unimodular = std::abs(p.lambda + 2.0 * p.A.trace().real()) <= tol * s;
  out.kahler = p.v.norm() <= tol * s && herm.norm() <= tol * s;
  out.chern_flat = std::abs(p.lambda) <= tol * s && p.v.norm() <= tol * s &&
                   linalg::commutator(p.A, p.A.adjoint()).norm() <= tol * s * s;
  return out;
}

AaClosedForms aa_closed_forms(const AlmostAbelianParams& p) {
  check_shapes(p.n, p.v, {&p.A}, "almost_abelian");
  const std::size_t n = p.n;
  const CMat& a = p.A;
  const CMat as = a.adjoint();

  AaClosedForms out;
  out.T = CTensor3(n);
  for (std::size_t i = 1; i < n; ++i) {
    out.T(0, 0, i) = p.v(i - 1);
    out.T(0, i, 0) = -p.v(i - 1);
    for (std::size_t j = 1; j < n; ++j) {
      const cd t = a(i - 1, j - 1) + std::conj(a(j - 1, i - 1));
      out.T(j, 0, i) = t;
      out.T(j, i, 0) = -t;
    }
  }

  out.R1111 = -2.0 * sq(p.lambda) - p.v.squaredNorm();
  out.R11i1 = -as * p.v;
  out.R11ij = p.v * p.v.adjoint() + linalg::commutator(a, as) - p.lambda * (a + as);

  out.R = CTensor4(n);
  out.R(0, 0, 0, 0) = out.R1111;
  for (std::size_t i = 1; i < n; ++i) {
    out.R(0, 0, i, 0) = out.R11i1(i - 1);
    out.R(0, 0, 0, i) = std::conj(out.R11i1(i - 1));
    for (std::size_t j = 1; j < n; ++j) out.R(0, 0, i, j) = out.R11ij(i - 1, j - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Codimension 2

Codim2Residual codim2_residual(const Codim2Params& p, double tol) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z}, "codim2");
  const CMat xs = p.X.adjoint();
  const CMat first = p.lambda * (xs + p.Y) + linalg::commutator(xs, p.Y) - p.Z * p.Z.conjugate();
  const CMat second = p.lambda * p.Z - (p.Z * p.X.transpose() + p.Y * p.Z);
  Codim2Residual r;
  r.first = first.norm();
  r.second = second.norm();
  r.threshold = tol * (1.0 + p.X.norm() + p.Y.norm() + p.Z.norm());
  return r;
}

HermitianLieAlgebra build_codim2(const Codim2Params& p, double tol) {
  const Codim2Residual r = codim2_residual(p);
  if (!r.ok()) {
    std::ostringstream os;
    os << "codim2 constraints violated: residuals " << r.first << ", " << r.second << " exceed " << r.threshold;
    throw ConstraintError(os.str(), {r.first, r.second});
  }
  const std::size_t n = p.n;
  CTensor3 c(n), d(n);
  d(0, 0, 0) = p.lambda;
  for (std::size_t i = 1; i < n; ++i) {
    d(0, i, 0) = p.v(i - 1);
    for (std::size_t j = 1; j < n; ++j) {
      c(j, 0, i) = p.X(i - 1, j - 1);
      c(j, i, 0) = -p.X(i - 1, j - 1);
      d(j, i, 0) = p.Y(i - 1, j - 1);
      d(0, i, j) = p.Z(i - 1, j - 1);
    }
  }
  return HermitianLieAlgebra(std::move(c), std::move(d), tol);
}

FamilyClassification codim2_classify(const Codim2Params& p, double tol) {
  const Codim2Residual r = codim2_residual(p);
  if (!r.ok()) {
    std::ostringstream os;
    os << "codim2 constraints violated: residuals " << r.first << ", " << r.second;
    throw ConstraintError(os.str(), {r.first, r.second});
  }
  const double s = 1.0 + std::abs(p.lambda) + p.v.norm() + p.X.norm() + p.Y.norm() + p.Z.norm();
  FamilyClassification out;
  out.unimodular = std::abs(p.lambda + (p.Y - p.X).trace()) <= tol * s;
  out.kahler = p.v.norm() <= tol * s && (p.Z.transpose() - p.Z).norm() <= tol * s && (p.X - p.Y).norm() <= tol * s;
  out.chern_flat = std::abs(p.lambda) <= tol * s && p.v.norm() <= tol * s && p.Z.norm() <= tol * s &&
                   linalg::commutator(p.Y, p.Y.adjoint()).norm() <= tol * s * s &&
                   linalg::commutator(p.Y, p.X.adjoint()).norm() <= tol * s * s;
  return out;
}

bool codim2_is_normalized(const Codim2Params& p, double tol) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z}, "codim2");
  const CMat s = p.Z.transpose() + p.Z;
  const double thr = tol * (1.0 + p.Z.norm());
  if (p.lambda < -thr) return false;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index k = 0; k < s.cols(); ++k) {
      if (i == k) {
        if (std::abs(s(i, i).imag()) > thr || s(i, i).real() < -thr) return false;
      } else if (std::abs(s(i, k)) > thr) {
        return false;
      }
    }
  }
  return true;
}

RMat codim2_lc_offdiag(const Codim2Params& p, double tol) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z}, "codim2");
  const CMat s = p.Z.transpose() + p.Z;
  const double thr = tol * (1.0 + p.Z.norm());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index k = 0; k < s.cols(); ++k)
      if (i != k && std::abs(s(i, k)) > thr)
        throw PreconditionError("codim2 LC closed form requires Z^T + Z diagonal; call admissible_normalize first");
  const CMat b = p.Y - p.X;
  const Eigen::Index m = b.rows();
  RMat out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) {
      if (i == k)
        out(i, k) = std::norm(p.Z(i, i)) - 0.5 * std::norm(b(i, i));
      else
        out(i, k) = -(std::norm(b(i, k)) + std::norm(b(k, i)) + 2.0 * (b(i, i) * std::conj(b(k, k))).real()) / 8.0;
    }
  }
  return out;
}

Codim2ClosedForms codim2_closed_forms(const Codim2Params& p, double tol) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z}, "codim2");
  const std::size_t n = p.n;
  const Eigen::Index m = static_cast<Eigen::Index>(n - 1);
  const CMat& x = p.X;
  const CMat& y = p.Y;
  const CMat& z = p.Z;
  const CMat b = y - x;
  const CMat zbar = z.conjugate();
  const CMat zt = z.transpose();

  Codim2ClosedForms out;
  out.T = CTensor3(n);
  for (std::size_t i = 1; i < n; ++i) {
    out.T(0, 0, i) = p.v(i - 1);
    out.T(0, i, 0) = -p.v(i - 1);
    for (std::size_t j = 1; j < n; ++j) {
      out.T(0, i, j) = z(j - 1, i - 1) - z(i - 1, j - 1);
      out.T(j, 0, i) = b(i - 1, j - 1);
      out.T(j, i, 0) = -b(i - 1, j - 1);
    }
  }

  const double v2 = p.v.squaredNorm();
  const cd tr_zzbar = (z * zbar).trace();

  out.R1111 = -2.0 * sq(p.lambda) - v2;
  out.Riiii = RVec(m);
  out.Rhat_iikk = RMat(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.Riiii(i) = std::norm(z(i, i));
    for (Eigen::Index k = 0; k < m; ++k) out.Rhat_iikk(i, k) = 0.25 * std::norm(z(i, k) + z(k, i));
  }
  out.Rhat11ij = 0.25 * (p.v * p.v.adjoint() + linalg::commutator(y, y.adjoint()) - p.lambda * (y + y.adjoint()) -
                         z * zbar - zt * z.adjoint() - zt * zbar);
  out.Rhat11_trace =
      0.25 * (v2 - p.lambda * (y + y.adjoint()).trace().real() - 2.0 * tr_zzbar.real() - z.squaredNorm());

  out.Rr1111 = -2.0 * sq(p.lambda) - 1.5 * v2;
  out.Rr_iiii = RVec(m);
  for (Eigen::Index i = 0; i < m; ++i) out.Rr_iiii(i) = std::norm(z(i, i)) - 0.5 * std::norm(b(i, i));
  try {
    out.Rrhat_iikk = codim2_lc_offdiag(p, tol);
  } catch (const PreconditionError&) {
  }
  out.Rrhat11_trace = out.Rhat11_trace - (v2 + b.squaredNorm() + (zt - z).squaredNorm()) / 8.0;

  out.trZZbar = tr_zzbar;
  out.lambda_trXsY = p.lambda * (x.adjoint() + y).trace();
  return out;
}

Codim2Params codim2_change_frame(const Codim2Params& p, const CMat& u) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z, &u}, "codim2");
  const double res = linalg::unitary_residual(u);
  if (res > 1e-9 * (1.0 + std::sqrt(static_cast<double>(u.rows()))))
    throw PreconditionError("codim2_change_frame: matrix is not unitary");
  Codim2Params out = p;
  out.X = u * p.X * u.adjoint();
  out.Y = u * p.Y * u.adjoint();
  out.Z = u * p.Z * u.transpose();
  out.v = u * p.v;
  return out;
}

Codim2Params admissible_normalize(const Codim2Params& p, double tol) {
  check_shapes(p.n, p.v, {&p.X, &p.Y, &p.Z}, "codim2");
  Codim2Params q = p;
  if (q.lambda < 0.0 && std::abs(q.lambda) > tol) {
    q.lambda = -q.lambda;
    q.X = -q.X;
    q.Y = -q.Y;
    q.Z = -q.Z;
  }
  if (q.n < 2) return q;
  const CMat s = q.Z.transpose() + q.Z;
  const linalg::Takagi t = linalg::takagi(s, tol);
  q = codim2_change_frame(q, t.U);
  // Remove rounding noise so the result tests as normalized exactly.
  const CMat sym = q.Z.transpose() + q.Z;
  const CMat skew = 0.5 * (q.Z - q.Z.transpose());
  CMat d = CMat::Zero(sym.rows(), sym.cols());
  for (Eigen::Index i = 0; i < sym.rows(); ++i) d(i, i) = std::max(0.0, sym(i, i).real());
  q.Z = 0.5 * d + skew;
  return q;
}

// ---------------------------------------------------------------------------
// Sampling

AlmostAbelianParams sample_aa(std::size_t n, Rng& rng, const AaSampleOptions& opts) {
  if (n < 2) throw UsageError("almost abelian samples need n >= 2");
  const auto m = static_cast<Eigen::Index>(n - 1);
  AlmostAbelianParams p;
  p.n = n;
  switch (opts.variant) {
    case AaVariant::generic:
      p.lambda = rng.normal();
      p.v = rng.complex_gaussian(m);
      p.A = rng.complex_gaussian(m, m);
      break;
    case AaVariant::kahler_flat: {
      p.lambda = 0.0;
      p.v = CVec::Zero(m);
      const CMat g = rng.complex_gaussian(m, m);
      p.A = 0.5 * (g - g.adjoint());
      break;
    }
    case AaVariant::chern_flat: {
      p.lambda = 0.0;
      p.v = CVec::Zero(m);
      const CMat u = rng.unitary(m);
      const CVec e = rng.complex_gaussian(m);
      p.A = u * e.asDiagonal() * u.adjoint();
      break;
    }
  }
  if (opts.unimodular) {
    const double t = -(p.lambda + 2.0 * p.A.trace().real()) / (2.0 * static_cast<double>(m));
    p.A += t * CMat::Identity(m, m);
  }
  return p;
}

AlmostAbelianParams sample_unimodular_aa(std::size_t n, Rng& rng) { return sample_aa(n, rng, {}); }

Codim2Scheme parse_scheme(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (t == "A") return Codim2Scheme::A;
  if (t == "B") return Codim2Scheme::B;
  throw UsageError("unknown codim2 scheme '" + s + "' (expected A or B)");
}

Codim2Params sample_codim2(std::size_t n, Codim2Scheme scheme, Rng& rng, const Codim2SampleOptions& opts) {
  if (n < 2) throw UsageError("codim2 samples need n >= 2");
  const auto m = static_cast<Eigen::Index>(n - 1);
  const bool flat = opts.variant != Codim2Variant::generic;
  Codim2Params p;
  p.n = n;
  p.v = flat ? CVec::Zero(m) : rng.complex_gaussian(m);

  if (scheme == Codim2Scheme::A) {
    p.lambda = 0.0;
    p.Z = CMat::Zero(m, m);
    const CMat u = rng.unitary(m);
    CVec ex = rng.complex_gaussian(m);
    CVec ey = opts.variant == Codim2Variant::kahler_flat ? ex : CVec(rng.complex_gaussian(m));
    if (opts.unimodular) {
      const cd shift = (ex.sum() - ey.sum()) / static_cast<double>(m);
      ey.array() += shift;
      if (opts.variant == Codim2Variant::kahler_flat) ex = ey;
    }
    p.X = u * ex.asDiagonal() * u.adjoint();
    p.Y = u * ey.asDiagonal() * u.adjoint();
  } else {
    double lambda = opts.lambda.value_or(0.5 + std::abs(rng.normal()));
    if (flat) lambda = 0.0;
    p.lambda = lambda;
    RVec x(m);
    for (Eigen::Index i = 0; i < m; ++i) x(i) = rng.normal();
    if (opts.variant == Codim2Variant::kahler_flat) x.setZero();
    if (opts.unimodular && !flat) x.array() += (static_cast<double>(n) * lambda / 2.0 - x.sum()) / static_cast<double>(m);
    p.X = CMat::Zero(m, m);
    p.Y = CMat::Zero(m, m);
    p.Z = CMat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      p.X(i, i) = x(i);
      p.Y(i, i) = lambda - x(i);
      p.Z(i, i) = std::polar(lambda, theta);
    }
  }
  if (opts.random_frame) p = codim2_change_frame(p, rng.unitary(m));
  return p;
}

AlmostAbelianParams example_params(std::size_t n) {
  if (n < 2) throw UsageError("example needs n >= 2");
  const auto m = static_cast<Eigen::Index>(n - 1);
  AlmostAbelianParams p;
  p.n = n;
  p.lambda = 1.0;
  p.v = CVec::Zero(m);
  p.A = CMat::Identity(m, m);
  return p;
}

HermitianLieAlgebra example_algebra(std::size_t n, double tol) { return build_almost_abelian(example_params(n), tol); }

}  // namespace curvlab
