#include "curvlab/algebra.hpp"

#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

JacobiResidual jacobi_residual(const CTensor3& c, const CTensor3& d) {
  const std::size_t n = c.n();
  if (d.n() != n) throw DimensionError("jacobi_residual: C and D have different sizes");
  JacobiResidual r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cd s1{}, s2{}, s3{};
          for (std::size_t s = 0; s < n; ++s) {
            s1 += c(s, i, j) * c(l, s, k) + c(s, j, k) * c(l, s, i) + c(s, k, i) * c(l, s, j);
            s2 += c(s, i, k) * d(l, j, s) + d(s, j, i) * d(l, s, k) - d(s, j, k) * d(l, s, i);
            s3 += c(s, i, k) * std::conj(d(s, j, l)) - c(j, s, k) * std::conj(d(i, s, l)) +
                  c(j, s, i) * std::conj(d(k, s, l)) - d(l, s, i) * std::conj(d(k, j, s)) +
                  d(l, s, k) * std::conj(d(i, j, s));
          }
          r.ccc = std::max(r.ccc, std::abs(s1));
          r.ccd = std::max(r.ccd, std::abs(s2));
          r.cdd = std::max(r.cdd, std::abs(s3));
        }
  return r;
}

HermitianLieAlgebra::HermitianLieAlgebra(CTensor3 c, CTensor3 d, double tol)
    : n_(c.n()), c_(std::move(c)), d_(std::move(d)), tol_(tol) {
  if (n_ == 0) throw DimensionError("HermitianLieAlgebra: dimension must be at least 1");
  if (d_.n() != n_) throw DimensionError("HermitianLieAlgebra: C and D have different sizes");
  if (!c_.all_finite() || !d_.all_finite()) throw StructureError("HermitianLieAlgebra: non-finite structure constant");

  const double lin = tol_ * scale();
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = i; k < n_; ++k) {
        const cd sum = c_(j, i, k) + c_(j, k, i);
        if (std::abs(sum) > lin) {
          std::ostringstream os;
          os << "C is not antisymmetric at (j, i, k) = (" << j + 1 << ", " << i + 1 << ", " << k + 1
             << "): C^j_ik + C^j_ki = " << sum;
          throw StructureError(os.str(), {j, i, k});
        }
        const cd mean = 0.5 * (c_(j, i, k) - c_(j, k, i));
        c_(j, i, k) = mean;
        c_(j, k, i) = -mean;
      }

  const JacobiResidual r = jacobi_residual(c_, d_);
  if (r.max() > lin) {
    std::ostringstream os;
    os << "Jacobi identity fails: residuals (" << r.ccc << ", " << r.ccd << ", " << r.cdd << ") exceed " << lin;
    throw JacobiError(os.str(), r.as_array());
  }

  const std::size_t m = 2 * n_;
  full_.assign(m * m * m, cd{});
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> cd& { return full_[(a * m + b) * m + c]; };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t j = 0; j < n_; ++j) {
        at(i, k, j) = c_(j, i, k);
        at(n_ + i, n_ + k, n_ + j) = std::conj(c_(j, i, k));
      }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const cd hol = std::conj(d_(i, k, j));
        const cd antihol = -d_(j, k, i);
        at(i, n_ + j, k) = hol;
        at(i, n_ + j, n_ + k) = antihol;
        at(n_ + j, i, k) = -hol;
        at(n_ + j, i, n_ + k) = -antihol;
      }
}

HermitianLieAlgebra HermitianLieAlgebra::abelian(std::size_t n, double tol) {
  return HermitianLieAlgebra(CTensor3(n), CTensor3(n), tol);
}

CVec HermitianLieAlgebra::basis_bracket(std::size_t a, std::size_t b) const {
  const std::size_t m = 2 * n_;
  CVec out(m);
  for (std::size_t c = 0; c < m; ++c) out(c) = full_[(a * m + b) * m + c];
  return out;
}

CVec HermitianLieAlgebra::bracket(const CVec& u, const CVec& w) const {
  const std::size_t m = 2 * n_;
  if (static_cast<std::size_t>(u.size()) != m || static_cast<std::size_t>(w.size()) != m)
    throw DimensionError("bracket: vectors must have length 2n");
  CVec out = CVec::Zero(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (u(a) == cd{}) continue;
    for (std::size_t b = 0; b < m; ++b) {
      const cd coef = u(a) * w(b);
      if (coef == cd{}) continue;
      const cd* row = &full_[(a * m + b) * m];
      for (std::size_t c = 0; c < m; ++c) out(c) += coef * row[c];
    }
  }
  return out;
}

CMat HermitianLieAlgebra::ad(const CVec& u) const {
  const std::size_t m = 2 * n_;
  CMat out(m, m);
  for (std::size_t b = 0; b < m; ++b) out.col(b) = bracket(u, CVec::Unit(m, b));
  return out;
}

cd pairing(const CVec& u, const CVec& w) {
  if (u.size() != w.size() || u.size() % 2 != 0) throw DimensionError("pairing: incompatible vectors");
  const Eigen::Index n = u.size() / 2;
  return (u.head(n).array() * w.tail(n).array()).sum() + (u.tail(n).array() * w.head(n).array()).sum();
}

CVec lift10(const CVec& x) {
  const Eigen::Index n = x.size();
  CVec out = CVec::Zero(2 * n);
  out.head(n) = x;
  return out;
}

// ---------------------------------------------------------------------------
// Real ingestion

namespace {

void check_real_data(const RealLieData& data, double tol) {
  const std::size_t dim = data.dim;
  if (dim == 0 || dim % 2 != 0) throw DimensionError("from_real: dimension must be even and positive");
  if (data.f.size() != dim * dim * dim) throw DimensionError("from_real: f must have dim^3 entries");
  if (static_cast<std::size_t>(data.J.rows()) != dim || static_cast<std::size_t>(data.J.cols()) != dim ||
      static_cast<std::size_t>(data.G.rows()) != dim || static_cast<std::size_t>(data.G.cols()) != dim)
    throw DimensionError("from_real: J and G must be dim x dim");

  double fnorm = 0.0;
  for (double x : data.f) fnorm += x * x;
  const double fscale = 1.0 + std::sqrt(fnorm);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a; b < dim; ++b)
        if (std::abs(data.bracket_coeff(c, a, b) + data.bracket_coeff(c, b, a)) > tol * fscale) {
          std::ostringstream os;
          os << "from_real: f is not antisymmetric at (c, a, b) = (" << c + 1 << ", " << a + 1 << ", " << b + 1 << ")";
          throw StructureError(os.str(), {c, a, b});
        }

  const RMat id = RMat::Identity(dim, dim);
  const double jscale = 1.0 + data.J.norm();
  if ((data.J * data.J + id).norm() > tol * jscale * jscale)
    throw StructureError("from_real: J^2 != -1");
  if ((data.G - data.G.transpose()).norm() > tol * (1.0 + data.G.norm()))
    throw StructureError("from_real: G is not symmetric");
  Eigen::LLT<RMat> llt(0.5 * (data.G + data.G.transpose()));
  if (llt.info() != Eigen::Success) throw StructureError("from_real: G is not positive definite");
  if ((data.J.transpose() * data.G * data.J - data.G).norm() > tol * jscale * jscale * (1.0 + data.G.norm()))
    throw StructureError("from_real: J is not compatible with G");
}

RVec real_bracket_r(const RealLieData& data, const RVec& x, const RVec& y) {
  const std::size_t dim = data.dim;
  RVec out = RVec::Zero(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    double s = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      if (x(a) == 0.0) continue;
      for (std::size_t b = 0; b < dim; ++b) s += data.bracket_coeff(c, a, b) * x(a) * y(b);
    }
    out(c) = s;
  }
  return out;
}

}  // namespace

CVec real_bracket(const RealLieData& data, const CVec& u, const CVec& w) {
  const std::size_t dim = data.dim;
  if (static_cast<std::size_t>(u.size()) != dim || static_cast<std::size_t>(w.size()) != dim)
    throw DimensionError("real_bracket: vectors must have length dim");
  CVec out = CVec::Zero(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    cd s{};
    for (std::size_t a = 0; a < dim; ++a) {
      if (u(a) == cd{}) continue;
      for (std::size_t b = 0; b < dim; ++b) s += data.bracket_coeff(c, a, b) * u(a) * w(b);
    }
    out(c) = s;
  }
  return out;
}

CMat adapted_frame(const RealLieData& data, double tol) {
  check_real_data(data, tol);
  const std::size_t dim = data.dim;
  const std::size_t n = dim / 2;
  const RMat& g = data.G;
  const RMat& jm = data.J;

  // Gram-Schmidt over the standard basis; each accepted x brings Jx along,
  // which is automatically G-orthogonal to x and of the same length.
  std::vector<RVec> basis;
  auto project_out = [&](RVec v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const RVec& b : basis) v -= (b.transpose() * g * v)(0, 0) * b;
    return v;
  };
  CMat frame(dim, n);
  for (std::size_t k = 0; k < n; ++k) {
    RVec best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < dim; ++e) {
      RVec v = project_out(RVec::Unit(dim, e));
      const double norm = std::sqrt(std::max(0.0, (v.transpose() * g * v)(0, 0)));
      if (norm > best_norm * (1.0 + 1e-12)) {
        best_norm = norm;
        best = v;
      }
    }
    const RVec x = best / best_norm;
    const RVec jx = project_out(jm * x);
    const double jnorm = std::sqrt((jx.transpose() * g * jx)(0, 0));
    basis.push_back(x);
    basis.push_back(jx / jnorm);
    frame.col(k) = (x.cast<cd>() - kI * (jx / jnorm).cast<cd>()) / std::sqrt(2.0);
  }
  return frame;
}

HermitianLieAlgebra from_real(const RealLieData& data, double tol) {
  check_real_data(data, tol);
  const std::size_t dim = data.dim;
  const std::size_t n = dim / 2;

  double fnorm = 0.0;
  for (double x : data.f) fnorm += x * x;
  const double jscale = 1.0 + data.J.norm();
  const double nij_tol = tol * (1.0 + std::sqrt(fnorm)) * jscale * jscale;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      const RVec x = RVec::Unit(dim, a);
      const RVec y = RVec::Unit(dim, b);
      const RVec jx = data.J * x;
      const RVec jy = data.J * y;
      const RVec nij = real_bracket_r(data, x, y) - real_bracket_r(data, jx, jy) +
                       data.J * real_bracket_r(data, jx, y) + data.J * real_bracket_r(data, x, jy);
      if (nij.norm() > nij_tol) {
        std::ostringstream os;
        os << "from_real: J is not integrable (Nijenhuis tensor " << nij.norm() << " on basis pair (" << a + 1 << ", "
           << b + 1 << "))";
        throw NotIntegrableError(os.str());
      }
    }

  const CMat e = adapted_frame(data, tol);
  const CMat eb = e.conjugate();
  const CMat g = data.G.cast<cd>();
  auto inner = [&](const CVec& u, const CVec& w) { return (u.transpose() * g * w)(0, 0); };

  CTensor3 c(n), d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const CVec eik = real_bracket(data, e.col(i), e.col(k));
      for (std::size_t j = 0; j < n; ++j) c(j, i, k) = inner(eik, eb.col(j));
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const CVec bjk = real_bracket(data, eb.col(j), e.col(k));
      for (std::size_t i = 0; i < n; ++i) d(j, i, k) = inner(bjk, e.col(i));
    }
  return HermitianLieAlgebra(std::move(c), std::move(d), tol);
}

// ---------------------------------------------------------------------------

cd ad_trace(const HermitianLieAlgebra& alg, const CVec& u) { return alg.ad(u).trace(); }

Unimodularity is_unimodular(const HermitianLieAlgebra& alg) {
  const std::size_t m = 2 * alg.n();
  Unimodularity out;
  for (std::size_t a = 0; a < m; ++a) {
    cd tr{};
    for (std::size_t b = 0; b < m; ++b) tr += alg.basis_bracket(a, b)(b);
    out.max_trace = std::max(out.max_trace, std::abs(tr));
  }
  out.unimodular = out.max_trace <= alg.tol() * alg.scale();
  return out;
}

HermitianLieAlgebra change_frame(const HermitianLieAlgebra& alg, const CMat& u) {
  const std::size_t n = alg.n();
  if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(u.cols()) != n)
    throw DimensionError("change_frame: U must be n x n");
  const double res = linalg::unitary_residual(u);
  if (!(res <= alg.tol() * (1.0 + std::sqrt(static_cast<double>(n))))) {
    std::ostringstream os;
    os << "change_frame: U is not unitary (|UU* - I|_F = " << res << ")";
    throw PreconditionError(os.str());
  }
  std::vector<CVec> p(n), pb(n);
  for (std::size_t a = 0; a < n; ++a) {
    p[a] = CVec::Zero(2 * n);
    pb[a] = CVec::Zero(2 * n);
    for (std::size_t b = 0; b < n; ++b) {
      p[a](b) = u(a, b);
      pb[a](n + b) = std::conj(u(a, b));
    }
  }
  CTensor3 c(n), d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const CVec br = alg.bracket(p[i], p[k]);
      for (std::size_t j = 0; j < n; ++j) c(j, i, k) = pairing(br, pb[j]);
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const CVec br = alg.bracket(pb[j], p[k]);
      for (std::size_t i = 0; i < n; ++i) d(j, i, k) = pairing(br, p[i]);
    }
  return HermitianLieAlgebra(std::move(c), std::move(d), alg.tol());
}

}  // namespace curvlab
