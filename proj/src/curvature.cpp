#include "curvlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

const char* to_string(CurvKind kind) {
  switch (kind) {
    case CurvKind::chern: return "chern";
    case CurvKind::chern_symmetrized: return "chern-symmetrized";
    case CurvKind::lc: return "lc";
    case CurvKind::lc_symmetrized: return "lc-symmetrized";
  }
  return "unknown";
}

ChernConnection chern_connection(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const CTensor3& d = alg.D();
  ChernConnection out{CTensor3(n), CTensor3(n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        out.holo(j, i, k) = d(j, i, k);
        out.antiholo(j, i, k) = -std::conj(d(i, j, k));
      }
  return out;
}

TorsionTensor chern_torsion(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const CTensor3& c = alg.C();
  const CTensor3& d = alg.D();
  TorsionTensor out{CTensor3(n), CTensor4(n), CTensor4(n)};
  CTensor3& t = out.T;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) t(j, i, k) = -c(j, i, k) - d(j, i, k) + d(j, k, i);

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cd hol{}, anti{};
          for (std::size_t s = 0; s < n; ++s) {
            hol += -t(j, s, k) * d(s, i, l) - t(j, i, s) * d(s, k, l) + t(s, i, k) * d(j, s, l);
            anti += t(j, s, k) * std::conj(d(i, s, l)) + t(j, i, s) * std::conj(d(k, s, l)) -
                    t(s, i, k) * std::conj(d(s, j, l));
          }
          out.Td(j, i, k, l) = hol;
          out.Tdbar(j, i, k, l) = anti;
        }
  return out;
}

Curv4 chern_curvature(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const CTensor3& d = alg.D();
  Curv4 out{CTensor4(n), CurvKind::chern};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cd s{};
          for (std::size_t q = 0; q < n; ++q)
            s += d(q, k, i) * std::conj(d(q, l, j)) - d(l, q, i) * std::conj(d(k, q, j)) -
                 d(j, q, i) * std::conj(d(k, l, q)) - std::conj(d(i, q, j)) * d(l, k, q);
          out.R(i, j, k, l) = s;
        }
  return out;
}

Curv4 symmetrize(const Curv4& r) {
  const std::size_t n = r.R.n();
  Curv4 out{CTensor4(n), r.kind};
  if (r.kind == CurvKind::chern) out.kind = CurvKind::chern_symmetrized;
  if (r.kind == CurvKind::lc) out.kind = CurvKind::lc_symmetrized;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          out.R(i, j, k, l) = 0.25 * (r.R(i, j, k, l) + r.R(k, j, i, l) + r.R(i, l, k, j) + r.R(k, l, i, j));
  return out;
}

double hermitian_symmetry_residual(const Curv4& r) {
  const std::size_t n = r.R.n();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          m = std::max(m, std::abs(r.R(i, j, k, l) - std::conj(r.R(j, i, l, k))));
  return m;
}

LCBlocks levi_civita_from_chern(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const TorsionTensor tt = chern_torsion(alg);
  const Curv4 rc = chern_curvature(alg);
  const CTensor3& t = tt.T;
  const CTensor4& td = tt.Td;
  const CTensor4& tb = tt.Tdbar;
  const CTensor4& r = rc.R;

  LCBlocks out{CTensor4(n), CTensor4(n), CTensor4(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cd q_hol{}, q_mixed{}, q_split{};
          for (std::size_t s = 0; s < n; ++s) {
            q_hol += t(s, j, k) * t(l, s, i) - t(s, i, k) * t(l, s, j);
            q_mixed += t(s, i, k) * std::conj(t(s, j, l)) - t(l, i, s) * std::conj(t(k, j, s)) -
                       t(j, k, s) * std::conj(t(i, l, s));
            q_split += 2.0 * t(s, i, k) * std::conj(t(s, j, l)) + t(j, i, s) * std::conj(t(k, l, s)) +
                       t(l, k, s) * std::conj(t(i, j, s)) - t(l, i, s) * std::conj(t(k, j, s)) -
                       t(j, k, s) * std::conj(t(i, l, s));
          }
          out.hol(i, j, k, l) = 0.5 * td(l, i, j, k) + 0.25 * q_hol;
          out.mixed(i, j, k, l) = r(i, j, k, l) + 0.5 * (tb(l, i, k, j) + std::conj(tb(k, j, l, i))) + 0.25 * q_mixed;
          out.split(i, k, j, l) = 0.5 * (tb(l, i, k, j) - tb(j, i, k, l)) + 0.25 * q_split;
        }
  return out;
}

Curv4 lc_curvature(const HermitianLieAlgebra& alg) {
  return Curv4{levi_civita_from_chern(alg).mixed, CurvKind::lc};
}

// ---------------------------------------------------------------------------
// Koszul route

double RealCurv::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

RealCurvResidual real_curv_residuals(const RealCurv& rm) {
  const std::size_t m = rm.dim();
  RealCurvResidual r;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          const double v = rm(a, b, c, d);
          r.antisym_first = std::max(r.antisym_first, std::abs(v + rm(b, a, c, d)));
          r.antisym_second = std::max(r.antisym_second, std::abs(v + rm(a, b, d, c)));
          r.pair_symmetry = std::max(r.pair_symmetry, std::abs(v - rm(c, d, a, b)));
          r.bianchi = std::max(r.bianchi, std::abs(v + rm(b, c, a, d) + rm(c, a, b, d)));
        }
  return r;
}

RealCurv riemann_orthonormal(std::size_t dim, const std::vector<double>& f) {
  if (f.size() != dim * dim * dim) throw DimensionError("riemann_orthonormal: f must have dim^3 entries");
  // fl(a, b, c) = <[x_a, x_b], x_c>
  auto fl = [&](std::size_t a, std::size_t b, std::size_t c) { return f[(c * dim + a) * dim + b]; };
  // gam[(a * dim + b) * dim + c] = <nabla_{x_a} x_b, x_c>
  std::vector<double> gam(dim * dim * dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c)
        gam[(a * dim + b) * dim + c] = 0.5 * (fl(a, b, c) - fl(b, c, a) + fl(c, a, b));
  auto g = [&](std::size_t a, std::size_t b, std::size_t c) { return gam[(a * dim + b) * dim + c]; };

  RealCurv rm(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t d = 0; d < dim; ++d) {
          double s = 0.0;
          for (std::size_t e = 0; e < dim; ++e)
            s += g(b, c, e) * g(a, e, d) - g(a, c, e) * g(b, e, d) - fl(a, b, e) * g(e, c, d);
          rm(a, b, c, d) = s;
        }
  return rm;
}

std::vector<double> real_structure_constants(const HermitianLieAlgebra& alg) {
  const std::size_t n = alg.n();
  const std::size_t dim = 2 * n;
  const double r2 = std::sqrt(2.0);
  std::vector<CVec> x(dim, CVec::Zero(dim));
  for (std::size_t i = 0; i < n; ++i) {
    x[2 * i](i) = 1.0 / r2;
    x[2 * i](n + i) = 1.0 / r2;
    x[2 * i + 1](i) = kI / r2;
    x[2 * i + 1](n + i) = -kI / r2;
  }
  std::vector<double> f(dim * dim * dim, 0.0);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const CVec w = alg.bracket(x[a], x[b]);
      for (std::size_t i = 0; i < n; ++i) {
        f[((2 * i) * dim + a) * dim + b] = ((w(i) + w(n + i)) / r2).real();
        f[((2 * i + 1) * dim + a) * dim + b] = (kI * (w(n + i) - w(i)) / r2).real();
      }
    }
  return f;
}

RealCurv levi_civita_koszul(const HermitianLieAlgebra& alg) {
  return riemann_orthonormal(2 * alg.n(), real_structure_constants(alg));
}

LCBlocks complexify_blocks(const RealCurv& rm) {
  const std::size_t n = rm.dim() / 2;
  const double r2 = std::sqrt(2.0);
  // Basis vector p (p < n: e_p, p >= n: conj e_{p-n}) = sum over two real
  // indices with these coefficients.
  auto coeffs = [&](std::size_t p, std::array<std::size_t, 2>& idx, std::array<cd, 2>& w) {
    const bool bar = p >= n;
    const std::size_t i = bar ? p - n : p;
    idx = {2 * i, 2 * i + 1};
    w = {cd(1.0 / r2), bar ? kI / r2 : -kI / r2};
  };
  auto comp = [&](std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    std::array<std::size_t, 2> ip, iq, ir, is;
    std::array<cd, 2> wp, wq, wr, ws;
    coeffs(p, ip, wp);
    coeffs(q, iq, wq);
    coeffs(r, ir, wr);
    coeffs(s, is, ws);
    cd sum{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d)
            sum += wp[a] * wq[b] * wr[c] * ws[d] * rm(ip[a], iq[b], ir[c], is[d]);
    return sum;
  };
  LCBlocks out{CTensor4(n), CTensor4(n), CTensor4(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          out.hol(i, j, k, l) = comp(i, j, k, n + l);
          out.mixed(i, j, k, l) = comp(i, n + j, k, n + l);
          out.split(i, k, j, l) = comp(i, k, n + j, n + l);
        }
  return out;
}

// ---------------------------------------------------------------------------
// Holomorphic sectional curvature

double hol_sect(const CTensor4& r, const CVec& x) {
  const std::size_t n = r.n();
  if (static_cast<std::size_t>(x.size()) != n) throw DimensionError("hol_sect: vector length must be n");
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("hol_sect: X must be non-zero");
  cd s{};
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i) == cd{}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const cd xij = x(i) * std::conj(x(j));
      if (xij == cd{}) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const cd xijk = xij * x(k);
        if (xijk == cd{}) continue;
        for (std::size_t l = 0; l < n; ++l) s += r(i, j, k, l) * xijk * std::conj(x(l));
      }
    }
  }
  return s.real() / (norm2 * norm2);
}

std::vector<Probe> probe_vectors(std::size_t n) {
  std::vector<Probe> out;
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) out.push_back({CVec::Unit(n, i), "e" + std::to_string(i + 1)});
  const std::array<std::pair<cd, const char*>, 4> phases{
      {{cd(1.0), "+"}, {cd(-1.0), "-"}, {kI, "+i"}, {-kI, "-i"}}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (const auto& [ph, sym] : phases) {
        CVec x = CVec::Zero(n);
        x(i) = 1.0 / r2;
        x(k) = ph / r2;
        out.push_back({x, "(e" + std::to_string(i + 1) + sym + "e" + std::to_string(k + 1) + ")/sqrt2"});
      }
  return out;
}

namespace {

// Extremes of H over a probe set; returns false if the set is empty.
bool extremes(const CTensor4& r, const std::vector<Probe>& probes, Witness& low, Witness& high) {
  if (probes.empty()) return false;
  bool first = true;
  for (const Probe& p : probes) {
    const double h = hol_sect(r, p.x);
    if (first || h < low.h) low = {p, h};
    if (first || h > high.h) high = {p, h};
    first = false;
  }
  return true;
}

}  // namespace

HVerdict constant_H_detect(const Curv4& r, double tol) {
  const std::size_t n = r.R.n();
  const Curv4 rh = symmetrize(r);
  HVerdict v;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag += rh.R(i, i, i, i).real();
  v.c = diag / static_cast<double>(n);
  v.threshold = tol * (1.0 + rh.R.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double model = 0.5 * v.c * ((i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0));
          const double dev = std::abs(rh.R(i, j, k, l) - model);
          if (dev > v.violation) {
            v.violation = dev;
            v.worst = {i, j, k, l};
          }
        }
  v.constant = v.violation <= v.threshold;
  if (v.constant) return v;

  // Human-readable witnesses: basis vectors first, then the pair probes, then
  // combinations supported on the indices of the worst component.
  const std::vector<Probe> all = probe_vectors(n);
  const std::vector<Probe> basis(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
  extremes(rh.R, basis, v.low, v.high);
  if (v.high.h - v.low.h > v.threshold) return v;
  extremes(rh.R, all, v.low, v.high);
  if (v.high.h - v.low.h > v.threshold) return v;

  std::vector<std::size_t> support;
  for (std::size_t idx : v.worst)
    if (std::find(support.begin(), support.end(), idx) == support.end()) support.push_back(idx);
  const std::array<cd, 5> coefs{cd(0.0), cd(1.0), cd(-1.0), kI, -kI};
  const std::array<const char*, 5> names{"0", "1", "-1", "i", "-i"};
  std::vector<Probe> extra;
  std::vector<std::size_t> pick(support.size(), 0);
  for (;;) {
    std::size_t q = 0;
    while (q < pick.size() && ++pick[q] == coefs.size()) pick[q++] = 0;
    if (q == pick.size()) break;
    CVec x = CVec::Zero(n);
    std::string label = "(";
    for (std::size_t s = 0; s < support.size(); ++s) {
      x(support[s]) += coefs[pick[s]];
      label += std::string(s ? "," : "") + names[pick[s]] + "*e" + std::to_string(support[s] + 1);
    }
    if (x.norm() == 0.0) continue;
    label += ")/|.|";
    extra.push_back({x / x.norm(), label});
  }
  Witness lo2, hi2;
  if (extremes(rh.R, extra, lo2, hi2)) {
    if (lo2.h < v.low.h) v.low = lo2;
    if (hi2.h > v.high.h) v.high = hi2;
  }
  return v;
}

Predicates predicates(const HermitianLieAlgebra& alg) {
  const double lin = alg.tol() * alg.scale();
  const double quad = alg.tol() * alg.scale() * alg.scale();
  Predicates p;
  p.torsion_max = chern_torsion(alg).T.max_abs();
  p.chern_max = chern_curvature(alg).R.max_abs();
  p.lc_max = levi_civita_koszul(alg).max_abs();
  p.is_kahler = p.torsion_max <= lin;
  p.is_chern_flat = p.chern_max <= quad;
  p.is_lc_flat = p.lc_max <= quad;
  return p;
}

}  // namespace curvlab
