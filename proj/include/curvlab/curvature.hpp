#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "curvlab/algebra.hpp"
#include "curvlab/linalg.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// Chern connection coefficients in the unitary frame:
///   nabla_{e_k} e_i       = sum_j holo(j, i, k) e_j       (holo = D^j_ik)
///   nabla_{conj e_k} e_i  = sum_j antiholo(j, i, k) e_j   (antiholo = -conj(D^i_jk))
struct ChernConnection {
  CTensor3 holo;
  CTensor3 antiholo;
};

ChernConnection chern_connection(const HermitianLieAlgebra& alg);

/// Chern torsion T(e_i, e_k) = sum_j T^j_ik e_j and its Chern covariant
/// derivatives; T(j, i, k) = T^j_ik, Td(j, i, k, l) = T^j_ik,l and
/// Tdbar(j, i, k, l) = T^j_ik,lbar.
struct TorsionTensor {
  CTensor3 T;
  CTensor4 Td;
  CTensor4 Tdbar;
};

TorsionTensor chern_torsion(const HermitianLieAlgebra& alg);

enum class CurvKind { chern, chern_symmetrized, lc, lc_symmetrized };

const char* to_string(CurvKind kind);

/// Curvature components R(i, j, k, l) = R_{i jbar k lbar}.
struct Curv4 {
  CTensor4 R;
  CurvKind kind = CurvKind::chern;
};

Curv4 chern_curvature(const HermitianLieAlgebra& alg);

/// Average of R_{ijkl}, R_{kjil}, R_{ilkj}, R_{klij} (barred slots j, l).
Curv4 symmetrize(const Curv4& r);

/// max |R_{i jbar k lbar} - conj(R_{j ibar l kbar})|
double hermitian_symmetry_residual(const Curv4& r);

/// The three Levi-Civita component families in the unitary frame.
struct LCBlocks {
  CTensor4 hol;    // hol(i, j, k, l)   = R^r_{i j k lbar}
  CTensor4 mixed;  // mixed(i, j, k, l) = R^r_{i jbar k lbar}
  CTensor4 split;  // split(i, k, j, l) = R^r_{i k jbar lbar}
};

/// Levi-Civita curvature through the Chern curvature, the torsion and its
/// derivatives. The torsion here is twice the Yang-Zheng normalization.
LCBlocks levi_civita_from_chern(const HermitianLieAlgebra& alg);

/// Levi-Civita (i, jbar, k, lbar) block as a Curv4 of kind lc.
Curv4 lc_curvature(const HermitianLieAlgebra& alg);

/// Real rank-4 curvature Rm(a, b, c, d) = <R(x_a, x_b) x_c, x_d> on an
/// orthonormal real basis.
class RealCurv {
 public:
  RealCurv() = default;
  explicit RealCurv(std::size_t dim) : dim_(dim), data_(dim * dim * dim * dim, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double max_abs() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct RealCurvResidual {
  double antisym_first = 0.0;   // Rm(a,b,c,d) + Rm(b,a,c,d)
  double antisym_second = 0.0;  // Rm(a,b,c,d) + Rm(a,b,d,c)
  double pair_symmetry = 0.0;   // Rm(a,b,c,d) - Rm(c,d,a,b)
  double bianchi = 0.0;         // Rm(a,b,c,d) + Rm(b,c,a,d) + Rm(c,a,b,d)
  double max() const { return std::max({antisym_first, antisym_second, pair_symmetry, bianchi}); }
};

RealCurvResidual real_curv_residuals(const RealCurv& rm);

/// Riemann tensor of the left-invariant metric for which x_1..x_dim is
/// orthonormal, from f(c, a, b) = coefficient of x_c in [x_a, x_b]
/// (layout as RealLieData::f), via the Koszul formula
/// 2<nabla_x y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>.
RealCurv riemann_orthonormal(std::size_t dim, const std::vector<double>& f);

/// Real structure constants of `alg` on x_{2i-1} = (e_i + conj e_i)/sqrt2,
/// x_{2i} = J x_{2i-1} = i(e_i - conj e_i)/sqrt2.
std::vector<double> real_structure_constants(const HermitianLieAlgebra& alg);

/// Levi-Civita curvature of `alg` computed independently of the Chern route.
RealCurv levi_civita_koszul(const HermitianLieAlgebra& alg);

/// Complexified components, extracted with e_i = (x_{2i-1} - i x_{2i})/sqrt2.
LCBlocks complexify_blocks(const RealCurv& rm);

/// H(X) = R_{X Xbar X Xbar} / |X|^4 for a (1,0)-vector X. Throws DomainError
/// if X = 0.
double hol_sect(const CTensor4& r, const CVec& x);
inline double hol_sect(const Curv4& r, const CVec& x) { return hol_sect(r.R, x); }

struct Probe {
  CVec x;
  std::string label;
};

/// Unit vectors e_i, (e_i +- e_k)/sqrt2 and (e_i +- i e_k)/sqrt2, i < k.
std::vector<Probe> probe_vectors(std::size_t n);

struct Witness {
  Probe probe;
  double h = 0.0;
};

struct HVerdict {
  bool constant = false;
  double c = 0.0;               // mean of the symmetrized diagonal
  double violation = 0.0;       // max |Rhat - (c/2)(dd + dd)|
  double threshold = 0.0;
  std::array<std::size_t, 4> worst{};  // maximally violating component
  Witness low;                  // only meaningful when !constant
  Witness high;
};

/// Tensorial constancy test for the holomorphic sectional curvature of R.
/// Compares against tol * (1 + max |Rhat|).
HVerdict constant_H_detect(const Curv4& r, double tol = kDefaultTol);

struct Predicates {
  bool is_kahler = false;
  bool is_chern_flat = false;
  bool is_lc_flat = false;
  double torsion_max = 0.0;
  double chern_max = 0.0;
  double lc_max = 0.0;
};

/// Kahler: |T|max <= tol*scale. Chern flat: |R|max <= tol*scale^2.
/// LC flat: |Rm|max <= tol*scale^2 on the Koszul tensor.
Predicates predicates(const HermitianLieAlgebra& alg);

}  // namespace curvlab
