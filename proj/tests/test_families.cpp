#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/errors.hpp"
#include "curvlab/families.hpp"
#include "oracles.hpp"

using namespace curvlab;

namespace {

Codim2Params zero_codim2(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n - 1);
  Codim2Params p;
  p.n = n;
  p.v = CVec::Zero(m);
  p.X = p.Y = p.Z = CMat::Zero(m, m);
  return p;
}

AlmostAbelianParams zero_aa(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n - 1);
  AlmostAbelianParams p;
  p.n = n;
  p.v = CVec::Zero(m);
  p.A = CMat::Zero(m, m);
  return p;
}

// Closed-form values compared with the generic engine, as a max difference.
double codim2_gap(const Codim2Params& p) {
  const HermitianLieAlgebra alg = build_codim2(p);
  const Codim2ClosedForms cf = codim2_closed_forms(p);
  const CTensor4 rh = symmetrize(chern_curvature(alg)).R;
  const CTensor4 rrh = symmetrize(lc_curvature(alg)).R;
  double g = max_abs_diff(cf.T, chern_torsion(alg).T);
  g = std::max(g, std::abs(cf.R1111 - rh(0, 0, 0, 0)));
  g = std::max(g, std::abs(cf.Rr1111 - rrh(0, 0, 0, 0)));
  cd tc{}, tl{};
  for (std::size_t i = 1; i < p.n; ++i) {
    const auto a = static_cast<Eigen::Index>(i - 1);
    g = std::max(g, std::abs(cf.Riiii(a) - rh(i, i, i, i)));
    g = std::max(g, std::abs(cf.Rr_iiii(a) - rrh(i, i, i, i)));
    for (std::size_t k = 1; k < p.n; ++k) {
      const auto b = static_cast<Eigen::Index>(k - 1);
      g = std::max(g, std::abs(cf.Rhat_iikk(a, b) - rh(i, i, k, k)));
      g = std::max(g, std::abs(cf.Rhat11ij(a, b) - rh(0, 0, i, k)));
      if (cf.Rrhat_iikk) g = std::max(g, std::abs((*cf.Rrhat_iikk)(a, b) - rrh(i, i, k, k)));
    }
    tc += rh(0, 0, i, i);
    tl += rrh(0, 0, i, i);
  }
  g = std::max(g, std::abs(cf.Rhat11_trace - tc));
  g = std::max(g, std::abs(cf.Rrhat11_trace - tl));
  return g;
}

}  // namespace

TEST_CASE("almost abelian: zero parameters give the abelian algebra") {
  const HermitianLieAlgebra alg = build_almost_abelian(zero_aa(3));
  CHECK(alg.C().max_abs() == 0.0);
  CHECK(alg.D().max_abs() == 0.0);
  const AaClosedForms cf = aa_closed_forms(zero_aa(3));
  CHECK(cf.R.max_abs() == 0.0);
  CHECK(cf.T.max_abs() == 0.0);
}

TEST_CASE("almost abelian: shape errors") {
  AlmostAbelianParams p = zero_aa(3);
  p.v = CVec::Zero(3);
  CHECK_THROWS_AS(build_almost_abelian(p), DimensionError);
}

TEST_CASE("almost abelian: every parameter choice satisfies Jacobi") {
  for (std::uint64_t q = 0; q < 500; ++q) {
    Rng rng = Rng::stream(1, q);
    AaSampleOptions o;
    o.unimodular = q % 2 == 0;
    const AlmostAbelianParams p = sample_aa(2 + q % 3, rng, o);
    const HermitianLieAlgebra alg = build_almost_abelian(p);
    CHECK(alg.jacobi().max() <= 1e-12 * alg.scale() * alg.scale());
  }
}

TEST_CASE("almost abelian: closed forms equal the generic engine") {
  for (std::uint64_t q = 0; q < 200; ++q) {
    Rng rng = Rng::stream(2, q);
    AaSampleOptions o;
    o.unimodular = q % 2 == 0;
    const AlmostAbelianParams p = sample_aa(2 + q % 3, rng, o);
    const HermitianLieAlgebra alg = build_almost_abelian(p);
    const AaClosedForms cf = aa_closed_forms(p);
    CHECK(max_abs_diff(cf.T, chern_torsion(alg).T) <= 1e-10);
    CHECK(max_abs_diff(cf.R, chern_curvature(alg).R) <= 1e-10);
  }
}

TEST_CASE("almost abelian: example closed forms") {
  const AaClosedForms cf = aa_closed_forms(example_params(3));
  CHECK(cf.R1111 == doctest::Approx(-2.0));
  CHECK(std::abs(cf.T(1, 0, 1) - 2.0) < 1e-12);
  CHECK(std::abs(cf.T(2, 0, 2) - 2.0) < 1e-12);

  AlmostAbelianParams p = zero_aa(3);
  p.lambda = 0.5;
  p.v << cd(1.0, 2.0), cd(-0.5, 0.0);
  p.A << cd(1.0, 0.0), cd(0.0, 1.0), cd(2.0, -1.0), cd(0.5, 0.5);
  const AaClosedForms q = aa_closed_forms(p);
  CHECK((q.R11i1 + p.A.adjoint() * p.v).norm() < 1e-14);
  CHECK(q.R1111 == doctest::Approx(-2.0 * 0.25 - p.v.squaredNorm()));
}

TEST_CASE("almost abelian: criteria") {
  AlmostAbelianParams skew = zero_aa(3);
  skew.A << cd(0.0, 1.0), cd(1.0, 2.0), cd(-1.0, 2.0), cd(0.0, -3.0);
  CHECK(aa_classify(skew).kahler);

  const FamilyClassification ex = aa_classify(example_params(4));
  CHECK_FALSE(ex.unimodular);
  CHECK_FALSE(ex.kahler);
  CHECK_FALSE(ex.chern_flat);

  // Normal, not skew-Hermitian: Chern flat with non-zero torsion.
  AlmostAbelianParams normal = zero_aa(3);
  normal.A = CMat::Zero(2, 2);
  normal.A(0, 0) = cd(1.0, 1.0);
  normal.A(1, 1) = cd(-2.0, 0.5);
  const FamilyClassification fc = aa_classify(normal);
  CHECK(fc.chern_flat);
  CHECK_FALSE(fc.kahler);
  const HermitianLieAlgebra alg = build_almost_abelian(normal);
  CHECK(chern_torsion(alg).T.max_abs() > 1.0);
  CHECK(chern_curvature(alg).R.max_abs() < 1e-14);
}

TEST_CASE("almost abelian: criteria agree with the generic predicates") {
  for (std::uint64_t q = 0; q < 300; ++q) {
    Rng rng = Rng::stream(3, q);
    AaSampleOptions o;
    o.unimodular = q % 2 == 0;
    o.variant = q % 5 == 0 ? AaVariant::kahler_flat : q % 5 == 1 ? AaVariant::chern_flat : AaVariant::generic;
    const AlmostAbelianParams p = sample_aa(2 + q % 3, rng, o);
    const HermitianLieAlgebra alg = build_almost_abelian(p);
    const FamilyClassification fc = aa_classify(p);
    const Predicates pr = predicates(alg);
    CHECK(fc.unimodular == is_unimodular(alg).unimodular);
    CHECK(fc.kahler == pr.is_kahler);
    CHECK(fc.chern_flat == pr.is_chern_flat);
  }
}

TEST_CASE("unimodular sampler") {
  for (std::uint64_t q = 0; q < 500; ++q) {
    Rng rng = Rng::stream(4, q);
    const AlmostAbelianParams p = sample_unimodular_aa(2 + q % 3, rng);
    CHECK(std::abs(p.lambda + 2.0 * p.A.trace().real()) < 1e-12);
    CHECK(aa_classify(p).unimodular);
    CHECK(build_almost_abelian(p).jacobi().max() < 1e-10);
  }
  Rng rng(1);
  CHECK_THROWS_AS(sample_unimodular_aa(1, rng), UsageError);
}

TEST_CASE("codim2: zero parameters and constraint violation") {
  const HermitianLieAlgebra alg = build_codim2(zero_codim2(3));
  CHECK(alg.D().max_abs() == 0.0);

  Rng rng(6);
  Codim2Params bad = zero_codim2(3);
  bad.lambda = 1.0;
  bad.X = rng.complex_gaussian(2, 2);
  bad.Y = rng.complex_gaussian(2, 2);
  bad.Z = rng.complex_gaussian(2, 2);
  try {
    build_codim2(bad);
    FAIL("expected ConstraintError");
  } catch (const ConstraintError& e) {
    CHECK(e.residuals()[0] > 1e-3);
    CHECK(e.residuals()[1] > 1e-3);
  }
  CHECK_THROWS_AS(codim2_classify(bad), ConstraintError);

  Codim2Params only_lambda = zero_codim2(3);
  only_lambda.lambda = 1.0;
  const FamilyClassification fc = codim2_classify(only_lambda);
  CHECK_FALSE(fc.unimodular);
}

TEST_CASE("codim2: scheme B instance with lambda = 2") {
  Rng rng(8);
  Codim2SampleOptions o;
  o.lambda = 2.0;
  const Codim2Params p = sample_codim2(2, Codim2Scheme::B, rng, o);
  const Codim2Residual r = codim2_residual(p);
  CHECK(r.first < 1e-13);
  CHECK(r.second < 1e-13);
  CHECK(std::abs(p.Z(0, 0)) == doctest::Approx(2.0));
  CHECK(p.Y(0, 0).real() == doctest::Approx(2.0 - p.X(0, 0).real()));
  const Codim2ClosedForms cf = codim2_closed_forms(p);
  const CTensor4 r4 = chern_curvature(build_codim2(p)).R;
  CHECK(cf.Riiii(0) == doctest::Approx(4.0));
  CHECK(r4(1, 1, 1, 1).real() == doctest::Approx(4.0));
}

TEST_CASE("codim2: scheme B with lambda = 0 degenerates") {
  Rng rng(9);
  Codim2SampleOptions o;
  o.lambda = 0.0;
  const Codim2Params p = sample_codim2(4, Codim2Scheme::B, rng, o);
  CHECK(p.Z.norm() == 0.0);
  CHECK((p.Y + p.X).norm() == 0.0);
  CHECK(codim2_residual(p).ok());
}

TEST_CASE("codim2: scheme A satisfies the constraints exactly") {
  for (std::uint64_t q = 0; q < 100; ++q) {
    Rng rng = Rng::stream(10, q);
    const Codim2Params p = sample_codim2(3, Codim2Scheme::A, rng);
    const Codim2Residual r = codim2_residual(p);
    CHECK(r.first < 1e-12);
    CHECK(r.second == 0.0);
  }
  CHECK_THROWS_AS(parse_scheme("C"), UsageError);
  CHECK(parse_scheme("b") == Codim2Scheme::B);
}

TEST_CASE("codim2: criteria") {
  Rng rng(12);
  Codim2Params k = zero_codim2(3);
  // X = Y and [X^*, X] = 0: a normal matrix with Z = 0 keeps the constraints.
  const CMat u = rng.unitary(2);
  const CVec e = rng.complex_gaussian(2);
  k.X = k.Y = u * e.asDiagonal() * u.adjoint();
  CHECK(codim2_classify(k).kahler);

  Codim2Params f = zero_codim2(3);
  f.X = f.Y = CMat(CVec::Ones(2).asDiagonal()) * cd(0.5, 1.0);
  const FamilyClassification fc = codim2_classify(f);
  CHECK(fc.chern_flat);
}

TEST_CASE("codim2: criteria agree with the generic predicates") {
  for (std::uint64_t q = 0; q < 300; ++q) {
    Rng rng = Rng::stream(13, q);
    Codim2SampleOptions o;
    o.unimodular = q % 2 == 0;
    o.random_frame = q % 3 == 0;
    o.variant = q % 5 == 0 ? Codim2Variant::kahler_flat : q % 5 == 1 ? Codim2Variant::chern_flat : Codim2Variant::generic;
    const Codim2Params p = sample_codim2(2 + q % 3, q % 4 < 2 ? Codim2Scheme::A : Codim2Scheme::B, rng, o);
    const HermitianLieAlgebra alg = build_codim2(p);
    const FamilyClassification fc = codim2_classify(p);
    const Predicates pr = predicates(alg);
    CHECK(fc.unimodular == is_unimodular(alg).unimodular);
    CHECK(fc.kahler == pr.is_kahler);
    CHECK(fc.chern_flat == pr.is_chern_flat);
  }
}

TEST_CASE("codim2: closed forms equal the generic engine") {
  for (std::uint64_t q = 0; q < 200; ++q) {
    Rng rng = Rng::stream(14, q);
    Codim2SampleOptions o;
    o.unimodular = q % 2 == 0;
    o.random_frame = q % 2 == 1;
    const Codim2Params p = sample_codim2(2 + q % 3, q % 4 < 2 ? Codim2Scheme::A : Codim2Scheme::B, rng, o);
    CHECK(codim2_gap(p) <= 1e-9);
    CHECK(codim2_gap(admissible_normalize(p)) <= 1e-9);
  }
}

TEST_CASE("codim2: the trace identity holds on every valid instance") {
  for (std::uint64_t q = 0; q < 300; ++q) {
    Rng rng = Rng::stream(15, q);
    Codim2SampleOptions o;
    o.random_frame = true;
    const Codim2Params p = sample_codim2(2 + q % 4, q % 2 ? Codim2Scheme::A : Codim2Scheme::B, rng, o);
    const Codim2ClosedForms cf = codim2_closed_forms(p);
    CHECK(std::abs(cf.trZZbar - cf.lambda_trXsY) <= 1e-10);
  }
}

TEST_CASE("codim2: off-diagonal LC values need a normalized frame") {
  Rng rng(16);
  Codim2SampleOptions o;
  o.lambda = 1.5;
  o.random_frame = true;
  const Codim2Params p = sample_codim2(4, Codim2Scheme::B, rng, o);
  CHECK_FALSE(codim2_is_normalized(p));
  CHECK_THROWS_AS(codim2_lc_offdiag(p), PreconditionError);
  CHECK_FALSE(codim2_closed_forms(p).Rrhat_iikk.has_value());
  const Codim2Params q = admissible_normalize(p);
  CHECK(codim2_is_normalized(q));
  CHECK_NOTHROW(codim2_lc_offdiag(q));
}

TEST_CASE("admissible_normalize") {
  SUBCASE("already normalized input is unchanged") {
    Rng rng(17);
    Codim2SampleOptions o;
    o.lambda = 1.0;
    const Codim2Params p = sample_codim2(3, Codim2Scheme::B, rng, o);
    Codim2Params p2 = p;
    // Diagonal Z with real non-negative entries.
    for (Eigen::Index i = 0; i < 2; ++i) p2.Z(i, i) = std::abs(p.Z(i, i));
    const Codim2Params q = admissible_normalize(p2);
    CHECK((q.Z.transpose() + q.Z - (p2.Z.transpose() + p2.Z)).norm() < 1e-12);
    CHECK(std::abs(q.lambda - p2.lambda) < 1e-15);
  }
  SUBCASE("anti-diagonal Z") {
    Codim2Params p = zero_codim2(3);
    p.Z(0, 1) = p.Z(1, 0) = 1.0;
    const Codim2Params q = admissible_normalize(p);
    const CMat s = q.Z.transpose() + q.Z;
    CHECK(std::abs(s(0, 1)) < 1e-12);
    CHECK(s(0, 0).real() == doctest::Approx(2.0));
    CHECK(s(1, 1).real() == doctest::Approx(2.0));
  }
  SUBCASE("negative lambda flips sign") {
    Codim2Params p = zero_codim2(2);
    p.lambda = -1.0;
    p.X(0, 0) = 0.3;
    p.Y(0, 0) = -1.3;
    p.Z(0, 0) = cd(0.0, 1.0);
    REQUIRE(codim2_residual(p).ok());
    const Codim2Params q = admissible_normalize(p);
    CHECK(q.lambda == doctest::Approx(1.0));
    CHECK(codim2_is_normalized(q));
    CHECK(codim2_residual(q).ok());
  }
  SUBCASE("random instances: verdicts and holomorphic sectional curvature preserved") {
    for (std::uint64_t k = 0; k < 100; ++k) {
      Rng rng = Rng::stream(18, k);
      Codim2SampleOptions o;
      o.random_frame = true;
      o.unimodular = k % 2 == 0;
      const Codim2Params p = sample_codim2(2 + k % 3, k % 3 ? Codim2Scheme::B : Codim2Scheme::A, rng, o);
      const Codim2Params q = admissible_normalize(p);
      CHECK(codim2_is_normalized(q));
      const CMat s = q.Z.transpose() + q.Z;
      CHECK((s - CMat(s.diagonal().asDiagonal())).norm() <= 1e-10);
      const HermitianLieAlgebra a = build_codim2(p);
      const HermitianLieAlgebra b = build_codim2(q);
      for (bool lc : {false, true}) {
        const HVerdict va = constant_H_detect(lc ? lc_curvature(a) : chern_curvature(a));
        const HVerdict vb = constant_H_detect(lc ? lc_curvature(b) : chern_curvature(b));
        CHECK(va.constant == vb.constant);
        if (va.constant) CHECK(std::abs(va.c - vb.c) <= 1e-9);
      }
      // H at e_1 does not depend on the frame of e_2..e_n.
      CVec e1 = CVec::Zero(static_cast<Eigen::Index>(p.n));
      e1(0) = 1.0;
      CHECK(std::abs(hol_sect(lc_curvature(a), e1) - hol_sect(lc_curvature(b), e1)) <= 1e-9);
    }
  }
}

TEST_CASE("codim2 frame change matches the generic frame change") {
  for (std::uint64_t q = 0; q < 30; ++q) {
    Rng rng = Rng::stream(19, q);
    const std::size_t n = 2 + q % 3;
    Codim2SampleOptions o;
    o.lambda = 1.0;
    const Codim2Params p = sample_codim2(n, Codim2Scheme::B, rng, o);
    const CMat u = rng.unitary(static_cast<Eigen::Index>(n - 1));
    CMat full = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    full.bottomRightCorner(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)) = u;
    const HermitianLieAlgebra a = change_frame(build_codim2(p), full);
    const HermitianLieAlgebra b = build_codim2(codim2_change_frame(p, u));
    CHECK(max_abs_diff(a.C(), b.C()) < 1e-12);
    CHECK(max_abs_diff(a.D(), b.D()) < 1e-12);
  }
}

TEST_CASE("norm identities for the transpose of Z") {
  Rng rng(20);
  for (int q = 0; q < 100; ++q) {
    const CMat z = rng.complex_gaussian(1 + q % 6, 1 + q % 6);
    const double tr = (z * z.conjugate()).trace().real();
    CHECK(std::abs((z.transpose() - z).squaredNorm() - (2.0 * z.squaredNorm() - 2.0 * tr)) < 1e-10);
    CHECK(std::abs((z.transpose() + z).squaredNorm() - (2.0 * z.squaredNorm() + 2.0 * tr)) < 1e-10);
  }
}

TEST_CASE("example parameters") {
  CHECK_THROWS_AS(example_algebra(1), UsageError);
  const AlmostAbelianParams p = example_params(4);
  CHECK(p.lambda == 1.0);
  CHECK(p.v.norm() == 0.0);
  CHECK((p.A - CMat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("LC constant zero forces Kahler flatness on almost abelian samples") {
  for (std::uint64_t q = 0; q < 300; ++q) {
    Rng rng = Rng::stream(21, q);
    AaSampleOptions o;
    o.unimodular = q % 2 == 0;
    o.variant = q % 4 == 0 ? AaVariant::kahler_flat : q % 4 == 1 ? AaVariant::chern_flat : AaVariant::generic;
    const AlmostAbelianParams p = sample_aa(2 + q % 3, rng, o);
    const HVerdict v = constant_H_detect(lc_curvature(build_almost_abelian(p)));
    if (v.constant && std::abs(v.c) <= v.threshold) {
      CHECK(std::abs(p.lambda) < 1e-12);
      CHECK(p.v.norm() < 1e-12);
      CHECK((p.A + p.A.adjoint()).norm() < 1e-12);
    }
  }
}
