#include "curvlab/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/curvature.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/instance_io.hpp"
#include "curvlab/report.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

using nlohmann::json;

FuzzFamily parse_family(const std::string& s) {
  if (s == "aa" || s == "almost_abelian") return FuzzFamily::aa;
  if (s == "codim2") return FuzzFamily::codim2;
  throw UsageError("unknown family '" + s + "' (expected aa or codim2)");
}

namespace {

constexpr double kClosedFormTol = 1e-9;
constexpr double kTraceIdentityTol = 1e-10;

struct Sample {
  std::size_t index = 0;
  std::optional<AlmostAbelianParams> aa;
  std::optional<Codim2Params> codim2;

  Instance instance() const { return aa ? make_instance(*aa) : make_instance(*codim2); }
};

struct Checker {
  const FuzzOptions& opts;
  FuzzSummary& out;
  const Sample& s;

  void fail(const std::string& property, const std::string& detail) {
    out.violations.push_back({s.index, property, detail, to_json(s.instance())});
  }

  void expect(bool cond, const std::string& property, const std::string& detail) {
    if (!cond) fail(property, detail);
  }

  void gap(double g, double bound, const std::string& property, const std::string& what) {
    out.max_closed_form_gap = std::max(out.max_closed_form_gap, g);
    if (!(g <= bound)) {
      std::ostringstream os;
      os << what << ": difference " << g << " exceeds " << bound;
      fail(property, os.str());
    }
  }
};

double block_gap(const CTensor4& a, const CTensor4& b) { return max_abs_diff(a, b); }

void check_oracle(Checker& ck, const HermitianLieAlgebra& alg) {
  const LCBlocks from_chern = levi_civita_from_chern(alg);
  const LCBlocks koszul = complexify_blocks(levi_civita_koszul(alg));
  const double norm = std::max({koszul.hol.max_abs(), koszul.mixed.max_abs(), koszul.split.max_abs()});
  const double g = std::max({block_gap(from_chern.hol, koszul.hol), block_gap(from_chern.mixed, koszul.mixed),
                             block_gap(from_chern.split, koszul.split)});
  const double rel = g / (1.0 + norm);
  ck.out.max_oracle_gap = std::max(ck.out.max_oracle_gap, rel);
  if (!(rel <= 1e-9)) {
    std::ostringstream os;
    os << "LC blocks differ from Koszul oracle by " << g << " (norm " << norm << ")";
    ck.fail("oracle_equivalence", os.str());
  }
}

void check_aa_closed_forms(Checker& ck, const AlmostAbelianParams& p, const HermitianLieAlgebra& alg) {
  const AaClosedForms cf = aa_closed_forms(p);
  const TorsionTensor t = chern_torsion(alg);
  const Curv4 r = chern_curvature(alg);
  const double bound = kClosedFormTol * (1.0 + r.R.max_abs());
  ck.gap(max_abs_diff(cf.T, t.T), kClosedFormTol * (1.0 + t.T.max_abs()), "closed_form", "torsion");
  ck.gap(max_abs_diff(cf.R, r.R), bound, "closed_form", "Chern curvature");
}

void check_codim2_closed_forms(Checker& ck, const Codim2Params& p, const HermitianLieAlgebra& alg) {
  const std::size_t n = p.n;
  const Codim2ClosedForms cf = codim2_closed_forms(p, ck.opts.tol);
  const TorsionTensor t = chern_torsion(alg);
  const Curv4 rh = symmetrize(chern_curvature(alg));
  const Curv4 rrh = symmetrize(lc_curvature(alg));
  const double bound = kClosedFormTol * (1.0 + std::max(rh.R.max_abs(), rrh.R.max_abs()));

  ck.gap(max_abs_diff(cf.T, t.T), kClosedFormTol * (1.0 + t.T.max_abs()), "closed_form", "torsion");
  ck.gap(std::abs(cf.R1111 - rh.R(0, 0, 0, 0)), bound, "closed_form", "R_1111");
  ck.gap(std::abs(cf.Rr1111 - rrh.R(0, 0, 0, 0)), bound, "closed_form", "Rr_1111");
  cd tr_c{}, tr_l{};
  for (std::size_t i = 1; i < n; ++i) {
    const auto a = static_cast<Eigen::Index>(i - 1);
    ck.gap(std::abs(cf.Riiii(a) - rh.R(i, i, i, i)), bound, "closed_form", "R_iiii");
    ck.gap(std::abs(cf.Rr_iiii(a) - rrh.R(i, i, i, i)), bound, "closed_form", "Rr_iiii");
    for (std::size_t k = 1; k < n; ++k) {
      const auto b = static_cast<Eigen::Index>(k - 1);
      ck.gap(std::abs(cf.Rhat_iikk(a, b) - rh.R(i, i, k, k)), bound, "closed_form", "Rhat_iikk");
      ck.gap(std::abs(cf.Rhat11ij(a, b) - rh.R(0, 0, i, k)), bound, "closed_form", "Rhat_11ij");
      if (cf.Rrhat_iikk)
        ck.gap(std::abs((*cf.Rrhat_iikk)(a, b) - rrh.R(i, i, k, k)), bound, "closed_form", "Rrhat_iikk");
    }
    tr_c += rh.R(0, 0, i, i);
    tr_l += rrh.R(0, 0, i, i);
  }
  ck.gap(std::abs(cf.Rhat11_trace - tr_c), bound, "closed_form", "sum Rhat_11ii");
  ck.gap(std::abs(cf.Rrhat11_trace - tr_l), bound, "closed_form", "sum Rrhat_11ii");
  const double eq18 = std::abs(cf.trZZbar - cf.lambda_trXsY);
  if (!(eq18 <= kTraceIdentityTol)) {
    std::ostringstream os;
    os << "tr(Z conj Z) - lambda tr(X^* + Y) = " << eq18;
    ck.fail("trace_identity", os.str());
  }
}

void check_predicates(Checker& ck, const FamilyClassification& fam, const Predicates& pr, const Unimodularity& um) {
  std::ostringstream os;
  os << "criteria (unimodular " << fam.unimodular << ", kahler " << fam.kahler << ", chern_flat " << fam.chern_flat
     << ") vs generic (" << um.unimodular << ", " << pr.is_kahler << ", " << pr.is_chern_flat << ")";
  ck.expect(fam.unimodular == um.unimodular && fam.kahler == pr.is_kahler && fam.chern_flat == pr.is_chern_flat,
            "predicate_agreement", os.str());
}

void check_verdicts(Checker& ck, const HVerdict& chern, const HVerdict& lc, const Predicates& pr,
                    const Unimodularity& um) {
  FuzzCounts& c = ck.out.counts;
  (chern.constant ? c.chern_constant : c.chern_not_constant)++;
  if (pr.is_chern_flat) {
    ck.expect(chern.constant && std::abs(chern.c) <= chern.threshold, "chern_constant_H",
              "Chern-flat instance reported " + verdict_label(chern));
  } else {
    ck.expect(!chern.constant, "chern_constant_H", "non-flat instance reported " + verdict_label(chern));
  }

  const bool kahler_flat = pr.is_kahler && pr.is_chern_flat;
  if (um.unimodular) {
    (lc.constant ? c.lc_constant : c.lc_not_constant)++;
    if (kahler_flat) {
      ck.expect(lc.constant && std::abs(lc.c) <= lc.threshold, "lc_constant_H",
                "Kahler-flat instance reported " + verdict_label(lc));
    } else {
      ck.expect(!lc.constant, "lc_constant_H", "unimodular non-Kahler-flat instance reported " + verdict_label(lc));
    }
  }
  if (lc.constant && std::abs(lc.c) <= lc.threshold)
    ck.expect(kahler_flat, "lc_zero_implies_kahler_flat", "constant(0) LC without Kahler flatness");
  if (!um.unimodular && lc.constant && lc.c < -lc.threshold && !pr.is_kahler)
    ck.out.negative_constant_witnesses.push_back({ck.s.index, lc.c, to_json(ck.s.instance())});
}

void check_sample(const FuzzOptions& opts, FuzzSummary& out, const Sample& s) {
  Checker ck{opts, out, s};
  std::optional<HermitianLieAlgebra> alg;
  try {
    alg.emplace(build_instance(s.instance(), opts.tol));
  } catch (const Error& e) {
    ck.fail("construction", e.what());
    return;
  }

  FuzzCounts& c = out.counts;
  c.samples++;
  const Predicates pr = predicates(*alg);
  const Unimodularity um = is_unimodular(*alg);
  if (um.unimodular) c.unimodular++;
  if (pr.is_kahler) c.kahler++;
  if (pr.is_chern_flat) c.chern_flat++;
  if (pr.is_kahler && pr.is_chern_flat) c.kahler_flat++;

  check_oracle(ck, *alg);

  FamilyClassification fam;
  if (s.aa) {
    check_aa_closed_forms(ck, *s.aa, *alg);
    fam = aa_classify(*s.aa, opts.tol);
  } else {
    const Codim2Params& p = *s.codim2;
    if (std::abs(p.lambda) > opts.tol) c.nonzero_lambda++;
    if (p.Z.norm() > opts.tol) c.nonzero_z++;
    check_codim2_closed_forms(ck, p, *alg);
    fam = codim2_classify(p, opts.tol);
  }
  check_predicates(ck, fam, pr, um);

  const HVerdict chern = constant_H_detect(chern_curvature(*alg), opts.tol);
  const HVerdict lc = constant_H_detect(lc_curvature(*alg), opts.tol);
  check_verdicts(ck, chern, lc, pr, um);

  if (s.codim2) {
    const Codim2Params q = admissible_normalize(*s.codim2, opts.tol);
    ck.expect(codim2_is_normalized(q, opts.tol), "normalize", "admissible_normalize output is not normalized");
    try {
      const HermitianLieAlgebra alg_q = build_codim2(q, opts.tol);
      check_codim2_closed_forms(ck, q, alg_q);
      const HVerdict chern_q = constant_H_detect(chern_curvature(alg_q), opts.tol);
      const HVerdict lc_q = constant_H_detect(lc_curvature(alg_q), opts.tol);
      const bool same = chern_q.constant == chern.constant && lc_q.constant == lc.constant &&
                        (!chern.constant || std::abs(chern_q.c - chern.c) <= 1e-9) &&
                        (!lc.constant || std::abs(lc_q.c - lc.c) <= 1e-9);
      ck.expect(same, "normalize", "verdicts changed under admissible_normalize");
    } catch (const Error& e) {
      ck.fail("normalize", std::string("normalized instance rejected: ") + e.what());
    }
  }
}

Sample draw(const FuzzOptions& opts, std::size_t index) {
  Rng rng = Rng::stream(opts.seed, index);
  const std::size_t n = opts.dim ? *opts.dim : 2 + index % 3;
  Sample s;
  s.index = index;
  const double u = rng.uniform();
  const bool unimodular = opts.unimodular || rng.uniform() < 0.5;

  if (opts.family == FuzzFamily::aa) {
    if (opts.inject_example && index == 0) {
      s.aa = example_params(n);
      return s;
    }
    AaSampleOptions o;
    o.unimodular = unimodular;
    o.variant = u < 0.15 ? AaVariant::kahler_flat : u < 0.3 ? AaVariant::chern_flat : AaVariant::generic;
    s.aa = sample_aa(n, rng, o);
  } else {
    const Codim2Scheme scheme = opts.scheme ? *opts.scheme : (index % 2 == 0 ? Codim2Scheme::A : Codim2Scheme::B);
    Codim2SampleOptions o;
    o.unimodular = unimodular;
    o.variant = u < 0.15 ? Codim2Variant::kahler_flat : u < 0.3 ? Codim2Variant::chern_flat : Codim2Variant::generic;
    o.random_frame = rng.uniform() < 0.5;
    s.codim2 = sample_codim2(n, scheme, rng, o);
  }
  return s;
}

}  // namespace

FuzzSummary run_fuzz(const FuzzOptions& opts) {
  if (opts.dim && *opts.dim < 2) throw UsageError("--dim must be at least 2");
  if (opts.inject_example && opts.family != FuzzFamily::aa)
    throw UsageError("--inject-example applies to the almost abelian family only");
  FuzzSummary out;
  out.options = opts;
  for (std::size_t i = 0; i < opts.count; ++i) check_sample(opts, out, draw(opts, i));
  return out;
}

json to_json(const FuzzSummary& s) {
  const FuzzOptions& o = s.options;
  json out;
  out["options"] = {{"family", o.family == FuzzFamily::aa ? "aa" : "codim2"},
                    {"scheme", o.scheme ? (*o.scheme == Codim2Scheme::A ? "A" : "B") : "A/B"},
                    {"unimodular", o.unimodular},
                    {"count", o.count},
                    {"seed", o.seed},
                    {"dim", o.dim ? json(*o.dim) : json("2-4")},
                    {"tol", o.tol},
                    {"inject_example", o.inject_example}};
  const FuzzCounts& c = s.counts;
  out["counts"] = {{"samples", c.samples},
                   {"unimodular", c.unimodular},
                   {"kahler", c.kahler},
                   {"chern_flat", c.chern_flat},
                   {"non_chern_flat", c.samples - c.chern_flat},
                   {"kahler_flat", c.kahler_flat},
                   {"chern_constant", c.chern_constant},
                   {"chern_not_constant", c.chern_not_constant},
                   {"lc_constant_unimodular", c.lc_constant},
                   {"lc_not_constant_unimodular", c.lc_not_constant},
                   {"nonzero_lambda", c.nonzero_lambda},
                   {"nonzero_z", c.nonzero_z}};
  out["max_oracle_gap"] = s.max_oracle_gap;
  out["max_closed_form_gap"] = s.max_closed_form_gap;
  json w = json::array();
  for (const FuzzWitness& x : s.negative_constant_witnesses)
    w.push_back({{"index", x.index},
                 {"c", x.c},
                 {"label", "constant(" + fmt_double(x.c) + "), non-unimodular, non-Kahler"},
                 {"instance", x.instance}});
  out["negative_constant_witnesses"] = std::move(w);
  json v = json::array();
  for (const FuzzViolation& x : s.violations)
    v.push_back({{"index", x.index}, {"property", x.property}, {"detail", x.detail}, {"instance", x.instance}});
  out["violations"] = std::move(v);
  out["ok"] = s.ok();
  return out;
}

std::string to_text(const FuzzSummary& s) {
  const FuzzCounts& c = s.counts;
  std::ostringstream os;
  os << "samples             " << c.samples << " (seed " << s.options.seed << ")\n";
  os << "unimodular          " << c.unimodular << "\n";
  os << "kahler              " << c.kahler << "\n";
  os << "chern flat          " << c.chern_flat << " / non-flat " << c.samples - c.chern_flat << "\n";
  os << "kahler flat         " << c.kahler_flat << "\n";
  os << "chern H constant    " << c.chern_constant << " / not constant " << c.chern_not_constant << "\n";
  os << "lc H constant       " << c.lc_constant << " / not constant " << c.lc_not_constant << " (unimodular)\n";
  if (s.options.family == FuzzFamily::codim2)
    os << "nonzero lambda / Z  " << c.nonzero_lambda << " / " << c.nonzero_z << "\n";
  os << "max oracle gap      " << fmt_double(s.max_oracle_gap) << "\n";
  os << "max closed-form gap " << fmt_double(s.max_closed_form_gap) << "\n";
  for (const FuzzWitness& w : s.negative_constant_witnesses)
    os << "witness #" << w.index << ": constant(" << fmt_double(w.c) << "), non-unimodular, non-Kahler\n";
  for (const FuzzViolation& v : s.violations) {
    os << "VIOLATION #" << v.index << " [" << v.property << "] " << v.detail << "\n";
    os << "  " << v.instance.dump() << "\n";
  }
  os << (s.ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

}  // namespace curvlab
