#include "curvlab/report.hpp"

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

using nlohmann::json;

ConnectionChoice parse_connection(const std::string& s) {
  if (s == "chern") return ConnectionChoice::chern;
  if (s == "lc") return ConnectionChoice::lc;
  if (s == "both") return ConnectionChoice::both;
  throw UsageError("unknown connection '" + s + "' (expected chern, lc or both)");
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (prec >= 10 || std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string verdict_label(const HVerdict& v) {
  if (!v.constant) return "not-constant";
  double c = v.c;
  if (std::abs(c) <= v.threshold) c = 0.0;
  const double r = std::round(c);
  if (std::abs(c - r) <= v.threshold) c = r;
  return "constant(" + fmt_double(c) + ")";
}

ClassificationReport make_report(const Instance& inst, ConnectionChoice conn, double tol) {
  ClassificationReport r;
  r.tol = tol;
  r.source_format = to_string(inst.format);
  if (inst.format == InstanceFormat::codim2) r.constraints = codim2_residual(*inst.codim2);

  const HermitianLieAlgebra alg = build_instance(inst, tol);
  r.instance = generic_json(alg);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(r.instance.dump())));
  r.digest = hex;

  r.jacobi = alg.jacobi();
  r.unimodularity = is_unimodular(alg);
  r.predicates = predicates(alg);
  if (inst.format == InstanceFormat::almost_abelian) r.family = aa_classify(*inst.aa, tol);
  if (inst.format == InstanceFormat::codim2) r.family = codim2_classify(*inst.codim2, tol);

  const Curv4 chern = chern_curvature(alg);
  r.chern_norm = chern.R.max_abs();
  const Curv4 lc = lc_curvature(alg);
  r.lc_norm = lc.R.max_abs();
  if (conn != ConnectionChoice::lc) r.chern = constant_H_detect(chern, tol);
  if (conn != ConnectionChoice::chern) r.lc = constant_H_detect(lc, tol);
  return r;
}

namespace {

json witness_json(const Witness& w) {
  json out;
  out["probe"] = w.probe.label;
  out["vector"] = vector_json(w.probe.x);
  out["H"] = w.h;
  return out;
}

json verdict_json(const HVerdict& v) {
  json out;
  out["verdict"] = verdict_label(v);
  out["constant"] = v.constant;
  out["c"] = v.c;
  out["violation"] = v.violation;
  out["threshold"] = v.threshold;
  out["worst"] = json::array({v.worst[0] + 1, v.worst[1] + 1, v.worst[2] + 1, v.worst[3] + 1});
  if (!v.constant) {
    out["witness_low"] = witness_json(v.low);
    out["witness_high"] = witness_json(v.high);
  }
  return out;
}

std::string verdict_text(const HVerdict& v) {
  std::ostringstream os;
  os << verdict_label(v);
  if (v.constant) {
    os << "  (c = " << fmt_double(v.c) << ", deviation " << fmt_double(v.violation) << ")";
  } else {
    os << "  H(" << v.low.probe.label << ") = " << fmt_double(v.low.h) << ", H(" << v.high.probe.label
       << ") = " << fmt_double(v.high.h) << "; worst component (" << v.worst[0] + 1 << "," << v.worst[1] + 1 << ","
       << v.worst[2] + 1 << "," << v.worst[3] + 1 << ") off by " << fmt_double(v.violation);
  }
  return os.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

json to_json(const ClassificationReport& r) {
  json out;
  out["digest"] = r.digest;
  out["source_format"] = r.source_format;
  out["tolerances"] = {{"tol", r.tol}, {"codim2_constraint", 1e-8}};
  out["jacobi"] = {{"ccc", r.jacobi.ccc}, {"ccd", r.jacobi.ccd}, {"cdd", r.jacobi.cdd}};
  if (r.constraints) out["codim2_constraints"] = {{"first", r.constraints->first}, {"second", r.constraints->second}};
  out["predicates"] = {{"unimodular", r.unimodularity.unimodular},
                       {"kahler", r.predicates.is_kahler},
                       {"chern_flat", r.predicates.is_chern_flat},
                       {"lc_flat", r.predicates.is_lc_flat}};
  if (r.family)
    out["family_criteria"] = {
        {"unimodular", r.family->unimodular}, {"kahler", r.family->kahler}, {"chern_flat", r.family->chern_flat}};
  out["norms"] = {{"max_ad_trace", r.unimodularity.max_trace},
                  {"torsion_max", r.predicates.torsion_max},
                  {"chern_max", r.chern_norm},
                  {"lc_max", r.lc_norm},
                  {"lc_real_max", r.predicates.lc_max}};
  json hol = json::object();
  if (r.chern) hol["chern"] = verdict_json(*r.chern);
  if (r.lc) hol["lc"] = verdict_json(*r.lc);
  out["holomorphic_sectional"] = std::move(hol);
  out["instance"] = r.instance;
  return out;
}

std::string to_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "instance      " << r.digest << " (" << r.source_format << ", n = " << r.instance.at("n").get<std::size_t>()
     << ")\n";
  os << "tolerance     " << fmt_double(r.tol) << "\n";
  os << "jacobi        " << fmt_double(r.jacobi.ccc) << " " << fmt_double(r.jacobi.ccd) << " "
     << fmt_double(r.jacobi.cdd) << "\n";
  if (r.constraints)
    os << "constraints   " << fmt_double(r.constraints->first) << " " << fmt_double(r.constraints->second) << "\n";
  os << "unimodular    " << yes_no(r.unimodularity.unimodular) << "  (max |tr ad| = "
     << fmt_double(r.unimodularity.max_trace) << ")\n";
  os << "kahler        " << yes_no(r.predicates.is_kahler) << "  (max |T| = " << fmt_double(r.predicates.torsion_max)
     << ")\n";
  os << "chern flat    " << yes_no(r.predicates.is_chern_flat) << "  (max |R| = " << fmt_double(r.chern_norm) << ")\n";
  os << "lc flat       " << yes_no(r.predicates.is_lc_flat) << "  (max |Rm| = " << fmt_double(r.predicates.lc_max)
     << ")\n";
  if (r.family)
    os << "criteria      unimodular " << yes_no(r.family->unimodular) << ", kahler " << yes_no(r.family->kahler)
       << ", chern flat " << yes_no(r.family->chern_flat) << "\n";
  if (r.chern) os << "H (chern)     " << verdict_text(*r.chern) << "\n";
  if (r.lc) os << "H (lc)        " << verdict_text(*r.lc) << "\n";
  return os.str();
}

}  // namespace curvlab
