#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "curvlab/algebra.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/families.hpp"
#include "curvlab/instance_io.hpp"

namespace curvlab {

enum class ConnectionChoice { chern, lc, both };

/// Parses "chern", "lc" or "both"; throws UsageError otherwise.
ConnectionChoice parse_connection(const std::string& s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

struct ClassificationReport {
  std::string digest;           // FNV-1a of the embedded generic instance, hex
  std::string source_format;
  nlohmann::json instance;      // generic form, re-ingestible
  double tol = kDefaultTol;
  JacobiResidual jacobi;
  std::optional<Codim2Residual> constraints;
  Unimodularity unimodularity;
  Predicates predicates;
  std::optional<FamilyClassification> family;  // closed-form criteria for family inputs
  std::optional<HVerdict> chern;
  std::optional<HVerdict> lc;
  double chern_norm = 0.0;      // max |R|
  double lc_norm = 0.0;         // max |R^r| over the mixed block
};

ClassificationReport make_report(const Instance& inst, ConnectionChoice conn, double tol = kDefaultTol);

/// Stable machine format; complex numbers as [re, im].
nlohmann::json to_json(const ClassificationReport& r);
std::string to_text(const ClassificationReport& r);

/// "constant(-2)" or "not-constant".
std::string verdict_label(const HVerdict& v);

/// Shortest round-trip formatting used by text reports.
std::string fmt_double(double x);

}  // namespace curvlab
