#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvlab/families.hpp"
#include "curvlab/linalg.hpp"

namespace curvlab {

enum class FuzzFamily { aa, codim2 };

FuzzFamily parse_family(const std::string& s);

struct FuzzOptions {
  FuzzFamily family = FuzzFamily::aa;
  std::optional<Codim2Scheme> scheme;  // alternates A, B by sample index when unset
  bool unimodular = false;             // otherwise roughly half the samples are unimodular
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::optional<std::size_t> dim;      // cycles through 2, 3, 4 when unset
  double tol = kDefaultTol;
  bool inject_example = false;         // replaces sample 0 by lambda = 1, v = 0, A = I
};

struct FuzzViolation {
  std::size_t index = 0;
  std::string property;
  std::string detail;
  nlohmann::json instance;
};

/// Non-unimodular instance with constant negative LC holomorphic sectional
/// curvature and non-zero torsion.
struct FuzzWitness {
  std::size_t index = 0;
  double c = 0.0;
  nlohmann::json instance;
};

struct FuzzCounts {
  std::size_t samples = 0;
  std::size_t unimodular = 0;
  std::size_t kahler = 0;
  std::size_t chern_flat = 0;
  std::size_t kahler_flat = 0;
  std::size_t chern_constant = 0;
  std::size_t chern_not_constant = 0;
  std::size_t lc_constant = 0;
  std::size_t lc_not_constant = 0;
  std::size_t nonzero_lambda = 0;
  std::size_t nonzero_z = 0;
};

struct FuzzSummary {
  FuzzOptions options;
  FuzzCounts counts;
  std::vector<FuzzViolation> violations;
  std::vector<FuzzWitness> negative_constant_witnesses;
  double max_oracle_gap = 0.0;       // closed-form LC blocks vs Koszul, relative
  double max_closed_form_gap = 0.0;  // closed forms vs generic engine
  bool ok() const { return violations.empty(); }
};

/// Checks, per sample: construction, oracle equivalence of the LC blocks,
/// closed-form agreement, closed-form vs generic predicates, the Chern
/// constant-H property, the LC constant-H property on unimodular samples,
/// and (codim2) invariance under admissible_normalize.
FuzzSummary run_fuzz(const FuzzOptions& opts);

nlohmann::json to_json(const FuzzSummary& s);
std::string to_text(const FuzzSummary& s);

}  // namespace curvlab
