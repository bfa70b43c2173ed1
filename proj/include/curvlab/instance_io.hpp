#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "curvlab/algebra.hpp"
#include "curvlab/families.hpp"

namespace curvlab {

enum class InstanceFormat { generic, almost_abelian, codim2, real };

const char* to_string(InstanceFormat f);

/// A parsed instance file. Exactly one payload is set, matching `format`.
struct Instance {
  InstanceFormat format = InstanceFormat::generic;
  std::size_t n = 0;
  // generic
  CTensor3 C;
  CTensor3 D;
  std::optional<AlmostAbelianParams> aa;
  std::optional<Codim2Params> codim2;
  std::optional<RealLieData> real;
};

/// Parses an instance document. Complex numbers are [re, im] pairs, C and D
/// are nested [j][i][k] arrays. Throws ParseError with a JSON pointer.
Instance parse_instance(const nlohmann::json& doc);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);

/// Builds the algebra; throws the validation errors of the algebra and
/// families modules (StructureError, JacobiError, ConstraintError, ...).
HermitianLieAlgebra build_instance(const Instance& inst, double tol = kDefaultTol);

nlohmann::json to_json(const Instance& inst);
/// Generic-format document for the constants of `alg`.
nlohmann::json generic_json(const HermitianLieAlgebra& alg);

Instance make_instance(const AlmostAbelianParams& p);
Instance make_instance(const Codim2Params& p);

nlohmann::json complex_json(cd z);
nlohmann::json vector_json(const CVec& v);
nlohmann::json matrix_json(const CMat& m);

}  // namespace curvlab
