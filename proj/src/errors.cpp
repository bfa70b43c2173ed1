#include "curvlab/errors.hpp"

namespace curvlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension error";
    case ErrorKind::precondition: return "precondition error";
    case ErrorKind::numeric: return "numeric error";
    case ErrorKind::structure: return "structure error";
    case ErrorKind::jacobi: return "jacobi error";
    case ErrorKind::not_integrable: return "not-integrable error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::constraint: return "constraint error";
    case ErrorKind::usage: return "usage error";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

}  // namespace curvlab
