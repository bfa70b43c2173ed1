#include "curvlab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

using nlohmann::json;

const char* to_string(InstanceFormat f) {
  switch (f) {
    case InstanceFormat::generic: return "generic";
    case InstanceFormat::almost_abelian: return "almost_abelian";
    case InstanceFormat::codim2: return "codim2";
    case InstanceFormat::real: return "real";
  }
  return "?";
}

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t idx) { return base + "/" + std::to_string(idx); }

const json& field(const json& obj, const std::string& base, const std::string& key) {
  if (!obj.contains(key)) throw ParseError(at(base, key), "missing field");
  return obj.at(key);
}

double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(path, "non-finite number");
  return x;
}

std::size_t read_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ParseError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 1) throw ParseError(path, "must be positive");
  return static_cast<std::size_t>(v);
}

cd read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {read_real(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a complex number [re, im]");
  return {read_real(j[0], at(path, std::size_t{0})), read_real(j[1], at(path, std::size_t{1}))};
}

void expect_array(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != len) {
    std::ostringstream os;
    os << "expected " << len << " entries, found " << j.size();
    throw ParseError(path, os.str());
  }
}

CVec read_cvec(const json& j, std::size_t len, const std::string& path) {
  expect_array(j, len, path);
  CVec v(static_cast<Eigen::Index>(len));
  for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = read_complex(j[i], at(path, i));
  return v;
}

CMat read_cmat(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  expect_array(j, rows, path);
  CMat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string pr = at(path, r);
    expect_array(j[r], cols, pr);
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_complex(j[r][c], at(pr, c));
  }
  return m;
}

RMat read_rmat(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  expect_array(j, rows, path);
  RMat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string pr = at(path, r);
    expect_array(j[r], cols, pr);
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_real(j[r][c], at(pr, c));
  }
  return m;
}

CTensor3 read_tensor(const json& j, std::size_t n, const std::string& path) {
  CTensor3 t(n);
  expect_array(j, n, path);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string pa = at(path, a);
    expect_array(j[a], n, pa);
    for (std::size_t b = 0; b < n; ++b) {
      const std::string pb = at(pa, b);
      expect_array(j[a][b], n, pb);
      for (std::size_t c = 0; c < n; ++c) t(a, b, c) = read_complex(j[a][b][c], at(pb, c));
    }
  }
  return t;
}

json tensor_json(const CTensor3& t) {
  const std::size_t n = t.n();
  json out = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json ja = json::array();
    for (std::size_t b = 0; b < n; ++b) {
      json jb = json::array();
      for (std::size_t c = 0; c < n; ++c) jb.push_back(complex_json(t(a, b, c)));
      ja.push_back(std::move(jb));
    }
    out.push_back(std::move(ja));
  }
  return out;
}

json rmat_json(const RMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json vector_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json matrix_json(const CMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "instance document must be an object");
  const json& fmt = field(doc, "", "format");
  if (!fmt.is_string()) throw ParseError("/format", "expected a string");
  const std::string tag = fmt.get<std::string>();

  Instance inst;
  if (tag == "generic") {
    inst.format = InstanceFormat::generic;
    inst.n = read_size(field(doc, "", "n"), "/n");
    inst.C = read_tensor(field(doc, "", "C"), inst.n, "/C");
    inst.D = read_tensor(field(doc, "", "D"), inst.n, "/D");
  } else if (tag == "almost_abelian") {
    inst.format = InstanceFormat::almost_abelian;
    AlmostAbelianParams p;
    p.n = read_size(field(doc, "", "n"), "/n");
    p.lambda = read_real(field(doc, "", "lambda"), "/lambda");
    p.v = read_cvec(field(doc, "", "v"), p.n - 1, "/v");
    p.A = read_cmat(field(doc, "", "A"), p.n - 1, p.n - 1, "/A");
    inst.n = p.n;
    inst.aa = std::move(p);
  } else if (tag == "codim2") {
    inst.format = InstanceFormat::codim2;
    Codim2Params p;
    p.n = read_size(field(doc, "", "n"), "/n");
    p.lambda = read_real(field(doc, "", "lambda"), "/lambda");
    p.v = read_cvec(field(doc, "", "v"), p.n - 1, "/v");
    p.X = read_cmat(field(doc, "", "X"), p.n - 1, p.n - 1, "/X");
    p.Y = read_cmat(field(doc, "", "Y"), p.n - 1, p.n - 1, "/Y");
    p.Z = read_cmat(field(doc, "", "Z"), p.n - 1, p.n - 1, "/Z");
    inst.n = p.n;
    inst.codim2 = std::move(p);
  } else if (tag == "real") {
    inst.format = InstanceFormat::real;
    const std::size_t dim = read_size(field(doc, "", "dim"), "/dim");
    if (dim % 2 != 0) throw ParseError("/dim", "real dimension must be even");
    RealLieData data(dim);
    const json& f = field(doc, "", "f");
    expect_array(f, dim, "/f");
    for (std::size_t c = 0; c < dim; ++c) {
      const std::string pc = at("/f", c);
      expect_array(f[c], dim, pc);
      for (std::size_t a = 0; a < dim; ++a) {
        const std::string pa = at(pc, a);
        expect_array(f[c][a], dim, pa);
        for (std::size_t b = 0; b < dim; ++b) data.bracket_coeff(c, a, b) = read_real(f[c][a][b], at(pa, b));
      }
    }
    data.J = read_rmat(field(doc, "", "J"), dim, dim, "/J");
    if (doc.contains("G")) data.G = read_rmat(doc.at("G"), dim, dim, "/G");
    inst.n = dim / 2;
    inst.real = std::move(data);
  } else {
    throw ParseError("/format", "unknown format '" + tag + "'");
  }
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "invalid JSON at byte " << e.byte;
    throw ParseError("", os.str());
  }
  return parse_instance(doc);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

HermitianLieAlgebra build_instance(const Instance& inst, double tol) {
  switch (inst.format) {
    case InstanceFormat::generic: return HermitianLieAlgebra(inst.C, inst.D, tol);
    case InstanceFormat::almost_abelian: return build_almost_abelian(*inst.aa, tol);
    case InstanceFormat::codim2: return build_codim2(*inst.codim2, tol);
    case InstanceFormat::real: return from_real(*inst.real, tol);
  }
  throw UsageError("unknown instance format");
}

json to_json(const Instance& inst) {
  json out;
  out["format"] = to_string(inst.format);
  switch (inst.format) {
    case InstanceFormat::generic:
      out["n"] = inst.n;
      out["C"] = tensor_json(inst.C);
      out["D"] = tensor_json(inst.D);
      break;
    case InstanceFormat::almost_abelian:
      out["n"] = inst.aa->n;
      out["lambda"] = inst.aa->lambda;
      out["v"] = vector_json(inst.aa->v);
      out["A"] = matrix_json(inst.aa->A);
      break;
    case InstanceFormat::codim2:
      out["n"] = inst.codim2->n;
      out["lambda"] = inst.codim2->lambda;
      out["v"] = vector_json(inst.codim2->v);
      out["X"] = matrix_json(inst.codim2->X);
      out["Y"] = matrix_json(inst.codim2->Y);
      out["Z"] = matrix_json(inst.codim2->Z);
      break;
    case InstanceFormat::real: {
      const RealLieData& d = *inst.real;
      out["dim"] = d.dim;
      json f = json::array();
      for (std::size_t c = 0; c < d.dim; ++c) {
        json fc = json::array();
        for (std::size_t a = 0; a < d.dim; ++a) {
          json fa = json::array();
          for (std::size_t b = 0; b < d.dim; ++b) fa.push_back(d.bracket_coeff(c, a, b));
          fc.push_back(std::move(fa));
        }
        f.push_back(std::move(fc));
      }
      out["f"] = std::move(f);
      out["J"] = rmat_json(d.J);
      out["G"] = rmat_json(d.G);
      break;
    }
  }
  return out;
}

json generic_json(const HermitianLieAlgebra& alg) {
  json out;
  out["format"] = "generic";
  out["n"] = alg.n();
  out["C"] = tensor_json(alg.C());
  out["D"] = tensor_json(alg.D());
  return out;
}

Instance make_instance(const AlmostAbelianParams& p) {
  Instance inst;
  inst.format = InstanceFormat::almost_abelian;
  inst.n = p.n;
  inst.aa = p;
  return inst;
}

Instance make_instance(const Codim2Params& p) {
  Instance inst;
  inst.format = InstanceFormat::codim2;
  inst.n = p.n;
  inst.codim2 = p;
  return inst;
}

}  // namespace curvlab
