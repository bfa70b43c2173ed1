// curvlab: validate, report on, and fuzz Hermitian Lie algebra instances.
//
// Exit codes: 0 success, 1 validation or property failure, 2 parse or usage error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvlab/errors.hpp"
#include "curvlab/families.hpp"
#include "curvlab/fuzz.hpp"
#include "curvlab/instance_io.hpp"
#include "curvlab/report.hpp"

namespace {

using namespace curvlab;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

double env_tolerance(const std::string& text) {
  std::size_t used = 0;
  double t = 0.0;
  try {
    t = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !(t > 0.0) || !std::isfinite(t))
    throw UsageError("CURVLAB_TOL must be a positive number, got '" + text + "'");
  return t;
}

int validate(const std::string& path, double tol, bool as_json) {
  const Instance inst = load_instance(path);
  json out;
  out["tol"] = tol;
  std::optional<Codim2Residual> cons;
  if (inst.codim2) {
    cons = codim2_residual(*inst.codim2);
    out["codim2_constraints"] = {{"first", cons->first}, {"second", cons->second}};
  }
  int code = kOk;
  try {
    const HermitianLieAlgebra alg = build_instance(inst, tol);
    const JacobiResidual r = alg.jacobi();
    out["valid"] = true;
    out["jacobi"] = {{"ccc", r.ccc}, {"ccd", r.ccd}, {"cdd", r.cdd}};
  } catch (const JacobiError& e) {
    const auto r = e.residuals();
    out["valid"] = false;
    out["error"] = e.what();
    out["jacobi"] = {{"ccc", r[0]}, {"ccd", r[1]}, {"cdd", r[2]}};
    code = kFail;
  } catch (const StructureError& e) {
    out["valid"] = false;
    out["error"] = e.what();
    if (e.has_index()) {
      const auto ix = e.index();
      out["index"] = {ix[0] + 1, ix[1] + 1, ix[2] + 1};
    }
    if (inst.format == InstanceFormat::generic) {
      const JacobiResidual r = jacobi_residual(inst.C, inst.D);
      out["jacobi"] = {{"ccc", r.ccc}, {"ccd", r.ccd}, {"cdd", r.cdd}};
    }
    code = kFail;
  } catch (const ParseError&) {
    throw;
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    out["valid"] = false;
    out["error"] = e.what();
    code = kFail;
  }

  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (code == kOk ? "valid" : "INVALID") << "\n";
    if (out.contains("jacobi"))
      std::cout << "jacobi       " << fmt_double(out["jacobi"]["ccc"].get<double>()) << " "
                << fmt_double(out["jacobi"]["ccd"].get<double>()) << " "
                << fmt_double(out["jacobi"]["cdd"].get<double>()) << "\n";
    if (cons) std::cout << "constraints  " << fmt_double(cons->first) << " " << fmt_double(cons->second) << "\n";
    std::cout << "tolerance    " << fmt_double(tol) << "\n";
    if (code != kOk) std::cerr << "error: " << out["error"].get<std::string>() << "\n";
  }
  return code;
}

int report(const std::string& path, const std::string& connection, double tol, bool as_json) {
  const ConnectionChoice conn = parse_connection(connection);
  const Instance inst = load_instance(path);
  const ClassificationReport r = make_report(inst, conn, tol);
  if (as_json)
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << to_text(r);
  return kOk;
}

int example(std::size_t n, const std::string& connection, double tol, bool as_json) {
  if (n < 2) throw UsageError("example needs n >= 2");
  const ConnectionChoice conn = parse_connection(connection);
  const ClassificationReport r = make_report(make_instance(example_params(n)), conn, tol);
  if (as_json)
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << to_text(r);

  bool ok = !r.predicates.is_kahler && !r.unimodularity.unimodular;
  if (r.lc) ok = ok && r.lc->constant && std::abs(r.lc->c + 2.0) <= r.lc->threshold;
  if (r.chern) ok = ok && !r.chern->constant;
  if (!ok) std::cerr << "error: example does not show constant H^r = -2 with non-Kahler, non-unimodular metric\n";
  return ok ? kOk : kFail;
}

int fuzz(const FuzzOptions& opts, bool as_json) {
  const FuzzSummary s = run_fuzz(opts);
  if (as_json)
    std::cout << to_json(s).dump(2) << "\n";
  else
    std::cout << to_text(s);
  return s.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of left-invariant Hermitian metrics on Lie algebras"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  bool as_json = false;
  std::string connection = "both";
  std::string path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Relative tolerance (default 1e-9, or CURVLAB_TOL)")->check(CLI::PositiveNumber);
    sub->add_flag("--json", as_json, "Machine-readable output");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  validate_cmd->add_option("path", path, "Instance file")->required();
  add_common(validate_cmd);

  auto* report_cmd = app.add_subcommand("report", "Classification and curvature report");
  report_cmd->alias("classify");
  report_cmd->add_option("path", path, "Instance file")->required();
  report_cmd->add_option("--connection", connection, "chern, lc or both");
  add_common(report_cmd);

  FuzzOptions fo;
  std::string family = "aa";
  std::string scheme;
  std::optional<std::size_t> dim;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded property campaign over a family");
  fuzz_cmd->add_option("--family", family, "aa or codim2");
  fuzz_cmd->add_option("--scheme", scheme, "A or B (codim2)");
  fuzz_cmd->add_flag("--unimodular", fo.unimodular, "Sample unimodular instances only");
  fuzz_cmd->add_option("--count", fo.count, "Number of samples");
  fuzz_cmd->add_option("--seed", fo.seed, "64-bit seed");
  fuzz_cmd->add_option("--dim", dim, "Complex dimension n");
  fuzz_cmd->add_flag("--inject-example", fo.inject_example, "Replace sample 0 by lambda = 1, v = 0, A = I");
  add_common(fuzz_cmd);

  std::size_t n = 2;
  auto* example_cmd = app.add_subcommand("example", "Almost abelian example lambda = 1, v = 0, A = I");
  example_cmd->add_option("n,--dim", n, "Complex dimension")->capture_default_str();
  example_cmd->add_option("--connection", connection, "chern, lc or both");
  add_common(example_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const bool tol_given = app.get_subcommands().front()->count("--tol") > 0;
    if (const char* env = std::getenv("CURVLAB_TOL"); env && !tol_given) tol = env_tolerance(env);
    if (*validate_cmd) return validate(path, tol, as_json);
    if (*report_cmd) return report(path, connection, tol, as_json);
    if (*example_cmd) return example(n, connection, tol, as_json);
    if (*fuzz_cmd) {
      fo.family = parse_family(family);
      if (!scheme.empty()) fo.scheme = parse_scheme(scheme);
      fo.dim = dim;
      fo.tol = tol;
      return fuzz(fo, as_json);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << " error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
