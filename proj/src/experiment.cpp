#include "algpaths/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "algpaths/acceptance.hpp"

namespace algpaths {

namespace {

const std::vector<std::string> kCommands{"decompose", "connect", "verify", "line", "distance", "mindeg", "sample", "suite"};
const std::vector<std::string> kMethods{"exp-local", "exp-global", "polygonal", "poly", "selfadjoint"};

struct CsvTable {
  std::string header;
  std::vector<std::string> rows;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void precondition(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, message);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  precondition(in.good(), "cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "input file '" + path + "' is not valid JSON: " + e.what());
  }
}

RootSystem config_roots(const ExperimentConfig& cfg) { return validate_roots(parse_roots(cfg.roots)); }

ComponentSignature config_signature(const std::string& text, const ExperimentConfig& cfg, const char* flag) {
  precondition(!text.empty(), std::string("--") + flag + " is required");
  ComponentSignature sig = ComponentSignature::parse(text);
  precondition(cfg.dim == 0 || cfg.dim == sig.dim, std::string("--dim disagrees with --") + flag);
  return sig;
}

std::uint64_t config_seed(const ExperimentConfig& cfg) {
  precondition(cfg.seed.has_value(), "--seed is required for " + cfg.command);
  return *cfg.seed;
}

RootSystem input_roots(const Json& j, const ExperimentConfig& cfg) {
  return j.contains("roots") ? roots_from_json(j["roots"]) : config_roots(cfg);
}

AlgebraicElement single_element(const ExperimentConfig& cfg) {
  if (!cfg.input.empty()) {
    const Json j = read_json_file(cfg.input);
    precondition(j.contains("matrix"), "input needs a \"matrix\" field");
    return certify(matrix_from_json(j["matrix"]), input_roots(j, cfg), cfg.tol);
  }
  const RootSystem roots = config_roots(cfg);
  Rng rng(config_seed(cfg));
  return random_element(config_signature(cfg.sig, cfg, "sig"), roots, rng, cfg.self_adjoint, 20.0, cfg.tol);
}

std::pair<AlgebraicElement, AlgebraicElement> element_pair(const ExperimentConfig& cfg, bool self_adjoint) {
  if (!cfg.input.empty()) {
    const Json j = read_json_file(cfg.input);
    precondition(j.contains("a") && j.contains("b"), "input needs \"a\" and \"b\" matrices");
    const RootSystem roots = input_roots(j, cfg);
    return {certify(matrix_from_json(j["a"]), roots, cfg.tol), certify(matrix_from_json(j["b"]), roots, cfg.tol)};
  }
  const RootSystem roots = config_roots(cfg);
  const auto sig = config_signature(cfg.sig, cfg, "sig");
  Rng rng(config_seed(cfg));
  AlgebraicElement a = random_element(sig, roots, rng, self_adjoint, 20.0, cfg.tol);
  AlgebraicElement b = random_element(sig, roots, rng, self_adjoint, 20.0, cfg.tol);
  return {std::move(a), std::move(b)};
}

std::string certificate_row(const std::string& kind, const Certificate& c) {
  return kind + "," + (c.passed ? "true" : "false") + "," + num(c.worst) + "," + csv_quote(c.where) + "," +
         num(c.endpoint_error) + "," + num(c.membership) + "," + num(c.hermiticity);
}

const char* kCertificateHeader = "kind,passed,worst,where,endpoint_error,membership,hermiticity";

std::string path_kind(const Path& p) { return to_json(p)["kind"].get<std::string>(); }

struct Outcome {
  Json result;
  CsvTable csv;
  bool certified = true;
  std::string diagnostics;
};

Outcome cmd_decompose(const ExperimentConfig& cfg) {
  const AlgebraicElement el = single_element(cfg);
  const PartitionOfUnity part = spectral_resolution(el, cfg.tol);
  const ComponentSignature sig = signature(part, cfg.tol);
  Outcome o;
  o.result = Json{{"element", to_json(el)},
                  {"partition", to_json(part, partition_residuals(part, &el.matrix()))},
                  {"signature", to_json(sig)}};
  o.csv.header = "root,rank,norm";
  for (std::size_t i = 0; i < part.members.size(); ++i)
    o.csv.rows.push_back(csv_quote(format_roots(validate_roots({part.roots[i]}))) + "," +
                         std::to_string(sig.ranks[i]) + "," + num(operator_norm(part.members[i])));
  return o;
}

Outcome cmd_connect(const ExperimentConfig& cfg) {
  const bool sa = cfg.method == "selfadjoint";
  auto [a, b] = element_pair(cfg, sa || cfg.self_adjoint);
  Outcome o;
  o.csv.header = kCertificateHeader;
  std::optional<Path> path;
  Json extra;
  if (cfg.method == "exp-local") path = connect_exp_local(a, b, cfg.tol);
  else if (cfg.method == "exp-global") path = connect_exp_global(a, b, cfg.tol);
  else if (cfg.method == "selfadjoint") path = connect_selfadjoint(a, b, cfg.tol);
  else if (cfg.method == "polygonal") path = connect_polygonal(a, b, cfg.tol);
  else {
    MinDegreeOptions opt;
    if (cfg.budget > 0) opt.restarts = cfg.budget;
    opt.self_adjoint = cfg.self_adjoint;
    const MinDegreeResult r = min_degree_search(a, b, cfg.max_degree, config_seed(cfg), opt, cfg.tol);
    extra = to_json(r);
    if (!r.path)
      throw Error(ErrorKind::SearchExhausted, "no polynomial path up to degree " + std::to_string(cfg.max_degree),
                  r.best_residual_per_degree.empty() ? 0.0 : r.best_residual_per_degree.back());
    path = *r.path;
  }
  const Certificate c = inspect_path(*path, a.roots(), cfg.tol);
  o.result = Json{{"method", cfg.method}, {"path", to_json(*path)}, {"certificate", to_json(c)}};
  if (!extra.is_null()) o.result["search"] = extra;
  o.csv.rows.push_back(certificate_row(path_kind(*path), c));
  o.certified = c.passed;
  return o;
}

Outcome cmd_verify(const ExperimentConfig& cfg) {
  precondition(!cfg.input.empty(), "verify needs --input");
  Json j = read_json_file(cfg.input);
  // accept a bare path or a connect report
  if (j.contains("result") && j["result"].contains("path")) j = j["result"]["path"];
  const Path path = path_from_json(j, cfg.tol);
  const Certificate c = inspect_path(path, path_roots(path), cfg.tol);
  Outcome o;
  o.result = Json{{"kind", path_kind(path)}, {"certificate", to_json(c)}};
  o.csv.header = kCertificateHeader;
  o.csv.rows.push_back(certificate_row(path_kind(path), c));
  o.certified = c.passed;
  return o;
}

Outcome cmd_line(const ExperimentConfig& cfg) {
  const AlgebraicElement el = single_element(cfg);
  const LineWitness w = line_direction(el, cfg.tol);
  Outcome o;
  Json far = Json::array();
  std::string far_cols;
  for (double lambda : {1e3, 1e6}) {
    const Matrix x = el.matrix() + lambda * w.direction;
    const AlgebraicElement cert = certify_scaled(x, el.roots(), cfg.tol);
    const double norm = operator_norm(x);
    const double relative = cert.residual() / std::pow(1.0 + norm, static_cast<double>(el.roots().size()));
    far.push_back({{"lambda", lambda}, {"residual", cert.residual()}, {"relative_residual", relative}, {"norm", norm}});
    far_cols += "," + num(relative);
  }
  o.result = Json{{"witness", to_json(w)}, {"far_points", far}};
  o.csv.header = "i,j,k,l,certificate,rel_residual_1e3,rel_residual_1e6";
  o.csv.rows.push_back(std::to_string(w.i) + "," + std::to_string(w.j) + "," + std::to_string(w.k) + "," +
                       std::to_string(w.l) + "," + num(w.certificate) + far_cols);
  return o;
}

Outcome cmd_distance(const ExperimentConfig& cfg) {
  const RootSystem roots = config_roots(cfg);
  const auto s1 = config_signature(cfg.sig, cfg, "sig");
  const auto s2 = config_signature(cfg.sig2, cfg, "sig2");
  const DistanceScanReport r =
      distance_scan(s1, s2, roots, cfg.budget > 0 ? cfg.budget : 100, config_seed(cfg), cfg.self_adjoint, {}, cfg.tol);
  Outcome o;
  o.result = to_json(r);
  o.csv.header = kDistanceCsvHeader;
  o.csv.rows.push_back(distance_csv_row(r, roots));
  return o;
}

Outcome cmd_mindeg(const ExperimentConfig& cfg) {
  auto [a, b] = element_pair(cfg, cfg.self_adjoint);
  MinDegreeOptions opt;
  if (cfg.budget > 0) opt.restarts = cfg.budget;
  opt.self_adjoint = cfg.self_adjoint;
  const MinDegreeResult r = min_degree_search(a, b, cfg.max_degree, config_seed(cfg), opt, cfg.tol);
  Outcome o;
  o.result = to_json(r);
  o.csv.header = "degree,best_residual,restarts";
  for (std::size_t d = 0; d < r.best_residual_per_degree.size(); ++d)
    o.csv.rows.push_back(std::to_string(d + 1) + "," + num(r.best_residual_per_degree[d]) + "," +
                         std::to_string(r.restarts_used[d]));
  o.certified = r.path.has_value();
  if (!o.certified) o.diagnostics = "no polynomial path up to degree " + std::to_string(cfg.max_degree) + "\n";
  return o;
}

Outcome cmd_sample(const ExperimentConfig& cfg) {
  const RootSystem roots = config_roots(cfg);
  const auto sig = config_signature(cfg.sig, cfg, "sig");
  Rng rng(config_seed(cfg));
  Outcome o;
  o.result = Json{{"elements", Json::array()}};
  o.csv.header = "index,residual,self_adjoint,norm";
  const int count = cfg.budget > 0 ? cfg.budget : 1;
  for (int k = 0; k < count; ++k) {
    const AlgebraicElement el = random_element(sig, roots, rng, cfg.self_adjoint, 20.0, cfg.tol);
    o.result["elements"].push_back(to_json(el));
    o.csv.rows.push_back(std::to_string(k) + "," + num(el.residual()) + "," + (el.self_adjoint() ? "true" : "false") +
                         "," + num(operator_norm(el.matrix())));
  }
  return o;
}

Outcome cmd_suite(const ExperimentConfig& cfg) {
  const auto results = run_acceptance(cfg.seed.value_or(kDefaultSuiteSeed), cfg.tol, cfg.criteria);
  Outcome o;
  o.result = Json{{"criteria", Json::array()}};
  o.csv.header = "id,name,passed";
  for (const auto& r : results) {
    o.result["criteria"].push_back(to_json(r));
    o.csv.rows.push_back(std::to_string(r.id) + "," + csv_quote(r.name) + "," + (r.passed ? "true" : "false"));
    o.certified = o.certified && r.passed;
  }
  o.result["all_passed"] = o.certified;
  o.diagnostics = format_table(results);
  return o;
}

}  // namespace

Json to_json(const ExperimentConfig& cfg) {
  return Json{{"command", cfg.command},
              {"roots", cfg.roots},
              {"dim", cfg.dim},
              {"sig", cfg.sig},
              {"sig2", cfg.sig2},
              {"method", cfg.method},
              {"seed", cfg.seed ? Json(*cfg.seed) : Json(nullptr)},
              {"budget", cfg.budget},
              {"max_degree", cfg.max_degree},
              {"self_adjoint", cfg.self_adjoint},
              {"tolerance", to_json(cfg.tol)},
              {"input", cfg.input},
              {"out", cfg.out},
              {"format", cfg.format},
              {"criteria", cfg.criteria}};
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
  precondition(j.is_object(), "config must be a JSON object");
  try {
    c.command = j.value("command", c.command);
    c.roots = j.value("roots", c.roots);
    c.dim = j.value("dim", c.dim);
    c.sig = j.value("sig", c.sig);
    c.sig2 = j.value("sig2", c.sig2);
    c.method = j.value("method", c.method);
    if (j.contains("seed")) {
      if (j["seed"].is_null()) c.seed.reset();
      else c.seed = j["seed"].get<std::uint64_t>();
    }
    c.budget = j.value("budget", c.budget);
    c.max_degree = j.value("max_degree", c.max_degree);
    c.self_adjoint = j.value("self_adjoint", c.self_adjoint);
    if (j.contains("tolerance")) c.tol = tolerance_from_json(j["tolerance"], c.tol);
    c.input = j.value("input", c.input);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    c.criteria = j.value("criteria", c.criteria);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad config field: ") + e.what());
  }
  return c;
}

RunOutput run(const ExperimentConfig& cfg) {
  RunOutput out;
  Json report{{"tool", "algpaths"}, {"version", kToolVersion}, {"config", to_json(cfg)}};
  Outcome o;
  try {
    precondition(std::find(kCommands.begin(), kCommands.end(), cfg.command) != kCommands.end(),
                 "unknown command '" + cfg.command + "'");
    precondition(std::find(kMethods.begin(), kMethods.end(), cfg.method) != kMethods.end(),
                 "unknown method '" + cfg.method + "'");
    precondition(cfg.format == "json" || cfg.format == "csv", "format must be json or csv");
    precondition(cfg.max_degree >= 1, "max_degree must be at least 1");
    precondition(cfg.budget >= 0, "budget must be non-negative");
    cfg.tol.validate();

    if (cfg.command == "decompose") o = cmd_decompose(cfg);
    else if (cfg.command == "connect") o = cmd_connect(cfg);
    else if (cfg.command == "verify") o = cmd_verify(cfg);
    else if (cfg.command == "line") o = cmd_line(cfg);
    else if (cfg.command == "distance") o = cmd_distance(cfg);
    else if (cfg.command == "mindeg") o = cmd_mindeg(cfg);
    else if (cfg.command == "sample") o = cmd_sample(cfg);
    else o = cmd_suite(cfg);

    report["status"] = o.certified ? "ok" : "certification_failed";
    report["result"] = o.result;
    out.exit_code = o.certified ? 0 : 2;
    out.diagnostics = o.diagnostics;
  } catch (const Error& e) {
    const bool cert = is_certification_failure(e.kind());
    report["status"] = cert ? "certification_failed" : "precondition_error";
    report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"value", e.value()}};
    out.exit_code = cert ? 2 : 3;
    out.diagnostics = std::string("error: ") + e.what() + "\n";
    o.csv = {};
  }

  if (cfg.format == "csv") {
    if (o.csv.header.empty()) {
      out.report = "status,error\n" + report["status"].get<std::string>() + "," +
                   csv_quote(report["error"]["message"].get<std::string>()) + "\n";
    } else {
      out.report = o.csv.header + "\n";
      for (const auto& row : o.csv.rows) out.report += row + "\n";
    }
  } else {
    out.report = report.dump(2) + "\n";
  }
  return out;
}

std::string csv_columns_help() {
  return "CSV columns (--format csv):\n"
         "  decompose  root,rank,norm\n"
         "  connect    " + std::string(kCertificateHeader) + "\n"
         "  verify     " + std::string(kCertificateHeader) + "\n"
         "  line       i,j,k,l,certificate,rel_residual_1e3,rel_residual_1e6\n"
         "  distance   " + std::string(kDistanceCsvHeader) + "\n"
         "  mindeg     degree,best_residual,restarts\n"
         "  sample     index,residual,self_adjoint,norm\n"
         "  suite      id,name,passed\n";
}

}  // namespace algpaths
