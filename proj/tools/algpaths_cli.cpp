#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "algpaths/experiment.hpp"

namespace {

std::vector<int> parse_criteria(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using algpaths::ExperimentConfig;

  CLI::App app{"algpaths: paths, components and distances of algebraic matrices"};
  app.footer(
      "Commands:\n"
      "  decompose  spectral idempotents of --input or a sample from --sig/--seed\n"
      "  connect    path between two elements (--method)\n"
      "  verify     re-certify a path or connect report given by --input\n"
      "  line       complex line through a non-central element\n"
      "  distance   random-restart distance probe between --sig and --sig2\n"
      "  mindeg     lowest-degree polynomial path search\n"
      "  sample     --budget random elements of signature --sig\n"
      "  suite      acceptance battery, exit 0 iff every criterion passes\n\n"
      "Exit codes: 0 success, 2 certification failure, 3 precondition error.\n"
      "ALGPATHS_THREADS sets the worker count of distance scans.\n\n" +
      algpaths::csv_columns_help());

  std::string command, config_path, tol_text, criteria_text;
  ExperimentConfig flags;
  std::uint64_t seed = 0;
  double tol = 0.0;

  app.add_option("command", command, "decompose|connect|verify|line|distance|mindeg|sample|suite")->required();
  app.add_option("--roots", flags.roots, "comma separated roots, e.g. 0,1 or 1,i,-1,2+3i");
  app.add_option("--dim", flags.dim, "matrix dimension (checked against --sig)");
  app.add_option("--sig", flags.sig, "rank signature, e.g. 1,2");
  app.add_option("--sig2", flags.sig2, "second signature for distance");
  app.add_option("--method", flags.method, "exp-local|exp-global|polygonal|poly|selfadjoint");
  app.add_option("--seed", seed, "seed (required by sampling and search commands)");
  app.add_option("--budget", flags.budget, "restarts (distance, mindeg, poly) or sample count");
  app.add_option("--max-degree", flags.max_degree, "largest degree tried by mindeg and poly");
  app.add_flag("--self-adjoint", flags.self_adjoint, "sample and search inside the self-adjoint elements");
  app.add_option("--tol", tol, "residual tolerance override");
  app.add_option("--input", flags.input, "JSON input: {\"matrix\"}, {\"a\",\"b\"} or a path");
  app.add_option("--out", flags.out, "report file (stdout when omitted)");
  app.add_option("--format", flags.format, "json|csv");
  app.add_option("--config", config_path, "JSON config file; flags override it");
  app.add_option("--criteria", criteria_text, "suite subset, e.g. 1,7,10");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw algpaths::Error(algpaths::ErrorKind::InvalidArgument, "cannot open config '" + config_path + "'");
      cfg = algpaths::config_from_json(algpaths::Json::parse(in));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  cfg.command = command;
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--roots")) cfg.roots = flags.roots;
  if (given("--dim")) cfg.dim = flags.dim;
  if (given("--sig")) cfg.sig = flags.sig;
  if (given("--sig2")) cfg.sig2 = flags.sig2;
  if (given("--method")) cfg.method = flags.method;
  if (given("--seed")) cfg.seed = seed;
  if (given("--budget")) cfg.budget = flags.budget;
  if (given("--max-degree")) cfg.max_degree = flags.max_degree;
  if (given("--self-adjoint")) cfg.self_adjoint = true;
  if (given("--tol")) cfg.tol.residual_tol = tol;
  if (given("--input")) cfg.input = flags.input;
  if (given("--out")) cfg.out = flags.out;
  if (given("--format")) cfg.format = flags.format;
  if (given("--criteria")) {
    try {
      cfg.criteria = parse_criteria(criteria_text);
    } catch (const std::exception&) {
      std::cerr << "error: --criteria expects comma separated integers\n";
      return 3;
    }
  }

  const algpaths::RunOutput out = algpaths::run(cfg);
  if (cfg.out.empty()) {
    std::cout << out.report;
    std::cerr << out.diagnostics;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    file << out.report;
    if (!file) {
      std::cerr << "error: cannot write '" << cfg.out << "'\n";
      return 3;
    }
    std::cout << out.diagnostics;
  }
  return out.exit_code;
}
