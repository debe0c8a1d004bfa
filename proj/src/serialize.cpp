#include "algpaths/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace algpaths {

namespace {

Json complex_pair(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

Scalar complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(ErrorKind::InvalidArgument, "complex entries are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

std::string format_scalar(const Scalar& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = z.real() == 0.0 ? "" : format_double(z.real());
  if (z.imag() >= 0.0 && !out.empty()) out += "+";
  return out + format_double(z.imag()) + "i";
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

Json to_json(const Matrix& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) data.push_back(complex_pair(a(i, j)));
  return Json{{"dim", a.rows()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto m = j.at("dim").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (m <= 0 || data.size() != static_cast<std::size_t>(m * m))
    throw Error(ErrorKind::InvalidArgument, "matrix data does not match its dim");
  Matrix a(m, m);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) a(r, c) = complex_from(data[k++]);
  return a;
}

Json to_json(const RootSystem& roots) {
  Json out = Json::array();
  for (const auto& r : roots.roots()) out.push_back(complex_pair(r));
  return out;
}

RootSystem roots_from_json(const Json& j) {
  std::vector<Scalar> roots;
  for (const auto& r : j) roots.push_back(complex_from(r));
  return validate_roots(std::move(roots));
}

Json to_json(const ComponentSignature& sig) {
  return Json{{"ranks", sig.ranks}, {"dim", sig.dim}};
}

Json to_json(const AlgebraicElement& el) {
  return Json{{"roots", to_json(el.roots())},
              {"matrix", to_json(el.matrix())},
              {"residual", el.residual()},
              {"self_adjoint", el.self_adjoint()}};
}

AlgebraicElement element_from_json(const Json& j, const ToleranceConfig& cfg) {
  return certify(matrix_from_json(j.at("matrix")), roots_from_json(j.at("roots")), cfg);
}

Json to_json(const PartitionOfUnity& part, const PartitionResiduals& r) {
  Json members = Json::array();
  for (const auto& e : part.members) members.push_back(to_json(e));
  return Json{{"roots", to_json(part.roots)},
              {"self_adjoint", part.self_adjoint},
              {"members", std::move(members)},
              {"residuals",
               {{"idempotency", r.idempotency},
                {"annihilation", r.annihilation},
                {"sum", r.sum},
                {"hermiticity", r.hermiticity},
                {"commutation", r.commutation},
                {"reconstruction", r.reconstruction}}}};
}

Json to_json(const ToleranceConfig& cfg) {
  return Json{{"residual_tol", cfg.residual_tol},
              {"rank_rel_tol", cfg.rank_rel_tol},
              {"invertibility_margin", cfg.invertibility_margin}};
}

ToleranceConfig tolerance_from_json(const Json& j, ToleranceConfig base) {
  if (j.contains("residual_tol")) base.residual_tol = j["residual_tol"].get<double>();
  if (j.contains("rank_rel_tol")) base.rank_rel_tol = j["rank_rel_tol"].get<double>();
  if (j.contains("invertibility_margin"))
    base.invertibility_margin = j["invertibility_margin"].get<double>();
  base.validate();
  return base;
}

Json to_json(const Certificate& c) {
  return Json{{"passed", c.passed},
              {"worst", c.worst},
              {"where", c.where},
              {"endpoint_error", c.endpoint_error},
              {"membership", c.membership},
              {"hermiticity", c.hermiticity}};
}

namespace {

Json path_json(const ExpSimilarityPath& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back(to_json(g));
  return Json{{"kind", "exp_similarity"},
              {"self_adjoint_mode", p.self_adjoint_mode},
              {"base", to_json(p.base)},
              {"target", to_json(p.target)},
              {"generators", std::move(gens)}};
}

Json path_json(const PolygonalPath& p) {
  Json pts = Json::array();
  for (const auto& b : p.breakpoints) pts.push_back(to_json(b.matrix()));
  return Json{{"kind", "polygonal"},
              {"roots", to_json(p.breakpoints.front().roots())},
              {"breakpoints", std::move(pts)},
              {"segment_certificates", p.segment_certificates}};
}

Json path_json(const PolynomialPath& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.x.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"kind", "polynomial"},
              {"roots", to_json(p.roots)},
              {"degree", p.x.degree()},
              {"coefficients", std::move(coeffs)},
              {"certificate", p.certificate}};
}

}  // namespace

Json to_json(const Path& path) {
  return std::visit([](const auto& p) { return path_json(p); }, path);
}

Path path_from_json(const Json& j, const ToleranceConfig& cfg) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exp_similarity") {
    std::vector<Matrix> gens;
    for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
    return ExpSimilarityPath{element_from_json(j.at("base"), cfg), matrix_from_json(j.at("target")),
                             std::move(gens), j.at("self_adjoint_mode").get<bool>()};
  }
  if (kind == "polygonal") {
    const RootSystem roots = roots_from_json(j.at("roots"));
    PolygonalPath p;
    for (const auto& b : j.at("breakpoints")) p.breakpoints.push_back(certify(matrix_from_json(b), roots, cfg));
    if (p.breakpoints.empty()) throw Error(ErrorKind::InvalidArgument, "polygonal path without breakpoints");
    p.segment_certificates = j.value("segment_certificates", std::vector<double>{});
    return p;
  }
  if (kind == "polynomial") {
    std::vector<Matrix> coeffs;
    for (const auto& c : j.at("coefficients")) coeffs.push_back(matrix_from_json(c));
    if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial path without coefficients");
    return PolynomialPath{MatPoly(std::move(coeffs)), roots_from_json(j.at("roots")),
                          j.value("certificate", 0.0)};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown path kind '" + kind + "'");
}

const RootSystem& path_roots(const Path& path) {
  struct Visitor {
    const RootSystem& operator()(const ExpSimilarityPath& p) const { return p.base.roots(); }
    const RootSystem& operator()(const PolygonalPath& p) const { return p.breakpoints.front().roots(); }
    const RootSystem& operator()(const PolynomialPath& p) const { return p.roots; }
  };
  return std::visit(Visitor{}, path);
}

Json to_json(const LineWitness& w) {
  return Json{{"base", to_json(w.base)},
              {"direction", to_json(w.direction)},
              {"certificate", w.certificate},
              {"candidate", {{"i", w.i}, {"j", w.j}, {"k", w.k}, {"l", w.l}}}};
}

Json to_json(const DistanceScanReport& r) {
  return Json{{"sig1", to_json(r.sig1)},
              {"sig2", to_json(r.sig2)},
              {"best_distance", r.best_distance},
              {"witness", Json::array({to_json(r.witness.first), to_json(r.witness.second)})},
              {"restarts", r.restarts},
              {"seed", r.seed},
              {"conjecture_bound", r.conjecture_bound},
              {"best_restart", r.best_restart}};
}

Json to_json(const MinDegreeResult& r) {
  Json out{{"found", r.path.has_value()},
           {"degree", r.degree},
           {"best_residual_per_degree", r.best_residual_per_degree},
           {"restarts_used", r.restarts_used}};
  if (r.path) out["path"] = to_json(Path(*r.path));
  return out;
}

std::string distance_csv_row(const DistanceScanReport& r, const RootSystem& roots) {
  std::ostringstream os;
  os << quoted(r.sig1.to_string()) << ',' << quoted(r.sig2.to_string()) << ','
     << quoted(format_roots(roots)) << ',' << r.sig1.dim << ',' << r.seed << ',' << r.restarts << ','
     << format_double(r.best_distance) << ',' << format_double(r.conjecture_bound);
  return os.str();
}

std::vector<Scalar> parse_roots(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string tok;
  auto number = [&](const std::string& s, double sign_only) -> double {
    if (s.empty() || s == "+") return sign_only;
    if (s == "-") return -sign_only;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  };
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) throw Error(ErrorKind::InvalidArgument, "empty root in '" + text + "'");
    try {
      if (tok.back() != 'i') {
        out.emplace_back(number(tok, 1.0), 0.0);
        continue;
      }
      tok.pop_back();
      // split before the last sign that is not an exponent sign
      std::size_t split = std::string::npos;
      for (std::size_t k = tok.size(); k-- > 1;)
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
          split = k;
          break;
        }
      if (split == std::string::npos) out.emplace_back(0.0, number(tok, 1.0));
      else out.emplace_back(number(tok.substr(0, split), 0.0), number(tok.substr(split), 1.0));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "cannot parse root '" + tok + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "no roots given");
  return out;
}

std::string format_roots(const RootSystem& roots) {
  std::string out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) out += ',';
    out += format_scalar(roots[i]);
  }
  return out;
}

}  // namespace algpaths
