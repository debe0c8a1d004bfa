#include "algpaths/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace algpaths {

namespace {

constexpr double kTol = 1e-9;
constexpr double kGeneratorHermTol = 1e-10;
constexpr double kPolyTol = 1e-8;
constexpr double kNegativeFloor = 1e-3;
constexpr double kScanSlack = 1e-6;
constexpr double kCompositionTol = 1e-10;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

const Scalar kI(0.0, 1.0);

struct RootCase {
  const char* label;
  std::vector<Scalar> roots;
};

const std::vector<RootCase>& root_cases() {
  static const std::vector<RootCase> cases{
      {"0,1", {0.0, 1.0}},
      {"1,-1", {1.0, -1.0}},
      {"0,1,-1", {0.0, 1.0, -1.0}},
      {"1,i,-1", {1.0, kI, -1.0}},
      {"0,1,2", {0.0, 1.0, 2.0}},
      {"0,1,-1,i", {0.0, 1.0, -1.0, kI}},
      {"-1,0,1,2", {-1.0, 0.0, 1.0, 2.0}},
  };
  return cases;
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// ranks summing to m with at least `nonzero` positive entries
ComponentSignature random_signature(std::size_t n, Eigen::Index m, int nonzero, Rng& rng) {
  std::vector<int> ranks(n, 0);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int k = 0; k < nonzero; ++k) ranks[idx[static_cast<std::size_t>(k)]] = 1;
  for (Eigen::Index left = m - nonzero; left > 0; --left)
    ++ranks[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1))];
  return ComponentSignature::from_ranks(std::move(ranks));
}

Matrix scaled_gaussian(Eigen::Index m, double op_norm, Rng& rng) {
  Matrix z = random_gaussian(m, rng);
  return z * (op_norm / operator_norm(z));
}

struct Tally {
  int trials = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
  bool ok() const { return failures == 0 && trials > 0; }
  std::string describe(const std::string& what) const {
    std::string s = std::to_string(trials - failures) + "/" + std::to_string(trials) + " " + what;
    if (failures) s += "; first failure: " + first_failure;
    return s;
  }
};

// 1. partition invariants
CriterionResult partition_invariants(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{1, "partition-of-unity invariants", false, {}, {}};
  Tally tally;
  double worst_ratio = 0.0;
  int self_adjoint = 0;
  const auto& cases = root_cases();
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const RootCase& rc = cases[static_cast<std::size_t>(k) % cases.size()];
    const RootSystem roots = validate_roots(rc.roots);
    const Eigen::Index m = uniform_int(rng, 1, 8);
    const auto sig = random_signature(roots.size(), m, 1, rng);
    const bool sa = roots.all_real() && k % 2 == 1;
    ++tally.trials;
    try {
      const AlgebraicElement el = random_element(sig, roots, rng, sa, 20.0, cfg);
      const PartitionOfUnity part = spectral_resolution(el, cfg);
      const PartitionResiduals r = partition_residuals(part, &el.matrix());
      const double na = operator_norm(el.matrix());
      const double bound = kTol * (1.0 + na);
      double worst = std::max({r.idempotency, r.annihilation, r.sum, r.commutation, r.reconstruction});
      if (sa) {
        ++self_adjoint;
        worst = std::max(worst, r.hermiticity);
        // ||a|| <= max |root| and ||a|| = max {|root_i| : e_i != 0}
        double occupied = 0.0;
        for (std::size_t i = 0; i < roots.size(); ++i)
          if (sig.ranks[i] > 0) occupied = std::max(occupied, std::abs(roots[i]));
        if (na > roots.max_modulus() + kTol || std::abs(na - occupied) > kTol)
          tally.fail("norm " + sci(na) + " vs occupied max " + sci(occupied) + " (sample " +
                     std::to_string(k) + ")");
      }
      worst_ratio = std::max(worst_ratio, worst / bound);
      if (worst > bound)
        tally.fail("residual " + sci(worst) + " > " + sci(bound) + " (sample " + std::to_string(k) + ")");
    } catch (const Error& e) {
      tally.fail(std::string(e.what()) + " (sample " + std::to_string(k) + ")");
    }
  }
  res.passed = tally.ok();
  res.summary = tally.describe("elements within 1e-9(1+||a||)") + ", worst ratio " + sci(worst_ratio);
  res.data = Json{{"samples", tally.trials},
                  {"self_adjoint_samples", self_adjoint},
                  {"failures", tally.failures},
                  {"worst_ratio", worst_ratio}};
  return res;
}

void check_exp_certificate(const Certificate& c, bool self_adjoint, Tally& tally, const std::string& tag,
                           double& worst_membership, double& worst_endpoint) {
  worst_membership = std::max(worst_membership, c.membership);
  worst_endpoint = std::max(worst_endpoint, c.endpoint_error);
  if (!c.passed) tally.fail(tag + " certificate failed at " + c.where + " (" + sci(c.worst) + ")");
  else if (c.endpoint_error > kTol) tally.fail(tag + " endpoint error " + sci(c.endpoint_error));
  else if (c.membership > kTol) tally.fail(tag + " membership " + sci(c.membership));
  else if (self_adjoint && c.hermiticity > kTol) tally.fail(tag + " hermiticity " + sci(c.hermiticity));
}

// 2. exponential similarity paths
CriterionResult exp_paths(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{2, "exponential similarity paths", false, {}, {}};
  Tally local, global;
  double worst_membership = 0.0, worst_endpoint = 0.0;
  int skipped_far = 0;
  const std::vector<std::size_t> picks{0, 2, 3, 4};
  const auto& cases = root_cases();

  for (int k = 0; local.trials < 100 && k < 1000; ++k) {
    Rng rng(derive_seed(seed, 100000 + static_cast<std::uint64_t>(k)));
    const RootSystem roots = validate_roots(cases[picks[static_cast<std::size_t>(k) % picks.size()]].roots);
    const Eigen::Index m = uniform_int(rng, 2, 8);
    const auto sig = random_signature(roots.size(), m, 2, rng);
    const std::string tag = "local pair " + std::to_string(k);
    try {
      const AlgebraicElement a = random_element(sig, roots, rng, false, 20.0, cfg);
      const Matrix g = mat_exp(scaled_gaussian(m, uniform(rng, 0.005, 0.1), rng));
      const AlgebraicElement b = certify(g * a.matrix() * g.inverse(), roots, cfg);
      const Matrix w = matching_similarity(spectral_resolution(a, cfg), spectral_resolution(b, cfg));
      if (operator_norm((w - Matrix::Identity(m, m)).eval()) > 0.9) {
        ++skipped_far;
        continue;
      }
      ++local.trials;
      const Path p = connect_exp_local(a, b, cfg);
      check_exp_certificate(inspect_path(p, roots, cfg), false, local, tag, worst_membership, worst_endpoint);
    } catch (const Error& e) {
      ++local.trials;
      local.fail(tag + ": " + e.what());
    }
  }

  for (int k = 0; k < 100; ++k) {
    Rng rng(derive_seed(seed, 200000 + static_cast<std::uint64_t>(k)));
    const RootSystem roots = validate_roots(cases[picks[static_cast<std::size_t>(k) % picks.size()]].roots);
    const Eigen::Index m = uniform_int(rng, 2, 8);
    const auto sig = random_signature(roots.size(), m, 2, rng);
    const std::string tag = "global pair " + std::to_string(k);
    ++global.trials;
    try {
      const AlgebraicElement a = random_element(sig, roots, rng, false, 20.0, cfg);
      const AlgebraicElement b = random_element(sig, roots, rng, false, 20.0, cfg);
      const Path p = connect_exp_global(a, b, cfg);
      check_exp_certificate(inspect_path(p, roots, cfg), false, global, tag, worst_membership, worst_endpoint);
    } catch (const Error& e) {
      global.fail(tag + ": " + e.what());
    }
  }
  res.passed = local.ok() && global.ok() && local.trials >= 100;
  res.summary = "local " + local.describe("certified") + "; global " + global.describe("certified") +
                "; worst membership " + sci(worst_membership) + ", worst endpoint " + sci(worst_endpoint);
  res.data = Json{{"local_pairs", local.trials},
                  {"local_failures", local.failures},
                  {"local_skipped_far", skipped_far},
                  {"global_pairs", global.trials},
                  {"global_failures", global.failures},
                  {"worst_membership", worst_membership},
                  {"worst_endpoint_error", worst_endpoint}};
  return res;
}

// 3. two-segment polygonal paths between close idempotents
CriterionResult polygonal_two_segments(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{3, "polygonal paths, two segments", false, {}, {}};
  Tally tally;
  double worst_cert = 0.0, largest_gap = 0.0;
  std::map<std::size_t, int> segment_counts;
  const RootSystem roots = validate_roots({0.0, 1.0});
  for (int k = 0; tally.trials < 100 && k < 2000; ++k) {
    Rng rng(derive_seed(seed, 300000 + static_cast<std::uint64_t>(k)));
    const Eigen::Index m = uniform_int(rng, 2, 6);
    const int r = uniform_int(rng, 1, static_cast<int>(m) - 1);
    const auto sig = ComponentSignature::from_ranks({static_cast<int>(m) - r, r});
    const std::string tag = "pair " + std::to_string(k);
    try {
      const AlgebraicElement e = random_element(sig, roots, rng, false, 20.0, cfg);
      const Matrix g = mat_exp(scaled_gaussian(m, uniform(rng, 0.01, 0.5), rng));
      const AlgebraicElement f = certify(g * e.matrix() * g.inverse(), roots, cfg);
      const double gap = operator_norm((e.matrix() - f.matrix()).eval());
      if (!(gap < 1.0)) continue;
      ++tally.trials;
      largest_gap = std::max(largest_gap, gap);
      const PolygonalPath p = connect_polygonal(e, f, cfg);
      ++segment_counts[p.segments()];
      const Certificate c = inspect_path(p, roots, cfg);
      for (double s : p.segment_certificates) worst_cert = std::max(worst_cert, s);
      if (p.segments() != 2) tally.fail(tag + ": " + std::to_string(p.segments()) + " segments");
      else if (!c.passed) tally.fail(tag + ": certificate failed at " + c.where);
      else if (*std::max_element(p.segment_certificates.begin(), p.segment_certificates.end()) > kTol)
        tally.fail(tag + ": segment coefficient above 1e-9");
    } catch (const Error& e) {
      ++tally.trials;
      tally.fail(tag + ": " + e.what());
    }
  }
  Json counts = Json::object();
  for (const auto& [segs, n] : segment_counts) counts[std::to_string(segs)] = n;
  res.passed = tally.ok() && tally.trials >= 100;
  res.summary = tally.describe("pairs with exactly 2 certified segments") + ", worst segment coefficient " +
                sci(worst_cert) + ", largest ||e-f|| " + sci(largest_gap);
  res.data = Json{{"pairs", tally.trials},
                  {"failures", tally.failures},
                  {"segment_counts", counts},
                  {"worst_segment_coefficient", worst_cert},
                  {"largest_gap", largest_gap}};
  return res;
}

// 4. polynomial paths of degree <= 3
CriterionResult polynomial_degree(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{4, "polynomial paths of degree at most 3", false, {}, {}};
  Tally tally;
  std::map<int, int> histogram;
  double worst_cert = 0.0;
  const RootSystem roots = validate_roots({0.0, 1.0});
  for (int k = 0; k < 20; ++k) {
    Rng rng(derive_seed(seed, 400000 + static_cast<std::uint64_t>(k)));
    const Eigen::Index m = uniform_int(rng, 2, 6);
    const int r = uniform_int(rng, 1, static_cast<int>(m) - 1);
    const auto sig = ComponentSignature::from_ranks({static_cast<int>(m) - r, r});
    const bool sa = k % 2 == 1;  // alternate oblique idempotents and orthogonal projections
    const std::string tag = "pair " + std::to_string(k);
    ++tally.trials;
    try {
      const AlgebraicElement e = random_element(sig, roots, rng, sa, 20.0, cfg);
      const AlgebraicElement f = random_element(sig, roots, rng, sa, 20.0, cfg);
      MinDegreeOptions opt;
      opt.success_tol = kPolyTol;
      const MinDegreeResult out = min_degree_search(e, f, 3, derive_seed(seed, 400500 + k), opt, cfg);
      ++histogram[out.degree];
      if (!out.path) {
        tally.fail(tag + ": no path, best residual " + sci(out.best_residual_per_degree.back()));
        continue;
      }
      worst_cert = std::max(worst_cert, out.path->certificate);
      const Certificate c = inspect_path(Path(*out.path), roots, cfg);
      if (out.path->certificate > kPolyTol) tally.fail(tag + ": certificate " + sci(out.path->certificate));
      else if (!c.passed) tally.fail(tag + ": re-certification failed at " + c.where);
    } catch (const Error& e) {
      tally.fail(tag + ": " + e.what());
    }
  }
  Json hist = Json::object();
  std::string hist_text;
  for (const auto& [d, n] : histogram) {
    const std::string key = d == 0 ? "none" : std::to_string(d);
    hist[key] = n;
    hist_text += (hist_text.empty() ? "" : " ") + key + ":" + std::to_string(n);
  }
  res.passed = tally.ok();
  res.summary = tally.describe("pairs joined at degree <= 3") + ", degree histogram {" + hist_text +
                "}, worst certificate " + sci(worst_cert);
  res.data = Json{{"pairs", tally.trials},
                  {"failures", tally.failures},
                  {"degree_histogram", hist},
                  {"worst_certificate", worst_cert}};
  return res;
}

// 5. self-adjoint unitary-orbit paths
CriterionResult selfadjoint_paths(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{5, "self-adjoint paths", false, {}, {}};
  Tally tally;
  double worst_membership = 0.0, worst_endpoint = 0.0, worst_herm = 0.0, worst_gen = 0.0;
  const std::vector<std::size_t> picks{0, 1, 2, 4, 6};
  const auto& cases = root_cases();
  for (int k = 0; k < 100; ++k) {
    Rng rng(derive_seed(seed, 500000 + static_cast<std::uint64_t>(k)));
    const RootSystem roots = validate_roots(cases[picks[static_cast<std::size_t>(k) % picks.size()]].roots);
    const Eigen::Index m = uniform_int(rng, 2, 8);
    const auto sig = random_signature(roots.size(), m, 2, rng);
    const std::string tag = "pair " + std::to_string(k);
    ++tally.trials;
    try {
      const AlgebraicElement a = random_element(sig, roots, rng, true, 20.0, cfg);
      const AlgebraicElement b = random_element(sig, roots, rng, true, 20.0, cfg);
      const ExpSimilarityPath p = connect_selfadjoint(a, b, cfg);
      double gen = 0.0;
      for (const auto& g : p.generators) gen = std::max(gen, hermitian_defect(g));
      worst_gen = std::max(worst_gen, gen);
      const Certificate c = inspect_path(p, roots, cfg);
      worst_herm = std::max(worst_herm, c.hermiticity);
      check_exp_certificate(c, true, tally, tag, worst_membership, worst_endpoint);
      if (gen > kGeneratorHermTol) tally.fail(tag + ": generator hermiticity " + sci(gen));
    } catch (const Error& e) {
      tally.fail(tag + ": " + e.what());
    }
  }
  res.passed = tally.ok();
  res.summary = tally.describe("pairs certified") + ", worst ||x-x*|| " + sci(worst_herm) +
                ", worst membership " + sci(worst_membership) + ", worst generator defect " + sci(worst_gen);
  res.data = Json{{"pairs", tally.trials},
                  {"failures", tally.failures},
                  {"worst_hermiticity", worst_herm},
                  {"worst_membership", worst_membership},
                  {"worst_endpoint_error", worst_endpoint},
                  {"worst_generator_defect", worst_gen}};
  return res;
}

// 6. no polynomial path inside the self-adjoint rank-one projections of C^2
CriterionResult selfadjoint_negative(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{6, "no self-adjoint polynomial path", false, {}, {}};
  const RootSystem roots = validate_roots({0.0, 1.0});
  MinDegreeOptions opt;
  opt.self_adjoint = true;
  opt.min_motion = 0.1;
  opt.restarts = 32;
  opt.success_tol = kPolyTol;

  Matrix e = Matrix::Zero(2, 2), f = Matrix::Zero(2, 2);
  e(0, 0) = 1.0;
  f(1, 1) = 1.0;
  try {
    const MinDegreeResult out =
        min_degree_search(certify(e, roots, cfg), certify(f, roots, cfg), 6, derive_seed(seed, 600000), opt, cfg);
    const double floor = *std::min_element(out.best_residual_per_degree.begin(), out.best_residual_per_degree.end());
    res.passed = !out.path && out.best_residual_per_degree.size() == 6 && floor >= kNegativeFloor;
    std::string per;
    for (std::size_t d = 0; d < out.best_residual_per_degree.size(); ++d)
      per += (d ? " " : "") + std::to_string(d + 1) + ":" + sci(out.best_residual_per_degree[d]);
    res.summary = std::string(out.path ? "a path was found" : "no path found") + " for degrees 1..6, best residuals {" +
                  per + "}, floor " + sci(floor);

    // extra pairs, logged only: the floor shrinks as the endpoints approach
    Json logged = Json::array();
    for (int k = 0; k < 2; ++k) {
      Rng rng(derive_seed(seed, 600100 + static_cast<std::uint64_t>(k)));
      const auto sig = ComponentSignature::from_ranks({1, 1});
      const AlgebraicElement a = random_element(sig, roots, rng, true, 20.0, cfg);
      const AlgebraicElement b = random_element(sig, roots, rng, true, 20.0, cfg);
      MinDegreeOptions quick = opt;
      quick.restarts = 8;
      quick.min_motion = 0.0;
      const MinDegreeResult r = min_degree_search(a, b, 6, derive_seed(seed, 600200 + k), quick, cfg);
      logged.push_back({{"distance", operator_norm((a.matrix() - b.matrix()).eval())},
                        {"best_residual_per_degree", r.best_residual_per_degree}});
    }
    res.data = Json{{"pair", "diag(1,0) -> diag(0,1)"},
                    {"restarts", opt.restarts},
                    {"best_residual_per_degree", out.best_residual_per_degree},
                    {"floor", floor},
                    {"random_pairs_logged", logged}};
  } catch (const Error& e) {
    res.summary = e.what();
  }
  return res;
}

// 7. isolation exactly at central elements, spectral floor elsewhere
CriterionResult isolation(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{7, "isolated points and spectral floor", false, {}, {}};
  Tally central, sampled;
  double tightest = std::numeric_limits<double>::infinity();
  const auto& cases = root_cases();
  for (const auto& rc : cases) {
    const RootSystem roots = validate_roots(rc.roots);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (Eigen::Index m : {1, 3}) {
        ++central.trials;
        try {
          const AlgebraicElement el = certify(roots[i] * Matrix::Identity(m, m), roots, cfg);
          if (!is_isolated(el, cfg) || !commutes_with_matrix_units(el.matrix(), kTol))
            central.fail(std::string(rc.label) + ": root " + std::to_string(i) + " not isolated");
        } catch (const Error& e) {
          central.fail(e.what());
        }
      }
  }
  for (int k = 0; k < 200; ++k) {
    Rng rng(derive_seed(seed, 700000 + static_cast<std::uint64_t>(k)));
    const RootSystem roots = validate_roots(cases[static_cast<std::size_t>(k) % cases.size()].roots);
    const Eigen::Index m = uniform_int(rng, 2, 8);
    const auto sig = random_signature(roots.size(), m, 2, rng);
    const std::string tag = "sample " + std::to_string(k);
    ++sampled.trials;
    try {
      const AlgebraicElement el = random_element(sig, roots, rng, roots.all_real() && k % 2 == 0, 20.0, cfg);
      if (is_isolated(el, cfg) || commutes_with_matrix_units(el.matrix(), kTol)) {
        sampled.fail(tag + ": reported isolated");
        continue;
      }
      for (std::size_t i = 0; i < roots.size(); ++i) {
        double floor = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j)
          if (j != i && sig.ranks[j] > 0) floor = std::min(floor, std::abs(roots[j] - roots[i]));
        Matrix shifted = el.matrix();
        shifted.diagonal().array() -= roots[i];
        const double dist = operator_norm(shifted);
        tightest = std::min(tightest, dist - floor);
        if (dist < floor - kTol) sampled.fail(tag + ": ||a - root|| " + sci(dist) + " below " + sci(floor));
      }
    } catch (const Error& e) {
      sampled.fail(tag + ": " + e.what());
    }
  }
  res.passed = central.ok() && sampled.ok();
  res.summary = "central " + central.describe("isolated") + "; sampled " +
                sampled.describe("non-isolated above the spectral floor") + ", tightest margin " + sci(tightest);
  res.data = Json{{"central_checked", central.trials},
                  {"central_failures", central.failures},
                  {"sampled", sampled.trials},
                  {"sampled_failures", sampled.failures},
                  {"tightest_margin", tightest}};
  return res;
}

// 8. complex lines through non-central elements
CriterionResult lines(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{8, "complex lines", false, {}, {}};
  Tally tally;
  double worst_cert = 0.0, worst_far = 0.0;
  const auto& cases = root_cases();
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(seed, 800000 + static_cast<std::uint64_t>(k)));
    const RootSystem roots = validate_roots(cases[static_cast<std::size_t>(k) % cases.size()].roots);
    const Eigen::Index m = uniform_int(rng, 2, 8);
    const auto sig = random_signature(roots.size(), m, 2, rng);
    const std::string tag = "sample " + std::to_string(k);
    ++tally.trials;
    try {
      const AlgebraicElement el = random_element(sig, roots, rng, false, 20.0, cfg);
      const LineWitness w = line_direction(el, cfg);
      worst_cert = std::max(worst_cert, w.certificate);
      if (w.certificate > kTol) {
        tally.fail(tag + ": certificate " + sci(w.certificate));
        continue;
      }
      const double nb = operator_norm(w.direction);
      const double na = operator_norm(el.matrix());
      for (double lambda : {1e3, 1e6}) {
        const Matrix far = el.matrix() + lambda * w.direction;
        const AlgebraicElement x = certify_scaled(far, roots, cfg);
        worst_far = std::max(worst_far, x.residual() / std::pow(1.0 + operator_norm(far), double(roots.size())));
        if (operator_norm(far) < lambda * nb - na) tally.fail(tag + ": line is bounded at " + sci(lambda));
      }
    } catch (const Error& e) {
      tally.fail(tag + ": " + e.what());
    }
  }
  res.passed = tally.ok();
  res.summary = tally.describe("witnesses certified") + ", worst coefficient norm " + sci(worst_cert) +
                ", worst relative residual at 1e3/1e6 " + sci(worst_far);
  res.data = Json{{"samples", tally.trials},
                  {"failures", tally.failures},
                  {"worst_certificate", worst_cert},
                  {"worst_relative_far_residual", worst_far}};
  return res;
}

// 9. distance between components, n = 2
CriterionResult distances(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{9, "distance between components", false, {}, {}};
  const RootSystem roots = validate_roots({0.0, 1.0});
  struct Scan {
    const char* sig1;
    const char* sig2;
    bool self_adjoint;
  };
  const std::vector<Scan> scans{
      {"1,2", "2,1", true}, {"1,2", "2,1", false}, {"1,1", "0,2", true}, {"1,1", "0,2", false}, {"2,0", "0,2", false}};
  bool ok = true;
  std::string text;
  Json rows = Json::array();
  for (std::size_t s = 0; s < scans.size(); ++s) {
    try {
      const auto r = distance_scan(ComponentSignature::parse(scans[s].sig1), ComponentSignature::parse(scans[s].sig2),
                                   roots, 10000, derive_seed(seed, 900000 + s), scans[s].self_adjoint, {}, cfg);
      const bool good = r.best_distance >= 1.0 - kScanSlack;
      ok = ok && good;
      text += std::string(text.empty() ? "" : ", ") + "(" + scans[s].sig1 + ")/(" + scans[s].sig2 + ")" +
              (scans[s].self_adjoint ? " sa " : " " ) + sci(r.best_distance);
      rows.push_back({{"sig1", scans[s].sig1},
                      {"sig2", scans[s].sig2},
                      {"self_adjoint", scans[s].self_adjoint},
                      {"budget", r.restarts},
                      {"best_distance", r.best_distance},
                      {"best_restart", r.best_restart}});
    } catch (const Error& e) {
      ok = false;
      text += std::string(", ") + e.what();
    }
  }
  Matrix x = Matrix::Zero(3, 3), y = Matrix::Zero(3, 3);
  x(0, 0) = 1.0;
  y(0, 0) = y(1, 1) = 1.0;
  const double explicit_pair = operator_norm((x - y).eval());
  ok = ok && explicit_pair == 1.0;

  // n = 3, logged only
  Json logged = Json::array();
  try {
    const RootSystem three = validate_roots({0.0, 1.0, 2.0});
    const auto r = distance_scan(ComponentSignature::parse("1,1,1"), ComponentSignature::parse("2,1,0"), three, 1000,
                                 derive_seed(seed, 900100), false, {}, cfg);
    logged.push_back({{"roots", "0,1,2"}, {"sig1", "1,1,1"}, {"sig2", "2,1,0"}, {"budget", r.restarts},
                      {"best_distance", r.best_distance}, {"min_gap", r.conjecture_bound}});
  } catch (const Error& e) {
    logged.push_back({{"error", e.what()}});
  }
  res.passed = ok;
  res.summary = "best distances " + text + "; explicit pair " + sci(explicit_pair);
  res.data = Json{{"scans", rows}, {"explicit_pair_distance", explicit_pair}, {"n3_logged", logged}};
  return res;
}

// 10. kernel health and determinism
CriterionResult kernel_health(std::uint64_t seed, const ToleranceConfig& cfg) {
  CriterionResult res{10, "kernel health and determinism", false, {}, {}};
  double worst_log = 0.0, worst_comp = 0.0;
  for (int k = 0; k < 200; ++k) {
    Rng rng(derive_seed(seed, 1000000 + static_cast<std::uint64_t>(k)));
    const Eigen::Index m = uniform_int(rng, 1, 8);
    const Matrix x = scaled_gaussian(m, uniform(rng, 0.0, 0.5), rng);
    try {
      worst_log = std::max(worst_log, operator_norm((mat_log_near_identity(mat_exp(x), cfg) - x).eval()));
    } catch (const Error&) {
      worst_log = std::numeric_limits<double>::infinity();
    }
    // random monic p of degree 1..4 and x(t) of degree 1..3
    const int n = uniform_int(rng, 1, 4), d = uniform_int(rng, 1, 3);
    std::vector<Scalar> p(static_cast<std::size_t>(n + 1));
    for (auto& c : p) c = Scalar(uniform(rng, -1, 1), uniform(rng, -1, 1));
    p.back() = 1.0;
    std::vector<Matrix> coeffs;
    for (int j = 0; j <= d; ++j) coeffs.push_back(scaled_gaussian(m, 1.0, rng));
    const MatPoly xp(coeffs);
    const MatPoly q = matpoly_compose_p(p, xp);
    for (double t : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
      const Matrix direct = poly_eval_scalar_coeffs(p, xp(Scalar(t)));
      worst_comp = std::max(worst_comp, operator_norm((q(Scalar(t)) - direct).eval()));
    }
  }

  // identical sub-reports on repeated runs, serial vs threaded
  bool deterministic = true;
  std::string mismatch;
  try {
    const RootSystem roots = validate_roots({0.0, 1.0, -1.0});
    const auto s1 = ComponentSignature::parse("1,2,1"), s2 = ComponentSignature::parse("2,1,1");
    DistanceScanOptions serial, threaded;
    serial.threads = 1;
    threaded.threads = 3;
    const std::string r1 = to_json(distance_scan(s1, s2, roots, 40, seed, false, serial, cfg)).dump();
    const std::string r2 = to_json(distance_scan(s1, s2, roots, 40, seed, false, serial, cfg)).dump();
    const std::string r3 = to_json(distance_scan(s1, s2, roots, 40, seed, false, threaded, cfg)).dump();
    if (r1 != r2 || r1 != r3) {
      deterministic = false;
      mismatch = "distance scan";
    }
    const RootSystem r01 = validate_roots({0.0, 1.0});
    const auto sig = ComponentSignature::parse("2,2");
    const AlgebraicElement a = random_element(sig, r01, derive_seed(seed, 1), false, 20.0, cfg);
    const AlgebraicElement b = random_element(sig, r01, derive_seed(seed, 2), false, 20.0, cfg);
    MinDegreeOptions opt;
    opt.restarts = 4;
    const std::string m1 = to_json(min_degree_search(a, b, 3, seed, opt, cfg)).dump();
    const std::string m2 = to_json(min_degree_search(a, b, 3, seed, opt, cfg)).dump();
    const std::string p1 = to_json(Path(connect_exp_global(a, b, cfg))).dump();
    const std::string p2 = to_json(Path(connect_exp_global(a, b, cfg))).dump();
    if (m1 != m2 || p1 != p2) {
      deterministic = false;
      mismatch = "path construction";
    }
  } catch (const Error& e) {
    deterministic = false;
    mismatch = e.what();
  }
  res.passed = worst_log <= kTol && worst_comp <= kCompositionTol && deterministic;
  res.summary = "exp/log round-trip " + sci(worst_log) + ", composition vs pointwise " + sci(worst_comp) +
                ", repeated runs " + (deterministic ? "identical" : "differ (" + mismatch + ")");
  res.data = Json{{"worst_exp_log", worst_log}, {"worst_composition", worst_comp}, {"deterministic", deterministic}};
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const ToleranceConfig& cfg,
                                            const std::vector<int>& only) {
  using Runner = std::function<CriterionResult(std::uint64_t, const ToleranceConfig&)>;
  const std::vector<Runner> runners{partition_invariants, exp_paths,  polygonal_two_segments, polynomial_degree,
                                    selfadjoint_paths,    selfadjoint_negative, isolation, lines,
                                    distances,            kernel_health};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      out.push_back(runners[static_cast<std::size_t>(id - 1)](derive_seed(seed, static_cast<std::uint64_t>(id)), cfg));
    } catch (const std::exception& e) {
      out.push_back(CriterionResult{id, "criterion " + std::to_string(id), false, e.what(), {}});
    }
  }
  return out;
}

Json to_json(const CriterionResult& r) {
  return Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"data", r.data}};
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results)
    out += std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.summary +
           "\n";
  return out;
}

}  // namespace algpaths
