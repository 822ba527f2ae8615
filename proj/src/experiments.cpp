#include "nashcount/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace nashcount {

using nlohmann::json;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<std::vector<double>> equilibrium_points(const std::vector<EquilibriumCandidate>& eqs) {
  std::vector<std::vector<double>> out;
  for (const auto& eq : eqs) {
    std::vector<double> p;
    for (const auto& g : eq.gamma) p.push_back(static_cast<double>(g));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<double>> equilibrium_points(const std::vector<SolverEquilibrium>& eqs) {
  std::vector<std::vector<double>> out;
  for (const auto& eq : eqs) out.push_back(eq.gamma);
  return out;
}

int DeformationReport::stable_trials() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [](const DeformationTrial& t) { return t.census_stable; }));
}

int DeformationReport::tracking_failures() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [](const DeformationTrial& t) { return t.untracked > 0; }));
}

double DeformationReport::max_drift() const {
  double d = 0;
  for (const auto& t : results) d = std::max(d, t.max_drift);
  return d;
}

bool DeformationReport::pass() const {
  if (!baseline_matches_exact) return false;
  return std::all_of(results.begin(), results.end(), [](const DeformationTrial& t) {
    return t.census_stable && t.untracked == 0 && t.strict_inequalities;
  });
}

double default_tracking_tol(int m) { return 0.25 / (m + 1); }

DeformationReport verify_deformation(const ProductTwoActionGame& game, double epsilon, int trials,
                                     std::uint64_t seed, SolverConfig config,
                                     double tracking_tol) {
  if (!(epsilon >= 0)) throw std::invalid_argument("verify_deformation: epsilon must be >= 0");
  if (trials < 0) throw std::invalid_argument("verify_deformation: trials must be >= 0");
  const int m = game.players();
  DeformationReport report;
  report.m = m;
  report.epsilon = epsilon;
  report.trials = trials;
  report.seed = seed;
  report.tracking_tol = tracking_tol > 0 ? tracking_tol : default_tracking_tol(m);

  const std::vector<EquilibriumCandidate> exact = exact_equilibria(game);
  const std::vector<std::vector<double>> exact_points = equilibrium_points(exact);
  report.expected_count = exact.size();
  report.expected_per_l.assign(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& eq : exact) ++report.expected_per_l[static_cast<std::size_t>(eq.face_class())];

  config.seeded_starts = exact_points;
  report.config = config;

  const FloatGame base = to_float(game.tensor());
  const SolverReport baseline = solve_all(base, config);
  const std::vector<std::vector<double>> baseline_points = equilibrium_points(baseline.equilibria);
  report.baseline_matches_exact =
      match_one_to_one(baseline_points, exact_points, 1e-8).has_value();

  for (int t = 0; t < trials; ++t) {
    DeformationTrial trial;
    trial.trial = t;
    trial.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    const SolverReport solved = solve_all(perturb(base, epsilon, trial.seed), config);
    trial.count = solved.total();
    trial.per_l = solved.per_l;
    trial.census_stable =
        trial.count == report.expected_count && trial.per_l == report.expected_per_l;

    const std::vector<std::vector<double>> points = equilibrium_points(solved.equilibria);
    const std::vector<std::size_t> match =
        maximum_matching(baseline_points, points, report.tracking_tol);
    trial.min_boundary_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < match.size(); ++k) {
      if (match[k] == kUnmatched) {
        ++trial.untracked;
        continue;
      }
      trial.max_drift = std::max(trial.max_drift, max_norm_distance(baseline_points[k], points[match[k]]));
    }
    for (const auto& eq : solved.equilibria)
      if (eq.face_class() > 0) trial.min_boundary_margin = std::min(trial.min_boundary_margin, eq.margin);
    trial.strict_inequalities = trial.min_boundary_margin > 0;
    report.results.push_back(std::move(trial));
  }
  return report;
}

FloatGame random_game(int m, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x67616d65u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::vector<double>> utilities(static_cast<std::size_t>(m),
                                             std::vector<double>(profile_count(m)));
  for (auto& table : utilities)
    for (auto& u : table) u = unit(rng);
  return FloatGame(m, std::move(utilities));
}

bool is_vertex_degenerate(const FloatGame& game, double tol) {
  for (int i = 1; i <= game.players(); ++i)
    for (double d : difference_table(game, i))
      if (std::abs(d) < tol) return true;
  return false;
}

std::size_t ScanReport::cumulative_violations() const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                [](const ScanFinding& f) { return f.kind == "cumulative"; }));
}

std::size_t ScanReport::failures() const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [&](const ScanFinding& f) {
    return f.kind != "cumulative" || config.m <= 3;
  }));
}

ScanReport scan_inequalities(const ScanConfig& config) {
  if (config.m < 1) throw std::invalid_argument("scan: m must be positive");
  ScanReport report;
  report.config = config;
  report.max_per_l.assign(static_cast<std::size_t>(config.m) + 1, 0);

  for (int t = 0; t < config.trials; ++t) {
    bool done = false;
    std::uint64_t game_seed = 0;
    SolverReport solved;
    for (int attempt = 0; attempt <= config.max_regenerations && !done; ++attempt) {
      game_seed = derive_seed(config.seed, static_cast<std::uint64_t>(t),
                              static_cast<std::uint64_t>(attempt));
      const FloatGame game = random_game(config.m, game_seed);
      if (is_vertex_degenerate(game, config.degeneracy_tol)) {
        ++report.degenerate_regenerations;
        continue;
      }
      solved = solve_all(game, config.solver);
      if (solved.total() % 2 == 0) {
        ++report.even_regenerations;
        continue;
      }
      done = true;
    }
    if (!done) {
      report.findings.push_back(ScanFinding{t, game_seed, solved.per_l, {}, "persistent-even"});
      continue;
    }

    ++report.completed;
    const std::size_t total = solved.total();
    if (report.total_histogram.size() <= total) report.total_histogram.resize(total + 1, 0);
    ++report.total_histogram[total];
    for (std::size_t l = 0; l < solved.per_l.size(); ++l)
      report.max_per_l[l] = std::max(report.max_per_l[l], solved.per_l[l]);
    for (const auto& eq : solved.equilibria)
      if (eq.near_degenerate) ++report.near_degenerate_equilibria;

    const InequalityReport check = check_inequalities(solved.per_l, config.m);
    if (!check.cumulative_holds())
      report.findings.push_back(ScanFinding{t, game_seed, solved.per_l, check.violated_d, "cumulative"});
    if (!(check.interior_bound && check.near_vertex_empty && check.vertex_bound))
      report.findings.push_back(ScanFinding{t, game_seed, solved.per_l, {}, "face-bound"});
  }
  return report;
}

json to_json(const DeformationReport& r) {
  json trials = json::array();
  for (const auto& t : r.results) {
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"count", t.count},
                      {"per_l", t.per_l},
                      {"census_stable", t.census_stable},
                      {"untracked", t.untracked},
                      {"max_drift", t.max_drift},
                      {"min_boundary_margin", std::isfinite(t.min_boundary_margin)
                                                  ? json(t.min_boundary_margin)
                                                  : json(nullptr)},
                      {"strict_inequalities", t.strict_inequalities}});
  }
  return json{{"m", r.m},
              {"epsilon", r.epsilon},
              {"trials", r.trials},
              {"seed", r.seed},
              {"tracking_tol", r.tracking_tol},
              {"config", config_to_json(r.config)},
              {"expected_count", r.expected_count},
              {"expected_per_l", r.expected_per_l},
              {"baseline_matches_exact", r.baseline_matches_exact},
              {"stable_trials", r.stable_trials()},
              {"stability_rate", r.trials ? static_cast<double>(r.stable_trials()) / r.trials : 1.0},
              {"tracking_failures", r.tracking_failures()},
              {"max_drift", r.max_drift()},
              {"pass", r.pass()},
              {"results", std::move(trials)}};
}

json to_json(const ScanReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings)
    findings.push_back({{"trial", f.trial},
                        {"game_seed", f.game_seed},
                        {"per_l", f.per_l},
                        {"violated_d", f.violated_d},
                        {"kind", f.kind}});
  json bounds = json::array();
  for (int d = 0; d <= r.config.m; ++d) {
    BigInt rhs = 0;
    for (int l = 0; l <= d; ++l)
      rhs += face_equilibrium_bound(static_cast<unsigned>(r.config.m), static_cast<unsigned>(l));
    bounds.push_back(rhs.str());
  }
  return json{{"m", r.config.m},
              {"trials", r.config.trials},
              {"seed", r.config.seed},
              {"max_regenerations", r.config.max_regenerations},
              {"degeneracy_tol", r.config.degeneracy_tol},
              {"solver", config_to_json(r.config.solver)},
              {"cumulative_bounds", std::move(bounds)},
              {"completed", r.completed},
              {"total_histogram", r.total_histogram},
              {"max_per_l", r.max_per_l},
              {"degenerate_regenerations", r.degenerate_regenerations},
              {"even_regenerations", r.even_regenerations},
              {"near_degenerate_equilibria", r.near_degenerate_equilibria},
              {"cumulative_violations", r.cumulative_violations()},
              {"failures", r.failures()},
              {"pass", r.pass()},
              {"findings", std::move(findings)}};
}

}  // namespace nashcount
