// nashcount: construct product two-action games, enumerate and classify
// their equilibrium candidates, and cross-check with the numerical solver.
//
// Exit codes: 0 = all checks pass, 1 = a check failed, 2 = usage or parse error.

#include "cli_support.hpp"

#include "nashcount/candidates.hpp"
#include "nashcount/experiments.hpp"
#include "nashcount/game_io.hpp"
#include "nashcount/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace {

using namespace nashcount;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  int m = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
};

struct GameSource {
  std::string file;
  std::string v;
  std::string sigma;
};

struct Check {
  std::string name;
  bool pass;
  json expected;
  json actual;
};

json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max())
    return json(static_cast<std::uint64_t>(value));
  return json(value.str());
}

json checks_to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"check", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string checks_to_text(const std::vector<Check>& checks) {
  std::ostringstream out;
  for (const auto& c : checks)
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " expected " << c.expected.dump() << " actual "
        << c.actual.dump() << '\n';
  return out.str();
}

void emit(const CommonOptions& common, const std::string& text) {
  if (common.out.empty() || common.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(common.out);
  if (!out) throw UsageError("cannot write '" + common.out + "'");
  out << text;
}

void emit_json(const CommonOptions& common, const json& doc) { emit(common, doc.dump(2) + "\n"); }

std::string format_or(const CommonOptions& common, const std::string& fallback) {
  return common.format.empty() ? fallback : common.format;
}

GameDocument load_game(const CommonOptions& common, const GameSource& source) {
  if (!source.file.empty()) {
    if (!source.v.empty() || !source.sigma.empty())
      throw UsageError("--game cannot be combined with --v/--sigma");
    GameDocument doc = read_game_file(source.file);
    if (common.m != 0 && common.m != doc.players())
      throw UsageError("--m " + std::to_string(common.m) + " disagrees with the game file (m = " +
                       std::to_string(doc.players()) + ")");
    return doc;
  }
  if (common.m < 1) throw UsageError("either --game or --m is required");
  const CharacteristicTuple tuple = cli::parse_tuple(source.v, source.sigma, common.m);
  ProductTwoActionGame game = build_product_game(tuple, default_coefficients(tuple));
  ExactGame tensor = game.tensor();
  return GameDocument{std::move(tensor), std::move(game)};
}

const ProductTwoActionGame& require_product(const GameDocument& doc, const char* command) {
  if (!doc.product)
    throw UsageError(std::string(command) +
                     " needs an exact product game (a game file with a \"product\" section, or --m/--v/--sigma)");
  return *doc.product;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_m = true) {
  if (with_m) cmd->add_option("--m", common.m, "Number of players");
  cmd->add_option("--seed", common.seed, "Master seed");
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", common.out, "Output path (default: stdout)");
  cmd->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
}

void add_game_source(CLI::App* cmd, GameSource& source) {
  cmd->add_option("--game", source.file, "Game file");
  cmd->add_option("--v", source.v, "Sign vector as a bit string (default all zeros)");
  cmd->add_option("--sigma", source.sigma,
                  "delta | id | m permutations separated by ';' (cycle notation or image lists)");
}

void add_solver_options(CLI::App* cmd, SolverConfig& config) {
  cmd->add_option("--starts", config.starts, "Newton starts per support (0: 50*2^free)");
  cmd->add_option("--residual-tol", config.residual_tol, "Residual tolerance");
  cmd->add_option("--dedup-tol", config.dedup_tol, "Deduplication / face tolerance");
}

int run_table(const CommonOptions& common, int m_max) {
  if (m_max < 1) m_max = common.m;
  if (m_max < 1) throw UsageError("--m-max must be at least 1");
  const std::string format = format_or(common, "csv");
  json rows = json::array();
  std::ostringstream csv, text;
  csv << "m,subfactorial,vidunas_bound,lower_bound\n";
  text << "m  !m  V(m)  (V(m)+!m)/2\n";
  for (int m = 1; m <= m_max; ++m) {
    const auto mu = static_cast<unsigned>(m);
    const BigInt d = subfactorial(mu), v = vidunas_bound(mu), lb = lower_bound(mu);
    rows.push_back({{"m", m}, {"subfactorial", big_to_json(d)}, {"vidunas_bound", big_to_json(v)},
                    {"lower_bound", big_to_json(lb)}});
    csv << m << ',' << d << ',' << v << ',' << lb << '\n';
    text << m << "  " << d << "  " << v << "  " << lb << '\n';
  }
  if (format == "json")
    emit_json(common, json{{"rows", rows}});
  else
    emit(common, format == "csv" ? csv.str() : text.str());
  return kExitPass;
}

int run_construct(const CommonOptions& common, const GameSource& source) {
  if (!source.file.empty()) throw UsageError("construct builds a game from --m/--v/--sigma");
  const GameDocument doc = load_game(common, source);
  emit_json(common, game_to_json(*doc.product));
  return kExitPass;
}

int run_candidates(const CommonOptions& common, const GameSource& source) {
  const GameDocument doc = load_game(common, source);
  const ProductTwoActionGame& game = require_product(doc, "candidates");
  const std::string format = format_or(common, "csv");
  json list = json::array();
  std::ostringstream csv, text;
  csv << "pi,face_class,gamma,increments,increment_verdict,sign_verdict\n";
  std::uint64_t disagreements = 0;
  for_each_candidate(game, [&](const EquilibriumCandidate& c) {
    std::vector<int> incs;
    for (int i : c.fixed) incs.push_back(increment(game.tuple(), c, i));
    const bool by_inc = classify_by_increment(game, c) == Classification::equilibrium;
    const bool by_sign = classify_by_sign(game, c) == Classification::equilibrium;
    if (by_inc != by_sign) ++disagreements;
    json entry = candidate_to_json(c);
    entry["increments"] = incs;
    entry["increment_verdict"] = by_inc ? "equilibrium" : "not_equilibrium";
    entry["sign_verdict"] = by_sign ? "equilibrium" : "not_equilibrium";
    std::string gamma, inc;
    for (std::size_t k = 0; k < c.gamma.size(); ++k) gamma += (k ? " " : "") + format_rational(c.gamma[k]);
    for (std::size_t k = 0; k < incs.size(); ++k) inc += (k ? " " : "") + std::to_string(incs[k]);
    csv << '"' << c.pi.to_string() << "\"," << c.face_class() << ',' << gamma << ',' << inc << ','
        << entry["increment_verdict"].get<std::string>() << ',' << entry["sign_verdict"].get<std::string>()
        << '\n';
    text << c.pi.to_cycle_string() << "  l=" << c.face_class() << "  (" << gamma << ")  "
         << (by_sign ? "equilibrium" : "-") << '\n';
    list.push_back(std::move(entry));
  });
  const std::vector<Check> checks{{"classifiers_agree", disagreements == 0, 0, disagreements}};
  if (format == "json") {
    emit_json(common, json{{"m", game.players()},
                           {"candidates", std::move(list)},
                           {"checks", checks_to_json(checks)},
                           {"pass", all_pass(checks)}});
  } else {
    emit(common, format == "csv" ? csv.str() : text.str());
    if (!all_pass(checks)) std::cerr << checks_to_text(checks);
  }
  return all_pass(checks) ? kExitPass : kExitCheckFailed;
}

std::vector<Check> maximal_checks(int m, std::uint64_t total, const std::vector<std::uint64_t>& per_l) {
  std::vector<Check> checks;
  const BigInt expected = lower_bound(static_cast<unsigned>(m));
  checks.push_back({"total_equals_lower_bound", BigInt(total) == expected, big_to_json(expected), total});
  json expected_l = json::array();
  bool per_l_ok = per_l.size() == static_cast<std::size_t>(m) + 1;
  for (int l = 0; l <= m; ++l) {
    const BigInt bound = face_equilibrium_bound(static_cast<unsigned>(m), static_cast<unsigned>(l));
    expected_l.push_back(big_to_json(bound));
    if (per_l_ok && BigInt(per_l[static_cast<std::size_t>(l)]) != bound) per_l_ok = false;
  }
  checks.push_back({"per_face_bounds_binding", per_l_ok, expected_l, per_l});
  return checks;
}

int run_classify(const CommonOptions& common, const GameSource& source, const std::string& method_name,
                 bool expect_maximal) {
  const GameDocument doc = load_game(common, source);
  const ProductTwoActionGame& game = require_product(doc, "classify");
  ClassificationMethod method;
  try {
    method = parse_classification_method(method_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CensusReport report = census(game, method, common.threads);
  std::vector<Check> checks;
  if (method == ClassificationMethod::both)
    checks.push_back({"classifiers_agree", report.disagreements == 0, 0, report.disagreements});
  if (expect_maximal) {
    std::vector<std::uint64_t> per_l;
    for (const auto& f : report.per_l) per_l.push_back(f.equilibria);
    for (auto& c : maximal_checks(game.players(), report.total_equilibria, per_l)) checks.push_back(std::move(c));
  }
  const std::string format = format_or(common, "json");
  if (format == "json") {
    json doc_out = to_json(report);
    doc_out["checks"] = checks_to_json(checks);
    doc_out["pass"] = all_pass(checks);
    emit_json(common, doc_out);
  } else {
    emit(common, format == "csv" ? to_csv(report) : to_text(report) + checks_to_text(checks));
    if (format == "csv" && !all_pass(checks)) std::cerr << checks_to_text(checks);
  }
  return all_pass(checks) ? kExitPass : kExitCheckFailed;
}

int run_solve(const CommonOptions& common, const GameSource& source, SolverConfig config,
              bool expect_maximal) {
  const GameDocument doc = load_game(common, source);
  config.seed = common.seed;
  config.threads = common.threads;
  const SolverReport report = solve_all(doc.as_float(), config);
  const InequalityReport inequalities = check_inequalities(report.per_l, report.m);

  std::vector<Check> checks;
  checks.push_back({"face_bounds_hold", inequalities.proven_parts_hold(), true, inequalities.proven_parts_hold()});
  if (doc.product) {
    const auto exact = exact_equilibria(*doc.product);
    const bool matched =
        match_one_to_one(equilibrium_points(report.equilibria), equilibrium_points(exact), 1e-8).has_value();
    checks.push_back({"matches_exact_engine", matched, exact.size(), report.total()});
  }
  if (expect_maximal)
    for (auto& c : maximal_checks(report.m, report.total(), report.per_l)) checks.push_back(std::move(c));

  const std::string format = format_or(common, "json");
  if (format == "json") {
    json out = to_json(report);
    out["checks"] = checks_to_json(checks);
    out["pass"] = all_pass(checks);
    emit_json(common, out);
  } else if (format == "csv") {
    std::ostringstream csv;
    csv << "support,face_class";
    for (int i = 1; i <= report.m; ++i) csv << ",gamma" << i;
    csv << ",residual,margin\n";
    csv.precision(17);
    for (const auto& eq : report.equilibria) {
      csv << eq.support.to_string() << ',' << eq.face_class();
      for (double g : eq.gamma) csv << ',' << g;
      csv << ',' << eq.residual << ',' << eq.margin << '\n';
    }
    emit(common, csv.str());
    if (!all_pass(checks)) std::cerr << checks_to_text(checks);
  } else {
    std::ostringstream text;
    text << report.total() << " equilibria (per face class:";
    for (auto c : report.per_l) text << ' ' << c;
    text << ")\n";
    for (const auto& eq : report.equilibria) {
      text << "  " << eq.support.to_string() << "  (";
      for (std::size_t k = 0; k < eq.gamma.size(); ++k) text << (k ? ", " : "") << eq.gamma[k];
      text << ")\n";
    }
    emit(common, text.str() + checks_to_text(checks));
  }
  return all_pass(checks) ? kExitPass : kExitCheckFailed;
}

int run_deform(const CommonOptions& common, const GameSource& source, SolverConfig config, double epsilon,
               int trials) {
  const GameDocument doc = load_game(common, source);
  const ProductTwoActionGame& game = require_product(doc, "deform");
  if (epsilon < 0) throw UsageError("--epsilon must be non-negative");
  config.threads = common.threads;
  const DeformationReport report = verify_deformation(game, epsilon, trials, common.seed, config);
  const std::string format = format_or(common, "json");
  if (format == "csv") throw UsageError("deform supports --format json or text");
  if (format == "json") {
    emit_json(common, to_json(report));
  } else {
    std::ostringstream text;
    text << "m = " << report.m << ", epsilon = " << report.epsilon << ", trials = " << report.trials
         << ", seed = " << report.seed << '\n'
         << "expected " << report.expected_count << " equilibria; stable in " << report.stable_trials() << '/'
         << report.trials << " trials; tracking failures " << report.tracking_failures() << "; max drift "
         << report.max_drift() << '\n'
         << (report.pass() ? "PASS" : "FAIL") << '\n';
    emit(common, text.str());
  }
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int run_scan(const CommonOptions& common, ScanConfig config) {
  config.m = common.m > 0 ? common.m : 3;
  config.seed = common.seed;
  config.solver.threads = common.threads;
  const ScanReport report = scan_inequalities(config);
  const std::string format = format_or(common, "json");
  if (format == "csv") throw UsageError("scan supports --format json or text");
  if (format == "json") {
    emit_json(common, to_json(report));
  } else {
    std::ostringstream text;
    text << "m = " << config.m << ", trials = " << config.trials << ", seed = " << config.seed << '\n'
         << "completed " << report.completed << ", cumulative violations " << report.cumulative_violations()
         << ", failures " << report.failures() << ", degenerate regenerations "
         << report.degenerate_regenerations << ", even-count regenerations " << report.even_regenerations
         << '\n'
         << (report.pass() ? "PASS" : "FAIL") << '\n';
    emit(common, text.str());
  }
  return report.pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of product two-action games: construction, exact classification and numerical cross-checks"};
  app.require_subcommand(1);

  CommonOptions common;
  GameSource source;
  SolverConfig solver;
  ScanConfig scan;
  int m_max = 0;
  std::string method = "both";
  bool expect_maximal = false;
  double epsilon = 1e-3;
  int trials = 100;

  auto* table = app.add_subcommand("table", "Print !m, V(m) and (V(m)+!m)/2");
  add_common(table, common);
  table->add_option("--m-max", m_max, "Largest m (defaults to --m)");

  auto* construct = app.add_subcommand("construct", "Write a product game file");
  add_common(construct, common);
  add_game_source(construct, source);

  auto* candidates = app.add_subcommand("candidates", "List all equilibrium candidates with both verdicts");
  add_common(candidates, common);
  add_game_source(candidates, source);

  auto* classify = app.add_subcommand("classify", "Census of equilibria by face class (exact)");
  add_common(classify, common);
  add_game_source(classify, source);
  classify->add_option("--method", method, "increment | sign | both")->check(CLI::IsMember({"increment", "sign", "both"}));
  classify->add_flag("--expect-maximal", expect_maximal, "Fail unless the census attains (V(m)+!m)/2");

  auto* solve = app.add_subcommand("solve", "Numerical support-enumeration solve");
  add_common(solve, common);
  add_game_source(solve, source);
  add_solver_options(solve, solver);
  solve->add_flag("--expect-maximal", expect_maximal, "Fail unless the solver finds (V(m)+!m)/2 equilibria");

  auto* deform = app.add_subcommand("deform", "Perturb a product game and re-solve");
  add_common(deform, common);
  add_game_source(deform, source);
  add_solver_options(deform, solver);
  deform->add_option("--epsilon", epsilon, "Perturbation half-width");
  deform->add_option("--trials", trials, "Number of perturbations")->check(CLI::NonNegativeNumber);

  auto* scanner = app.add_subcommand("scan", "Check per-face bounds on random generic games");
  add_common(scanner, common);
  add_solver_options(scanner, solver);
  scanner->add_option("--trials", scan.trials, "Number of random games")->check(CLI::NonNegativeNumber);
  scanner->add_option("--max-regenerations", scan.max_regenerations, "Regenerations allowed per trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*table) return run_table(common, m_max);
    if (*construct) return run_construct(common, source);
    if (*candidates) return run_candidates(common, source);
    if (*classify) return run_classify(common, source, method, expect_maximal);
    if (*solve) return run_solve(common, source, solver, expect_maximal);
    if (*deform) return run_deform(common, source, solver, epsilon, trials);
    if (*scanner) {
      scan.solver = solver;
      return run_scan(common, scan);
    }
  } catch (const GameFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
