// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

#include "oracles.hpp"

#include "nashcount/candidates.hpp"
#include "nashcount/experiments.hpp"
#include "nashcount/solver.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace nashcount;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string to_text(const std::vector<std::uint64_t>& values) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < values.size(); ++k) out << (k ? "," : "") << values[k];
  out << ')';
  return out.str();
}

// 1. Counting identities and the headline table.
void counting_identities(Outcome& out) {
  const auto start = Clock::now();
  for (unsigned m = 1; m <= 10; ++m) {
    const BigInt d = subfactorial(m);
    if (subfactorial_linear_recursion(m) != d || subfactorial_two_term_recursion(m) != d ||
        subfactorial_alternating_sum(m) != d)
      out.fail("subfactorial formulas disagree at m=" + std::to_string(m));
    if (vidunas_bound(m) != vidunas_bound_by_faces(m))
      out.fail("upper-bound closed forms disagree at m=" + std::to_string(m));
  }
  const std::map<unsigned, std::pair<int, int>> table{{2, {5, 3}}, {3, {16, 9}}, {4, {65, 37}}, {5, {326, 187}}};
  for (const auto& [m, expected] : table) {
    const BigInt v = vidunas_bound(m), lb = lower_bound(m);
    if (v != expected.first || lb != expected.second)
      out.fail("table row m=" + std::to_string(m) + ": expected (" + std::to_string(expected.first) + "," +
               std::to_string(expected.second) + "), computed (" + v.str() + "," + lb.str() + ")");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) out.fail("runtime " + std::to_string(elapsed) + " s >= 1 s");
  if (out.pass) out.detail << "m=1..10 identities hold; table rows match; " << elapsed << " s";
}

// 2. Maximal-game census.
void maximal_census(Outcome& out) {
  double m6_time = 0;
  for (int m = 1; m <= 6; ++m) {
    const auto start = Clock::now();
    const CensusReport report = census(maximal_game(m), ClassificationMethod::increment);
    if (m == 6) m6_time = seconds_since(start);
    const auto mu = static_cast<unsigned>(m);
    if (BigInt(report.total_equilibria) != lower_bound(mu))
      out.fail("m=" + std::to_string(m) + " total " + std::to_string(report.total_equilibria) + " != " +
               lower_bound(mu).str());
    for (int l = 0; l <= m; ++l) {
      const BigInt bound = face_equilibrium_bound(mu, static_cast<unsigned>(l));
      if (BigInt(report.per_l[static_cast<std::size_t>(l)].equilibria) != bound)
        out.fail("m=" + std::to_string(m) + " l=" + std::to_string(l) + " count " +
                 std::to_string(report.per_l[static_cast<std::size_t>(l)].equilibria) + " != " + bound.str());
    }
  }
  if (m6_time >= 10.0) out.fail("m=6 runtime " + std::to_string(m6_time) + " s >= 10 s");
  if (out.pass) out.detail << "totals 1,3,9,37,185,1111 with binding face counts; m=6 in " << m6_time << " s";
}

// 3. Increment and sign classifiers agree.
void method_agreement(Outcome& out) {
  std::uint64_t candidates = 0, disagreements = 0;
  for (int m = 1; m <= 6; ++m) {
    const CensusReport report = census(maximal_game(m), ClassificationMethod::both);
    candidates += report.total_candidates;
    disagreements += report.disagreements;
  }
  std::mt19937_64 rng(20240601);
  const int random_tuples = 250;
  for (int trial = 0; trial < random_tuples; ++trial) {
    const int m = 1 + trial % 5;
    const auto tuple = oracle::random_tuple(m, rng);
    const CensusReport report = census(build_product_game(tuple, default_coefficients(tuple)), ClassificationMethod::both);
    candidates += report.total_candidates;
    disagreements += report.disagreements;
  }
  if (disagreements != 0) out.fail(std::to_string(disagreements) + " disagreements");
  if (out.pass)
    out.detail << "0 disagreements over " << candidates << " candidates (maximal m<=6, " << random_tuples
               << " random tuples m<=5)";
}

// 4. The worked m = 3 example: exactly the nine listed equilibria.
void worked_example(Outcome& out) {
  const CharacteristicTuple tuple{{0, 0, 0}, {Permutation::identity(3), Permutation({3, 2, 1}), Permutation::identity(3)}};
  const ProductTwoActionGame game = build_product_game(tuple, default_coefficients(tuple));
  const auto& a = game.coefficients();
  using Point = std::vector<Rational>;
  const std::vector<std::pair<std::string, Point>> listed{
      {"point 1", {1, 0, 0}},
      {"point 2", {0, 1, 0}},
      {"point 3", {0, 0, 1}},
      {"point 4", {1, 1, 1}},
      {"point 5", {a(2, 1), a(1, 2), 1}},
      {"point 6", {a(3, 1), 0, a(1, 3)}},
      {"point 7", {0, a(3, 2), a(2, 3)}},
      {"point 8", {a(2, 1), a(3, 2), a(1, 3)}},
      {"point 9", {a(3, 1), a(1, 2), a(2, 3)}}};
  std::set<Point> found;
  for (const auto& c : exact_equilibria(game)) found.insert(c.gamma);
  std::set<Point> expected;
  for (const auto& [name, p] : listed) {
    expected.insert(p);
    if (!found.count(p)) {
      std::ostringstream why;
      why << name << " = (";
      for (std::size_t k = 0; k < p.size(); ++k) why << (k ? "," : "") << p[k];
      why << ") is not an equilibrium";
      out.fail(why.str());
    }
  }
  for (const auto& p : found)
    if (!expected.count(p)) {
      std::ostringstream why;
      why << "unlisted equilibrium (";
      for (std::size_t k = 0; k < p.size(); ++k) why << (k ? "," : "") << p[k];
      why << ")";
      out.fail(why.str());
    }
  if (found.size() != 9) out.fail("found " + std::to_string(found.size()) + " equilibria");
  if (out.pass) out.detail << "nine listed equilibria reproduced exactly";
}

// 5. Numerical solver against the exact engine.
void oracle_equivalence(Outcome& out) {
  const std::map<int, std::uint64_t> expected{{2, 3}, {3, 9}, {4, 37}};
  double m4_time = 0;
  for (const auto& [m, count] : expected) {
    const ProductTwoActionGame game = maximal_game(m);
    const auto start = Clock::now();
    const SolverReport report = solve_all(to_float(game.tensor()), SolverConfig{});
    if (m == 4) m4_time = seconds_since(start);
    if (report.total() != count)
      out.fail("m=" + std::to_string(m) + " solver found " + std::to_string(report.total()) + " != " +
               std::to_string(count));
    const auto matched =
        match_one_to_one(equilibrium_points(report.equilibria), equilibrium_points(exact_equilibria(game)), 1e-8);
    if (!matched) out.fail("m=" + std::to_string(m) + " no one-to-one matching within 1e-8");
  }
  if (m4_time >= 60.0) out.fail("m=4 runtime " + std::to_string(m4_time) + " s >= 60 s");
  if (out.pass) out.detail << "3, 9, 37 equilibria matched within 1e-8; m=4 in " << m4_time << " s";
}

// 6. Structural invariants of the increment map.
struct StructureCounts {
  std::uint64_t games = 0, buckets = 0, violations = 0;
  std::string first;
};

void check_structure(const ProductTwoActionGame& game, StructureCounts& counts) {
  const int m = game.players();
  const CharacteristicTuple& tuple = game.tuple();
  ++counts.games;
  auto violation = [&](const Permutation& pi, const std::string& what) {
    if (counts.violations++ == 0) counts.first = what + " at m=" + std::to_string(m) + " pi=" + pi.to_string();
  };
  for_each_permutation(m, [&](const Permutation& pi) {
    ++counts.buckets;
    const auto bucket = bucket_candidates(game, pi);
    const std::size_t l = pi.fixed_points().size();
    if (bucket.size() != (std::size_t{1} << l)) violation(pi, "bucket size");
    if (m >= 2 && static_cast<int>(l) == m - 1) violation(pi, "candidate on a near-vertex face");
    if (l == 0) {
      if (classify_by_increment(game, bucket[0]) != Classification::equilibrium) violation(pi, "derangement candidate");
      return;
    }
    std::vector<int> reference;
    for (const auto& c : bucket)
      if (c.zero_count() == 0)
        for (int i : c.fixed) reference.push_back(increment(tuple, c, i));
    std::size_t equilibria = 0;
    for (const auto& c : bucket) {
      std::vector<int> values;
      for (int i : c.fixed) values.push_back(increment(tuple, c, i) ^ (c.zero_count() % 2));
      if (values != reference) violation(pi, "parity");
      if (classify_by_increment(game, c) == Classification::equilibrium) ++equilibria;
    }
    if (equilibria != 0 && equilibria != bucket.size() / 2) violation(pi, "dichotomy");
    if (l == 1 && equilibria != 1) violation(pi, "single fixed point");
    if (pi.is_identity()) {
      const bool constant = std::all_of(tuple.v.begin(), tuple.v.end(), [&](int b) { return b == tuple.v[0]; });
      if (equilibria != (constant ? bucket.size() / 2 : 0)) violation(pi, "identity bucket");
    }
  });
}

void structural_invariants(Outcome& out) {
  StructureCounts counts;
  for (int m = 1; m <= 5; ++m) check_structure(maximal_game(m), counts);
  // Every characteristic tuple for m <= 3.
  for (int m = 1; m <= 3; ++m) {
    const auto perms = all_permutations(m);
    std::vector<std::vector<Permutation>> choices(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j)
      for (const auto& p : perms)
        if (p(j) == j) choices[static_cast<std::size_t>(j - 1)].push_back(p);
    std::vector<std::size_t> index(static_cast<std::size_t>(m), 0);
    for (;;) {
      std::vector<Permutation> sigma;
      for (int j = 0; j < m; ++j) sigma.push_back(choices[static_cast<std::size_t>(j)][index[static_cast<std::size_t>(j)]]);
      for (unsigned bits = 0; bits < (1U << m); ++bits) {
        CharacteristicTuple tuple{{}, sigma};
        for (int i = 0; i < m; ++i) tuple.v.push_back(static_cast<int>((bits >> i) & 1U));
        check_structure(build_product_game(tuple, default_coefficients(tuple)), counts);
      }
      std::size_t k = 0;
      while (k < index.size() && ++index[k] == choices[k].size()) index[k++] = 0;
      if (k == index.size()) break;
    }
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tuple = oracle::random_tuple(4 + trial % 2, rng);
    check_structure(build_product_game(tuple, default_coefficients(tuple)), counts);
  }
  if (counts.violations) out.fail(std::to_string(counts.violations) + " violations, first: " + counts.first);

  std::uint64_t table_checks = 0;
  for (int m = 1; m <= 7; ++m) {
    const DeltaChiResult result = verify_delta_chi_cases(m);
    table_checks += result.single_checks + result.pair_checks;
    if (!result.pass && result.violation)
      out.fail("case table violated at pi=" + result.violation->pi.to_string() + " i=" +
               std::to_string(result.violation->i) + " j=" + std::to_string(result.violation->j) + ": " +
               result.violation->detail);
  }
  if (out.pass)
    out.detail << counts.games << " games, " << counts.buckets << " permutation buckets, " << table_checks
               << " case-table checks (m<=7), no violations";
}

// 7. Deformation stability.
void deformation(Outcome& out) {
  struct Run {
    int m;
    double epsilon;
    int trials;
  };
  std::ostringstream summary;
  for (const Run run : {Run{3, 1e-3, 100}, Run{4, 1e-4, 25}}) {
    const auto report = verify_deformation(maximal_game(run.m), run.epsilon, run.trials, 2024, SolverConfig{});
    int at_expected = 0;
    for (const auto& t : report.results)
      if (BigInt(t.count) == lower_bound(static_cast<unsigned>(run.m))) ++at_expected;
    if (at_expected != run.trials || !report.pass())
      out.fail("m=" + std::to_string(run.m) + ": count " + lower_bound(static_cast<unsigned>(run.m)).str() + " in " +
               std::to_string(at_expected) + "/" + std::to_string(run.trials) + " trials, tracking failures " +
               std::to_string(report.tracking_failures()));
    summary << "m=" << run.m << " eps=" << run.epsilon << ": " << at_expected << '/' << run.trials
            << " (max drift " << report.max_drift() << ") ";
  }
  if (out.pass) out.detail << summary.str();
}

// 8. Inequality scan on random generic games.
void inequality_scan(Outcome& out) {
  ScanConfig config;
  config.m = 3;
  config.trials = 1000;
  config.seed = 7;
  const ScanReport report = scan_inequalities(config);
  if (report.completed != config.trials) out.fail("completed " + std::to_string(report.completed) + " trials");
  if (report.cumulative_violations()) out.fail(std::to_string(report.cumulative_violations()) + " bound violations");
  for (std::size_t count = 0; count < report.total_histogram.size(); ++count)
    if (count % 2 == 0 && report.total_histogram[count] > 0)
      out.fail(std::to_string(report.total_histogram[count]) + " games with even count " + std::to_string(count));
  if (!report.pass()) out.fail(std::to_string(report.failures()) + " failing trials");
  if (out.pass) {
    out.detail << "1000 games, 0 violations of bounds (2,5,5,9), max per face " << to_text(report.max_per_l)
               << ", regenerations " << report.degenerate_regenerations + report.even_regenerations
               << ", counts:";
    for (std::size_t count = 0; count < report.total_histogram.size(); ++count)
      if (report.total_histogram[count]) out.detail << ' ' << count << 'x' << report.total_histogram[count];
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"counting identities and table", counting_identities},
      {"maximal-game census", maximal_census},
      {"classifier agreement", method_agreement},
      {"worked m=3 example", worked_example},
      {"solver vs exact engine", oracle_equivalence},
      {"structural invariants", structural_invariants},
      {"deformation stability", deformation},
      {"inequality scan", inequality_scan}};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      criteria[k].second(outcome);
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    if (!outcome.pass) ++failed;
    std::cout << "criterion " << k + 1 << " " << (outcome.pass ? "PASS" : "FAIL") << " [" << criteria[k].first
              << "] " << outcome.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
