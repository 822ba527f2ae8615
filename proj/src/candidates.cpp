#include "nashcount/candidates.hpp"

#include "nashcount/game_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nashcount {

using nlohmann::json;

int EquilibriumCandidate::boundary_value(int i) const {
  const auto it = std::lower_bound(fixed.begin(), fixed.end(), i);
  if (it == fixed.end() || *it != i)
    throw std::invalid_argument("player " + std::to_string(i) + " is not a fixed point of " +
                                pi.to_string());
  return boundary[static_cast<std::size_t>(it - fixed.begin())];
}

int EquilibriumCandidate::zero_count() const {
  return static_cast<int>(std::count(boundary.begin(), boundary.end(), 0));
}

std::vector<EquilibriumCandidate> bucket_candidates(const ProductTwoActionGame& game,
                                                    const Permutation& pi) {
  const int m = game.players();
  if (pi.size() != m) throw std::invalid_argument("bucket_candidates: permutation size mismatch");
  const std::vector<int> fixed = pi.fixed_points();
  const std::size_t l = fixed.size();

  std::vector<Rational> base(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    if (!pi.is_fixed(j)) base[static_cast<std::size_t>(j - 1)] = game.coefficients()(pi(j), j);

  std::vector<EquilibriumCandidate> out;
  out.reserve(std::size_t{1} << l);
  for (std::size_t mask = 0; mask < (std::size_t{1} << l); ++mask) {
    EquilibriumCandidate c{pi, fixed, std::vector<int>(l), base};
    for (std::size_t k = 0; k < l; ++k) {
      const int bit = static_cast<int>((mask >> (l - 1 - k)) & 1U);
      c.boundary[k] = bit;
      c.gamma[static_cast<std::size_t>(fixed[k] - 1)] = bit;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EquilibriumCandidate> enumerate_candidates(const ProductTwoActionGame& game) {
  std::vector<EquilibriumCandidate> out;
  for_each_candidate(game, [&](const EquilibriumCandidate& c) { out.push_back(c); });
  return out;
}

int increment(const CharacteristicTuple& tuple, const EquilibriumCandidate& candidate, int i) {
  const Permutation& pi = candidate.pi;
  if (i < 1 || i > pi.size() || !pi.is_fixed(i))
    throw std::invalid_argument("increment: player " + std::to_string(i) +
                                " is not a fixed point of " + pi.to_string());
  const int gamma_i = candidate.boundary_value(i);
  const int zeros_without_i = candidate.zero_count() - (gamma_i == 0 ? 1 : 0);
  int sum = 1 + gamma_i + tuple.v[static_cast<std::size_t>(i - 1)] + zeros_without_i;
  for (int j = 1; j <= pi.size(); ++j) {
    if (pi.is_fixed(j)) continue;
    const Permutation& sigma_j = tuple.sigma[static_cast<std::size_t>(j - 1)];
    sum += chi(sigma_j(pi(j)), sigma_j(i));
  }
  return sum % 2;
}

Classification classify_by_increment(const CharacteristicTuple& tuple,
                                     const EquilibriumCandidate& candidate) {
  for (int i : candidate.fixed)
    if (increment(tuple, candidate, i) != 0) return Classification::not_equilibrium;
  return Classification::equilibrium;
}

Classification classify_by_sign(const ProductTwoActionGame& game,
                                const EquilibriumCandidate& candidate) {
  const int m = game.players();
  bool ok = true;
  for (int i = 1; i <= m; ++i) {
    const Rational value = game.factored_lambda(i, candidate.gamma);
    if (!candidate.pi.is_fixed(i)) {
      if (value != 0)
        throw std::logic_error("candidate " + candidate.pi.to_string() +
                               " violates the indifference condition of player " +
                               std::to_string(i));
      continue;
    }
    const bool plays_one = candidate.boundary_value(i) == 1;
    if (plays_one ? !(value > 0) : !(value < 0)) ok = false;
  }
  return ok ? Classification::equilibrium : Classification::not_equilibrium;
}

std::string to_string(ClassificationMethod method) {
  switch (method) {
    case ClassificationMethod::increment: return "increment";
    case ClassificationMethod::sign: return "sign";
    case ClassificationMethod::both: return "both";
  }
  return "?";
}

ClassificationMethod parse_classification_method(const std::string& name) {
  if (name == "increment") return ClassificationMethod::increment;
  if (name == "sign") return ClassificationMethod::sign;
  if (name == "both") return ClassificationMethod::both;
  throw std::invalid_argument("unknown classification method '" + name +
                              "' (expected increment, sign or both)");
}

namespace {

constexpr std::size_t kMaxDisagreementSamples = 10;

struct PartialCensus {
  std::vector<FaceCensus> per_l;
  std::uint64_t disagreements = 0;
  std::vector<std::string> samples;
};

std::string describe(const EquilibriumCandidate& c) {
  std::ostringstream out;
  out << "pi=" << c.pi.to_string() << " gamma=(";
  for (std::size_t k = 0; k < c.gamma.size(); ++k)
    out << (k ? "," : "") << format_rational(c.gamma[k]);
  out << ')';
  return out.str();
}

void tally_bucket(const ProductTwoActionGame& game, const Permutation& pi,
                  ClassificationMethod method, PartialCensus& acc) {
  for (const auto& c : bucket_candidates(game, pi)) {
    FaceCensus& face = acc.per_l[static_cast<std::size_t>(c.face_class())];
    ++face.candidates;
    bool equilibrium = false;
    switch (method) {
      case ClassificationMethod::increment:
        equilibrium = classify_by_increment(game, c) == Classification::equilibrium;
        break;
      case ClassificationMethod::sign:
        equilibrium = classify_by_sign(game, c) == Classification::equilibrium;
        break;
      case ClassificationMethod::both: {
        const bool by_increment = classify_by_increment(game, c) == Classification::equilibrium;
        equilibrium = classify_by_sign(game, c) == Classification::equilibrium;
        if (by_increment != equilibrium) {
          ++acc.disagreements;
          if (acc.samples.size() < kMaxDisagreementSamples)
            acc.samples.push_back(describe(c) + (equilibrium ? " sign=equilibrium increment=not"
                                                             : " sign=not increment=equilibrium"));
        }
        break;
      }
    }
    if (equilibrium) ++face.equilibria;
  }
}

}  // namespace

CensusReport census(const ProductTwoActionGame& game, ClassificationMethod method, int threads) {
  const int m = game.players();
  const int workers = std::clamp(threads, 1, m);
  std::vector<PartialCensus> partial(static_cast<std::size_t>(workers));
  for (auto& p : partial) {
    p.per_l.resize(static_cast<std::size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) p.per_l[static_cast<std::size_t>(l)].l = l;
  }

  auto run = [&](int worker) {
    PartialCensus& acc = partial[static_cast<std::size_t>(worker)];
    for (int first = worker + 1; first <= m; first += workers) {
      PermutationStream stream(m, false, first);
      while (const Permutation* pi = stream.next()) tally_bucket(game, *pi, method, acc);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  CensusReport report;
  report.m = m;
  report.method = method;
  report.per_l = partial.front().per_l;
  for (std::size_t w = 0; w < partial.size(); ++w) {
    if (w > 0) {
      for (std::size_t l = 0; l < report.per_l.size(); ++l) {
        report.per_l[l].candidates += partial[w].per_l[l].candidates;
        report.per_l[l].equilibria += partial[w].per_l[l].equilibria;
      }
    }
    report.disagreements += partial[w].disagreements;
    for (auto& s : partial[w].samples)
      if (report.disagreement_samples.size() < kMaxDisagreementSamples)
        report.disagreement_samples.push_back(std::move(s));
  }
  for (const auto& face : report.per_l) {
    report.total_candidates += face.candidates;
    report.total_equilibria += face.equilibria;
  }
  report.expected_lower_bound = lower_bound(static_cast<unsigned>(m));
  report.matches_expected = BigInt(report.total_equilibria) == report.expected_lower_bound;
  return report;
}

std::vector<EquilibriumCandidate> exact_equilibria(const ProductTwoActionGame& game) {
  std::vector<EquilibriumCandidate> out;
  for_each_candidate(game, [&](const EquilibriumCandidate& c) {
    if (classify_by_sign(game, c) == Classification::equilibrium) out.push_back(c);
  });
  return out;
}

json to_json(const CensusReport& report) {
  json per_l = json::array();
  for (const auto& face : report.per_l)
    per_l.push_back({{"l", face.l}, {"candidates", face.candidates}, {"equilibria", face.equilibria}});
  json doc{{"m", report.m},
           {"method", to_string(report.method)},
           {"per_l", std::move(per_l)},
           {"total_candidates", report.total_candidates},
           {"total_equilibria", report.total_equilibria},
           {"expected_lower_bound", report.expected_lower_bound.str()},
           {"matches_expected", report.matches_expected}};
  if (report.method == ClassificationMethod::both) {
    doc["disagreements"] = report.disagreements;
    doc["disagreement_samples"] = report.disagreement_samples;
  }
  return doc;
}

std::string to_csv(const CensusReport& report) {
  std::ostringstream out;
  out << "l,candidates,equilibria\n";
  for (const auto& face : report.per_l)
    out << face.l << ',' << face.candidates << ',' << face.equilibria << '\n';
  out << "total," << report.total_candidates << ',' << report.total_equilibria << '\n';
  return out.str();
}

std::string to_text(const CensusReport& report) {
  std::ostringstream out;
  out << "m = " << report.m << ", method = " << to_string(report.method) << '\n';
  out << "  l  candidates  equilibria\n";
  for (const auto& face : report.per_l) {
    out.width(3);
    out << face.l;
    out.width(12);
    out << face.candidates;
    out.width(12);
    out << face.equilibria << '\n';
  }
  out << "total candidates " << report.total_candidates << ", total equilibria "
      << report.total_equilibria << " (lower bound " << report.expected_lower_bound.str()
      << (report.matches_expected ? ", attained" : ", not attained") << ")\n";
  if (report.method == ClassificationMethod::both)
    out << "classifier disagreements " << report.disagreements << '\n';
  for (const auto& s : report.disagreement_samples) out << "  " << s << '\n';
  return out.str();
}

json candidate_to_json(const EquilibriumCandidate& c) {
  json gamma = json::array();
  for (const auto& g : c.gamma) gamma.push_back(format_rational(g));
  return json{{"pi", c.pi.images()}, {"face_class", c.face_class()}, {"gamma", std::move(gamma)}};
}

namespace {

// chi(delta^j(pi(j)), delta^j(i)) predicted by the position of pi(j)
// relative to j and the fixed point i.
int predicted_chi(int i, int j, int image) {
  if (j < i) return (image < j || image > i) ? 1 : 0;
  return (image > i && image < j) ? 1 : 0;
}

struct PairCase {
  int number;
  int chi_first;
  int chi_second;
};

PairCase pair_case(int i1, int i2, int j, int image) {
  if (j < i1) {
    if (image < j || image > i2) return {1, 1, 1};
    if (image < i1) return {2, 0, 0};
    return {3, 1, 0};
  }
  if (j > i2) {
    if (image < i1 || image > j) return {4, 0, 0};
    if (image > i2) return {5, 1, 1};
    return {6, 1, 0};
  }
  if (image > i1 && image < j) return {7, 1, 1};
  if (image > j && image < i2) return {8, 0, 0};
  return {9, 0, 1};
}

}  // namespace

DeltaChiResult verify_delta_chi_cases(int m) {
  if (m < 1) throw std::invalid_argument("verify_delta_chi_cases: m must be positive");
  std::vector<Permutation> delta;
  for (int j = 1; j <= m; ++j) delta.push_back(delta_permutation(m, j));
  auto actual_chi = [&](int i, int j, int image) {
    const Permutation& d = delta[static_cast<std::size_t>(j - 1)];
    return chi(d(image), d(i));
  };

  DeltaChiResult result;
  PermutationStream stream(m);
  while (const Permutation* p = stream.next()) {
    const Permutation& pi = *p;
    if (pi.is_derangement()) continue;
    const std::vector<int> fixed = pi.fixed_points();
    const std::vector<int> moved = pi.moved_points();
    for (int i : fixed) {
      for (int j : moved) {
        ++result.single_checks;
        const int expected = predicted_chi(i, j, pi(j));
        const int actual = actual_chi(i, j, pi(j));
        if (expected != actual) {
          result.pass = false;
          result.violation = DeltaChiViolation{
              pi, i, 0, j,
              "four-case rule predicts " + std::to_string(expected) + ", got " +
                  std::to_string(actual)};
          return result;
        }
      }
    }
    for (std::size_t a = 0; a < fixed.size(); ++a) {
      for (std::size_t b = a + 1; b < fixed.size(); ++b) {
        const int i1 = fixed[a], i2 = fixed[b];
        int differing_first = 0, differing_second = 0;
        for (int j : moved) {
          ++result.pair_checks;
          const PairCase c = pair_case(i1, i2, j, pi(j));
          const int chi1 = actual_chi(i1, j, pi(j));
          const int chi2 = actual_chi(i2, j, pi(j));
          if (chi1 != c.chi_first || chi2 != c.chi_second) {
            result.pass = false;
            result.violation = DeltaChiViolation{
                pi, i1, i2, j,
                "case " + std::to_string(c.number) + " predicts (" +
                    std::to_string(c.chi_first) + "," + std::to_string(c.chi_second) +
                    "), got (" + std::to_string(chi1) + "," + std::to_string(chi2) + ")"};
            return result;
          }
          if (c.number == 3 || c.number == 6) ++differing_first;
          if (c.number == 9) ++differing_second;
        }
        if (differing_first != differing_second) {
          result.pass = false;
          result.violation = DeltaChiViolation{
              pi, i1, i2, 0,
              std::to_string(differing_first) + " moved points in cases 3/6 but " +
                  std::to_string(differing_second) + " in case 9"};
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace nashcount
