#include "nashcount/solver.hpp"

#include "nashcount/halton.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nashcount {

using nlohmann::json;

std::vector<int> SupportProfile::free_players() const {
  std::vector<int> out;
  for (int i = 1; i <= players(); ++i)
    if (kinds[static_cast<std::size_t>(i - 1)] == SupportKind::full) out.push_back(i);
  return out;
}

int SupportProfile::face_class() const {
  return players() - static_cast<int>(free_players().size());
}

std::string SupportProfile::to_string() const {
  std::string s;
  for (SupportKind k : kinds)
    s += k == SupportKind::only_zero ? '0' : (k == SupportKind::only_one ? '1' : '*');
  return s;
}

SupportProfile SupportProfile::from_index(int m, std::size_t index) {
  if (index >= count(m)) throw std::out_of_range("support index out of range");
  SupportProfile p{std::vector<SupportKind>(static_cast<std::size_t>(m))};
  for (int i = m; i >= 1; --i) {
    p.kinds[static_cast<std::size_t>(i - 1)] = static_cast<SupportKind>(index % 3);
    index /= 3;
  }
  return p;
}

std::size_t SupportProfile::count(int m) {
  std::size_t n = 1;
  for (int i = 0; i < m; ++i) n *= 3;
  return n;
}

int default_start_count(int free_players) { return 50 * (1 << free_players); }

void ConvergenceStats::merge(const ConvergenceStats& o) {
  starts += o.starts;
  converged += o.converged;
  singular += o.singular;
  not_converged += o.not_converged;
  rejected_outside += o.rejected_outside;
  rejected_sign += o.rejected_sign;
  duplicates += o.duplicates;
}

double max_norm_distance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
  return d;
}

namespace {

// lambda^i and its partial derivatives, each a contraction of player i's
// difference table against the other players' coordinates.
class LambdaSystem {
 public:
  explicit LambdaSystem(const FloatGame& game) : m_(game.players()) {
    for (int i = 1; i <= m_; ++i) diffs_.push_back(difference_table(game, i));
    w0_.resize(static_cast<std::size_t>(m_ - 1));
    w1_.resize(static_cast<std::size_t>(m_ - 1));
  }

  double value(int i, const std::vector<double>& gamma) { return eval(i, 0, gamma); }
  /// d lambda^i / d gamma^k for k != i.
  double partial(int i, int k, const std::vector<double>& gamma) { return eval(i, k, gamma); }

 private:
  double eval(int i, int derivative_in, const std::vector<double>& gamma) {
    std::size_t slot = 0;
    for (int k = 1; k <= m_; ++k) {
      if (k == i) continue;
      if (k == derivative_in) {
        w0_[slot] = -1.0;
        w1_[slot] = 1.0;
      } else {
        w1_[slot] = gamma[static_cast<std::size_t>(k - 1)];
        w0_[slot] = 1.0 - w1_[slot];
      }
      ++slot;
    }
    return contract<double>(diffs_[static_cast<std::size_t>(i - 1)], w0_, w1_);
  }

  int m_;
  std::vector<std::vector<double>> diffs_;
  std::vector<double> w0_, w1_;
};

// Signed best-reply margin of the boundary players: lambda^i for players
// at 1, -lambda^i for players at 0. +inf if there are none.
double boundary_margin(LambdaSystem& system, const SupportProfile& support,
                       const std::vector<double>& gamma) {
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= support.players(); ++i) {
    const SupportKind k = support.kinds[static_cast<std::size_t>(i - 1)];
    if (k == SupportKind::full) continue;
    const double value = system.value(i, gamma);
    margin = std::min(margin, k == SupportKind::only_one ? value : -value);
  }
  return margin;
}

enum class NewtonOutcome { converged, singular, not_converged };

struct NewtonResult {
  NewtonOutcome outcome;
  double residual;
};

NewtonResult newton(LambdaSystem& system, const std::vector<int>& free,
                    std::vector<double>& gamma, const SolverConfig& config) {
  const Eigen::Index n = static_cast<Eigen::Index>(free.size());
  Eigen::VectorXd f(n), step(n);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);

  auto evaluate = [&](const std::vector<double>& g, Eigen::VectorXd& out) {
    for (Eigen::Index a = 0; a < n; ++a) out(a) = system.value(free[static_cast<std::size_t>(a)], g);
    return out.lpNorm<Eigen::Infinity>();
  };

  std::vector<double> trial = gamma;
  Eigen::VectorXd f_trial(n);
  int polish = 0;
  for (int it = 0; it < config.max_iterations; ++it) {
    const double norm = evaluate(gamma, f);
    if (!std::isfinite(norm)) return {NewtonOutcome::not_converged, norm};
    const bool small = norm <= config.residual_tol;
    if (small && (polish >= 2 || norm == 0)) return {NewtonOutcome::converged, norm};
    if (small) ++polish;

    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        jac(a, b) = a == b ? 0.0
                           : system.partial(free[static_cast<std::size_t>(a)],
                                            free[static_cast<std::size_t>(b)], gamma);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible())
      return {small ? NewtonOutcome::converged : NewtonOutcome::singular, norm};
    step = lu.solve(-f);
    const double step_norm = step.lpNorm<Eigen::Infinity>();
    if (step_norm > 0.5) step *= 0.5 / step_norm;

    // Backtracking on the residual; during polishing take full steps.
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      for (Eigen::Index a = 0; a < n; ++a) {
        const auto idx = static_cast<std::size_t>(free[static_cast<std::size_t>(a)] - 1);
        trial[idx] = gamma[idx] + t * step(a);
      }
      const double trial_norm = evaluate(trial, f_trial);
      if (small || trial_norm < (1.0 - 1e-4 * t) * norm) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return {NewtonOutcome::not_converged, norm};
    gamma = trial;
    for (int i : free) {
      const double x = gamma[static_cast<std::size_t>(i - 1)];
      if (x < -0.5 || x > 1.5) return {NewtonOutcome::not_converged, norm};
    }
  }
  const double norm = evaluate(gamma, f);
  return {norm <= config.residual_tol ? NewtonOutcome::converged : NewtonOutcome::not_converged,
          norm};
}

bool lies_on_support(const std::vector<double>& point, const SupportProfile& support) {
  if (static_cast<int>(point.size()) != support.players()) return false;
  for (int i = 1; i <= support.players(); ++i) {
    const double x = point[static_cast<std::size_t>(i - 1)];
    switch (support.kinds[static_cast<std::size_t>(i - 1)]) {
      case SupportKind::only_zero:
        if (x != 0.0) return false;
        break;
      case SupportKind::only_one:
        if (x != 1.0) return false;
        break;
      case SupportKind::full:
        if (!(x > 0.0 && x < 1.0)) return false;
        break;
    }
  }
  return true;
}

bool lexicographic_less(const SolverEquilibrium& a, const SolverEquilibrium& b) {
  if (a.face_class() != b.face_class()) return a.face_class() < b.face_class();
  return a.gamma < b.gamma;
}

}  // namespace

std::vector<SolverEquilibrium> solve_support(const FloatGame& game, const SupportProfile& support,
                                             const SolverConfig& config, ConvergenceStats* stats) {
  const int m = game.players();
  if (support.players() != m) throw std::invalid_argument("solve_support: support size mismatch");
  ConvergenceStats local;
  LambdaSystem system(game);
  const std::vector<int> free = support.free_players();

  std::vector<double> base(static_cast<std::size_t>(m), 0.0);
  for (int i = 1; i <= m; ++i)
    if (support.kinds[static_cast<std::size_t>(i - 1)] == SupportKind::only_one)
      base[static_cast<std::size_t>(i - 1)] = 1.0;

  std::vector<SolverEquilibrium> found;
  auto consider = [&](const std::vector<double>& gamma, double residual) {
    for (int i : free) {
      const double x = gamma[static_cast<std::size_t>(i - 1)];
      if (!(x > config.dedup_tol && x < 1.0 - config.dedup_tol)) {
        ++local.rejected_outside;
        return;
      }
    }
    const double margin = boundary_margin(system, support, gamma);
    if (margin < config.margin_tol) {
      ++local.rejected_sign;
      return;
    }
    for (const auto& eq : found) {
      if (max_norm_distance(eq.gamma, gamma) < config.dedup_tol) {
        ++local.duplicates;
        return;
      }
    }
    found.push_back(SolverEquilibrium{gamma, support, residual, margin,
                                      margin < config.near_degenerate_tol});
  };

  if (free.empty()) {
    ++local.starts;
    ++local.converged;
    consider(base, 0.0);
  } else {
    std::vector<std::vector<double>> starts;
    for (const auto& seeded : config.seeded_starts)
      if (lies_on_support(seeded, support)) starts.push_back(seeded);
    const int count =
        config.starts > 0 ? config.starts : default_start_count(static_cast<int>(free.size()));
    const HaltonSequence halton(static_cast<int>(free.size()), config.seed);
    for (int s = 1; s <= count; ++s) {
      const std::vector<double> x = halton.point(static_cast<std::uint64_t>(s));
      std::vector<double> gamma = base;
      for (std::size_t a = 0; a < free.size(); ++a)
        gamma[static_cast<std::size_t>(free[a] - 1)] = x[a];
      starts.push_back(std::move(gamma));
    }
    for (auto& gamma : starts) {
      ++local.starts;
      const NewtonResult r = newton(system, free, gamma, config);
      switch (r.outcome) {
        case NewtonOutcome::singular: ++local.singular; break;
        case NewtonOutcome::not_converged: ++local.not_converged; break;
        case NewtonOutcome::converged:
          ++local.converged;
          consider(gamma, r.residual);
          break;
      }
    }
  }
  std::sort(found.begin(), found.end(), lexicographic_less);
  if (stats) stats->merge(local);
  return found;
}

SolverReport solve_all(const FloatGame& game, const SolverConfig& config) {
  const int m = game.players();
  const std::size_t supports = SupportProfile::count(m);
  std::vector<std::vector<SolverEquilibrium>> per_support(supports);
  std::vector<ConvergenceStats> per_support_stats(supports);

  const int workers = static_cast<int>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(config.threads, 1)), 1, supports));
  auto run = [&](int worker) {
    for (std::size_t idx = static_cast<std::size_t>(worker); idx < supports;
         idx += static_cast<std::size_t>(workers)) {
      per_support[idx] = solve_support(game, SupportProfile::from_index(m, idx), config,
                                       &per_support_stats[idx]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  SolverReport report;
  report.m = m;
  report.config = config;
  report.per_l.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::size_t idx = 0; idx < supports; ++idx) {
    report.stats.merge(per_support_stats[idx]);
    for (auto& eq : per_support[idx]) {
      const bool duplicate = std::any_of(
          report.equilibria.begin(), report.equilibria.end(), [&](const SolverEquilibrium& e) {
            return max_norm_distance(e.gamma, eq.gamma) < config.dedup_tol;
          });
      if (duplicate) {
        ++report.stats.duplicates;
        continue;
      }
      report.equilibria.push_back(std::move(eq));
    }
  }
  std::sort(report.equilibria.begin(), report.equilibria.end(), lexicographic_less);
  for (const auto& eq : report.equilibria) ++report.per_l[static_cast<std::size_t>(eq.face_class())];
  return report;
}

bool InequalityReport::proven_parts_hold() const {
  return interior_bound && near_vertex_empty && vertex_bound &&
         (!cumulative_bounds_proven || cumulative_holds());
}

InequalityReport check_inequalities(const std::vector<std::uint64_t>& per_l, int m) {
  if (m < 1 || per_l.size() != static_cast<std::size_t>(m) + 1)
    throw std::invalid_argument("check_inequalities: need counts for l = 0..m");
  InequalityReport report;
  report.m = m;
  report.cumulative_bounds_proven = m <= 3;
  const auto mu = static_cast<unsigned>(m);
  std::uint64_t lhs = 0;
  BigInt rhs = 0;
  for (int d = 0; d <= m; ++d) {
    lhs += per_l[static_cast<std::size_t>(d)];
    rhs += face_equilibrium_bound(mu, static_cast<unsigned>(d));
    InequalityRow row{d, lhs, rhs, BigInt(lhs) <= rhs};
    if (!row.holds) report.violated_d.push_back(d);
    report.rows.push_back(std::move(row));
  }
  report.interior_bound = BigInt(per_l[0]) <= subfactorial(mu);
  report.near_vertex_empty = per_l[static_cast<std::size_t>(m - 1)] == 0;
  report.vertex_bound = per_l[static_cast<std::size_t>(m)] <= (std::uint64_t{1} << (m - 1));
  return report;
}

std::vector<std::size_t> maximum_matching(const std::vector<std::vector<double>>& a,
                                          const std::vector<std::vector<double>>& b, double tol) {
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (max_norm_distance(a[i], b[j]) <= tol) adj[i].push_back(j);

  std::vector<std::size_t> owner(b.size(), kUnmatched);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (owner[j] == kUnmatched || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    visited.assign(b.size(), 0);
    augment(i);
  }
  std::vector<std::size_t> match(a.size(), kUnmatched);
  for (std::size_t j = 0; j < b.size(); ++j)
    if (owner[j] != kUnmatched) match[owner[j]] = j;
  return match;
}

std::optional<std::vector<std::size_t>> match_one_to_one(
    const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
    double tol) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::size_t> match = maximum_matching(a, b, tol);
  if (std::find(match.begin(), match.end(), kUnmatched) != match.end()) return std::nullopt;
  return match;
}

json config_to_json(const SolverConfig& c) {
  return json{{"starts", c.starts == 0 ? json("50*2^free") : json(c.starts)},
              {"residual_tol", c.residual_tol},
              {"dedup_tol", c.dedup_tol},
              {"margin_tol", c.margin_tol},
              {"near_degenerate_tol", c.near_degenerate_tol},
              {"max_iterations", c.max_iterations},
              {"seed", c.seed},
              {"threads", c.threads},
              {"seeded_starts", c.seeded_starts.size()}};
}

json to_json(const SolverEquilibrium& eq) {
  return json{{"gamma", eq.gamma},
              {"support", eq.support.to_string()},
              {"face_class", eq.face_class()},
              {"residual", eq.residual},
              {"margin", std::isfinite(eq.margin) ? json(eq.margin) : json(nullptr)},
              {"near_degenerate", eq.near_degenerate}};
}

json to_json(const ConvergenceStats& s) {
  return json{{"starts", s.starts},
              {"converged", s.converged},
              {"singular", s.singular},
              {"not_converged", s.not_converged},
              {"rejected_outside", s.rejected_outside},
              {"rejected_sign", s.rejected_sign},
              {"duplicates", s.duplicates}};
}

json to_json(const InequalityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"d", row.d}, {"lhs", row.lhs}, {"rhs", row.rhs.str()}, {"holds", row.holds}});
  return json{{"m", r.m},
              {"cumulative", std::move(rows)},
              {"cumulative_bounds_proven", r.cumulative_bounds_proven},
              {"violated_d", r.violated_d},
              {"interior_bound", r.interior_bound},
              {"near_vertex_face_empty", r.near_vertex_empty},
              {"vertex_bound", r.vertex_bound}};
}

json to_json(const SolverReport& r) {
  json eqs = json::array();
  for (const auto& eq : r.equilibria) eqs.push_back(to_json(eq));
  return json{{"m", r.m},
              {"config", config_to_json(r.config)},
              {"equilibria", std::move(eqs)},
              {"per_l", r.per_l},
              {"total_equilibria", r.total()},
              {"inequalities", to_json(check_inequalities(r.per_l, r.m))},
              {"convergence", to_json(r.stats)}};
}

}  // namespace nashcount
