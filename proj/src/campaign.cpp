#include "berlab/campaign.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace berlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename T>
const T& pick(const std::vector<T>& values, Rng& rng) {
  return values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
}

double log_uniform_scale(Rng& rng) {
  return std::exp(std::uniform_real_distribution<double>(std::log(0.25), std::log(4.0))(rng));
}

ComplexMatrix random_operator(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const auto ensembles = all_ensembles();
  const Ensemble kind = ensembles[std::uniform_int_distribution<std::size_t>(0, ensembles.size() - 1)(rng)];
  const double scale = log_uniform_scale(rng);
  return scale * draw_operator(kind, rows, cols, rng);
}

bool is_power_bound(std::string_view id) { return id == "T311_proof" || id == "T311_stmt"; }

CheckParams draw_params(const CampaignConfig& config, std::string_view id, Rng& rng) {
  const ParamGrid& g = config.grid;
  CheckParams p;
  p.tol = config.check_tol;
  p.theta_grid = g.theta_grid;
  p.r = pick(g.r, rng);
  p.p = pick(g.p, rng);
  p.t = pick(g.t, rng);
  p.alpha = pick(g.alpha, rng);
  p.nu = pick(g.nu, rng);
  p.m = pick(g.m, rng);
  p.s = pick(g.s, rng);
  p.young_p = pick(g.young_p, rng);
  p.shift = pick(g.shift, rng);
  // The power bound needs q r >= 2; redraw (r, young_p) until admissible.
  for (int attempt = 0; is_power_bound(id) && attempt < 64; ++attempt) {
    if (p.young_p / (p.young_p - 1) * p.r >= 2.0 - 1e-12) break;
    p.r = pick(g.r, rng);
    p.young_p = pick(g.young_p, rng);
  }
  return p;
}

ScalarInputs draw_scalars(Eigen::Index n, Rng& rng) {
  std::lognormal_distribution<double> magnitude(0.0, 1.5);
  ScalarInputs in;
  in.a = magnitude(rng);
  in.b = magnitude(rng);
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0: in.b = in.a; break;
    case 1: in.b = 0; break;
    default: break;
  }
  in.va = gaussian_vector(n, rng);
  in.vb = gaussian_vector(n, rng);
  in.ve = gaussian_vector(n, rng).normalized();
  return in;
}

double slack_key(const Certificate& c) {
  return std::isnan(c.slack) ? -std::numeric_limits<double>::infinity() : c.slack;
}

// Projection onto the PSD cone keeps perturbed operands admissible.
ComplexMatrix psd_part(const ComplexMatrix& m) {
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

template <typename M>
void jitter(M& m, double step, Rng& rng) {
  if (m.size() == 0) return;
  const double scale = std::max(m.norm() / std::sqrt(static_cast<double>(m.size())), 1e-3);
  m += (step * scale) * ginibre(m.rows(), m.cols(), rng);
}

void jitter(double& x, double step, Rng& rng) {
  const double scale = std::max(std::abs(x), 1e-3);
  x = std::abs(x + step * scale * std::normal_distribution<double>(0.0, 1.0)(rng));
}

TrialInputs perturb(const CheckerInfo& info, TrialInputs in, double step, Rng& rng) {
  switch (info.kind) {
    case CheckerKind::scalar: {
      ScalarInputs& s = in.scalar;
      jitter(s.a, step, rng);
      jitter(s.b, step, rng);
      jitter(s.va, step, rng);
      jitter(s.vb, step, rng);
      jitter(s.ve, step, rng);
      if (s.ve.norm() > 0) s.ve.normalize();
      break;
    }
    case CheckerKind::single: {
      SingleInputs& s = in.single;
      jitter(s.T, step, rng);
      if (info.operand == SingleOperand::psd) s.T = psd_part(s.T);
      jitter(s.B, step, rng);
      jitter(s.x, step, rng);
      jitter(s.y, step, rng);
      s.alpha += step * std::max(std::abs(s.alpha), 1e-3) * ginibre(1, 1, rng)(0, 0);
      break;
    }
    case CheckerKind::block: {
      BlockOperator& b = in.block;
      const bool diagonal = info.shape == BlockShape::diagonal || info.shape == BlockShape::full;
      const bool off = info.shape != BlockShape::diagonal;
      if (diagonal) {
        jitter(b.S, step, rng);
        jitter(b.R, step, rng);
      }
      if (off) {
        jitter(b.X, step, rng);
        if (info.shape != BlockShape::symmetric_off_diagonal) jitter(b.Y, step, rng);
      }
      break;
    }
  }
  return in;
}

struct Outcome {
  std::vector<Certificate> certificates;
  std::string error;
  bool failed = false;
};

Outcome run_trial(const CampaignConfig& config, const CheckerInfo& info, std::uint64_t seed) {
  Outcome out;
  try {
    out.certificates = evaluate_trial(info, draw_trial(config, info, seed));
  } catch (const std::exception& e) {
    out.failed = true;
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view theorem_id, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed ^ splitmix64(fnv1a(theorem_id))) ^ index);
}

TrialInputs draw_trial(const CampaignConfig& config, const CheckerInfo& info, std::uint64_t seed) {
  Rng rng(seed);
  TrialInputs trial;
  trial.seed = seed;
  const KernelFamily family = pick(config.kernel_families, rng);
  auto [n1, n2] = pick(config.dims, rng);
  trial.params = draw_params(config, info.id, rng);

  switch (info.kind) {
    case CheckerKind::scalar:
      trial.scalar = draw_scalars(n1, rng);
      break;
    case CheckerKind::single: {
      trial.space = draw_space(family, n1, rng);
      SingleInputs& s = trial.single;
      if (info.operand == SingleOperand::psd) {
        s.T = log_uniform_scale(rng) * draw_operator(Ensemble::psd, n1, rng);
      } else {
        s.T = random_operator(n1, n1, rng);
      }
      s.B = random_operator(n1, n1, rng);
      s.alpha = ginibre(1, 1, rng)(0, 0);
      s.x = gaussian_vector(n1, rng);
      s.y = gaussian_vector(n1, rng);
      break;
    }
    case CheckerKind::block: {
      const bool square = info.shape == BlockShape::symmetric_off_diagonal ||
                          info.shape == BlockShape::square_off_diagonal;
      if (square) n2 = n1;
      auto space1 = draw_space(family, n1, rng);
      auto space2 = info.shape == BlockShape::symmetric_off_diagonal ? space1 : draw_space(family, n2, rng);
      BlockOperator& b = trial.block;
      b.S = random_operator(n1, n1, rng);
      b.X = random_operator(n1, n2, rng);
      b.Y = random_operator(n2, n1, rng);
      b.R = random_operator(n2, n2, rng);
      b.space1 = std::move(space1);
      b.space2 = std::move(space2);
      break;
    }
  }
  return trial;
}

std::vector<Certificate> evaluate_trial(const CheckerInfo& info, const TrialInputs& trial) {
  std::vector<Certificate> out;
  switch (info.kind) {
    case CheckerKind::scalar:
      out = check_scalar(info.id, trial.params, trial.scalar);
      break;
    case CheckerKind::single:
      out = check_single(info.id, *trial.space, trial.single, trial.params);
      break;
    case CheckerKind::block:
      for (std::size_t i = 0; i < info.conventions.size(); ++i) {
        for (auto& c : check_block(info.id, trial.block, info.conventions[i], trial.params)) {
          if (i > 0 && !c.convention) continue;
          out.push_back(std::move(c));
        }
      }
      break;
  }
  for (auto& c : out) c.witness.seed = trial.seed;
  return out;
}

const Certificate* objective(const std::vector<Certificate>& certificates) {
  const bool any_gating = std::any_of(certificates.begin(), certificates.end(),
                                      [](const Certificate& c) { return c.mode == Mode::gating; });
  const Certificate* best = nullptr;
  for (const auto& c : certificates) {
    if (any_gating && c.mode != Mode::gating) continue;
    if (!best || slack_key(c) < slack_key(*best)) best = &c;
  }
  return best;
}

std::vector<const CheckerInfo*> selected_checkers(const CampaignConfig& config) {
  std::vector<const CheckerInfo*> out;
  for (const auto& info : checker_registry()) {
    const bool wanted = config.checker_filter.empty() ||
                        std::find(config.checker_filter.begin(), config.checker_filter.end(), info.id) !=
                            config.checker_filter.end();
    if (wanted) out.push_back(&info);
  }
  return out;
}

Report run_campaign(const CampaignConfig& config) {
  validate(config);
  const auto checkers = selected_checkers(config);
  const std::size_t trials = static_cast<std::size_t>(config.trials_per_checker);
  std::vector<Outcome> outcomes(checkers.size() * trials);

  const auto work = [&](std::size_t task) {
    const CheckerInfo& info = *checkers[task / trials];
    outcomes[task] = run_trial(config, info, trial_seed(config.master_seed, info.id, task % trials));
  };
  if (config.jobs <= 1) {
    for (std::size_t task = 0; task < outcomes.size(); ++task) work(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < config.jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t task = next++; task < outcomes.size(); task = next++) work(task);
      });
    }
    for (auto& thread : pool) thread.join();
  }

  // Aggregation walks trials in index order, so the schedule never matters.
  Report report;
  report.config = to_json(config);
  for (std::size_t k = 0; k < checkers.size(); ++k) {
    const CheckerInfo& info = *checkers[k];
    std::vector<Aggregate> aggregates;
    std::vector<double> sums;
    Anomaly anomaly;
    anomaly.theorem_id = std::string(info.id);
    for (std::size_t i = 0; i < trials; ++i) {
      const Outcome& outcome = outcomes[k * trials + i];
      if (outcome.failed) {
        if (anomaly.count++ == 0) {
          anomaly.first_message = outcome.error;
          anomaly.first_seed = trial_seed(config.master_seed, info.id, i);
        }
        continue;
      }
      for (const auto& c : outcome.certificates) {
        auto it = std::find_if(aggregates.begin(), aggregates.end(), [&](const Aggregate& a) {
          return a.variant == c.variant && a.convention == c.convention;
        });
        if (it == aggregates.end()) {
          Aggregate fresh;
          fresh.theorem_id = c.theorem_id;
          fresh.variant = c.variant;
          fresh.convention = c.convention;
          fresh.mode = c.mode;
          fresh.min_slack = std::numeric_limits<double>::infinity();
          fresh.witness = c;
          aggregates.push_back(fresh);
          sums.push_back(0.0);
          it = aggregates.end() - 1;
        }
        Aggregate& a = *it;
        ++a.trials;
        if (c.mode == Mode::gating && !c.holds) ++a.failures;
        sums[static_cast<std::size_t>(it - aggregates.begin())] += c.slack;
        if (slack_key(c) < a.min_slack || a.trials == 1) {
          a.min_slack = slack_key(c);
          a.witness = c;
        }
      }
    }
    for (std::size_t a = 0; a < aggregates.size(); ++a) {
      aggregates[a].mean_slack = sums[a] / static_cast<double>(aggregates[a].trials);
      report.gating_failures += aggregates[a].failures;
      report.results.push_back(std::move(aggregates[a]));
    }
    if (anomaly.count > 0) report.anomalies.push_back(std::move(anomaly));
  }
  return report;
}

Certificate explore(const CampaignConfig& config, std::string_view theorem_id, int budget) {
  validate(config);
  const CheckerInfo& info = checker_info(theorem_id);
  if (budget < 0) throw Error(ErrorKind::bad_params, "budget must be >= 0");

  std::optional<TrialInputs> start;
  Certificate best;
  for (int i = 0; i < config.trials_per_checker; ++i) {
    try {
      TrialInputs trial = draw_trial(config, info, trial_seed(config.master_seed, info.id, static_cast<std::uint64_t>(i)));
      const auto certificates = evaluate_trial(info, trial);
      const Certificate* c = objective(certificates);
      if (c && (!start || slack_key(*c) < slack_key(best))) {
        best = *c;
        start = std::move(trial);
      }
    } catch (const Error&) {
    }
  }
  if (!start) throw Error(ErrorKind::bad_params, "no admissible trial for " + std::string(theorem_id));

  constexpr int restarts = 10;
  constexpr double initial_step = 0.1;
  Rng rng(trial_seed(config.master_seed, theorem_id, std::numeric_limits<std::uint64_t>::max()));
  TrialInputs best_inputs = *start;
  for (int restart = 0; restart < restarts; ++restart) {
    const int rounds = budget / restarts + (restart < budget % restarts ? 1 : 0);
    TrialInputs current = best_inputs;
    double current_slack = slack_key(best);
    double step = initial_step;
    for (int round = 0; round < rounds; ++round) {
      TrialInputs candidate = perturb(info, current, step, rng);
      const Certificate* c = nullptr;
      std::vector<Certificate> certificates;
      try {
        certificates = evaluate_trial(info, candidate);
        c = objective(certificates);
      } catch (const Error&) {
      }
      if (c && slack_key(*c) < current_slack) {
        current = std::move(candidate);
        current_slack = slack_key(*c);
        if (current_slack < slack_key(best)) {
          best = *c;
          best.witness.seed = 0;
          best_inputs = current;
        }
      } else {
        step /= 2;
      }
    }
  }
  return best;
}

}  // namespace berlab
