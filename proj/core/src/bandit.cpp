#include "photondm/bandit.hpp"

#include <cmath>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

constexpr std::uint64_t kResampleGuard = 1000000;

}  // namespace

DecisionSample sample_decision(const JointDecisionDistribution& dist, Engine& engine,
                               LossPolicy policy) {
  const std::size_t K = dist.arm_count;
  DecisionSample sample;
  for (std::uint64_t attempt = 1;; ++attempt) {
    if (attempt > kResampleGuard) {
      throw non_termination_guard(
          "no joint decision after 1e6 attempts; the state is (nearly) pure loss");
    }
    const double u = uniform_unit(engine);
    double acc = 0.0;
    for (std::size_t cell = 0; cell < K * K; ++cell) {
      acc += dist.p[cell];
      if (u < acc) {
        sample.is_loss = false;
        sample.k1 = cell / K + 1;
        sample.k2 = cell % K + 1;
        sample.attempts = attempt;
        return sample;
      }
    }
    // u landed in the loss remainder [sum(p), 1).
    if (policy == LossPolicy::raw) {
      sample.is_loss = true;
      sample.k1 = 0;
      sample.k2 = 0;
      sample.attempts = attempt;
      return sample;
    }
  }
}

std::uint64_t BanditRunReport::pair_count(std::size_t k1, std::size_t k2) const {
  if (k1 < 1 || k1 > arm_count || k2 < 1 || k2 > arm_count) {
    throw contract_violation("arm index out of range");
  }
  return pair_counts[(k1 - 1) * arm_count + (k2 - 1)];
}

double BanditRunReport::empirical_p(std::size_t k1, std::size_t k2) const {
  return static_cast<double>(pair_count(k1, k2)) / static_cast<double>(trials);
}

double BanditRunReport::empirical_loss() const {
  return static_cast<double>(loss_count) / static_cast<double>(trials);
}

double BanditRunReport::conflict_rate() const {
  std::uint64_t same = 0;
  for (std::size_t k = 0; k < arm_count; ++k) same += pair_counts[k * arm_count + k];
  return static_cast<double>(same) / static_cast<double>(trials);
}

double BanditRunReport::empirical_ratio() const {
  if (arm_count != 2) {
    throw contract_violation("ratio is defined for two-arm systems only");
  }
  return static_cast<double>(pair_count(2, 1)) / static_cast<double>(pair_count(1, 2));
}

double BanditRunReport::mean_attempts() const {
  return static_cast<double>(attempt_count) / static_cast<double>(trials);
}

std::int64_t BanditRunReport::reward_gap() const {
  return static_cast<std::int64_t>(reward_y) - static_cast<std::int64_t>(reward_x);
}

BanditRunReport run_bandit(const JointDecisionDistribution& dist,
                           const std::vector<double>& reward_means, std::uint64_t trials,
                           std::uint64_t seed, LossPolicy policy) {
  const std::size_t K = dist.arm_count;
  if (trials == 0) {
    throw contract_violation("a bandit run needs at least one trial");
  }
  if (reward_means.size() != K) {
    throw contract_violation("one reward mean per arm is required");
  }
  for (double mean : reward_means) {
    if (!(mean >= 0.0 && mean <= 1.0)) {
      throw contract_violation("reward means must lie in [0, 1]");
    }
  }
  BanditRunReport report;
  report.arm_count = K;
  report.trials = trials;
  report.rng_seed = seed;
  report.rng_description = kGeneratorDescription;
  report.policy = policy;
  report.reward_means = reward_means;
  report.pair_counts.assign(K * K, 0);

  Engine engine = make_engine(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const DecisionSample sample = sample_decision(dist, engine, policy);
    report.attempt_count += sample.attempts;
    if (sample.is_loss) {
      ++report.loss_count;
      continue;
    }
    ++report.pair_counts[(sample.k1 - 1) * K + (sample.k2 - 1)];
    report.reward_x += (uniform_unit(engine) < reward_means[sample.k1 - 1]) ? 1 : 0;
    report.reward_y += (uniform_unit(engine) < reward_means[sample.k2 - 1]) ? 1 : 0;
  }
  return report;
}

}  // namespace photondm
