#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photondm/oam.hpp"
#include "photondm/rng.hpp"

namespace photondm {

// What to do when a photon pair is lost (no joint decision).
enum class LossPolicy {
  resample,  // repeat until a joint decision occurs; attempts are recorded
  raw        // report the loss as the trial's outcome
};

// Outcome of sampling one joint decision.
struct DecisionSample {
  bool is_loss = false;         // only possible under LossPolicy::raw
  std::size_t k1 = 0;           // player X arm (1-based) when !is_loss
  std::size_t k2 = 0;           // player Y arm (1-based) when !is_loss
  std::uint64_t attempts = 1;   // photon pairs consumed
};

// Draws one outcome from `dist` (cells in row-major order, then loss) using
// one uniform draw per attempt. Under resample, throws non_termination_guard
// after 1e6 attempts without a joint decision.
DecisionSample sample_decision(const JointDecisionDistribution& dist, Engine& engine,
                               LossPolicy policy = LossPolicy::resample);

// Aggregate result of a two-player bandit run. One trial = one sampled joint
// decision (or, under the raw policy, possibly a loss); when a decision
// (k1, k2) occurs, each player draws an independent Bernoulli reward with
// success probability reward_means[arm - 1]. Lost trials grant no rewards and
// consume no reward draws. Reports with equal fields are byte-identical when
// serialized, and a (seed, trials, policy) triple fully determines them.
struct BanditRunReport {
  std::size_t arm_count = 0;
  std::uint64_t trials = 0;
  std::uint64_t rng_seed = 0;
  std::string rng_description;
  LossPolicy policy = LossPolicy::resample;
  std::vector<double> reward_means;
  std::vector<std::uint64_t> pair_counts;  // row-major arm_count^2
  std::uint64_t loss_count = 0;            // raw policy only; 0 under resample
  std::uint64_t attempt_count = 0;         // photon pairs consumed in total
  std::uint64_t reward_x = 0;              // player X cumulative reward
  std::uint64_t reward_y = 0;              // player Y cumulative reward

  bool operator==(const BanditRunReport&) const = default;

  std::uint64_t pair_count(std::size_t k1, std::size_t k2) const;  // 1-based
  double empirical_p(std::size_t k1, std::size_t k2) const;        // count / trials
  double empirical_loss() const;     // loss_count / trials
  double conflict_rate() const;      // same-arm decisions / trials
  double empirical_ratio() const;    // pair(2,1) / pair(1,2), two arms only
  double mean_attempts() const;      // attempt_count / trials
  // Player Y's cumulative reward minus player X's (positive favors Y).
  std::int64_t reward_gap() const;
};

// Runs `trials` (>= 1) trials against a fixed distribution. reward_means must
// have one entry per arm, each in [0, 1]. Per trial the engine is consumed in
// this order: decision draws (one per attempt), then X's reward draw, then
// Y's reward draw (skipped entirely on lost trials).
BanditRunReport run_bandit(const JointDecisionDistribution& dist,
                           const std::vector<double>& reward_means, std::uint64_t trials,
                           std::uint64_t seed, LossPolicy policy = LossPolicy::resample);

}  // namespace photondm
