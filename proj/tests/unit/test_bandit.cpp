#include "doctest.h"
#include "photondm/bandit.hpp"
#include "photondm/errors.hpp"
#include "photondm/oam.hpp"
#include "photondm/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace photondm;

namespace {

JointDecisionDistribution corner_distribution() {
    // All mass on the off-diagonal cell (2, 1): player X fires arm 2, player Y arm 1.
    return JointDecisionDistribution::checked(2, {0.0, 0.0, 1.0, 0.0}, 0.0);
}

JointDecisionDistribution lossy_distribution() {
    // p12 = 1/2, p21 = 1/8, loss = 3/8.
    return JointDecisionDistribution::checked(2, {0.0, 0.5, 0.125, 0.0}, 0.375);
}

}  // namespace

TEST_CASE("corner distribution always yields the single supported pair") {
    auto dist = corner_distribution();
    Engine engine = make_engine(99);
    for (int i = 0; i < 64; ++i) {
        DecisionSample s = sample_decision(dist, engine, LossPolicy::resample);
        CHECK(!s.is_loss);
        CHECK(s.k1 == 2);
        CHECK(s.k2 == 1);
        CHECK(s.attempts == 1);
    }
}

TEST_CASE("raw policy reports losses instead of redrawing") {
    auto dist = lossy_distribution();
    Engine engine = make_engine(7);
    int losses = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        DecisionSample s = sample_decision(dist, engine, LossPolicy::raw);
        CHECK(s.attempts == 1);
        if (s.is_loss) {
            ++losses;
        } else {
            CHECK(((s.k1 == 1 && s.k2 == 2) || (s.k1 == 2 && s.k2 == 1)));
        }
    }
    // Binomial(20000, 3/8): sigma ~ 68.5, allow 4 sigma.
    double expected = 0.375 * draws;
    CHECK(std::abs(losses - expected) < 4.0 * std::sqrt(draws * 0.375 * 0.625));
}

TEST_CASE("resample policy never reports losses and attempts track the loss rate") {
    auto dist = lossy_distribution();
    Engine engine = make_engine(8);
    std::int64_t total_attempts = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        DecisionSample s = sample_decision(dist, engine, LossPolicy::resample);
        CHECK(!s.is_loss);
        total_attempts += s.attempts;
    }
    // Geometric with success probability 5/8: mean attempts = 1.6.
    double mean = static_cast<double>(total_attempts) / draws;
    CHECK(mean == doctest::Approx(1.6).epsilon(0.02));
}

TEST_CASE("total loss with resampling trips the non-termination guard") {
    auto dist = JointDecisionDistribution::checked(2, {0.0, 0.0, 0.0, 0.0}, 1.0);
    Engine engine = make_engine(3);
    CHECK_THROWS_AS(sample_decision(dist, engine, LossPolicy::resample),
                    non_termination_guard);
    // Raw policy handles the same distribution gracefully.
    DecisionSample s = sample_decision(dist, engine, LossPolicy::raw);
    CHECK(s.is_loss);
}

TEST_CASE("bandit run over the corner distribution produces exact counts") {
    auto dist = corner_distribution();
    std::vector<double> means = {0.9, 0.1};
    BanditRunReport report = run_bandit(dist, means, 100000, 1234, LossPolicy::resample);

    CHECK(report.trials == 100000);
    CHECK(report.pair_count(2, 1) == 100000);
    CHECK(report.pair_count(1, 2) == 0);
    CHECK(report.pair_count(1, 1) == 0);
    CHECK(report.pair_count(2, 2) == 0);
    CHECK(report.loss_count == 0);
    CHECK(report.attempt_count == 100000);
    CHECK(report.empirical_p(2, 1) == 1.0);
    CHECK(report.conflict_rate() == 0.0);
    CHECK(report.mean_attempts() == 1.0);

    // X always plays arm 2 (mean 0.1), Y always arm 1 (mean 0.9); 3 sigma.
    double x_rate = static_cast<double>(report.reward_x) / 100000.0;
    double y_rate = static_cast<double>(report.reward_y) / 100000.0;
    double sigma_x = std::sqrt(0.1 * 0.9 / 100000.0);
    double sigma_y = std::sqrt(0.9 * 0.1 / 100000.0);
    CHECK(std::abs(x_rate - 0.1) < 3.0 * sigma_x);
    CHECK(std::abs(y_rate - 0.9) < 3.0 * sigma_y);
}

TEST_CASE("bandit empirical frequencies converge to the sampled distribution") {
    PolarizationAmplitudes pol = PolarizationAmplitudes::from_theta(0.3);
    OamSuperposition pos = OamSuperposition::normalized({0.8, 0.6}, {0.0, 0.0}, OamSign::positive);
    OamSuperposition neg = OamSuperposition::normalized({0.6, 0.8}, {0.0, 0.0}, OamSign::negative);
    OamSystemConfig config{pol, pos, neg};
    auto dist = joint_distribution_closed(config);

    const std::size_t trials = 200000;
    BanditRunReport report = run_bandit(dist, {0.5, 0.5}, trials, 77, LossPolicy::raw);
    double kept = static_cast<double>(trials - report.loss_count);
    for (std::size_t k1 = 1; k1 <= 2; ++k1) {
        for (std::size_t k2 = 1; k2 <= 2; ++k2) {
            double p = dist.prob(k1, k2);
            double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
            double observed =
                static_cast<double>(report.pair_count(k1, k2)) / static_cast<double>(trials);
            CHECK(std::abs(observed - p) <= 5.0 * sigma + 1e-12);
        }
    }
    CHECK(report.empirical_loss() ==
          doctest::Approx(dist.loss).epsilon(0.05));
    CHECK(kept > 0.0);
}

TEST_CASE("bandit reruns with the same seed are identical") {
    auto dist = lossy_distribution();
    BanditRunReport a = run_bandit(dist, {0.3, 0.6}, 10000, 42, LossPolicy::resample);
    BanditRunReport b = run_bandit(dist, {0.3, 0.6}, 10000, 42, LossPolicy::resample);
    CHECK(a == b);

    BanditRunReport c = run_bandit(dist, {0.3, 0.6}, 10000, 43, LossPolicy::resample);
    CHECK(a.rng_seed != c.rng_seed);
}

TEST_CASE("reward gap reflects which player holds the better arm") {
    auto dist = corner_distribution();
    // Y always plays arm 1 (mean 0.9), X arm 2 (mean 0.1): the gap favors Y.
    BanditRunReport report = run_bandit(dist, {0.9, 0.1}, 20000, 5, LossPolicy::resample);
    CHECK(report.reward_gap() > 0);
    CHECK(report.reward_gap() ==
          static_cast<std::int64_t>(report.reward_y) -
              static_cast<std::int64_t>(report.reward_x));
}

TEST_CASE("bandit input validation") {
    auto dist = lossy_distribution();
    CHECK_THROWS_AS(run_bandit(dist, {0.5, 0.5}, 0, 1, LossPolicy::raw),
                    contract_violation);
    CHECK_THROWS_AS(run_bandit(dist, {0.5}, 10, 1, LossPolicy::raw), contract_violation);
    CHECK_THROWS_AS(run_bandit(dist, {0.5, 1.5}, 10, 1, LossPolicy::raw),
                    contract_violation);
    CHECK_THROWS_AS(run_bandit(dist, {-0.1, 0.5}, 10, 1, LossPolicy::raw),
                    contract_violation);
}

TEST_CASE("run report captures the generator description") {
    auto dist = corner_distribution();
    BanditRunReport report = run_bandit(dist, {0.5, 0.5}, 10, 9, LossPolicy::raw);
    CHECK(report.rng_description == std::string(kGeneratorDescription));
    CHECK(report.arm_count == 2);
    CHECK(report.policy == LossPolicy::raw);
}
