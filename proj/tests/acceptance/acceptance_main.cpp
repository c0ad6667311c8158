// End-to-end acceptance gate. Each criterion prints one PASS/FAIL line with
// the numbers that decide it and its elapsed time; the process exit code is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "photondm/attenuation.hpp"
#include "photondm/bandit.hpp"
#include "photondm/entangled.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/oam.hpp"
#include "photondm/ratio_solver.hpp"
#include "photondm/rng.hpp"
#include "photondm/sampling.hpp"

using namespace photondm;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(const char* id, bool pass, const std::string& detail, double seconds) {
  std::printf("%-3s %s  %s (%.2f s)\n", id, pass ? "PASS" : "FAIL", detail.c_str(),
              seconds);
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
  return buffer;
}

double max_entry_delta(const JointDecisionDistribution& lhs,
                       const JointDecisionDistribution& rhs) {
  double delta = std::abs(lhs.loss - rhs.loss);
  for (std::size_t i = 0; i < lhs.p.size(); ++i) {
    delta = std::max(delta, std::abs(lhs.p[i] - rhs.p[i]));
  }
  return delta;
}

// 1. Closed-form two-photon distribution equals the tensor-propagation oracle
//    entrywise for random configurations at several arm counts.
void criterion_1() {
  Timer timer;
  Engine engine = make_engine(101);
  double max_delta = 0.0;
  std::size_t configs = 0;
  auto compare_batch = [&](std::size_t arm_count, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const OamSystemConfig config = sample_oam_config(engine, arm_count);
      max_delta = std::max(
          max_delta,
          max_entry_delta(joint_distribution_closed(config),
                          joint_distribution_oracle(config)));
      ++configs;
    }
  };
  compare_batch(2, 10000);
  compare_batch(3, 1000);
  compare_batch(4, 1000);
  const double elapsed = timer.seconds();
  const bool pass = max_delta <= 1e-12 && elapsed < 5.0;
  report("C1", pass,
         "closed form vs tensor oracle: max |delta| " + fmt("%.3g", max_delta) +
             " over " + std::to_string(configs) + " configs, limit 5 s",
         elapsed);
}

// 2. Every random interference configuration satisfies the feasible-region
//    inequality, and the corner witness family attains it with equality.
void criterion_2() {
  Timer timer;
  Engine engine = make_engine(202);
  double max_violation = -1.0;
  for (std::size_t i = 0; i < 1000000; ++i) {
    const JointDecisionDistribution dist =
        joint_distribution_closed(sample_oam_config(engine));
    const double p12 = dist.prob(1, 2), p21 = dist.prob(2, 1);
    max_violation = std::max(
        max_violation, 2.0 * (p12 + p21) - 1.0 - (p12 - p21) * (p12 - p21));
  }
  double max_equality_gap = 0.0;
  for (int n = 0; n < 5; ++n) {
    for (int m = 0; m < 5; ++m) {
      for (int k = 0; k < 5; ++k) {
        const JointDecisionDistribution dist = joint_distribution_closed(
            BoundaryWitness::from_indices(n, m, k).to_config());
        const double p12 = dist.prob(1, 2), p21 = dist.prob(2, 1);
        max_equality_gap = std::max(
            max_equality_gap,
            std::abs(2.0 * (p12 + p21) - 1.0 - (p12 - p21) * (p12 - p21)));
      }
    }
  }
  const double elapsed = timer.seconds();
  const bool pass =
      max_violation <= 1e-12 && max_equality_gap <= 1e-12 && elapsed < 10.0;
  report("C2", pass,
         fmt("feasible region: max violation %.3g over 1e6 samples, witness "
             "equality gap %.3g over 125 corners, limit 10 s",
             max_violation, max_equality_gap),
         elapsed);
}

// 3. Entangled-source distributions stay inside the half box, keep an exactly
//    empty diagonal, and the closed form agrees with the general amplitudes.
void criterion_3() {
  Timer timer;
  Engine engine = make_engine(303);
  double max_off = 0.0, max_diag = 0.0, max_delta = 0.0;
  for (std::size_t i = 0; i < 1000000; ++i) {
    const EntangledConfig config = sample_entangled_config(engine);
    const JointDecisionDistribution closed = entangled_distribution(config);
    const JointDecisionDistribution general = entangled_distribution_general(config);
    max_off = std::max({max_off, closed.prob(1, 2), closed.prob(2, 1)});
    max_diag = std::max({max_diag, closed.prob(1, 1), closed.prob(2, 2),
                         general.prob(1, 1), general.prob(2, 2)});
    max_delta = std::max(max_delta, max_entry_delta(closed, general));
  }
  const bool pass =
      max_off <= 0.5 + 1e-12 && max_diag <= 1e-12 && max_delta <= 1e-12;
  report("C3", pass,
         fmt("entangled bounds: max cell %.17g <= 1/2, max diagonal %.3g, "
             "closed-vs-general max |delta| %.3g over 1e6 samples",
             max_off, max_diag, max_delta),
         timer.seconds());
}

// 4. Attenuated distributions stay inside the quarter box, and removing the
//    attenuators reproduces the horizontally polarized interference system.
void criterion_4() {
  Timer timer;
  Engine engine = make_engine(404);
  double max_cell = 0.0;
  for (std::size_t i = 0; i < 1000000; ++i) {
    const JointDecisionDistribution dist =
        attenuation_distribution(sample_attenuation_config(engine));
    max_cell = std::max({max_cell, dist.prob(1, 2), dist.prob(2, 1)});
  }
  double max_reduction_delta = 0.0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const AttenuationConfig sampled = sample_attenuation_config(engine);
    const AttenuationConfig unattenuated(sampled.base, 1.0, 1.0, 1.0, 1.0);
    max_reduction_delta = std::max(
        max_reduction_delta,
        max_entry_delta(attenuation_distribution(unattenuated),
                        joint_distribution_closed(sampled.base)));
  }
  const bool pass = max_cell <= 0.25 + 1e-12 && max_reduction_delta <= 1e-13;
  report("C4", pass,
         fmt("attenuation bounds: max cell %.17g <= 1/4 over 1e6 samples, "
             "unattenuated reduction max |delta| %.3g over 1e4 configs",
             max_cell, max_reduction_delta),
         timer.seconds());
}

// 5. Frontier maps invert each other across a log-spaced ratio grid, and the
//    landmark points sit exactly where the closed forms place them.
void criterion_5() {
  Timer timer;
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) {
    grid.push_back(std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / 400.0));
  }
  double max_roundtrip = 0.0;
  for (SystemId system :
       {SystemId::oam, SystemId::entangled, SystemId::attenuation}) {
    max_roundtrip = std::max(max_roundtrip, frontier_conversion_check(system, grid));
  }
  double max_spot = 0.0;
  auto spot = [&](double got, double expected) {
    max_spot = std::max(max_spot, std::abs(got - expected));
  };
  spot(oam_frontier_y_of_x(0.5, FrontierBranch::upper).value, 1.0);
  spot(oam_frontier_y_of_x(0.5, FrontierBranch::lower).value, 1.0);
  spot(entangled_frontier_y_of_x(0.25, FrontierBranch::upper), 2.0);
  spot(entangled_frontier_y_of_x(0.25, FrontierBranch::lower), 0.5);
  spot(attenuation_frontier_y_of_x(0.6875, FrontierBranch::upper), 4.0);
  spot(attenuation_frontier_y_of_x(0.6875, FrontierBranch::lower), 0.25);
  const bool pass = max_roundtrip <= 1e-9 && max_spot <= 1e-12;
  report("C5", pass,
         fmt("frontier round-trip: max relative error %.3g over 401 ratios x 3 "
             "systems, landmark gap %.3g",
             max_roundtrip, max_spot),
         timer.seconds());
}

// 6. The ratio solvers hit their targets, stay conflict-free where promised,
//    land on the frontier, and the forward map matches a hand value.
void criterion_6() {
  Timer timer;
  const double targets[] = {1e-4, 0.01, 0.25, 1.0, 4.0, 100.0, 1e4};
  double max_gap = 0.0, max_frontier_gap = 0.0;
  bool conflict_free = true;
  for (double r : targets) {
    const AsymmetryRatio target = AsymmetryRatio::finite(r);
    for (OamRatioLocus locus : {OamRatioLocus::a2b1_zero, OamRatioLocus::a1b2_zero}) {
      const RatioSolution s = solve_oam_ratio(target, locus);
      max_gap = std::max(max_gap, std::abs(s.achieved.value - r) / std::max(1.0, r));
      conflict_free = conflict_free && s.conflict == 0.0;
      max_frontier_gap =
          std::max(max_frontier_gap,
                   std::abs(s.loss + s.conflict - oam_frontier_x_of_y(target)));
    }
    const RatioSolution e = solve_entangled_ratio(target);
    max_gap = std::max(max_gap, std::abs(e.achieved.value - r) / std::max(1.0, r));
    const FrontierBranch branch = r >= 1.0 ? FrontierBranch::upper : FrontierBranch::lower;
    max_frontier_gap = std::max(
        max_frontier_gap,
        std::abs(e.loss + e.conflict - entangled_frontier_x_of_y(r, branch)));
    const RatioSolution a = solve_attenuation_ratio(target);
    max_gap = std::max(max_gap, std::abs(a.achieved.value - r) / std::max(1.0, r));
    max_frontier_gap = std::max(
        max_frontier_gap,
        std::abs(a.loss + a.conflict - attenuation_frontier_x_of_y(r, branch)));
  }
  const double silver = 1.0 + std::sqrt(2.0);
  const double forward_gap =
      std::abs(oam_ratio_forward(0.39269908169872415, OamRatioLocus::a2b1_zero) -
               silver * silver * silver * silver);
  const double elapsed = timer.seconds();
  const bool pass = max_gap <= 1e-9 && conflict_free && max_frontier_gap <= 1e-9 &&
                    forward_gap <= 1e-9 && elapsed < 1.0;
  report("C6", pass,
         fmt("ratio solver: max relative gap %.3g, max frontier gap %.3g, "
             "forward check gap %.3g, interference solutions conflict-free, "
             "limit 1 s",
             max_gap, max_frontier_gap, forward_gap),
         elapsed);
}

// 7. The rising-locus ratio map is strictly increasing across the open angle
//    interval and equals one exactly at zero.
void criterion_7() {
  Timer timer;
  const double quarter_pi = 0.78539816339744831;
  const double lo = -quarter_pi + 1e-6, hi = quarter_pi - 1e-6;
  const std::size_t points = 10000;
  bool strictly_increasing = true;
  double previous = oam_ratio_forward(lo, OamRatioLocus::a2b1_zero);
  for (std::size_t i = 1; i < points; ++i) {
    const double theta =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double value = oam_ratio_forward(theta, OamRatioLocus::a2b1_zero);
    strictly_increasing = strictly_increasing && value > previous;
    previous = value;
  }
  const double at_zero = oam_ratio_forward(0.0, OamRatioLocus::a2b1_zero);
  const bool pass = strictly_increasing && at_zero == 1.0;
  report("C7", pass,
         fmt("ratio map monotone on 1e4-point grid, value at zero %.17g "
             "(exactness required)",
             at_zero),
         timer.seconds());
}

// 8. In the plain-beamsplitter variant, demanding a conflict-free outcome
//    forces one of the two fully asymmetric corner states.
void criterion_8() {
  Timer timer;
  const double half_pi = 1.5707963267948966;
  const std::size_t points = 1501;
  double max_corner_distance = 0.0;
  double best_to_12 = 1.0, best_to_21 = 1.0;
  std::size_t qualifying = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const double ta = half_pi * static_cast<double>(i) / static_cast<double>(points - 1);
    const OamSuperposition a = OamSuperposition::normalized(
        {std::cos(ta), std::sin(ta)}, {0.0, 0.0}, OamSign::positive);
    for (std::size_t j = 0; j < points; ++j) {
      const double tb =
          half_pi * static_cast<double>(j) / static_cast<double>(points - 1);
      const OamSuperposition b = OamSuperposition::normalized(
          {std::cos(tb), std::sin(tb)}, {0.0, 0.0}, OamSign::negative);
      const JointDecisionDistribution dist = bs_variant_distribution(a, b);
      if (dist.conflict() > 1e-12) continue;
      ++qualifying;
      const double p12 = dist.prob(1, 2), p21 = dist.prob(2, 1);
      const double to_12 = std::abs(p12 - 1.0) + std::abs(p21);
      const double to_21 = std::abs(p12) + std::abs(p21 - 1.0);
      max_corner_distance = std::max(max_corner_distance, std::min(to_12, to_21));
      best_to_12 = std::min(best_to_12, to_12);
      best_to_21 = std::min(best_to_21, to_21);
    }
  }
  const bool pass = qualifying > 0 && max_corner_distance <= 1e-6 &&
                    best_to_12 <= 1e-6 && best_to_21 <= 1e-6;
  report("C8", pass,
         fmt("beamsplitter variant: conflict-free grid points within %.3g of a "
             "corner, corners reached within %.3g and %.3g",
             max_corner_distance, best_to_12, best_to_21) +
             " (" + std::to_string(qualifying) + " of " +
             std::to_string(points * points) + " points conflict-free)",
         timer.seconds());
}

// 9. Million-trial bandit runs track their analytic distributions cell by
//    cell, rerun bit-identically, and sweeps ignore the thread count.
void criterion_9() {
  Timer timer;
  const std::uint64_t trials = 1000000;
  const std::vector<double> means = {0.9, 0.1};
  double worst_sigma = 0.0;
  bool zero_cells_exact = true, reruns_identical = true;

  auto check_run = [&](const JointDecisionDistribution& dist, std::uint64_t seed) {
    const BanditRunReport run = run_bandit(dist, means, trials, seed, LossPolicy::raw);
    reruns_identical =
        reruns_identical &&
        run == run_bandit(dist, means, trials, seed, LossPolicy::raw);
    auto tally = [&](double p, std::uint64_t count) {
      if (p == 0.0) {
        zero_cells_exact = zero_cells_exact && count == 0;
        return;
      }
      const double sigma = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
      worst_sigma = std::max(
          worst_sigma,
          std::abs(static_cast<double>(count) - static_cast<double>(trials) * p) /
              sigma);
    };
    for (std::size_t k1 = 1; k1 <= 2; ++k1) {
      for (std::size_t k2 = 1; k2 <= 2; ++k2) {
        tally(dist.prob(k1, k2), run.pair_count(k1, k2));
      }
    }
    tally(dist.loss, run.loss_count);
    return run;
  };

  const OamSystemConfig oam_config(
      PolarizationAmplitudes(0.8, 0.6),
      OamSuperposition({0.6, 0.8}, {0.0, 0.78539816339744831}, OamSign::positive),
      OamSuperposition({0.28, 0.96}, {0.52359877559829882, 0.0}, OamSign::negative));
  check_run(joint_distribution_closed(oam_config), 9001);
  check_run(entangled_distribution(
                EntangledConfig(0.0, 1.5707963267948966, 0.0, 0.0, 0.4, 1.1, 0.25, 0.9)),
            9002);
  const OamSystemConfig attenuation_base(
      PolarizationAmplitudes(1.0, 0.0),
      OamSuperposition({0.6, 0.8}, {0.0, 0.0}, OamSign::positive),
      OamSuperposition({0.8, 0.6}, {0.0, 1.0471975511965976}, OamSign::negative));
  check_run(attenuation_distribution(
                AttenuationConfig(attenuation_base, 1.0, 0.7, 0.9, 1.0)),
            9003);

  const RatioSolution solved = solve_oam_ratio(AsymmetryRatio::finite(4.0));
  const BanditRunReport ratio_run = check_run(
      joint_distribution_closed(std::get<OamSystemConfig>(solved.parameters)), 9004);
  const double empirical_ratio = ratio_run.empirical_ratio();

  bool sweeps_identical = true;
  for (SystemId system :
       {SystemId::oam, SystemId::entangled, SystemId::attenuation}) {
    const std::vector<SweepRow> serial = run_sweep(system, 30000, 7700, 1);
    const std::vector<SweepRow> threaded = run_sweep(system, 30000, 7700, 3);
    sweeps_identical =
        sweeps_identical &&
        std::memcmp(serial.data(), threaded.data(),
                    serial.size() * sizeof(SweepRow)) == 0;
  }

  const bool pass = worst_sigma <= 4.0 && zero_cells_exact && reruns_identical &&
                    empirical_ratio >= 3.6 && empirical_ratio <= 4.4 &&
                    sweeps_identical;
  report("C9", pass,
         fmt("bandit fidelity at 1e6 trials: worst cell deviation %.2f sigma, "
             "empirical ratio %.3f for target 4",
             worst_sigma, empirical_ratio) +
             std::string(zero_cells_exact ? ", zero cells exact" : ", ZERO CELLS HIT") +
             (reruns_identical ? ", reruns identical" : ", RERUNS DIFFER") +
             (sweeps_identical ? ", sweeps thread-independent"
                               : ", SWEEPS THREAD-DEPENDENT"),
         timer.seconds());
}

// 10. Every distribution built anywhere in this process conserved probability.
void criterion_10() {
  Timer timer;
  const ConservationStats stats = conservation_stats();
  const bool pass = stats.count > 4000000 && stats.max_deviation <= 1e-12;
  report("C10", pass,
         "conservation: max |sum + loss - 1| " + fmt("%.3g", stats.max_deviation) +
             " across " + std::to_string(stats.count) + " distributions",
         timer.seconds());
}

}  // namespace

int main() {
  Timer total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria failed (%.2f s total)\n", g_failures,
              total.seconds());
  return g_failures;
}
