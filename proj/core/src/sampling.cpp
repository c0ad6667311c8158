#include "photondm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>
#include <utility>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

// Amplitude vector for one photon. Two arms use a single angle draw (exactly
// normalized); larger arm counts draw K weights and K signs and normalize.
std::vector<double> sample_arm_amplitudes(Engine& engine, std::size_t arm_count) {
  if (arm_count == 2) {
    const double angle = uniform_angle(engine);
    return {std::cos(angle), std::sin(angle)};
  }
  std::vector<double> weights(arm_count);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& w : weights) {
      w = uniform_unit(engine);
      total += w;
    }
  } while (total == 0.0);
  std::vector<double> amplitudes(arm_count);
  for (std::size_t k = 0; k < arm_count; ++k) {
    const double sign = (uniform_unit(engine) < 0.5) ? -1.0 : 1.0;
    amplitudes[k] = sign * std::sqrt(weights[k] / total);
  }
  return amplitudes;
}

std::vector<double> sample_phases(Engine& engine, std::size_t arm_count) {
  std::vector<double> phases(arm_count);
  for (double& p : phases) p = uniform_angle(engine);
  return phases;
}

}  // namespace

OamSystemConfig sample_oam_config(Engine& engine, std::size_t arm_count) {
  if (arm_count < 2) {
    throw contract_violation("the system needs at least two arms");
  }
  PolarizationAmplitudes pol = PolarizationAmplitudes::from_theta(uniform_angle(engine));
  std::vector<double> a = sample_arm_amplitudes(engine, arm_count);
  std::vector<double> phi = sample_phases(engine, arm_count);
  std::vector<double> b = sample_arm_amplitudes(engine, arm_count);
  std::vector<double> psi = sample_phases(engine, arm_count);
  return OamSystemConfig(pol,
                         OamSuperposition(std::move(a), std::move(phi), OamSign::positive),
                         OamSuperposition(std::move(b), std::move(psi), OamSign::negative));
}

EntangledConfig sample_entangled_config(Engine& engine) {
  const double theta1 = uniform_angle(engine);
  const double hw = uniform_angle(engine);
  const double alpha_x = uniform_angle(engine);
  const double beta_x = uniform_angle(engine);
  const double alpha_y = uniform_angle(engine);
  const double beta_y = uniform_angle(engine);
  return EntangledConfig(theta1, theta1 + std::numbers::pi / 2.0, hw, hw, alpha_x,
                         beta_x, alpha_y, beta_y);
}

AttenuationConfig sample_attenuation_config(Engine& engine) {
  std::vector<double> a = sample_arm_amplitudes(engine, 2);
  std::vector<double> phi = sample_phases(engine, 2);
  std::vector<double> b = sample_arm_amplitudes(engine, 2);
  std::vector<double> psi = sample_phases(engine, 2);
  const double d_x1 = uniform_unit(engine);
  const double d_x2 = uniform_unit(engine);
  const double d_y1 = uniform_unit(engine);
  const double d_y2 = uniform_unit(engine);
  OamSystemConfig base(PolarizationAmplitudes(1.0, 0.0),
                       OamSuperposition(std::move(a), std::move(phi), OamSign::positive),
                       OamSuperposition(std::move(b), std::move(psi), OamSign::negative));
  return AttenuationConfig(std::move(base), d_x1, d_x2, d_y1, d_y2);
}

JointDecisionDistribution sample_distribution(SystemId system, Engine& engine) {
  switch (system) {
    case SystemId::oam:
      return joint_distribution_closed(sample_oam_config(engine, 2));
    case SystemId::entangled:
      return entangled_distribution(sample_entangled_config(engine));
    case SystemId::attenuation:
      return attenuation_distribution(sample_attenuation_config(engine));
  }
  throw contract_violation("unknown system");
}

SweepRow sweep_row(SystemId system, std::uint64_t master_seed, std::uint64_t index) {
  Engine engine = make_engine(mix_seed(master_seed, index));
  const JointDecisionDistribution dist = sample_distribution(system, engine);
  SweepRow row;
  row.p12 = dist.prob(1, 2);
  row.p21 = dist.prob(2, 1);
  row.loss = dist.loss;
  row.conflict = dist.conflict();
  row.ratio = row.p21 / row.p12;
  return row;
}

std::vector<SweepRow> run_sweep(SystemId system, std::size_t samples,
                                std::uint64_t master_seed, unsigned threads) {
  if (samples == 0) {
    throw contract_violation("a sweep needs at least one sample");
  }
  std::vector<SweepRow> rows(samples);
  if (threads <= 1) {
    for (std::size_t i = 0; i < samples; ++i) {
      rows[i] = sweep_row(system, master_seed, i);
    }
    return rows;
  }
  const std::size_t worker_count = std::min<std::size_t>(threads, samples);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> failures(worker_count);
  workers.reserve(worker_count);
  for (std::size_t t = 0; t < worker_count; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < samples; i += worker_count) {
          rows[i] = sweep_row(system, master_seed, i);
        }
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return rows;
}

bool row_feasible(SystemId system, const SweepRow& row) {
  switch (system) {
    case SystemId::oam:
      return oam_feasible(row.p12, row.p21);
    case SystemId::entangled:
      return entangled_feasible(row.p12, row.p21);
    case SystemId::attenuation:
      return attenuation_feasible(row.p12, row.p21);
  }
  throw contract_violation("unknown system");
}

}  // namespace photondm
