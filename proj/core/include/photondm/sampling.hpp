#pragma once

#include <cstdint>
#include <vector>

#include "photondm/attenuation.hpp"
#include "photondm/entangled.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/oam.hpp"
#include "photondm/rng.hpp"

namespace photondm {

// Random configurations for Monte Carlo sweeps. Each sampler consumes engine
// draws in a fixed documented order so a seed pins the configuration exactly.
//
// Interference system (draw order: polarization angle; a-amplitudes; a-phases;
// b-amplitudes; b-phases). Two-arm amplitude pairs come from one angle draw,
// larger arm counts from K weight draws plus K sign draws.
OamSystemConfig sample_oam_config(Engine& engine, std::size_t arm_count = 2);

// Entangled source, restricted to the closed-form regime (theta2 = theta1 +
// pi/2, shared half-wave-plate angle). Draw order: theta1; half-wave plate;
// alpha_x; beta_x; alpha_y; beta_y.
EntangledConfig sample_entangled_config(Engine& engine);

// Attenuation system. Draw order: a-angle; phi1; phi2; b-angle; psi1; psi2;
// d_x1; d_x2; d_y1; d_y2.
AttenuationConfig sample_attenuation_config(Engine& engine);

// Samples a two-arm configuration of `system` and evaluates its distribution
// (closed form for the interference system).
JointDecisionDistribution sample_distribution(SystemId system, Engine& engine);

// One record of a sweep over random configurations.
struct SweepRow {
  double p12 = 0.0;
  double p21 = 0.0;
  double loss = 0.0;
  double conflict = 0.0;
  double ratio = 0.0;  // p21 / p12; may be inf or nan in degenerate corners
};

// Row `index` of the sweep keyed by `master_seed`: a fresh engine is seeded
// with mix_seed(master_seed, index), so any execution order yields identical
// rows.
SweepRow sweep_row(SystemId system, std::uint64_t master_seed, std::uint64_t index);

// Runs `samples` rows (>= 1), optionally across threads; the result is
// byte-identical regardless of `threads`.
std::vector<SweepRow> run_sweep(SystemId system, std::size_t samples,
                                std::uint64_t master_seed, unsigned threads = 1);

// Applies the system's feasibility predicate to a row.
bool row_feasible(SystemId system, const SweepRow& row);

}  // namespace photondm
