#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "photondm/tensor.hpp"

namespace photondm {

// Tolerance for unit-normalization checks on caller-supplied amplitudes.
inline constexpr double kNormalizationTol = 1e-12;

// Probability entries in [-kProbabilityClampTol, 0) are treated as rounding
// noise and clamped to zero; anything more negative is a hard error.
inline constexpr double kProbabilityClampTol = 1e-12;

// Maximum allowed |sum(p) + loss - 1| for any produced distribution.
inline constexpr double kConservationTol = 1e-12;

// Real polarization amplitudes (alpha, beta) with alpha^2 + beta^2 = 1.
// Both photons of a pair share one instance.
struct PolarizationAmplitudes {
  double alpha = 1.0;
  double beta = 0.0;

  PolarizationAmplitudes() = default;
  // Enforces |alpha^2 + beta^2 - 1| <= kNormalizationTol.
  PolarizationAmplitudes(double alpha_in, double beta_in);
  // (cos(theta), sin(theta)); normalized by construction.
  static PolarizationAmplitudes from_theta(double theta);
  // Rescales an arbitrary non-zero pair to unit norm.
  static PolarizationAmplitudes normalized(double alpha_in, double beta_in);
};

// Which sign family of spatial modes a photon occupies. The two input photons
// of a system must use opposite families.
enum class OamSign { positive, negative };

// One photon's superposition over K decision arms: real amplitudes with
// sum of squares 1, and per-arm phases stored reduced to [0, 2*pi).
struct OamSuperposition {
  std::vector<double> amplitudes;
  std::vector<double> phases;
  OamSign sign = OamSign::positive;

  OamSuperposition() = default;
  // Enforces K >= 1, matching lengths, finiteness and unit normalization.
  OamSuperposition(std::vector<double> amplitudes_in, std::vector<double> phases_in,
                   OamSign sign_in);
  // Rescales arbitrary non-zero amplitudes to unit norm.
  static OamSuperposition normalized(std::vector<double> amplitudes_in,
                                     std::vector<double> phases_in, OamSign sign_in);

  std::size_t arm_count() const { return amplitudes.size(); }
};

// Full configuration of the interference system: shared polarization plus the
// two input superpositions (photon X side uses the positive family, photon Y
// side the negative family). Requires K >= 2 and equal arm counts.
struct OamSystemConfig {
  PolarizationAmplitudes pol;
  OamSuperposition phi_input;  // positive-sign photon, amplitudes a_k, phases phi_k
  OamSuperposition psi_input;  // negative-sign photon, amplitudes b_k, phases psi_k

  OamSystemConfig() = default;
  OamSystemConfig(PolarizationAmplitudes pol_in, OamSuperposition phi_in,
                  OamSuperposition psi_in);

  std::size_t arm_count() const { return phi_input.arm_count(); }
};

// Joint decision probabilities p[k1][k2] = P(player X picks arm k1, player Y
// picks arm k2) plus loss = P(no joint decision). Row-major K x K storage.
// Construct through `checked` so the conservation invariant is enforced.
struct JointDecisionDistribution {
  std::size_t arm_count = 0;
  std::vector<double> p;  // row-major, size arm_count^2
  double loss = 0.0;

  // 1-based arm indices; throws contract_violation when out of range.
  double prob(std::size_t k1, std::size_t k2) const;

  double sum() const;       // total joint-decision probability
  double conflict() const;  // probability both players pick the same arm
  // p21 / p12 for two-arm systems (may be inf or nan in degenerate corners);
  // throws contract_violation when arm_count != 2.
  double ratio() const;

  // Validates shape, clamps tiny negative rounding noise, verifies
  // |sum + loss - 1| <= kConservationTol (throws contract_violation otherwise)
  // and records the deviation in the process-wide conservation statistics.
  static JointDecisionDistribution checked(std::size_t arm_count, std::vector<double> p,
                                           double loss);
};

// Process-wide record of every distribution built through `checked`.
struct ConservationStats {
  std::uint64_t count = 0;
  double max_deviation = 0.0;
};
ConservationStats conservation_stats();
void reset_conservation_stats();

// --- linear-optical elements -------------------------------------------------
// Mode layout for one photon: index k in [0, K) is the positive family of arm
// k+1, index K + k the negative family. The polarization factor doubles this
// to 4K, horizontal block first.

// Balanced beamsplitter on the 2K spatial modes.
ComplexMatrix build_beamsplitter(std::size_t arm_count);

// Mirror: swaps the two families with a phase i.
ComplexMatrix build_mirror(std::size_t arm_count);

// Polarizing splitter on the full 4K space: identity on the horizontal block,
// i * family-swap on the vertical block.
ComplexMatrix build_pbs(std::size_t arm_count);

// Complete system: polarization-lifted mirror*beamsplitter followed by the
// polarizing splitter, with the two polarization blocks folded together.
// Result is 2K x 4K and maps input states to detector-mode amplitudes
// (indices [0, K) = detector X arms, [K, 2K) = detector Y arms).
ComplexMatrix build_system_operator(std::size_t arm_count);

enum class Photon { phi, psi };

// Propagates one input photon through the system operator; returns the 2K
// detector-mode amplitude vector.
ComplexVector propagate_input(const OamSystemConfig& config, Photon which);

// Two-photon amplitude for the joint event (X decides arm k1, Y decides arm
// k2), combining both photon-to-detector assignments. 1-based indices.
Complex joint_amplitude(const OamSystemConfig& config, std::size_t k1, std::size_t k2);

// Closed-form joint distribution (real arithmetic, no propagation).
JointDecisionDistribution joint_distribution_closed(const OamSystemConfig& config);

// Reference path: full propagation of both photons, explicit pairing of the
// output amplitudes, and loss accumulated directly from the same-detector
// events. Slower but independent of the closed form.
JointDecisionDistribution joint_distribution_oracle(const OamSystemConfig& config);

// p(k1, k2) - p(k2, k1) in closed form:
// 2 * alpha * beta * (a_k2^2 b_k1^2 - a_k1^2 b_k2^2). 1-based indices.
double asymmetry_difference(const OamSystemConfig& config, std::size_t k1, std::size_t k2);

// Variant with a plain beamsplitter in place of the polarizing splitter;
// polarization drops out, so only the two superpositions enter. Two arms only.
JointDecisionDistribution bs_variant_distribution(const OamSuperposition& phi_input,
                                                  const OamSuperposition& psi_input);

}  // namespace photondm
