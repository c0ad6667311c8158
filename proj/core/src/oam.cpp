#include "photondm/oam.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <utility>

#include "photondm/angles.hpp"
#include "photondm/errors.hpp"

namespace photondm {

namespace {

std::atomic<std::uint64_t> g_conservation_count{0};
std::atomic<double> g_conservation_max{0.0};

void record_conservation(double deviation) {
  g_conservation_count.fetch_add(1, std::memory_order_relaxed);
  double seen = g_conservation_max.load(std::memory_order_relaxed);
  while (deviation > seen &&
         !g_conservation_max.compare_exchange_weak(seen, deviation,
                                                   std::memory_order_relaxed)) {
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw invalid_configuration(std::string(what) + " must be finite");
  }
}

Complex phase_factor(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

ConservationStats conservation_stats() {
  return {g_conservation_count.load(), g_conservation_max.load()};
}

void reset_conservation_stats() {
  g_conservation_count.store(0);
  g_conservation_max.store(0.0);
}

PolarizationAmplitudes::PolarizationAmplitudes(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in) {
  require_finite(alpha, "polarization amplitude");
  require_finite(beta, "polarization amplitude");
  const double norm2 = alpha * alpha + beta * beta;
  if (std::abs(norm2 - 1.0) > kNormalizationTol) {
    throw invalid_configuration("polarization amplitudes are not unit-normalized");
  }
}

PolarizationAmplitudes PolarizationAmplitudes::from_theta(double theta) {
  require_finite(theta, "polarization angle");
  return PolarizationAmplitudes(std::cos(theta), std::sin(theta));
}

PolarizationAmplitudes PolarizationAmplitudes::normalized(double alpha_in, double beta_in) {
  require_finite(alpha_in, "polarization amplitude");
  require_finite(beta_in, "polarization amplitude");
  const double n = std::hypot(alpha_in, beta_in);
  if (n == 0.0) {
    throw invalid_configuration("polarization amplitudes cannot both be zero");
  }
  return PolarizationAmplitudes(alpha_in / n, beta_in / n);
}

OamSuperposition::OamSuperposition(std::vector<double> amplitudes_in,
                                   std::vector<double> phases_in, OamSign sign_in)
    : amplitudes(std::move(amplitudes_in)), phases(std::move(phases_in)), sign(sign_in) {
  if (amplitudes.empty()) {
    throw invalid_configuration("superposition needs at least one arm");
  }
  if (amplitudes.size() != phases.size()) {
    throw invalid_configuration("superposition amplitude and phase counts differ");
  }
  double norm2 = 0.0;
  for (double a : amplitudes) {
    require_finite(a, "arm amplitude");
    norm2 += a * a;
  }
  if (std::abs(norm2 - 1.0) > kNormalizationTol) {
    throw invalid_configuration("arm amplitudes are not unit-normalized");
  }
  for (double& p : phases) {
    require_finite(p, "arm phase");
    p = reduce_angle(p);
  }
}

OamSuperposition OamSuperposition::normalized(std::vector<double> amplitudes_in,
                                              std::vector<double> phases_in,
                                              OamSign sign_in) {
  double norm2 = 0.0;
  for (double a : amplitudes_in) {
    require_finite(a, "arm amplitude");
    norm2 += a * a;
  }
  if (norm2 == 0.0) {
    throw invalid_configuration("arm amplitudes cannot all be zero");
  }
  const double n = std::sqrt(norm2);
  for (double& a : amplitudes_in) a /= n;
  return OamSuperposition(std::move(amplitudes_in), std::move(phases_in), sign_in);
}

OamSystemConfig::OamSystemConfig(PolarizationAmplitudes pol_in, OamSuperposition phi_in,
                                 OamSuperposition psi_in)
    : pol(pol_in), phi_input(std::move(phi_in)), psi_input(std::move(psi_in)) {
  if (phi_input.arm_count() != psi_input.arm_count()) {
    throw invalid_configuration("the two input photons must share one arm count");
  }
  if (phi_input.arm_count() < 2) {
    throw invalid_configuration("the system needs at least two arms");
  }
  if (phi_input.sign != OamSign::positive || psi_input.sign != OamSign::negative) {
    throw invalid_configuration(
        "inputs must use opposite mode families (phi positive, psi negative)");
  }
}

double JointDecisionDistribution::prob(std::size_t k1, std::size_t k2) const {
  if (k1 < 1 || k1 > arm_count || k2 < 1 || k2 > arm_count) {
    throw contract_violation("arm index out of range");
  }
  return p[(k1 - 1) * arm_count + (k2 - 1)];
}

double JointDecisionDistribution::sum() const {
  double acc = 0.0;
  for (double v : p) acc += v;
  return acc;
}

double JointDecisionDistribution::conflict() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < arm_count; ++k) acc += p[k * arm_count + k];
  return acc;
}

double JointDecisionDistribution::ratio() const {
  if (arm_count != 2) {
    throw contract_violation("ratio is defined for two-arm systems only");
  }
  return prob(2, 1) / prob(1, 2);
}

JointDecisionDistribution JointDecisionDistribution::checked(std::size_t arm_count,
                                                             std::vector<double> p,
                                                             double loss) {
  if (arm_count == 0 || p.size() != arm_count * arm_count) {
    throw contract_violation("distribution shape mismatch");
  }
  auto clamp_entry = [](double& v, const char* what) {
    if (!std::isfinite(v)) {
      throw contract_violation(std::string(what) + " is not finite");
    }
    if (v < 0.0) {
      if (v < -kProbabilityClampTol) {
        throw contract_violation(std::string(what) + " is negative beyond rounding noise");
      }
      v = 0.0;
    }
  };
  double total = 0.0;
  for (double& v : p) {
    clamp_entry(v, "joint probability");
    total += v;
  }
  clamp_entry(loss, "loss");
  const double deviation = std::abs(total + loss - 1.0);
  if (deviation > kConservationTol) {
    throw contract_violation("probabilities and loss do not sum to one");
  }
  record_conservation(deviation);
  JointDecisionDistribution dist;
  dist.arm_count = arm_count;
  dist.p = std::move(p);
  dist.loss = loss;
  return dist;
}

ComplexMatrix build_beamsplitter(std::size_t arm_count) {
  if (arm_count == 0) {
    throw invalid_configuration("beamsplitter needs at least one arm");
  }
  const std::size_t K = arm_count;
  const double r = 1.0 / std::sqrt(2.0);
  const Complex t{0.0, r};
  ComplexMatrix m(2 * K, 2 * K);
  for (std::size_t k = 0; k < K; ++k) {
    m.at(k, k) = r;
    m.at(k, K + k) = t;
    m.at(K + k, k) = t;
    m.at(K + k, K + k) = r;
  }
  return m;
}

ComplexMatrix build_mirror(std::size_t arm_count) {
  if (arm_count == 0) {
    throw invalid_configuration("mirror needs at least one arm");
  }
  const std::size_t K = arm_count;
  const Complex i{0.0, 1.0};
  ComplexMatrix m(2 * K, 2 * K);
  for (std::size_t k = 0; k < K; ++k) {
    m.at(k, K + k) = i;
    m.at(K + k, k) = i;
  }
  return m;
}

ComplexMatrix build_pbs(std::size_t arm_count) {
  if (arm_count == 0) {
    throw invalid_configuration("polarizing splitter needs at least one arm");
  }
  const std::size_t K = arm_count;
  const Complex i{0.0, 1.0};
  ComplexMatrix m(4 * K, 4 * K);
  for (std::size_t j = 0; j < 2 * K; ++j) m.at(j, j) = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    m.at(2 * K + k, 3 * K + k) = i;
    m.at(3 * K + k, 2 * K + k) = i;
  }
  return m;
}

ComplexMatrix build_system_operator(std::size_t arm_count) {
  const std::size_t K = arm_count;
  const ComplexMatrix stage = matmul(build_mirror(K), build_beamsplitter(K));
  const ComplexMatrix lifted = matmul(build_pbs(K), kron(identity(2), stage));
  ComplexMatrix fold(2 * K, 4 * K);
  for (std::size_t r = 0; r < 2 * K; ++r) {
    fold.at(r, r) = 1.0;
    fold.at(r, 2 * K + r) = 1.0;
  }
  return matmul(fold, lifted);
}

ComplexVector propagate_input(const OamSystemConfig& config, Photon which) {
  const std::size_t K = config.arm_count();
  const ComplexVector pol{Complex{config.pol.alpha}, Complex{config.pol.beta}};
  const OamSuperposition& s =
      (which == Photon::phi) ? config.phi_input : config.psi_input;
  ComplexVector modes(2 * K);
  const std::size_t offset = (s.sign == OamSign::positive) ? 0 : K;
  for (std::size_t k = 0; k < K; ++k) {
    modes[offset + k] = s.amplitudes[k] * phase_factor(s.phases[k]);
  }
  return matvec(build_system_operator(K), kron(pol, modes));
}

Complex joint_amplitude(const OamSystemConfig& config, std::size_t k1, std::size_t k2) {
  const std::size_t K = config.arm_count();
  if (k1 < 1 || k1 > K || k2 < 1 || k2 > K) {
    throw contract_violation("arm index out of range");
  }
  const double sum = config.pol.alpha + config.pol.beta;
  const double diff = config.pol.alpha - config.pol.beta;
  const auto& a = config.phi_input.amplitudes;
  const auto& phi = config.phi_input.phases;
  const auto& b = config.psi_input.amplitudes;
  const auto& psi = config.psi_input.phases;
  const std::size_t i = k1 - 1;
  const std::size_t j = k2 - 1;
  return 0.5 * (sum * sum * a[j] * b[i] * phase_factor(phi[j] + psi[i]) -
                diff * diff * a[i] * b[j] * phase_factor(phi[i] + psi[j]));
}

JointDecisionDistribution joint_distribution_closed(const OamSystemConfig& config) {
  const std::size_t K = config.arm_count();
  const double sum = config.pol.alpha + config.pol.beta;
  const double diff = config.pol.alpha - config.pol.beta;
  const double sp = sum * sum;
  const double sm = diff * diff;
  const auto& a = config.phi_input.amplitudes;
  const auto& b = config.psi_input.amplitudes;
  std::vector<double> delta(K);
  for (std::size_t k = 0; k < K; ++k) {
    delta[k] = config.phi_input.phases[k] - config.psi_input.phases[k];
  }
  std::vector<double> p(K * K);
  double total = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      const double v = 0.25 * (sp * sp * a[j] * a[j] * b[i] * b[i] +
                               sm * sm * a[i] * a[i] * b[j] * b[j]) -
                       0.5 * sp * sm * a[i] * a[j] * b[i] * b[j] *
                           std::cos(delta[i] - delta[j]);
      p[i * K + j] = v;
      total += v;
    }
  }
  return JointDecisionDistribution::checked(K, std::move(p), 1.0 - total);
}

JointDecisionDistribution joint_distribution_oracle(const OamSystemConfig& config) {
  const std::size_t K = config.arm_count();
  const ComplexVector phi_out = propagate_input(config, Photon::phi);
  const ComplexVector psi_out = propagate_input(config, Photon::psi);
  std::vector<double> p(K * K);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      const Complex amp = phi_out[K + i] * psi_out[j] + psi_out[K + i] * phi_out[j];
      p[i * K + j] = std::norm(amp);
    }
  }
  // Loss: both photons at the same detector. Indistinguishable same-mode
  // events carry the bosonic sqrt(2) enhancement.
  double loss = 0.0;
  for (std::size_t offset : {std::size_t{0}, K}) {
    for (std::size_t m = 0; m < K; ++m) {
      loss += 2.0 * std::norm(phi_out[offset + m] * psi_out[offset + m]);
      for (std::size_t n = m + 1; n < K; ++n) {
        loss += std::norm(phi_out[offset + m] * psi_out[offset + n] +
                          phi_out[offset + n] * psi_out[offset + m]);
      }
    }
  }
  return JointDecisionDistribution::checked(K, std::move(p), loss);
}

double asymmetry_difference(const OamSystemConfig& config, std::size_t k1,
                            std::size_t k2) {
  const std::size_t K = config.arm_count();
  if (k1 < 1 || k1 > K || k2 < 1 || k2 > K) {
    throw contract_violation("arm index out of range");
  }
  const auto& a = config.phi_input.amplitudes;
  const auto& b = config.psi_input.amplitudes;
  const std::size_t i = k1 - 1;
  const std::size_t j = k2 - 1;
  return 2.0 * config.pol.alpha * config.pol.beta *
         (a[j] * a[j] * b[i] * b[i] - a[i] * a[i] * b[j] * b[j]);
}

JointDecisionDistribution bs_variant_distribution(const OamSuperposition& phi_input,
                                                  const OamSuperposition& psi_input) {
  if (phi_input.arm_count() != 2 || psi_input.arm_count() != 2) {
    throw unsupported_configuration("the beamsplitter variant is defined for two arms");
  }
  if (phi_input.sign != OamSign::positive || psi_input.sign != OamSign::negative) {
    throw invalid_configuration(
        "inputs must use opposite mode families (phi positive, psi negative)");
  }
  const double a1 = phi_input.amplitudes[0];
  const double a2 = phi_input.amplitudes[1];
  const double b1 = psi_input.amplitudes[0];
  const double b2 = psi_input.amplitudes[1];
  const double cross = a2 * a2 * b1 * b1 + a1 * a1 * b2 * b2;
  std::vector<double> p{0.25 * a1 * a1 * b1 * b1, a2 * a2 * b1 * b1,
                        a1 * a1 * b2 * b2, 0.25 * a2 * a2 * b2 * b2};
  return JointDecisionDistribution::checked(2, std::move(p), 0.75 * (1.0 - cross));
}

}  // namespace photondm
