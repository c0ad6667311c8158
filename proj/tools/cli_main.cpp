// Command-line front end for the photondm library: prints joint decision
// distributions, runs random parameter sweeps, tabulates feasibility
// frontiers, solves for target asymmetry ratios and runs bandit simulations.
// Every number this tool emits comes from a library call; the tool itself
// only parses flags and formats output.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photondm/attenuation.hpp"
#include "photondm/bandit.hpp"
#include "photondm/entangled.hpp"
#include "photondm/errors.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/io.hpp"
#include "photondm/oam.hpp"
#include "photondm/ratio_solver.hpp"
#include "photondm/rng.hpp"
#include "photondm/sampling.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace photondm;

namespace {

constexpr double kResidualGate = 1e-9;

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

std::vector<double> parse_list(const std::string& flag, const std::string& text,
                               std::size_t min_len = 2) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string field = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    const char* begin = field.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size()) {
      throw CLI::ValidationError(flag, "'" + field + "' is not a number");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() < min_len) {
    throw CLI::ValidationError(
        flag, "expected at least " + std::to_string(min_len) +
                  " comma-separated values, got " + std::to_string(values.size()));
  }
  return values;
}

SystemId parse_system(const std::string& flag, const std::string& name) {
  if (name == "oam") return SystemId::oam;
  if (name == "entangled") return SystemId::entangled;
  if (name == "attenuation") return SystemId::attenuation;
  throw CLI::ValidationError(flag, "unknown system '" + name +
                                       "' (expected oam, entangled or attenuation)");
}

AsymmetryRatio parse_ratio(const std::string& flag, const std::string& text) {
  if (text == "inf") return AsymmetryRatio::infinite();
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size()) {
    throw CLI::ValidationError(flag, "'" + text + "' is not a number or 'inf'");
  }
  if (!(v > 0.0)) {
    throw CLI::ValidationError(flag, "ratio must be positive (or 'inf')");
  }
  return AsymmetryRatio::finite(v);
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) write_text_file_atomic(out_path, text);
}

// ---------------------------------------------------------------------------
// Shared per-system parameter flags (used by probs and bandit)
// ---------------------------------------------------------------------------

struct SystemParams {
  std::string system = "oam";
  // interference system (also the attenuation base and the bs variant)
  double alpha = 0.70710678118654752;
  double beta = 0.70710678118654752;
  std::string a = "0.70710678118654752,0.70710678118654752";
  std::string b = "0.70710678118654752,0.70710678118654752";
  std::string phi;  // empty = all zeros
  std::string psi;
  // entangled system
  double theta1 = 0.0;
  double theta2 = 1.5707963267948966;
  double hw1 = 0.0;
  double hw2 = 0.0;
  double ax = 0.0;
  double bx = 0.0;
  double ay = 0.0;
  double by = 0.0;
  // attenuation transmissions
  std::string dx = "1,1";
  std::string dy = "1,1";
};

void add_system_flags(CLI::App* cmd, SystemParams& p, bool allow_bs) {
  std::string systems = allow_bs ? "oam, bs, entangled or attenuation"
                                 : "oam, entangled or attenuation";
  cmd->add_option("--system", p.system, "System to evaluate (" + systems + ")")
      ->capture_default_str();
  cmd->add_option("--alpha", p.alpha, "Polarization weight of player X's branch")
      ->capture_default_str();
  cmd->add_option("--beta", p.beta, "Polarization weight of player Y's branch")
      ->capture_default_str();
  cmd->add_option("--a", p.a, "Positive-family mode amplitudes (comma-separated)")
      ->capture_default_str();
  cmd->add_option("--b", p.b, "Negative-family mode amplitudes (comma-separated)")
      ->capture_default_str();
  cmd->add_option("--phi", p.phi, "Positive-family phases in radians (default all 0)");
  cmd->add_option("--psi", p.psi, "Negative-family phases in radians (default all 0)");
  cmd->add_option("--theta1", p.theta1, "Entangled: first source angle (radians)")
      ->capture_default_str();
  cmd->add_option("--theta2", p.theta2, "Entangled: second source angle (radians)")
      ->capture_default_str();
  cmd->add_option("--hw1", p.hw1, "Entangled: station X half-wave plate angle")
      ->capture_default_str();
  cmd->add_option("--hw2", p.hw2, "Entangled: station Y half-wave plate angle")
      ->capture_default_str();
  cmd->add_option("--ax", p.ax, "Entangled: station X polarizer angle alpha_X")
      ->capture_default_str();
  cmd->add_option("--bx", p.bx, "Entangled: station X polarizer angle beta_X")
      ->capture_default_str();
  cmd->add_option("--ay", p.ay, "Entangled: station Y polarizer angle alpha_Y")
      ->capture_default_str();
  cmd->add_option("--by", p.by, "Entangled: station Y polarizer angle beta_Y")
      ->capture_default_str();
  cmd->add_option("--dx", p.dx, "Attenuation: player X transmissions d_x1,d_x2")
      ->capture_default_str();
  cmd->add_option("--dy", p.dy, "Attenuation: player Y transmissions d_y1,d_y2")
      ->capture_default_str();
}

std::vector<double> phases_or_zero(const std::string& flag, const std::string& text,
                                   std::size_t arm_count) {
  if (text.empty()) return std::vector<double>(arm_count, 0.0);
  std::vector<double> phases = parse_list(flag, text);
  if (phases.size() != arm_count) {
    throw CLI::ValidationError(flag, "expected " + std::to_string(arm_count) +
                                         " phases to match the mode amplitudes");
  }
  return phases;
}

OamSystemConfig make_oam_config(const SystemParams& p, bool horizontal) {
  std::vector<double> a = parse_list("--a", p.a);
  std::vector<double> b = parse_list("--b", p.b);
  if (a.size() != b.size()) {
    throw CLI::ValidationError("--b", "expected as many entries as --a");
  }
  std::vector<double> phi = phases_or_zero("--phi", p.phi, a.size());
  std::vector<double> psi = phases_or_zero("--psi", p.psi, b.size());
  try {
    PolarizationAmplitudes pol = horizontal
                                     ? PolarizationAmplitudes::normalized(1.0, 0.0)
                                     : PolarizationAmplitudes::normalized(p.alpha, p.beta);
    return OamSystemConfig(
        pol, OamSuperposition::normalized(a, phi, OamSign::positive),
        OamSuperposition::normalized(b, psi, OamSign::negative));
  } catch (const error& e) {
    throw CLI::ValidationError("invalid system parameters: " + std::string(e.what()));
  }
}

EntangledConfig make_entangled_config(const SystemParams& p) {
  return EntangledConfig(p.theta1, p.theta2, p.hw1, p.hw2, p.ax, p.bx, p.ay, p.by);
}

AttenuationConfig make_attenuation_config(const SystemParams& p) {
  std::vector<double> dx = parse_list("--dx", p.dx);
  std::vector<double> dy = parse_list("--dy", p.dy);
  if (dx.size() != 2) throw CLI::ValidationError("--dx", "expected exactly 2 values");
  if (dy.size() != 2) throw CLI::ValidationError("--dy", "expected exactly 2 values");
  OamSystemConfig base = make_oam_config(p, /*horizontal=*/true);
  if (base.arm_count() != 2) {
    throw CLI::ValidationError("--a", "the attenuation system requires exactly 2 arms");
  }
  try {
    return AttenuationConfig(base, dx[0], dx[1], dy[0], dy[1]);
  } catch (const error& e) {
    throw CLI::ValidationError("invalid system parameters: " + std::string(e.what()));
  }
}

JointDecisionDistribution params_to_distribution(const SystemParams& p) {
  if (p.system == "bs") {
    OamSystemConfig config = make_oam_config(p, /*horizontal=*/false);
    if (config.arm_count() != 2) {
      throw CLI::ValidationError("--a", "the bs variant requires exactly 2 arms");
    }
    return bs_variant_distribution(config.phi_input, config.psi_input);
  }
  switch (parse_system("--system", p.system)) {
    case SystemId::oam:
      return joint_distribution_closed(make_oam_config(p, false));
    case SystemId::entangled:
      return entangled_distribution_general(make_entangled_config(p));
    case SystemId::attenuation:
      return attenuation_distribution(make_attenuation_config(p));
  }
  throw CLI::ValidationError("--system", "unknown system '" + p.system + "'");
}

// ---------------------------------------------------------------------------
// probs
// ---------------------------------------------------------------------------

std::string probs_text(const std::string& system, const JointDecisionDistribution& d) {
  std::ostringstream out;
  out << "system = " << system << '\n';
  out << "arm_count = " << d.arm_count << '\n';
  for (std::size_t k1 = 1; k1 <= d.arm_count; ++k1) {
    for (std::size_t k2 = 1; k2 <= d.arm_count; ++k2) {
      if (d.arm_count == 2) {
        out << 'p' << k1 << k2;
      } else {
        out << "p[" << k1 << "][" << k2 << ']';
      }
      out << " = " << format_double(d.prob(k1, k2)) << '\n';
    }
  }
  out << "loss = " << format_double(d.loss) << '\n';
  out << "conflict = " << format_double(d.conflict()) << '\n';
  if (d.arm_count == 2) {
    out << "ratio = " << format_double(d.ratio()) << '\n';
  }
  return out.str();
}

ordered_json distribution_json(const JointDecisionDistribution& d) {
  ordered_json j;
  j["arm_count"] = d.arm_count;
  ordered_json rows = ordered_json::array();
  for (std::size_t k1 = 1; k1 <= d.arm_count; ++k1) {
    ordered_json row = ordered_json::array();
    for (std::size_t k2 = 1; k2 <= d.arm_count; ++k2) {
      row.push_back(format_double(d.prob(k1, k2)));
    }
    rows.push_back(row);
  }
  j["p"] = rows;
  j["loss"] = format_double(d.loss);
  j["conflict"] = format_double(d.conflict());
  if (d.arm_count == 2) j["ratio"] = format_double(d.ratio());
  return j;
}

int cmd_probs(const SystemParams& params, const std::string& format,
              const std::string& out_path) {
  JointDecisionDistribution dist = params_to_distribution(params);
  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "probs";
    j["system"] = params.system;
    j["distribution"] = distribution_json(dist);
    emit(j.dump(2) + "\n", out_path);
  } else {
    emit(probs_text(params.system, dist), out_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const std::string& system_name, std::uint64_t samples,
              std::uint64_t seed, unsigned threads, const std::string& format,
              const std::string& out_path) {
  SystemId system = parse_system("--system", system_name);
  if (samples == 0) throw CLI::ValidationError("--samples", "must be at least 1");
  if (threads == 0) throw CLI::ValidationError("--threads", "must be at least 1");
  std::vector<SweepRow> rows = run_sweep(system, samples, seed, threads);

  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "sweep";
    j["system"] = system_name;
    j["samples"] = samples;
    j["seed"] = seed;
    j["rng"] = kGeneratorDescription;
    ordered_json out_rows = ordered_json::array();
    for (const SweepRow& r : rows) {
      out_rows.push_back({format_double(r.p12), format_double(r.p21),
                          format_double(r.loss), format_double(r.conflict),
                          format_double(r.ratio)});
    }
    j["rows"] = out_rows;
    emit(j.dump(2) + "\n", out_path);
  } else {
    AtomicFileWriter writer(out_path);
    write_sweep_csv(writer.stream(), rows);
    writer.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// frontier
// ---------------------------------------------------------------------------

std::vector<FrontierRow> frontier_rows(SystemId system, double xmin, double xmax,
                                       std::uint64_t points) {
  const FrontierDomain dom = frontier_domain(system);
  auto in_domain = [&](double x) { return x >= dom.x_min && x <= dom.x_max; };
  if (!in_domain(xmin) || !in_domain(xmax) || xmin > xmax) {
    throw CLI::ValidationError(
        "--xmin/--xmax", "grid must lie inside [" + format_double(dom.x_min) + ", " +
                             format_double(dom.x_max) + "] for this system");
  }
  if (points == 0) throw CLI::ValidationError("--points", "must be at least 1");

  std::vector<FrontierRow> rows;
  rows.reserve(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    double x = xmin;
    if (points > 1) {
      // Hit the last grid point exactly so open-endpoint detection is exact.
      x = (i + 1 == points)
              ? xmax
              : xmin + (xmax - xmin) * static_cast<double>(i) /
                           static_cast<double>(points - 1);
    }
    FrontierRow row;
    row.x = x;
    if (system == SystemId::oam) {
      row.y_upper = oam_frontier_y_of_x(x, FrontierBranch::upper);
      row.y_lower = oam_frontier_y_of_x(x, FrontierBranch::lower);
    } else {
      auto y_of_x = (system == SystemId::entangled) ? entangled_frontier_y_of_x
                                                    : attenuation_frontier_y_of_x;
      row.y_upper = (dom.upper_open_at && x >= *dom.upper_open_at)
                        ? AsymmetryRatio::infinite()
                        : AsymmetryRatio::finite(y_of_x(x, FrontierBranch::upper));
      row.y_lower = AsymmetryRatio::finite(y_of_x(x, FrontierBranch::lower));
    }
    rows.push_back(row);
  }
  return rows;
}

int cmd_frontier(const std::string& system_name, std::optional<double> xmin_opt,
                 std::optional<double> xmax_opt, std::uint64_t points,
                 const std::string& format, const std::string& out_path) {
  SystemId system = parse_system("--system", system_name);
  const FrontierDomain dom = frontier_domain(system);
  const double xmin = xmin_opt.value_or(dom.x_min);
  const double xmax = xmax_opt.value_or(dom.x_max);
  std::vector<FrontierRow> rows = frontier_rows(system, xmin, xmax, points);

  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "frontier";
    j["system"] = system_name;
    j["points"] = points;
    ordered_json out_rows = ordered_json::array();
    for (const FrontierRow& r : rows) {
      out_rows.push_back(
          {format_double(r.x), format_ratio(r.y_upper), format_ratio(r.y_lower)});
    }
    j["rows"] = out_rows;
    emit(j.dump(2) + "\n", out_path);
  } else {
    AtomicFileWriter writer(out_path);
    write_frontier_csv(writer.stream(), rows);
    writer.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// solve-ratio
// ---------------------------------------------------------------------------

RatioSolution solve_for(SystemId system, const AsymmetryRatio& target,
                        OamRatioLocus locus) {
  switch (system) {
    case SystemId::oam:
      return solve_oam_ratio(target, locus);
    case SystemId::entangled:
      return solve_entangled_ratio(target);
    case SystemId::attenuation:
      return solve_attenuation_ratio(target);
  }
  throw contract_violation("unreachable system id");
}

double frontier_x_for(SystemId system, const AsymmetryRatio& target) {
  if (system == SystemId::oam) return oam_frontier_x_of_y(target);
  if (target.unbounded) {
    return system == SystemId::entangled ? 0.5 : 0.75;
  }
  const FrontierBranch branch =
      target.value >= 1.0 ? FrontierBranch::upper : FrontierBranch::lower;
  return system == SystemId::entangled
             ? entangled_frontier_x_of_y(target.value, branch)
             : attenuation_frontier_x_of_y(target.value, branch);
}

void append_parameters_text(std::ostringstream& out, const RatioSolution& sol) {
  if (const auto* oam = std::get_if<OamSystemConfig>(&sol.parameters)) {
    out << "alpha = " << format_double(oam->pol.alpha) << '\n';
    out << "beta = " << format_double(oam->pol.beta) << '\n';
    out << "a = " << join_list(oam->phi_input.amplitudes) << '\n';
    out << "b = " << join_list(oam->psi_input.amplitudes) << '\n';
    out << "phi = " << join_list(oam->phi_input.phases) << '\n';
    out << "psi = " << join_list(oam->psi_input.phases) << '\n';
  } else if (const auto* ent = std::get_if<EntangledConfig>(&sol.parameters)) {
    out << "theta1 = " << format_double(ent->theta1) << '\n';
    out << "theta2 = " << format_double(ent->theta2) << '\n';
    out << "hw1 = " << format_double(ent->theta_hw1) << '\n';
    out << "hw2 = " << format_double(ent->theta_hw2) << '\n';
    out << "ax = " << format_double(ent->alpha_x) << '\n';
    out << "bx = " << format_double(ent->beta_x) << '\n';
    out << "ay = " << format_double(ent->alpha_y) << '\n';
    out << "by = " << format_double(ent->beta_y) << '\n';
  } else if (const auto* att = std::get_if<AttenuationConfig>(&sol.parameters)) {
    out << "a = " << join_list(att->base.phi_input.amplitudes) << '\n';
    out << "b = " << join_list(att->base.psi_input.amplitudes) << '\n';
    out << "phi = " << join_list(att->base.phi_input.phases) << '\n';
    out << "psi = " << join_list(att->base.psi_input.phases) << '\n';
    out << "dx = " << format_double(att->d_x1) << ',' << format_double(att->d_x2)
        << '\n';
    out << "dy = " << format_double(att->d_y1) << ',' << format_double(att->d_y2)
        << '\n';
  }
}

ordered_json parameters_json(const RatioSolution& sol) {
  ordered_json j;
  if (const auto* oam = std::get_if<OamSystemConfig>(&sol.parameters)) {
    j["alpha"] = format_double(oam->pol.alpha);
    j["beta"] = format_double(oam->pol.beta);
    j["a"] = join_list(oam->phi_input.amplitudes);
    j["b"] = join_list(oam->psi_input.amplitudes);
    j["phi"] = join_list(oam->phi_input.phases);
    j["psi"] = join_list(oam->psi_input.phases);
  } else if (const auto* ent = std::get_if<EntangledConfig>(&sol.parameters)) {
    j["theta1"] = format_double(ent->theta1);
    j["theta2"] = format_double(ent->theta2);
    j["hw1"] = format_double(ent->theta_hw1);
    j["hw2"] = format_double(ent->theta_hw2);
    j["ax"] = format_double(ent->alpha_x);
    j["bx"] = format_double(ent->beta_x);
    j["ay"] = format_double(ent->alpha_y);
    j["by"] = format_double(ent->beta_y);
  } else if (const auto* att = std::get_if<AttenuationConfig>(&sol.parameters)) {
    j["a"] = join_list(att->base.phi_input.amplitudes);
    j["b"] = join_list(att->base.psi_input.amplitudes);
    j["phi"] = join_list(att->base.phi_input.phases);
    j["psi"] = join_list(att->base.psi_input.phases);
    j["dx"] = format_double(att->d_x1) + "," + format_double(att->d_x2);
    j["dy"] = format_double(att->d_y1) + "," + format_double(att->d_y2);
  }
  return j;
}

int cmd_solve_ratio(const std::string& system_name, const std::string& r_text,
                    const std::string& locus_name, const std::string& format,
                    const std::string& out_path) {
  SystemId system = parse_system("--system", system_name);
  AsymmetryRatio target = parse_ratio("--r", r_text);
  OamRatioLocus locus;
  if (locus_name == "a2b1") {
    locus = OamRatioLocus::a2b1_zero;
  } else if (locus_name == "a1b2") {
    locus = OamRatioLocus::a1b2_zero;
  } else {
    throw CLI::ValidationError("--locus", "expected a2b1 or a1b2");
  }

  RatioSolution sol = solve_for(system, target, locus);
  const double frontier_x = frontier_x_for(system, target);
  const bool converged = sol.residual <= kResidualGate;

  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "solve-ratio";
    j["system"] = system_name;
    j["target_r"] = format_ratio(sol.target);
    if (system == SystemId::oam) {
      j["locus"] = locus == OamRatioLocus::a2b1_zero ? "a2b1" : "a1b2";
      j["theta"] = format_double(sol.theta);
      j["bisection_steps"] = sol.bisection_steps;
    }
    j["achieved_r"] = format_ratio(sol.achieved);
    j["residual"] = format_double(sol.residual);
    j["p12"] = format_double(sol.p12);
    j["p21"] = format_double(sol.p21);
    j["loss"] = format_double(sol.loss);
    j["conflict"] = format_double(sol.conflict);
    j["frontier_x"] = format_double(frontier_x);
    j["frontier_y"] = format_ratio(sol.target);
    j["parameters"] = parameters_json(sol);
    j["converged"] = converged;
    emit(j.dump(2) + "\n", out_path);
  } else {
    std::ostringstream text;
    text << "system = " << system_name << '\n';
    text << "target_r = " << format_ratio(sol.target) << '\n';
    if (system == SystemId::oam) {
      text << "locus = " << (locus == OamRatioLocus::a2b1_zero ? "a2b1" : "a1b2")
           << '\n';
      text << "theta = " << format_double(sol.theta) << '\n';
      text << "bisection_steps = " << sol.bisection_steps << '\n';
    }
    text << "achieved_r = " << format_ratio(sol.achieved) << '\n';
    text << "residual = " << format_double(sol.residual) << '\n';
    text << "p12 = " << format_double(sol.p12) << '\n';
    text << "p21 = " << format_double(sol.p21) << '\n';
    text << "loss = " << format_double(sol.loss) << '\n';
    text << "conflict = " << format_double(sol.conflict) << '\n';
    text << "frontier_x = " << format_double(frontier_x) << '\n';
    text << "frontier_y = " << format_ratio(sol.target) << '\n';
    append_parameters_text(text, sol);
    text << "converged = " << (converged ? "true" : "false") << '\n';
    emit(text.str(), out_path);
  }
  if (!converged) {
    std::cerr << "solve-ratio: residual " << format_double(sol.residual)
              << " exceeds " << format_double(kResidualGate) << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bandit
// ---------------------------------------------------------------------------

int cmd_bandit(const SystemParams& params, const std::string& target_r,
               const std::string& locus_name, const std::string& means_text,
               std::uint64_t trials, std::uint64_t seed,
               const std::string& policy_name, const std::string& out_path) {
  if (trials == 0) throw CLI::ValidationError("--trials", "must be at least 1");
  LossPolicy policy;
  if (policy_name == "resample") {
    policy = LossPolicy::resample;
  } else if (policy_name == "raw") {
    policy = LossPolicy::raw;
  } else {
    throw CLI::ValidationError("--policy", "expected resample or raw");
  }

  JointDecisionDistribution dist = [&] {
    if (target_r.empty()) return params_to_distribution(params);
    // Solve for the requested asymmetry ratio and play that configuration.
    SystemId system = parse_system("--system", params.system);
    AsymmetryRatio target = parse_ratio("--target-r", target_r);
    OamRatioLocus locus = locus_name == "a1b2" ? OamRatioLocus::a1b2_zero
                                               : OamRatioLocus::a2b1_zero;
    RatioSolution sol = solve_for(system, target, locus);
    if (const auto* oam = std::get_if<OamSystemConfig>(&sol.parameters)) {
      return joint_distribution_closed(*oam);
    }
    if (const auto* ent = std::get_if<EntangledConfig>(&sol.parameters)) {
      return entangled_distribution_general(*ent);
    }
    return attenuation_distribution(std::get<AttenuationConfig>(sol.parameters));
  }();

  std::vector<double> means = parse_list("--means", means_text);
  if (means.size() != dist.arm_count) {
    throw CLI::ValidationError("--means", "expected one mean per arm (" +
                                              std::to_string(dist.arm_count) + ")");
  }
  for (double m : means) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw CLI::ValidationError("--means", "means must lie in [0, 1]");
    }
  }

  BanditRunReport report = run_bandit(dist, means, trials, seed, policy);

  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "bandit";
  j["system"] = params.system;
  if (!target_r.empty()) j["target_r"] = target_r;
  j["policy"] = policy_name;
  j["trials"] = report.trials;
  j["rng_seed"] = report.rng_seed;
  j["rng"] = report.rng_description;
  j["arm_count"] = report.arm_count;
  {
    ordered_json means_json = ordered_json::array();
    for (double m : report.reward_means) means_json.push_back(format_double(m));
    j["reward_means"] = means_json;
  }
  j["analytic"] = distribution_json(dist);
  {
    ordered_json counts = ordered_json::array();
    ordered_json freqs = ordered_json::array();
    for (std::size_t k1 = 1; k1 <= report.arm_count; ++k1) {
      ordered_json count_row = ordered_json::array();
      ordered_json freq_row = ordered_json::array();
      for (std::size_t k2 = 1; k2 <= report.arm_count; ++k2) {
        count_row.push_back(report.pair_count(k1, k2));
        freq_row.push_back(format_double(report.empirical_p(k1, k2)));
      }
      counts.push_back(count_row);
      freqs.push_back(freq_row);
    }
    j["pair_counts"] = counts;
    j["empirical_p"] = freqs;
  }
  j["loss_count"] = report.loss_count;
  j["attempt_count"] = report.attempt_count;
  j["empirical_loss"] = format_double(report.empirical_loss());
  j["conflict_rate"] = format_double(report.conflict_rate());
  if (report.arm_count == 2) {
    j["empirical_ratio"] = format_double(report.empirical_ratio());
  }
  j["mean_attempts"] = format_double(report.mean_attempts());
  j["reward_x"] = report.reward_x;
  j["reward_y"] = report.reward_y;
  j["reward_gap"] = report.reward_gap();
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic collective decision-making simulator"};
  app.set_version_flag("--version", "photondm 1.0.0");
  app.set_config("--config", "", "Read defaults from an INI-style file; flags win");
  app.require_subcommand(1);

  int exit_code = 0;

  // probs -------------------------------------------------------------------
  auto* probs = app.add_subcommand(
      "probs", "Print the joint decision distribution for explicit parameters");
  auto probs_params = std::make_shared<SystemParams>();
  auto probs_format = std::make_shared<std::string>("text");
  auto probs_out = std::make_shared<std::string>();
  add_system_flags(probs, *probs_params, /*allow_bs=*/true);
  probs->add_option("--format", *probs_format, "Output format (text or json)")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  probs->add_option("--out", *probs_out, "Also write the output to this file");
  probs->callback(
      [=, &exit_code] { exit_code = cmd_probs(*probs_params, *probs_format, *probs_out); });

  // sweep -------------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Sample random configurations and tabulate their distributions");
  auto sweep_system = std::make_shared<std::string>("oam");
  auto sweep_samples = std::make_shared<std::uint64_t>(1000);
  auto sweep_seed = std::make_shared<std::uint64_t>(1);
  auto sweep_threads = std::make_shared<unsigned>(1);
  auto sweep_format = std::make_shared<std::string>("csv");
  auto sweep_out = std::make_shared<std::string>();
  sweep->add_option("--system", *sweep_system, "oam, entangled or attenuation")
      ->capture_default_str();
  sweep->add_option("--samples", *sweep_samples, "Number of random configurations")
      ->capture_default_str();
  sweep->add_option("--seed", *sweep_seed, "Master seed (64-bit unsigned)")
      ->capture_default_str();
  sweep->add_option("--threads", *sweep_threads,
                    "Worker threads; the output is identical for any count")
      ->capture_default_str();
  sweep->add_option("--format", *sweep_format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", *sweep_out, "Output file")->required();
  sweep->callback([=, &exit_code] {
    exit_code = cmd_sweep(*sweep_system, *sweep_samples, *sweep_seed, *sweep_threads,
                          *sweep_format, *sweep_out);
  });

  // frontier ----------------------------------------------------------------
  auto* frontier = app.add_subcommand(
      "frontier", "Tabulate the minimum-loss boundary ratio curves over a grid");
  auto frontier_system = std::make_shared<std::string>("oam");
  auto frontier_xmin = std::make_shared<double>();
  auto frontier_xmax = std::make_shared<double>();
  auto frontier_points = std::make_shared<std::uint64_t>(101);
  auto frontier_format = std::make_shared<std::string>("csv");
  auto frontier_out = std::make_shared<std::string>();
  auto frontier_has_xmin = std::make_shared<bool>(false);
  auto frontier_has_xmax = std::make_shared<bool>(false);
  frontier->add_option("--system", *frontier_system, "oam, entangled or attenuation")
      ->capture_default_str();
  frontier->add_option("--xmin", *frontier_xmin, "Grid start (default: domain start)")
      ->each([=](const std::string&) { *frontier_has_xmin = true; });
  frontier->add_option("--xmax", *frontier_xmax, "Grid end (default: domain end)")
      ->each([=](const std::string&) { *frontier_has_xmax = true; });
  frontier->add_option("--points", *frontier_points, "Number of grid points")
      ->capture_default_str();
  frontier->add_option("--format", *frontier_format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  frontier->add_option("--out", *frontier_out, "Output file")->required();
  frontier->callback([=, &exit_code] {
    exit_code = cmd_frontier(
        *frontier_system,
        *frontier_has_xmin ? std::optional<double>(*frontier_xmin) : std::nullopt,
        *frontier_has_xmax ? std::optional<double>(*frontier_xmax) : std::nullopt,
        *frontier_points, *frontier_format, *frontier_out);
  });

  // solve-ratio ---------------------------------------------------------------
  auto* solve = app.add_subcommand(
      "solve-ratio", "Find parameters realizing a target asymmetry ratio p21/p12");
  auto solve_system = std::make_shared<std::string>("oam");
  auto solve_r = std::make_shared<std::string>();
  auto solve_locus = std::make_shared<std::string>("a2b1");
  auto solve_format = std::make_shared<std::string>("text");
  auto solve_out = std::make_shared<std::string>();
  solve->add_option("--system", *solve_system, "oam, entangled or attenuation")
      ->capture_default_str();
  solve->add_option("--r", *solve_r, "Target ratio (positive real or 'inf')")
      ->required();
  solve->add_option("--locus", *solve_locus,
                    "Which cross term vanishes for the oam system (a2b1 or a1b2)")
      ->capture_default_str();
  solve->add_option("--format", *solve_format, "Output format (text or json)")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  solve->add_option("--out", *solve_out, "Also write the output to this file");
  solve->callback([=, &exit_code] {
    exit_code =
        cmd_solve_ratio(*solve_system, *solve_r, *solve_locus, *solve_format, *solve_out);
  });

  // bandit --------------------------------------------------------------------
  auto* bandit = app.add_subcommand(
      "bandit", "Run a two-player bandit simulation against a system's distribution");
  auto bandit_params = std::make_shared<SystemParams>();
  auto bandit_target = std::make_shared<std::string>();
  auto bandit_locus = std::make_shared<std::string>("a2b1");
  auto bandit_means = std::make_shared<std::string>("0.5,0.5");
  auto bandit_trials = std::make_shared<std::uint64_t>(100000);
  auto bandit_seed = std::make_shared<std::uint64_t>(1);
  auto bandit_policy = std::make_shared<std::string>("resample");
  auto bandit_out = std::make_shared<std::string>();
  add_system_flags(bandit, *bandit_params, /*allow_bs=*/true);
  bandit->add_option("--target-r", *bandit_target,
                     "Solve for this asymmetry ratio instead of explicit parameters");
  bandit->add_option("--locus", *bandit_locus,
                     "Locus for --target-r on the oam system (a2b1 or a1b2)")
      ->capture_default_str();
  bandit->add_option("--means", *bandit_means, "Per-arm Bernoulli reward means")
      ->capture_default_str();
  bandit->add_option("--trials", *bandit_trials, "Number of trials")
      ->capture_default_str();
  bandit->add_option("--seed", *bandit_seed, "RNG seed (64-bit unsigned)")
      ->capture_default_str();
  bandit->add_option("--policy", *bandit_policy,
                     "Lost-pair handling: resample (re-emit) or raw (count the loss)")
      ->check(CLI::IsMember({"resample", "raw"}))
      ->capture_default_str();
  bandit->add_option("--out", *bandit_out, "Also write the JSON report to this file");
  bandit->callback([=, &exit_code] {
    exit_code = cmd_bandit(*bandit_params, *bandit_target, *bandit_locus, *bandit_means,
                           *bandit_trials, *bandit_seed, *bandit_policy, *bandit_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
