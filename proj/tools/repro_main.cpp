// Reproduction runner: executes every recipe in a manifest against the
// command-line binary and evaluates each recipe's acceptance checks. Prints a
// pass/fail table followed by a JSON summary; exits nonzero when any recipe
// fails or the manifest does not cover the required id set.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/io.hpp"
#include "photondm/ratio_solver.hpp"
#include "photondm/sampling.hpp"

using nlohmann::json;
using namespace photondm;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& cli, const std::string& args) {
  CommandResult result;
  std::string command = cli + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    result.output = "failed to launch: " + command;
    return result;
  }
  char buffer[8192];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string value_of(const std::string& output, const std::string& key) {
  std::istringstream lines(output);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(lines, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

double number_of(const std::string& output, const std::string& key, bool& ok) {
  const std::string text = value_of(output, key);
  if (text.empty()) {
    ok = false;
    return 0.0;
  }
  ok = true;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(text.c_str(), nullptr);
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Five-column sweep CSV -> row-major doubles. Returns false on shape errors.
bool load_sweep_csv(const std::filesystem::path& path, std::vector<double>& cells,
                    std::string& error) {
  std::ifstream in(path);
  if (!in.good()) {
    error = "cannot open " + path.string();
    return false;
  }
  std::string line;
  if (!std::getline(in, line) || line != "p12,p21,loss,conflict,ratio") {
    error = "unexpected header '" + line + "'";
    return false;
  }
  cells.clear();
  while (std::getline(in, line)) {
    std::size_t start = 0;
    int fields = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      std::string field = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (field == "inf") {
        cells.push_back(std::numeric_limits<double>::infinity());
      } else if (field == "nan") {
        cells.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        cells.push_back(std::strtod(field.c_str(), nullptr));
      }
      ++fields;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields != 5) {
      error = "row with " + std::to_string(fields) + " fields";
      return false;
    }
  }
  return true;
}

bool load_lines(const std::filesystem::path& path, std::vector<std::string>& lines) {
  std::ifstream in(path);
  if (!in.good()) return false;
  lines.clear();
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return true;
}

SystemId system_from_name(const std::string& name) {
  if (name == "entangled") return SystemId::entangled;
  if (name == "attenuation") return SystemId::attenuation;
  return SystemId::oam;
}

struct CheckOutcome {
  std::string type;
  bool passed = false;
  std::string detail;
};

struct RecipeContext {
  std::string cli;
  std::string command;          // with {out} substituted, may still hold {r}
  std::filesystem::path out;    // empty when the recipe writes no file
  CommandResult main_run;       // only when the command had no {r} placeholder
  bool ran_main = false;
};

// ---------------------------------------------------------------------------
// Individual check evaluators
// ---------------------------------------------------------------------------

CheckOutcome check_row_count(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"row_count", false, ""};
  std::vector<std::string> lines;
  if (!load_lines(ctx.out, lines)) {
    out.detail = "missing output file";
    return out;
  }
  const std::size_t expected = params.at("expected").get<std::size_t>();
  const std::size_t got = lines.empty() ? 0 : lines.size() - 1;
  out.passed = got == expected;
  out.detail = std::to_string(got) + " rows (expected " + std::to_string(expected) + ")";
  return out;
}

CheckOutcome check_region_inequality(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"region_inequality", false, ""};
  const SystemId system = system_from_name(params.at("system").get<std::string>());
  const double tolerance = params.at("tolerance").get<double>();
  std::vector<double> cells;
  std::string error;
  if (!load_sweep_csv(ctx.out, cells, error)) {
    out.detail = error;
    return out;
  }
  double max_violation = -std::numeric_limits<double>::infinity();
  bool all_feasible = true;
  for (std::size_t i = 0; i + 4 < cells.size(); i += 5) {
    const double p12 = cells[i], p21 = cells[i + 1];
    double violation = 0.0;
    switch (system) {
      case SystemId::oam:
        violation = 2.0 * (p12 + p21) - 1.0 - (p12 - p21) * (p12 - p21);
        break;
      case SystemId::entangled:
        violation = std::max(p12, p21) - 0.5;
        break;
      case SystemId::attenuation:
        violation = std::max(p12, p21) - 0.25;
        break;
    }
    max_violation = std::max(max_violation, violation);
    SweepRow row{p12, p21, cells[i + 2], cells[i + 3], cells[i + 4]};
    all_feasible = all_feasible && row_feasible(system, row);
  }
  out.passed = max_violation <= tolerance && all_feasible;
  std::ostringstream detail;
  detail << "max violation " << format_double(max_violation);
  out.detail = detail.str();
  return out;
}

CheckOutcome check_conflict_free(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"conflict_free", false, ""};
  const double tolerance = params.at("tolerance").get<double>();
  std::vector<double> cells;
  std::string error;
  if (!load_sweep_csv(ctx.out, cells, error)) {
    out.detail = error;
    return out;
  }
  double max_conflict = 0.0;
  for (std::size_t i = 0; i < cells.size(); i += 5) {
    max_conflict = std::max(max_conflict, cells[i + 3]);
  }
  out.passed = max_conflict <= tolerance;
  out.detail = "max conflict " + format_double(max_conflict);
  return out;
}

CheckOutcome check_frontier_matches_library(const json& params,
                                            const RecipeContext& ctx) {
  CheckOutcome out{"frontier_matches_library", false, ""};
  const SystemId system = system_from_name(params.at("system").get<std::string>());
  std::vector<std::string> lines;
  if (!load_lines(ctx.out, lines) || lines.empty()) {
    out.detail = "missing output file";
    return out;
  }
  if (lines[0] != "x,y_upper,y_lower") {
    out.detail = "unexpected header";
    return out;
  }
  const FrontierDomain dom = frontier_domain(system);
  const std::size_t points = lines.size() - 1;
  for (std::size_t i = 0; i < points; ++i) {
    double x = dom.x_min;
    if (points > 1) {
      x = (i + 1 == points) ? dom.x_max
                            : dom.x_min + (dom.x_max - dom.x_min) *
                                              static_cast<double>(i) /
                                              static_cast<double>(points - 1);
    }
    AsymmetryRatio upper, lower;
    if (system == SystemId::oam) {
      upper = oam_frontier_y_of_x(x, FrontierBranch::upper);
      lower = oam_frontier_y_of_x(x, FrontierBranch::lower);
    } else {
      auto y_of_x = (system == SystemId::entangled) ? entangled_frontier_y_of_x
                                                    : attenuation_frontier_y_of_x;
      upper = (dom.upper_open_at && x >= *dom.upper_open_at)
                  ? AsymmetryRatio::infinite()
                  : AsymmetryRatio::finite(y_of_x(x, FrontierBranch::upper));
      lower = AsymmetryRatio::finite(y_of_x(x, FrontierBranch::lower));
    }
    const std::string expected =
        format_double(x) + "," + format_ratio(upper) + "," + format_ratio(lower);
    if (lines[i + 1] != expected) {
      out.detail = "row " + std::to_string(i) + ": got '" + lines[i + 1] +
                   "', expected '" + expected + "'";
      return out;
    }
  }
  out.passed = true;
  out.detail = std::to_string(points) + " rows equal the library values";
  return out;
}

CheckOutcome check_frontier_spot(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"frontier_spot", false, ""};
  const double x = params.at("x").get<double>();
  const double tolerance = params.at("tolerance").get<double>();
  auto expected_branch = [&](const char* key) -> std::pair<bool, double> {
    const json& v = params.at(key);
    if (v.is_string() && v.get<std::string>() == "inf") return {true, 0.0};
    return {false, v.get<double>()};
  };
  const auto [upper_inf, upper_value] = expected_branch("y_upper");
  const auto [lower_inf, lower_value] = expected_branch("y_lower");

  std::vector<std::string> lines;
  if (!load_lines(ctx.out, lines)) {
    out.detail = "missing output file";
    return out;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream fields(lines[i]);
    std::string xs, us, ls;
    std::getline(fields, xs, ',');
    std::getline(fields, us, ',');
    std::getline(fields, ls, ',');
    const double row_x = std::strtod(xs.c_str(), nullptr);
    if (std::abs(row_x - x) > 1e-15) continue;
    auto branch_ok = [&](const std::string& text, bool want_inf, double want) {
      if (want_inf) return text == "inf";
      if (text == "inf") return false;
      return std::abs(std::strtod(text.c_str(), nullptr) - want) <= tolerance;
    };
    out.passed = branch_ok(us, upper_inf, upper_value) &&
                 branch_ok(ls, lower_inf, lower_value);
    out.detail = "x = " + xs + " -> (" + us + ", " + ls + ")";
    return out;
  }
  out.detail = "no row at x = " + format_double(x);
  return out;
}

CheckOutcome check_frontier_roundtrip(const json& params, const RecipeContext&) {
  CheckOutcome out{"frontier_roundtrip", false, ""};
  const SystemId system = system_from_name(params.at("system").get<std::string>());
  const double tolerance = params.at("tolerance").get<double>();
  std::vector<double> grid;
  for (int i = -40; i <= 40; ++i) {
    grid.push_back(std::pow(10.0, static_cast<double>(i) / 10.0));
  }
  const double max_error = frontier_conversion_check(system, grid);
  out.passed = max_error <= tolerance;
  out.detail = "max relative error " + format_double(max_error) + " over " +
               std::to_string(grid.size()) + " ratios";
  return out;
}

CheckOutcome check_solve_grid(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"solve_grid", false, ""};
  const double tolerance = params.at("tolerance").get<double>();
  const std::vector<double> r_values = params.at("r_values").get<std::vector<double>>();
  const std::string monotone = params.value("theta_monotone", "");
  const bool zero_at_one = params.value("theta_zero_at_one", false);

  std::vector<double> thetas;
  for (double r : r_values) {
    const std::string args = replace_all(ctx.command, "{r}", format_double(r));
    CommandResult run = run_command(ctx.cli, args);
    if (run.exit_code != 0) {
      out.detail = "r = " + format_double(r) + ": exit code " +
                   std::to_string(run.exit_code);
      return out;
    }
    if (value_of(run.output, "converged") != "true") {
      out.detail = "r = " + format_double(r) + ": not converged";
      return out;
    }
    bool ok = false;
    const double achieved = number_of(run.output, "achieved_r", ok);
    const double gap = std::abs(achieved - r) / std::max(1.0, r);
    if (!ok || gap > tolerance) {
      out.detail = "r = " + format_double(r) + ": achieved " +
                   format_double(achieved) + " (relative gap " + format_double(gap) +
                   ")";
      return out;
    }
    const double conflict = number_of(run.output, "conflict", ok);
    if (!ok || conflict != 0.0) {
      out.detail = "r = " + format_double(r) + ": nonzero conflict";
      return out;
    }
    const double loss = number_of(run.output, "loss", ok);
    const double frontier_x = oam_frontier_x_of_y(AsymmetryRatio::finite(r));
    if (!ok || std::abs(loss - frontier_x) > tolerance) {
      out.detail = "r = " + format_double(r) + ": loss " + format_double(loss) +
                   " off the frontier value " + format_double(frontier_x);
      return out;
    }
    const double theta = number_of(run.output, "theta", ok);
    if (!ok) {
      out.detail = "r = " + format_double(r) + ": no theta in output";
      return out;
    }
    if (zero_at_one && r == 1.0 && theta != 0.0) {
      out.detail = "theta(1) = " + format_double(theta) + ", expected exactly 0";
      return out;
    }
    thetas.push_back(theta);
  }
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    const bool rising = thetas[i] > thetas[i - 1];
    if ((monotone == "increasing" && !rising) ||
        (monotone == "decreasing" && rising)) {
      out.detail = "theta sequence not " + monotone;
      return out;
    }
  }
  out.passed = true;
  out.detail = std::to_string(r_values.size()) + " targets within " +
               format_double(tolerance);
  return out;
}

CheckOutcome check_forward_monotone(const json& params, const RecipeContext&) {
  CheckOutcome out{"forward_monotone", false, ""};
  const std::string locus_name = params.at("locus").get<std::string>();
  const OamRatioLocus locus = locus_name == "a1b2" ? OamRatioLocus::a1b2_zero
                                                   : OamRatioLocus::a2b1_zero;
  const std::size_t points = params.at("points").get<std::size_t>();
  const bool increasing = params.at("direction").get<std::string>() == "increasing";

  const double quarter_pi = 0.78539816339744831;
  const double lo = -quarter_pi + 1e-6, hi = quarter_pi - 1e-6;
  double previous = oam_ratio_forward(lo, locus);
  for (std::size_t i = 1; i < points; ++i) {
    const double theta =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double value = oam_ratio_forward(theta, locus);
    const bool rising = value > previous;
    if (rising != increasing) {
      out.detail = "not strictly " + params.at("direction").get<std::string>() +
                   " at theta = " + format_double(theta);
      return out;
    }
    previous = value;
  }
  if (oam_ratio_forward(0.0, locus) != 1.0) {
    out.detail = "ratio at theta = 0 is not exactly 1";
    return out;
  }
  out.passed = true;
  out.detail = std::to_string(points) + " grid points strictly " +
               params.at("direction").get<std::string>();
  return out;
}

// Compares the four printed cells and the loss against an independent
// in-place evaluation of the system's closed-form cell values.
CheckOutcome compare_cells(const char* type, const RecipeContext& ctx,
                           double tolerance, double p11, double p12, double p21,
                           double p22, double loss) {
  CheckOutcome out{type, false, ""};
  if (!ctx.ran_main || ctx.main_run.exit_code != 0) {
    out.detail = "command failed";
    return out;
  }
  const char* keys[5] = {"p11", "p12", "p21", "p22", "loss"};
  const double expected[5] = {p11, p12, p21, p22, loss};
  double max_delta = 0.0;
  for (int i = 0; i < 5; ++i) {
    bool ok = false;
    const double got = number_of(ctx.main_run.output, keys[i], ok);
    if (!ok) {
      out.detail = std::string("missing key ") + keys[i];
      return out;
    }
    max_delta = std::max(max_delta, std::abs(got - expected[i]));
  }
  out.passed = max_delta <= tolerance;
  out.detail = "max |delta| " + format_double(max_delta);
  return out;
}

CheckOutcome check_oam_table(const json& params, const RecipeContext& ctx) {
  const double alpha = params.at("alpha").get<double>();
  const double beta = params.at("beta").get<double>();
  const auto a = params.at("a").get<std::vector<double>>();
  const auto b = params.at("b").get<std::vector<double>>();
  const auto phi = params.at("phi").get<std::vector<double>>();
  const auto psi = params.at("psi").get<std::vector<double>>();
  const double sp = (alpha + beta) * (alpha + beta);
  const double sm = (alpha - beta) * (alpha - beta);
  const double d1 = phi[0] - psi[0], d2 = phi[1] - psi[1];
  const double cross =
      0.5 * a[0] * a[1] * b[0] * b[1] * sp * sm * std::cos(d1 - d2);
  const double p11 = 4.0 * alpha * alpha * beta * beta * a[0] * a[0] * b[0] * b[0];
  const double p22 = 4.0 * alpha * alpha * beta * beta * a[1] * a[1] * b[1] * b[1];
  const double p12 =
      0.25 * (sm * sm * a[0] * a[0] * b[1] * b[1] + sp * sp * a[1] * a[1] * b[0] * b[0]) -
      cross;
  const double p21 =
      0.25 * (sm * sm * a[1] * a[1] * b[0] * b[0] + sp * sp * a[0] * a[0] * b[1] * b[1]) -
      cross;
  const double loss = 1.0 - p11 - p12 - p21 - p22;
  return compare_cells("oam_table_formula", ctx, params.at("tolerance").get<double>(),
                       p11, p12, p21, p22, loss);
}

CheckOutcome check_bs_table(const json& params, const RecipeContext& ctx) {
  const auto a = params.at("a").get<std::vector<double>>();
  const auto b = params.at("b").get<std::vector<double>>();
  const double a1 = a[0] * a[0], a2 = a[1] * a[1];
  const double b1 = b[0] * b[0], b2 = b[1] * b[1];
  const double p11 = 0.25 * a1 * b1;
  const double p12 = a2 * b1;
  const double p21 = a1 * b2;
  const double p22 = 0.25 * a2 * b2;
  const double loss = 1.0 - p11 - p12 - p21 - p22;
  return compare_cells("bs_table_formula", ctx, params.at("tolerance").get<double>(),
                       p11, p12, p21, p22, loss);
}

CheckOutcome check_entangled_table(const json& params, const RecipeContext& ctx) {
  const double ax = params.at("ax").get<double>();
  const double bx = params.at("bx").get<double>();
  const double ay = params.at("ay").get<double>();
  const double by = params.at("by").get<double>();
  const double p12 = 0.5 * std::cos(ax) * std::cos(ax) * std::sin(by) * std::sin(by);
  const double p21 = 0.5 * std::sin(bx) * std::sin(bx) * std::cos(ay) * std::cos(ay);
  const double loss = 1.0 - p12 - p21;
  return compare_cells("entangled_table_formula", ctx,
                       params.at("tolerance").get<double>(), 0.0, p12, p21, 0.0, loss);
}

CheckOutcome check_attenuation_table(const json& params, const RecipeContext& ctx) {
  const auto a = params.at("a").get<std::vector<double>>();
  const auto b = params.at("b").get<std::vector<double>>();
  const auto phi = params.at("phi").get<std::vector<double>>();
  const auto psi = params.at("psi").get<std::vector<double>>();
  const auto dx = params.at("dx").get<std::vector<double>>();
  const auto dy = params.at("dy").get<std::vector<double>>();
  const double d1 = phi[0] - psi[0], d2 = phi[1] - psi[1];
  const double t = a[0] * a[0] * b[1] * b[1] + a[1] * a[1] * b[0] * b[0] -
                   2.0 * a[0] * a[1] * b[0] * b[1] * std::cos(d1 - d2);
  const double p12 = 0.25 * t * dx[0] * dx[0] * dy[1] * dy[1];
  const double p21 = 0.25 * t * dx[1] * dx[1] * dy[0] * dy[0];
  const double loss = 1.0 - p12 - p21;
  return compare_cells("attenuation_table_formula", ctx,
                       params.at("tolerance").get<double>(), 0.0, p12, p21, 0.0, loss);
}

CheckOutcome check_conservation_stdout(const json& params, const RecipeContext& ctx) {
  CheckOutcome out{"conservation_stdout", false, ""};
  if (!ctx.ran_main || ctx.main_run.exit_code != 0) {
    out.detail = "command failed";
    return out;
  }
  const double tolerance = params.at("tolerance").get<double>();
  double total = 0.0;
  for (const char* key : {"p11", "p12", "p21", "p22", "loss"}) {
    bool ok = false;
    total += number_of(ctx.main_run.output, key, ok);
    if (!ok) {
      out.detail = std::string("missing key ") + key;
      return out;
    }
  }
  out.passed = std::abs(total - 1.0) <= tolerance;
  out.detail = "sum deviates from 1 by " + format_double(std::abs(total - 1.0));
  return out;
}

CheckOutcome evaluate_check(const json& params, const RecipeContext& ctx) {
  const std::string type = params.at("type").get<std::string>();
  if (type == "row_count") return check_row_count(params, ctx);
  if (type == "region_inequality") return check_region_inequality(params, ctx);
  if (type == "conflict_free") return check_conflict_free(params, ctx);
  if (type == "frontier_matches_library")
    return check_frontier_matches_library(params, ctx);
  if (type == "frontier_spot") return check_frontier_spot(params, ctx);
  if (type == "frontier_roundtrip") return check_frontier_roundtrip(params, ctx);
  if (type == "solve_grid") return check_solve_grid(params, ctx);
  if (type == "forward_monotone") return check_forward_monotone(params, ctx);
  if (type == "oam_table_formula") return check_oam_table(params, ctx);
  if (type == "bs_table_formula") return check_bs_table(params, ctx);
  if (type == "entangled_table_formula") return check_entangled_table(params, ctx);
  if (type == "attenuation_table_formula") return check_attenuation_table(params, ctx);
  if (type == "conservation_stdout") return check_conservation_stdout(params, ctx);
  return {type, false, "unknown check type"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recipe-based reproduction runner"};
  std::string manifest_path, cli_path, workdir_path;
  bool keep = false;
  std::vector<std::string> only;
  app.add_option("--manifest", manifest_path, "Recipe manifest (JSON)")->required();
  app.add_option("--cli", cli_path, "Command-line binary to drive")->required();
  app.add_option("--workdir", workdir_path, "Directory for recipe outputs")->required();
  app.add_flag("--keep", keep, "Keep generated output files");
  app.add_option("--only", only, "Run only these recipe ids (coverage not enforced)");
  CLI11_PARSE(app, argc, argv);

  if (!std::filesystem::exists(cli_path)) {
    std::cerr << "error: CLI binary not found at " << cli_path << "\n";
    return 3;
  }
  json manifest;
  {
    std::ifstream in(manifest_path);
    if (!in.good()) {
      std::cerr << "error: cannot open manifest " << manifest_path << "\n";
      return 3;
    }
    try {
      in >> manifest;
    } catch (const std::exception& e) {
      std::cerr << "error: manifest parse failure: " << e.what() << "\n";
      return 3;
    }
  }

  std::filesystem::create_directories(workdir_path);

  // Coverage: the manifest must define exactly the required id set.
  bool coverage_ok = true;
  std::string coverage_detail = "all required ids covered";
  {
    std::set<std::string> required;
    for (const auto& id : manifest.at("required")) {
      required.insert(id.get<std::string>());
    }
    std::set<std::string> defined;
    for (const auto& recipe : manifest.at("recipes")) {
      const std::string id = recipe.at("id").get<std::string>();
      if (!defined.insert(id).second) {
        coverage_ok = false;
        coverage_detail = "duplicate recipe id " + id;
      }
    }
    if (coverage_ok && defined != required) {
      coverage_ok = false;
      coverage_detail = "recipe ids do not match the required id set";
    }
  }

  json summary;
  summary["schema_version"] = 1;
  summary["results"] = json::array();
  bool all_passed = true;
  std::size_t ran = 0;

  std::cout << "id      status  checks\n";
  std::cout << "------  ------  ------------------------------------------------\n";

  for (const auto& recipe : manifest.at("recipes")) {
    const std::string id = recipe.at("id").get<std::string>();
    if (!only.empty() &&
        std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    ++ran;

    RecipeContext ctx;
    ctx.cli = cli_path;
    ctx.command = recipe.at("command").get<std::string>();
    if (recipe.contains("output")) {
      ctx.out = std::filesystem::path(workdir_path) /
                recipe.at("output").get<std::string>();
      ctx.command = replace_all(ctx.command, "{out}", ctx.out.string());
    }

    bool recipe_passed = true;
    std::string failure;
    std::vector<CheckOutcome> outcomes;

    if (ctx.command.find("{r}") == std::string::npos) {
      ctx.main_run = run_command(cli_path, ctx.command);
      ctx.ran_main = true;
      if (ctx.main_run.exit_code != 0) {
        recipe_passed = false;
        failure = "command exited with code " +
                  std::to_string(ctx.main_run.exit_code);
      }
    }

    if (recipe_passed) {
      for (const auto& check : recipe.at("checks")) {
        CheckOutcome outcome = evaluate_check(check, ctx);
        outcomes.push_back(outcome);
        if (!outcome.passed) {
          recipe_passed = false;
          failure = outcome.type + ": " + outcome.detail;
        }
      }
    }

    all_passed = all_passed && recipe_passed;

    std::ostringstream line;
    line << id;
    for (std::size_t i = id.size(); i < 8; ++i) line << ' ';
    line << (recipe_passed ? "PASS    " : "FAIL    ");
    if (recipe_passed) {
      line << outcomes.size() << " checks";
    } else {
      line << failure;
    }
    std::cout << line.str() << "\n";

    json entry;
    entry["id"] = id;
    entry["command"] = ctx.command;
    entry["passed"] = recipe_passed;
    entry["checks"] = json::array();
    for (const CheckOutcome& outcome : outcomes) {
      entry["checks"].push_back({{"type", outcome.type},
                                 {"passed", outcome.passed},
                                 {"detail", outcome.detail}});
    }
    summary["results"].push_back(entry);

    if (!keep && !ctx.out.empty()) {
      std::error_code ec;
      std::filesystem::remove(ctx.out, ec);
    }
  }

  if (only.empty() && !coverage_ok) all_passed = false;
  summary["coverage_ok"] = only.empty() ? coverage_ok : true;
  summary["coverage_detail"] = coverage_detail;
  summary["recipes_run"] = ran;
  summary["all_passed"] = all_passed;

  std::cout << "\n" << summary.dump(2) << "\n";
  return all_passed ? 0 : 1;
}
