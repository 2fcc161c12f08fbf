#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string example, t_list, quad_orders, out_dir, format;
  int degree = -1;
  double tol = -1.0;
  double eps = -1.0;
  long seed = -1;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "Configuration file (key = value sections)");
  cmd->add_option("--example", ov.example, "s5-pair | s7-family | custom");
  cmd->add_option("--t", ov.t_list, "Family parameter list, e.g. 0,0.5,0.7");
  cmd->add_option("--degree", ov.degree, "Polynomial basis degree N");
  cmd->add_option("--quad-orders", ov.quad_orders, "Refinement levels RADIALxK, e.g. 3x9,8x11");
  cmd->add_option("--tol", ov.tol, "Verdict tolerance for this command");
  cmd->add_option("--eps", ov.eps, "Absolute volume budget for bump");
  cmd->add_option("--seed", ov.seed, "Random seed recorded in reports");
  cmd->add_option("--out", ov.out_dir, "Output directory");
  cmd->add_option("--format", ov.format, "json | csv | both");
}

isospec::cli::Config build_config(const Overrides& ov, const std::string& command) {
  using isospec::cli::Config;
  Config cfg = ov.config_path.empty() ? Config{} : isospec::cli::load_config(ov.config_path);
  if (!ov.example.empty()) isospec::cli::apply_key(cfg, "common", "example", ov.example);
  if (!ov.t_list.empty()) isospec::cli::apply_key(cfg, "common", "t", ov.t_list);
  if (ov.degree > 0) cfg.degree = ov.degree;
  if (!ov.quad_orders.empty()) cfg.levels = isospec::cli::parse_levels(ov.quad_orders);
  if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
  if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
  if (!ov.format.empty()) isospec::cli::apply_key(cfg, "common", "format", ov.format);
  if (ov.eps >= 0.0) cfg.eps_abs = ov.eps;
  if (ov.tol > 0.0) {
    if (command == "invariants") cfg.invariants_tol = ov.tol;
    if (command == "spectrum") cfg.spectrum_tol = ov.tol;
    if (command == "verify") cfg.verify_tol = ov.tol;
    if (command == "bump") cfg.bump_tol = ov.tol;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isospec: isospectral metrics on odd spheres, numerically verified"};
  app.require_subcommand(1);

  Overrides ov;
  CLI::App* invariants = app.add_subcommand(
      "invariants", "Matrix-level invariants, genericity and isospectrality certificates");
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Galerkin eigenvalue blocks and per-weight spectra comparison");
  CLI::App* verify = app.add_subcommand(
      "verify", "Pointwise condition (*) and Rayleigh-quotient identity checks");
  CLI::App* bump = app.add_subcommand(
      "bump", "Bump-localized metrics: support volume, locality, condition (*)");
  for (CLI::App* cmd : {invariants, spectrum, verify, bump}) add_common_flags(cmd, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints message or help text
    return code == 0 ? 0 : isospec::cli::kExitUsage;
  }

  try {
    if (invariants->parsed()) return isospec::cli::cmd_invariants(build_config(ov, "invariants"));
    if (spectrum->parsed()) return isospec::cli::cmd_spectrum(build_config(ov, "spectrum"));
    if (verify->parsed()) return isospec::cli::cmd_verify(build_config(ov, "verify"));
    if (bump->parsed()) return isospec::cli::cmd_bump(build_config(ov, "bump"));
  } catch (const isospec::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return isospec::cli::kExitUsage;
  } catch (const isospec::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return isospec::cli::kExitVerdict;
  }
  return isospec::cli::kExitUsage;
}
