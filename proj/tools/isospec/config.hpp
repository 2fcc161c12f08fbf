#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isospec/algebra.hpp"
#include "isospec/geometry.hpp"
#include "isospec/types.hpp"

namespace isospec::cli {

struct ConfigError : Error {
  using Error::Error;
};

struct SpectrumLevel {
  int radial = 0;
  int K = 0;
};

// One experiment description: which example family, reproducibility seed,
// command parameters.  Values come from built-in defaults, then the config
// file, then command-line overrides, in that order.
struct Config {
  std::string example = "s5-pair";  // s5-pair | s7-family | custom
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::string format = "both";  // json | csv | both
  std::vector<double> t_values = {0.0, 0.5};

  // spectrum
  int degree = -1;  // -1: per-example default (3 on S^5, 2 on S^7)
  std::vector<SpectrumLevel> levels;  // empty: per-example default
  double spectrum_tol = 1e-6;

  // invariants
  int grid_size = 16;
  double invariants_tol = 1e-10;
  double isospectral_tol = 1e-12;

  // verify
  int weight_box = 5;
  int star_samples = 1000;
  int rayleigh_polys = 20;
  int rayleigh_points = 200;
  double verify_tol = 1e-9;

  // bump
  double bump_center_s = 0.02;
  double bump_center_u = 0.98;
  double bump_radius_s = 0.05;
  double bump_radius_u = 0.05;
  double bump_amplitude = 0.5;
  double eps_abs = -1.0;       // absolute budget; wins over eps_fraction when >= 0
  double eps_fraction = 0.01;  // of vol(S^{2m+1})
  long mc_samples = 1000000;
  double bump_tol = 1e-10;

  // custom example
  std::string custom_kind;  // su | sym | zero
  int custom_m = 2;
  std::map<std::string, MatrixXcd> custom_matrices;  // J1_a, ..., C2_b
};

// Parses the key = value configuration file ('#' comments, [section] headers).
// Unknown keys are rejected.  Matrix values are JSON arrays.
Config load_config(const std::string& path);
void apply_key(Config& cfg, const std::string& section, const std::string& key,
               const std::string& value);

std::vector<double> parse_double_list(const std::string& text);
std::vector<SpectrumLevel> parse_levels(const std::string& text);

// Resolved per-example data.
struct ExampleForms {
  int m = 0;
  std::vector<geometry::AdmissibleForm> forms;
  std::vector<std::string> labels;
};

ExampleForms resolve_forms(const Config& cfg);

int default_degree(const Config& cfg);
std::vector<SpectrumLevel> default_levels(const Config& cfg, int N);

}  // namespace isospec::cli
