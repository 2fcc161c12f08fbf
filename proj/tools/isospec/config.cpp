#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isospec::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

MatrixXcd parse_complex_matrix(const std::string& text, const std::string& key) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(key + ": invalid JSON matrix (" + e.what() + ")");
  }
  if (!j.is_array() || j.empty()) throw ConfigError(key + ": expected a matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  MatrixXcd M(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(key + ": ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& cell = j[r][c];
      if (cell.is_number()) {
        M(r, c) = Complex(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2) {
        M(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
      } else {
        throw ConfigError(key + ": entries must be numbers or [re, im] pairs");
      }
    }
  }
  return M;
}

Matrix3d parse_real3(const std::string& text, const std::string& key) {
  const MatrixXcd M = parse_complex_matrix(text, key);
  if (M.rows() != 3 || M.cols() != 3 || M.imag().cwiseAbs().maxCoeff() > 0)
    throw ConfigError(key + ": expected a real 3x3 matrix");
  return M.real();
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (trim(v.substr(used)).empty()) return x;
  } catch (...) {
  }
  throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item, "list"));
  }
  return out;
}

std::vector<SpectrumLevel> parse_levels(const std::string& text) {
  std::vector<SpectrumLevel> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto x = item.find('x');
    if (x == std::string::npos)
      throw ConfigError("quad-orders: expected RADIALxK entries, got '" + item + "'");
    SpectrumLevel lvl;
    lvl.radial = static_cast<int>(parse_long(item.substr(0, x), "quad-orders radial"));
    lvl.K = static_cast<int>(parse_long(item.substr(x + 1), "quad-orders K"));
    if (lvl.radial < 1 || lvl.K < 1) throw ConfigError("quad-orders: orders must be positive");
    out.push_back(lvl);
  }
  if (out.empty()) throw ConfigError("quad-orders: empty list");
  return out;
}

void apply_key(Config& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
  const std::string k = section.empty() ? key : section + "." + key;
  auto is = [&](const char* s, const char* ks) {
    return (section == s || section.empty() || section == "common") && key == ks;
  };

  if (is("common", "example")) {
    if (value != "s5-pair" && value != "s7-family" && value != "custom")
      throw ConfigError("example must be s5-pair, s7-family or custom");
    cfg.example = value;
  } else if (is("common", "seed")) {
    cfg.seed = static_cast<std::uint64_t>(parse_long(value, k));
  } else if (is("common", "out")) {
    cfg.out_dir = value;
  } else if (is("common", "format")) {
    if (value != "json" && value != "csv" && value != "both")
      throw ConfigError("format must be json, csv or both");
    cfg.format = value;
  } else if (is("common", "t")) {
    cfg.t_values = parse_double_list(value);
    if (cfg.t_values.empty()) throw ConfigError("t: empty list");
  } else if (is("spectrum", "degree")) {
    cfg.degree = static_cast<int>(parse_long(value, k));
    if (cfg.degree < 1) throw ConfigError("degree must be >= 1");
  } else if (is("spectrum", "quad-orders")) {
    cfg.levels = parse_levels(value);
  } else if (is("spectrum", "tol")) {
    cfg.spectrum_tol = parse_double(value, k);
    if (!(cfg.spectrum_tol > 0)) throw ConfigError("spectrum tol must be > 0");
  } else if (is("invariants", "grid-size")) {
    cfg.grid_size = static_cast<int>(parse_long(value, k));
  } else if (is("invariants", "tol")) {
    cfg.invariants_tol = parse_double(value, k);
    if (!(cfg.invariants_tol > 0)) throw ConfigError("invariants tol must be > 0");
  } else if (is("invariants", "isospectral-tol")) {
    cfg.isospectral_tol = parse_double(value, k);
  } else if (is("verify", "weight-box")) {
    cfg.weight_box = static_cast<int>(parse_long(value, k));
  } else if (is("verify", "samples")) {
    cfg.star_samples = static_cast<int>(parse_long(value, k));
  } else if (is("verify", "rayleigh-polys")) {
    cfg.rayleigh_polys = static_cast<int>(parse_long(value, k));
  } else if (is("verify", "rayleigh-points")) {
    cfg.rayleigh_points = static_cast<int>(parse_long(value, k));
  } else if (is("verify", "tol")) {
    cfg.verify_tol = parse_double(value, k);
    if (!(cfg.verify_tol > 0)) throw ConfigError("verify tol must be > 0");
  } else if (is("bump", "center")) {
    const auto c = parse_double_list(value);
    if (c.size() != 2) throw ConfigError("bump center: expected s,u");
    cfg.bump_center_s = c[0];
    cfg.bump_center_u = c[1];
  } else if (is("bump", "radii")) {
    const auto r = parse_double_list(value);
    if (r.size() != 2) throw ConfigError("bump radii: expected r1,r2");
    if (!(r[0] > 0) || !(r[1] > 0)) throw ConfigError("bump radii must be positive");
    cfg.bump_radius_s = r[0];
    cfg.bump_radius_u = r[1];
  } else if (is("bump", "amplitude")) {
    cfg.bump_amplitude = parse_double(value, k);
  } else if (is("bump", "eps")) {
    cfg.eps_abs = parse_double(value, k);
  } else if (is("bump", "eps-fraction")) {
    cfg.eps_fraction = parse_double(value, k);
  } else if (is("bump", "mc-samples")) {
    cfg.mc_samples = parse_long(value, k);
  } else if (is("bump", "tol")) {
    cfg.bump_tol = parse_double(value, k);
  } else if (is("custom", "kind")) {
    if (value != "su" && value != "sym" && value != "zero")
      throw ConfigError("custom kind must be su, sym or zero");
    cfg.custom_kind = value;
  } else if (is("custom", "m")) {
    cfg.custom_m = static_cast<int>(parse_long(value, k));
    if (cfg.custom_m < 2) throw ConfigError("custom m must be >= 2");
  } else if (section == "custom" && (key == "J1_a" || key == "J2_a" || key == "J1_b" ||
                                     key == "J2_b")) {
    cfg.custom_matrices[key] = parse_complex_matrix(value, k);
  } else if (section == "custom" && (key == "C1_a" || key == "C2_a" || key == "C1_b" ||
                                     key == "C2_b")) {
    cfg.custom_matrices[key] = parse_real3(value, k).cast<Complex>();
  } else {
    throw ConfigError("unknown config key '" + k + "'");
  }
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_key(cfg, section, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExampleForms resolve_forms(const Config& cfg) {
  ExampleForms out;
  if (cfg.example == "s5-pair") {
    const auto [c, cp] = algebra::pair_c();
    out.m = 2;
    out.forms = {geometry::AdmissibleForm::sym(c), geometry::AdmissibleForm::sym(cp)};
    out.labels = {"c", "c-prime"};
    return out;
  }
  if (cfg.example == "s7-family") {
    out.m = 3;
    for (double t : cfg.t_values) {
      out.forms.push_back(geometry::AdmissibleForm::su(algebra::family_j(t)));
      std::ostringstream os;
      os << "t=" << t;
      out.labels.push_back(os.str());
    }
    if (out.forms.empty()) throw ConfigError("s7-family: need at least one t value");
    return out;
  }
  if (cfg.custom_kind == "zero") {
    out.m = cfg.custom_m;
    out.forms = {geometry::AdmissibleForm::su(algebra::SkewMapPair::zero(cfg.custom_m))};
    out.labels = {"zero"};
    return out;
  }
  auto need = [&](const char* key) -> const MatrixXcd& {
    const auto it = cfg.custom_matrices.find(key);
    if (it == cfg.custom_matrices.end())
      throw ConfigError(std::string("custom: missing matrix ") + key);
    return it->second;
  };
  if (cfg.custom_kind == "su") {
    const auto pa = algebra::SkewMapPair::checked(need("J1_a"), need("J2_a"), 1e-9);
    const auto pb = algebra::SkewMapPair::checked(need("J1_b"), need("J2_b"), 1e-9);
    if (pa.m != pb.m) throw ConfigError("custom su: pair dimensions differ");
    out.m = pa.m;
    out.forms = {geometry::AdmissibleForm::su(pa), geometry::AdmissibleForm::su(pb)};
    out.labels = {"A", "B"};
    return out;
  }
  if (cfg.custom_kind == "sym") {
    const auto pa = algebra::SymMapPair::checked(need("C1_a").real(), need("C2_a").real(), 1e-9);
    const auto pb = algebra::SymMapPair::checked(need("C1_b").real(), need("C2_b").real(), 1e-9);
    out.m = 2;
    out.forms = {geometry::AdmissibleForm::sym(pa), geometry::AdmissibleForm::sym(pb)};
    out.labels = {"A", "B"};
    return out;
  }
  throw ConfigError("custom example requires [custom] kind = su|sym|zero");
}

int default_degree(const Config& cfg) {
  if (cfg.degree > 0) return cfg.degree;
  return cfg.example == "s7-family" ? 2 : 3;
}

std::vector<SpectrumLevel> default_levels(const Config& cfg, int N) {
  if (!cfg.levels.empty()) return cfg.levels;
  // Coarse level below the radial exactness threshold of the stiffness
  // integrands, fine level safely above it; K at the 2N+3 default and up.
  if (cfg.example == "s7-family" || (cfg.example == "custom" && cfg.custom_kind == "su"))
    return {{2, 2 * N + 3}, {6, 2 * N + 5}};
  return {{3, 2 * N + 3}, {8, 2 * N + 5}};
}

}  // namespace isospec::cli
