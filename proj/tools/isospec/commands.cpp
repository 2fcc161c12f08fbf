#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isospec/assembly.hpp"
#include "isospec/quadrature.hpp"
#include "isospec/report.hpp"
#include "isospec/rng.hpp"
#include "isospec/verify.hpp"

namespace isospec::cli {

namespace {

namespace fs = std::filesystem;
using spectral::format_double;

void write_file(const Config& cfg, const std::string& name, const std::string& content) {
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

bool want_json(const Config& cfg) { return cfg.format == "json" || cfg.format == "both"; }
bool want_csv(const Config& cfg) { return cfg.format == "csv" || cfg.format == "both"; }

std::string json_header(const Config& cfg, const std::string& command) {
  std::ostringstream os;
  os << "  \"command\": \"" << command << "\",\n";
  os << "  \"example\": \"" << cfg.example << "\",\n";
  os << "  \"seed\": " << cfg.seed << ",\n";
  return os.str();
}

bool pair_generic_expected(const Config& cfg, std::size_t index) {
  if (cfg.example == "s5-pair") return true;
  if (cfg.example == "s7-family") return std::abs(std::cos(cfg.t_values[index])) > 1e-12;
  return true;  // custom: reported, not gated
}

double invariant_of_form(const geometry::AdmissibleForm& f) {
  return f.kind() == geometry::AdmissibleForm::Kind::Su
             ? algebra::equivalence_invariant(f.su_pair())
             : algebra::equivalence_invariant(f.sym_pair());
}

int commutant_of_form(const geometry::AdmissibleForm& f) {
  return f.kind() == geometry::AdmissibleForm::Kind::Su
             ? algebra::commutant_dimension(f.su_pair())
             : algebra::commutant_dimension(f.sym_pair());
}

algebra::IsospectralCertificate certify_pair(const geometry::AdmissibleForm& a,
                                             const geometry::AdmissibleForm& b, int grid,
                                             double tol) {
  if (a.kind() == geometry::AdmissibleForm::Kind::Su)
    return algebra::check_isospectral(a.su_pair(), b.su_pair(), grid, tol);
  return algebra::check_isospectral(a.sym_pair(), b.sym_pair(), grid, tol);
}

}  // namespace

int cmd_invariants(const Config& cfg) {
  const ExampleForms ex = resolve_forms(cfg);
  const std::size_t n = ex.forms.size();

  std::vector<double> invariants(n);
  std::vector<int> commutants(n);
  std::vector<bool> generic(n), generic_ok(n);
  for (std::size_t i = 0; i < n; ++i) {
    invariants[i] = invariant_of_form(ex.forms[i]);
    commutants[i] = commutant_of_form(ex.forms[i]);
    generic[i] = commutants[i] == 0;
    generic_ok[i] =
        (cfg.example == "custom") || (generic[i] == pair_generic_expected(cfg, i));
  }

  bool all_isospectral = true;
  double worst_gap = 0.0;
  std::vector<std::string> pair_lines;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto cert = certify_pair(ex.forms[i], ex.forms[j], cfg.grid_size,
                                     cfg.isospectral_tol);
      all_isospectral = all_isospectral && cert.ok;
      worst_gap = std::max(worst_gap, cert.max_coeff_gap);
      std::ostringstream os;
      os << "    {\"members\": [" << i << ", " << j << "], \"ok\": "
         << (cert.ok ? "true" : "false")
         << ", \"max_coeff_gap\": " << format_double(cert.max_coeff_gap) << "}";
      pair_lines.push_back(os.str());
    }

  bool separation = n < 2;
  for (std::size_t i = 0; i < n && !separation; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(invariants[i] - invariants[j]) > cfg.invariants_tol) separation = true;

  bool genericity_ok = true;
  for (std::size_t i = 0; i < n; ++i) genericity_ok = genericity_ok && generic_ok[i];

  const bool ok = all_isospectral && separation && genericity_ok;

  std::printf("invariants (%s)\n", cfg.example.c_str());
  std::printf("  %-12s %-22s %-10s %s\n", "member", "equivalence invariant", "commutant",
              "generic");
  for (std::size_t i = 0; i < n; ++i)
    std::printf("  %-12s %-22.12f %-10d %s\n", ex.labels[i].c_str(), invariants[i],
                commutants[i], generic[i] ? "yes" : "no");
  std::printf("  isospectral: %s (max coefficient gap %.3e)\n",
              all_isospectral ? "ok" : "FAILED", worst_gap);
  std::printf("  invariant separation: %s\n", separation ? "present" : "ABSENT");
  std::printf("  verdict: %s\n", ok ? "ok" : "FAILED");

  if (want_json(cfg)) {
    std::ostringstream os;
    os << "{\n" << json_header(cfg, "invariants");
    os << "  \"members\": [\n";
    for (std::size_t i = 0; i < n; ++i) {
      os << "    {\"label\": \"" << ex.labels[i] << "\", \"invariant\": "
         << format_double(invariants[i]) << ", \"commutant_dimension\": " << commutants[i]
         << ", \"generic\": " << (generic[i] ? "true" : "false") << "}";
      os << (i + 1 < n ? ",\n" : "\n");
    }
    os << "  ],\n  \"isospectral_pairs\": [\n";
    for (std::size_t i = 0; i < pair_lines.size(); ++i)
      os << pair_lines[i] << (i + 1 < pair_lines.size() ? ",\n" : "\n");
    os << "  ],\n";
    os << "  \"separation\": " << (separation ? "true" : "false") << ",\n";
    os << "  \"ok\": " << (ok ? "true" : "false") << "\n}\n";
    write_file(cfg, "invariants_" + cfg.example + ".json", os.str());
  }
  return ok ? kExitOk : kExitVerdict;
}

int cmd_spectrum(const Config& cfg) {
  const ExampleForms ex = resolve_forms(cfg);
  const int N = default_degree(cfg);
  const std::vector<SpectrumLevel> levels = default_levels(cfg, N);
  const auto basis = spectral::MonomialBasis::build(ex.m, N);
  const geometry::Surface surface = geometry::Surface::sphere();

  bool ok = true;
  std::printf("spectrum (%s), m=%d, N=%d, %zu level(s)\n", cfg.example.c_str(), ex.m, N,
              levels.size());

  if (ex.forms.size() == 1) {
    // Single metric: report the spectrum per level, nothing to compare.
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto quad = spectral::QuadratureRule::build(
          ex.m, surface, {levels[l].radial, levels[l].K});
      auto report = spectral::make_spectrum_report(basis, quad, ex.forms[0], cfg.seed);
      const std::string tag = "spectrum_" + cfg.example + "_L" + std::to_string(l);
      if (want_json(cfg)) write_file(cfg, tag + ".json", to_json(report));
      if (want_csv(cfg)) write_file(cfg, tag + ".csv", to_csv(report));
      std::printf("  level %zu (radial=%d, K=%d): %zu eigenvalues\n", l, levels[l].radial,
                  levels[l].K, report.pooled_eigenvalues().size());
    }
    std::printf("  verdict: ok\n");
    return kExitOk;
  }

  for (std::size_t i = 0; i < ex.forms.size(); ++i)
    for (std::size_t j = i + 1; j < ex.forms.size(); ++j) {
      std::vector<double> gaps;
      for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto quad = spectral::QuadratureRule::build(
            ex.m, surface, {levels[l].radial, levels[l].K});
        auto ra = spectral::make_spectrum_report(basis, quad, ex.forms[i], cfg.seed);
        auto rb = spectral::make_spectrum_report(basis, quad, ex.forms[j], cfg.seed);
        const auto verdict = spectral::compare_spectra(ra, rb, cfg.spectrum_tol);
        ra.comparison = verdict;
        gaps.push_back(verdict.max_gap);
        std::ostringstream tag;
        tag << "spectrum_" << cfg.example << "_pair" << i << "-" << j << "_L" << l;
        if (want_json(cfg)) write_file(cfg, tag.str() + ".json", to_json(ra));
        if (want_csv(cfg)) write_file(cfg, tag.str() + ".csv", to_csv(ra, &rb));
        std::printf("  pair (%s, %s) level %zu (radial=%d, K=%d): max gap %.3e\n",
                    ex.labels[i].c_str(), ex.labels[j].c_str(), l, levels[l].radial,
                    levels[l].K, verdict.max_gap);
      }
      // Verdict: agreement at the finest level, gaps non-increasing under
      // refinement.
      bool pair_ok = gaps.back() <= cfg.spectrum_tol;
      for (std::size_t l = 0; l + 1 < gaps.size(); ++l)
        pair_ok = pair_ok && gaps[l + 1] <= gaps[l];
      ok = ok && pair_ok;
      std::printf("  pair (%s, %s): %s\n", ex.labels[i].c_str(), ex.labels[j].c_str(),
                  pair_ok ? "ok" : "FAILED");
    }
  std::printf("  verdict: %s\n", ok ? "ok" : "FAILED");
  return ok ? kExitOk : kExitVerdict;
}

namespace {

struct VerifyOutcome {
  double star_max = 0.0;
  double rayleigh_max = 0.0;
  std::vector<std::string> star_lines;
};

VerifyOutcome run_verify_pair(const Config& cfg, const geometry::AdmissibleForm& fa,
                              const geometry::AdmissibleForm& fb, int m, RandomSource& rng) {
  VerifyOutcome out;
  const auto witness = spectral::make_witness_provider(fa, fb);
  for (int m1 = -cfg.weight_box; m1 <= cfg.weight_box; ++m1)
    for (int m2 = -cfg.weight_box; m2 <= cfg.weight_box; ++m2) {
      const algebra::TorusWeight mu{m1, m2};
      const double r = spectral::verify_star(fa, fb, mu, witness, cfg.star_samples, rng);
      out.star_max = std::max(out.star_max, r);
      std::ostringstream os;
      os << "    {\"weight\": [" << m1 << ", " << m2 << "], \"residual\": "
         << format_double(r) << "}";
      out.star_lines.push_back(os.str());
    }
  // Rayleigh identity over random pure-weight cubics.
  const int N = 3;
  int made = 0;
  while (made < cfg.rayleigh_polys) {
    const int m1 = static_cast<int>(rng.index(2 * cfg.weight_box + 1)) - cfg.weight_box;
    const int m2 = static_cast<int>(rng.index(2 * cfg.weight_box + 1)) - cfg.weight_box;
    const algebra::TorusWeight mu{m1, m2};
    const auto poly = spectral::random_weight_polynomial(m, N, mu, rng);
    if (!poly) continue;
    const double r = spectral::rayleigh_identity_check(fa, fb, mu, witness, {*poly},
                                                       cfg.rayleigh_points, rng);
    out.rayleigh_max = std::max(out.rayleigh_max, r);
    ++made;
  }
  return out;
}

}  // namespace

int cmd_verify(const Config& cfg) {
  const ExampleForms ex = resolve_forms(cfg);
  if (ex.forms.size() < 2) throw ConfigError("verify: need at least two forms");
  RandomSource rng(cfg.seed);

  double star_max = 0.0, rayleigh_max = 0.0;
  std::vector<std::string> pair_blocks;
  for (std::size_t i = 0; i < ex.forms.size(); ++i)
    for (std::size_t j = i + 1; j < ex.forms.size(); ++j) {
      const VerifyOutcome o = run_verify_pair(cfg, ex.forms[i], ex.forms[j], ex.m, rng);
      star_max = std::max(star_max, o.star_max);
      rayleigh_max = std::max(rayleigh_max, o.rayleigh_max);
      std::printf("  pair (%s, %s): star residual %.3e, rayleigh residual %.3e\n",
                  ex.labels[i].c_str(), ex.labels[j].c_str(), o.star_max, o.rayleigh_max);
      std::ostringstream os;
      os << "    {\"members\": [" << i << ", " << j << "], \"star_max\": "
         << format_double(o.star_max)
         << ", \"rayleigh_max\": " << format_double(o.rayleigh_max) << ", \"star\": [\n";
      for (std::size_t k = 0; k < o.star_lines.size(); ++k)
        os << "  " << o.star_lines[k] << (k + 1 < o.star_lines.size() ? ",\n" : "\n");
      os << "    ]}";
      pair_blocks.push_back(os.str());
    }

  const bool ok = star_max <= cfg.verify_tol && rayleigh_max <= cfg.verify_tol;
  std::printf("verify (%s): star max %.3e, rayleigh max %.3e, tol %.1e -> %s\n",
              cfg.example.c_str(), star_max, rayleigh_max, cfg.verify_tol,
              ok ? "ok" : "FAILED");

  if (want_json(cfg)) {
    std::ostringstream os;
    os << "{\n" << json_header(cfg, "verify");
    os << "  \"weight_box\": " << cfg.weight_box << ",\n";
    os << "  \"samples\": " << cfg.star_samples << ",\n";
    os << "  \"pairs\": [\n";
    for (std::size_t k = 0; k < pair_blocks.size(); ++k)
      os << pair_blocks[k] << (k + 1 < pair_blocks.size() ? ",\n" : "\n");
    os << "  ],\n";
    os << "  \"star_max\": " << format_double(star_max) << ",\n";
    os << "  \"rayleigh_max\": " << format_double(rayleigh_max) << ",\n";
    os << "  \"ok\": " << (ok ? "true" : "false") << "\n}\n";
    write_file(cfg, "verify_" + cfg.example + ".json", os.str());
  }
  return ok ? kExitOk : kExitVerdict;
}

int cmd_bump(const Config& cfg) {
  const ExampleForms ex = resolve_forms(cfg);
  if (ex.forms.size() < 2) throw ConfigError("bump: need a pair of forms");
  const int m = ex.m;

  geometry::BumpProfile profile;
  profile.center = Vector2d(cfg.bump_center_s, cfg.bump_center_u);
  profile.radii = Vector2d(cfg.bump_radius_s, cfg.bump_radius_u);
  profile.amplitude = cfg.bump_amplitude;
  if (!geometry::bump_support_meets_sphere(profile))
    throw ConfigError("bump: support rectangle misses {s + u = 1}; empty effective support");

  const geometry::AdmissibleForm fa = ex.forms[0].with_bump(profile);
  const geometry::AdmissibleForm fb = ex.forms[1].with_bump(profile);
  const geometry::Surface sphere = geometry::Surface::sphere();
  RandomSource rng(cfg.seed);

  // (a) Monte Carlo estimate of the support volume.
  const auto quad_vol = spectral::QuadratureRule::build(m, sphere, {4, 5});
  const double total_vol = quad_vol.surface_volume();
  const double eps = cfg.eps_abs >= 0.0 ? cfg.eps_abs : cfg.eps_fraction * total_vol;
  long hits = 0;
  for (long s = 0; s < cfg.mc_samples; ++s) {
    const auto pt = spectral::random_surface_point(m, sphere, rng);
    if (geometry::bump_eval(profile, pt) != 0.0) ++hits;
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(cfg.mc_samples);
  const double vol_est = p_hat * total_vol;
  const double se = total_vol * std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-300) /
                                          static_cast<double>(cfg.mc_samples));
  const bool vol_ok = vol_est + 3.0 * se < eps;

  // (b) Metric deviation outside the support must vanish exactly.
  double outside_dev = 0.0;
  int outside_checked = 0;
  const geometry::AdmissibleForm f_zero = ex.forms[0].without_bump().kind() ==
                                                  geometry::AdmissibleForm::Kind::Su
                                              ? geometry::AdmissibleForm::su(
                                                    algebra::SkewMapPair::zero(m))
                                              : geometry::AdmissibleForm::sym(
                                                    algebra::SymMapPair::zero());
  while (outside_checked < 200) {
    const auto pt = spectral::random_surface_point(m, sphere, rng);
    if (geometry::bump_eval(profile, pt) != 0.0) continue;
    const auto frame = geometry::tangent_frame(pt, sphere);
    const MatrixXd g_bumped = geometry::metric_gram(fa, pt, frame).gram;
    const MatrixXd g_round = geometry::metric_gram(f_zero, pt, frame).gram;
    outside_dev = std::max(outside_dev, (g_bumped - g_round).cwiseAbs().maxCoeff());
    ++outside_checked;
  }
  const bool outside_ok = outside_dev == 0.0;

  // (c) Condition (*) for the bumped pair, witnesses from the unbumped pair.
  const auto witness = spectral::make_witness_provider(ex.forms[0], ex.forms[1]);
  double star_max = 0.0;
  for (int m1 = -cfg.weight_box; m1 <= cfg.weight_box; ++m1)
    for (int m2 = -cfg.weight_box; m2 <= cfg.weight_box; ++m2)
      star_max = std::max(star_max, spectral::verify_star(fa, fb, {m1, m2}, witness,
                                                          cfg.star_samples, rng));
  const bool star_ok = star_max <= cfg.bump_tol;

  const bool ok = vol_ok && outside_ok && star_ok;
  std::printf("bump (%s)\n", cfg.example.c_str());
  std::printf("  support volume: %.6f +- %.6f (3 SE), budget eps = %.6f -> %s\n", vol_est,
              3.0 * se, eps, vol_ok ? "ok" : "FAILED");
  std::printf("  metric deviation outside support: %.1e -> %s\n", outside_dev,
              outside_ok ? "ok (exactly zero)" : "FAILED");
  std::printf("  bumped star residual: %.3e (tol %.1e) -> %s\n", star_max, cfg.bump_tol,
              star_ok ? "ok" : "FAILED");
  std::printf("  verdict: %s\n", ok ? "ok" : "FAILED");

  if (want_json(cfg)) {
    std::ostringstream os;
    os << "{\n" << json_header(cfg, "bump");
    os << "  \"profile\": {\"center\": [" << format_double(profile.center[0]) << ", "
       << format_double(profile.center[1]) << "], \"radii\": ["
       << format_double(profile.radii[0]) << ", " << format_double(profile.radii[1])
       << "], \"amplitude\": " << format_double(profile.amplitude) << "},\n";
    os << "  \"mc_samples\": " << cfg.mc_samples << ",\n";
    os << "  \"support_volume\": " << format_double(vol_est) << ",\n";
    os << "  \"standard_error\": " << format_double(se) << ",\n";
    os << "  \"epsilon\": " << format_double(eps) << ",\n";
    os << "  \"volume_ok\": " << (vol_ok ? "true" : "false") << ",\n";
    os << "  \"outside_deviation\": " << format_double(outside_dev) << ",\n";
    os << "  \"outside_ok\": " << (outside_ok ? "true" : "false") << ",\n";
    os << "  \"star_residual\": " << format_double(star_max) << ",\n";
    os << "  \"star_ok\": " << (star_ok ? "true" : "false") << ",\n";
    os << "  \"ok\": " << (ok ? "true" : "false") << "\n}\n";
    write_file(cfg, "bump_" + cfg.example + ".json", os.str());
  }
  return ok ? kExitOk : kExitVerdict;
}

}  // namespace isospec::cli
