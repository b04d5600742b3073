// Batch front end: parse a scene file, run one command, print tables or
// write CSVs.  Exit codes: 0 success, 2 invalid input, 3 numerical
// non-convergence (including ambiguous piercings).
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linkcurv/classical.hpp"
#include "linkcurv/invariants.hpp"
#include "linkcurv/pathintegral.hpp"
#include "linkcurv/scene_io.hpp"

namespace lc = linkcurv;

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_c(lc::cplx z) {
  char buf[112];
  const double re = z.real() + 0.0;  // -0 prints as 0
  std::snprintf(buf, sizeof buf, "%.12g %c %.12g i", re,
                z.imag() < 0 ? '-' : '+', std::fabs(z.imag()));
  return buf;
}

void print_algebra(const lc::AlgebraElement& a, const std::string& indent) {
  std::cout << indent << "plus : (" << fmt_c(a.plus[0]) << ", "
            << fmt_c(a.plus[1]) << ", " << fmt_c(a.plus[2]) << ")\n"
            << indent << "minus: (" << fmt_c(a.minus[0]) << ", "
            << fmt_c(a.minus[1]) << ", " << fmt_c(a.minus[2]) << ")\n";
}

double kappa_max_of(const std::vector<double>& kappas, double fallback) {
  double k = fallback;
  for (double v : kappas) k = std::max(k, v);
  return kappas.empty() ? fallback : k;
}

// Matter loops without a color make z/fhat undefined; report before any
// numerics run so the failure is a validation error, not a convergence one.
void require_colors(const lc::Scene& scene) {
  for (const auto& lp : scene.loops)
    if (lp.role == lc::LoopRole::matter && !lp.colored)
      throw lc::SceneError("matter loop '" + lp.name +
                           "' has no color; add \"color\": {\"j_plus\": ..., "
                           "\"j_minus\": ...} to compute this observable");
}

int cmd_validate(const std::string& path) {
  const lc::Scene scene = lc::load_scene(path, /*check_timelike=*/false);
  std::cout << "scene '" << path << "': " << scene.loops.size() << " loop(s) ("
            << scene.matter().size() << " matter, " << scene.geometric().size()
            << " geometric), " << scene.surface.patches.size()
            << " surface patch(es), charge " << fmt(scene.charge) << "\n";
  for (const auto& lp : scene.loops) {
    std::cout << "  loop '" << lp.name << "': "
              << (lp.role == lc::LoopRole::matter ? "matter" : "geometric")
              << ", orientation " << (lp.orientation > 0 ? "+1" : "-1");
    if (lp.colored)
      std::cout << ", color (" << lc::format_half_integer(lp.color.jplus_x2)
                << ", " << lc::format_half_integer(lp.color.jminus_x2) << ")";
    std::cout << "\n";
  }
  for (const auto& p : scene.surface.patches)
    std::cout << "  patch '" << p.name << "': "
              << (std::holds_alternative<lc::DiskShape>(p.shape) ? "disk"
                                                                 : "param")
              << ", orientation " << (p.orientation > 0 ? "+1" : "-1")
              << ", domain [" << fmt(p.t0) << "," << fmt(p.t1) << "]x["
              << fmt(p.tb0) << "," << fmt(p.tb1) << "]\n";
  const auto violations = lc::validate_timelike(scene);
  if (violations.empty()) {
    std::cout << "time-like separation: OK (loop pairs and loop-surface "
                 "distances checked on a 512-point grid)\n";
    return 0;
  }
  for (const auto& v : violations) {
    std::cerr << "violation: " << v.what;
    if (v.loop_a >= 0) std::cerr << " [loop '" << scene.loops[v.loop_a].name
                                 << "' at s=" << fmt(v.s_a) << "]";
    if (v.loop_b >= 0) std::cerr << " [loop '" << scene.loops[v.loop_b].name
                                 << "' at s=" << fmt(v.s_b) << "]";
    std::cerr << "\n";
  }
  std::cerr << violations.size() << " violation(s)\n";
  return 2;
}

// The rim of a full disk patch as a loop: center + radius (cos U + sin V).
lc::Loop disk_rim(const lc::DiskShape& d) {
  lc::Loop rim;
  rim.name = "(rim)";
  rim.role = lc::LoopRole::geometric;
  for (int a = 0; a < 4; ++a) {
    rim.coord[a].a0 = d.center[a];
    rim.coord[a].cos_c = {d.radius * d.span_u[a]};
    rim.coord[a].sin_c = {d.radius * d.span_v[a]};
  }
  return rim;
}

int cmd_lk(const std::string& path, bool oracle, int grid) {
  const lc::Scene scene = lc::load_scene(path);
  if (scene.surface.patches.empty())
    throw lc::SceneError("scene has no surface; lk needs one");
  lc::PiercingSettings ps;
  if (grid > 0) ps.scan_n = grid;
  const auto geo = scene.geometric();
  int total = 0;
  std::printf("%-14s %-10s %-5s %12s %12s %12s %7s %7s %6s\n", "loop", "patch",
              "axis", "t", "tb", "s", "orient", "height", "count");
  std::vector<int> orient_sums(geo.size(), 0);
  for (size_t g = 0; g < geo.size(); ++g) {
    const auto pc = lc::find_piercings(scene.surface, *geo[g], 0, ps);
    for (const auto& p : pc) {
      const int c = p.orientation_sign * p.height_sign;
      std::printf("%-14s %-10s %-5d %12.6f %12.6f %12.6f %+7d %+7d %+6d\n",
                  geo[g]->name.c_str(),
                  scene.surface.patches[p.patch].name.c_str(), p.axis, p.t,
                  p.tb, p.s, p.orientation_sign, p.height_sign, c);
      total += c;
      orient_sums[g] += p.orientation_sign;
    }
  }
  std::cout << "lk = " << total << "\n";
  if (!oracle) return 0;
  // Cross-checks: counts agree on every dropped axis, and for a single full
  // disk the per-loop orientation sum equals the Gauss linking number of the
  // disk rim with the loop's spatial projection.
  for (int axis = 1; axis < 4; ++axis) {
    int t = 0;
    for (const auto* lp : geo) t += lc::piercing_count(scene.surface, *lp, axis, ps);
    std::cout << "oracle axis " << axis << ": count " << t
              << (t == total ? " (agrees)" : " (MISMATCH)") << "\n";
    if (t != total) return 3;
  }
  if (scene.surface.patches.size() != 1) {
    std::cerr << "oracle: rim check needs a single full-disk patch\n";
    return 2;
  }
  const auto& patch = scene.surface.patches.front();
  const auto* disk = std::get_if<lc::DiskShape>(&patch.shape);
  if (disk == nullptr || patch.t0 != 0 || patch.t1 != 1 || patch.tb0 != 0 ||
      patch.tb1 != 1) {
    std::cerr << "oracle: rim check needs a single full-disk patch\n";
    return 2;
  }
  lc::Loop rim = disk_rim(*disk);
  rim.orientation = patch.orientation;
  for (size_t g = 0; g < geo.size(); ++g) {
    const double gval = lc::gauss_linking_spatial(rim, *geo[g]);
    const long rounded = std::lround(gval);
    if (std::fabs(gval - static_cast<double>(rounded)) > 0.05)
      throw std::runtime_error("rim Gauss integral did not converge");
    std::cout << "oracle rim x '" << geo[g]->name << "': gauss " << fmt(gval)
              << " -> " << rounded << ", orientation sum " << orient_sums[g]
              << (rounded == orient_sums[g] ? " (agrees)" : " (MISMATCH)")
              << "\n";
    if (rounded != orient_sums[g]) return 3;
  }
  return 0;
}

int cmd_sk(const std::string& path, const std::vector<double>& kappas,
           bool oracle, int grid) {
  const lc::Scene scene = lc::load_scene(path);
  const auto geo = scene.geometric();
  const auto matter = scene.matter();
  if (matter.empty()) throw lc::SceneError("scene has no matter loops");
  const double kmax = kappa_max_of(kappas, 80.0);
  int rc = 0;
  for (const auto* m : matter) {
    if (grid > 0) {
      const double raw = lc::wilson_I(*m, geo, kmax, grid) / (4.0 * M_PI);
      std::cout << "sk('" << m->name << "') raw = " << fmt(raw)
                << " at kappa=" << fmt(kmax) << ", grid " << grid << "\n";
      continue;
    }
    const lc::SkResult r = lc::sk_hyperlink(*m, geo, kmax);
    std::cout << "sk('" << m->name << "') = " << r.value
              << "  (I/4pi = " << fmt(r.raw) << " at kappa=" << fmt(kmax)
              << ", residual " << fmt(r.residual) << ")\n";
    if (oracle) {
      double gsum = 0.0;
      for (const auto* g : geo) gsum += lc::gauss_linking_spatial(*m, *g);
      const long rounded = std::lround(gsum);
      std::cout << "oracle gauss sum = " << fmt(gsum) << " -> " << rounded
                << (rounded == r.value ? " (agrees)" : " (MISMATCH)") << "\n";
      if (rounded != r.value) rc = 3;
    }
  }
  return rc;
}

int cmd_z(const std::string& path, const std::vector<double>& kappas) {
  const lc::Scene scene = lc::load_scene(path);
  require_colors(scene);
  const double kmax = kappa_max_of(kappas, 80.0);
  const auto geo = scene.geometric();
  for (const auto* m : scene.matter()) {
    const lc::SkResult r = lc::sk_hyperlink(*m, geo, kmax);
    std::cout << "loop '" << m->name << "': sk = " << r.value << ", color ("
              << lc::format_half_integer(m->color.jplus_x2) << ", "
              << lc::format_half_integer(m->color.jminus_x2)
              << "), factor = " << fmt(lc::z_factor(m->color, r.value, scene.charge).real())
              << "\n";
  }
  std::cout << "Z = " << fmt(lc::z_observable(scene, kmax)) << "\n";
  return 0;
}

int cmd_fhat(const std::string& path, const std::vector<double>& kappas) {
  const lc::Scene scene = lc::load_scene(path);
  require_colors(scene);
  if (scene.surface.patches.empty()) {
    // Empty surface: the operator is the identity scaled by Z.
    std::cout << "surface is empty: F_hat = Z * identity\n"
              << "Z = " << fmt(lc::z_observable(scene, kappa_max_of(kappas, 80.0)))
              << "\n";
    return 0;
  }
  const double kmax = kappa_max_of(kappas, 80.0);
  const lc::OperatorValue op = lc::f_hat_operator(scene, kmax);
  const auto geo = scene.geometric();
  std::cout << "lk = " << lc::lk(scene.surface, geo) << "\n"
            << "Z  = " << fmt(lc::z_observable(scene, kmax)) << "\n"
            << "coefficient = " << fmt_c(op.coefficient)
            << "   (= -i sqrt(4 pi) lk Z)\n"
            << "algebra part (coefficient multiplies this):\n";
  print_algebra(op.algebra, "  ");
  std::cout << "full operator components:\n";
  print_algebra(op.full(), "  ");
  return 0;
}

int cmd_converge(const std::string& path, std::vector<double> kappas, int grid,
                 const std::string& out_dir) {
  const lc::Scene scene = lc::load_scene(path);
  if (kappas.empty()) kappas = {5, 10, 20, 40, 80};
  lc::TermGrids grids;
  if (grid > 0) grids = {grid, grid};
  const lc::ConvergenceTable table = lc::convergence_study(scene, kappas, grids);
  std::filesystem::create_directories(out_dir);
  const std::string csv = out_dir + "/convergence.csv";
  const std::string plot = out_dir + "/plot.csv";
  lc::write_convergence_csv(table, csv);
  lc::write_plot_csv(table, plot);
  const double kfinal = kappas.back();
  std::cout << "final kappa " << fmt(kfinal) << ":\n";
  for (const auto& r : table.rows)
    if (r.kappa == kfinal)
      std::cout << "  " << r.term << " = " << fmt_c(r.value) << "  (ref "
                << fmt_c(r.reference) << ", |err| " << fmt(r.abs_error)
                << ")\n";
  std::cout << "tail monotone: " << (table.tail_monotone ? "yes" : "NO")
            << "\nfinal within tolerance: "
            << (table.final_within_tol ? "yes" : "NO") << "\nwrote " << csv
            << " and " << plot << "\n";
  return (table.tail_monotone && table.final_within_tol) ? 0 : 3;
}

int cmd_classical(const std::string& path, const std::string& connection_path,
                  double tol, std::uint64_t seed, int grid) {
  const lc::Scene scene = lc::load_scene(path);
  const lc::ConnectionField w = lc::load_connection(connection_path);
  lc::QuadSettings settings;
  if (tol > 0) settings.rel_tol = tol;
  if (grid > 0) settings.base = grid;
  settings.seed = seed;
  const lc::AlgebraElement f = lc::total_curvature_surface(w, scene.surface, settings);
  std::cout << "F_S(omega) over " << scene.surface.patches.size()
            << " patch(es):\n";
  print_algebra(f, "  ");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linking, holonomy and curvature computations for time-like "
               "loop scenes"};
  app.require_subcommand(1);

  std::string scene_path, out_dir = ".", connection_path;
  std::vector<double> kappas;
  int grid = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool oracle = false;

  auto add_scene = [&](CLI::App* cmd) {
    cmd->add_option("scene", scene_path, "scene file (JSON)")->required();
  };

  CLI::App* validate = app.add_subcommand(
      "validate", "parse a scene and report time-likeness and separation");
  add_scene(validate);

  CLI::App* lk_cmd = app.add_subcommand(
      "lk", "signed piercing count of the geometric loops with the surface");
  add_scene(lk_cmd);
  lk_cmd->add_flag("--oracle", oracle,
                   "cross-check all four projection axes and the disk-rim "
                   "Gauss integral");
  lk_cmd->add_option("--grid", grid, "root-scan resolution per axis");

  CLI::App* sk_cmd = app.add_subcommand(
      "sk", "spatial self-linking of each matter loop with the geometric ones");
  add_scene(sk_cmd);
  sk_cmd->add_option("--kappa", kappas, "regulator list; the largest is used")
      ->delimiter(',');
  sk_cmd->add_flag("--oracle", oracle,
                   "cross-check against the spatial Gauss double integral");
  sk_cmd->add_option("--grid", grid,
                     "fixed loop grid (prints the raw pairing only)");

  CLI::App* z_cmd =
      app.add_subcommand("z", "holonomy observable Z of the matter loops");
  add_scene(z_cmd);
  z_cmd->add_option("--kappa", kappas, "regulator list; the largest is used")
      ->delimiter(',');

  CLI::App* fhat = app.add_subcommand(
      "fhat", "quantized curvature operator of the surface");
  add_scene(fhat);
  fhat->add_option("--kappa", kappas, "regulator list; the largest is used")
      ->delimiter(',');

  CLI::App* converge = app.add_subcommand(
      "converge",
      "regularized terms over a kappa schedule, with CSV and plot output");
  add_scene(converge);
  converge->add_option("--kappa", kappas, "comma-separated increasing schedule")
      ->delimiter(',');
  converge->add_option("--grid", grid, "override the per-kappa tensor grids");
  converge->add_option("--out", out_dir, "output directory (default .)");

  CLI::App* classical = app.add_subcommand(
      "classical", "surface integral of the curvature of a connection file");
  add_scene(classical);
  classical->add_option("--connection", connection_path, "connection JSON")
      ->required();
  classical->add_option("--tol", tol, "relative tolerance of the ladder");
  classical->add_option("--seed", seed,
                        "seed for the quasi-random high-dimension fallback");
  classical->add_option("--grid", grid, "base nodes per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(scene_path);
    if (lk_cmd->parsed()) return cmd_lk(scene_path, oracle, grid);
    if (sk_cmd->parsed()) return cmd_sk(scene_path, kappas, oracle, grid);
    if (z_cmd->parsed()) return cmd_z(scene_path, kappas);
    if (fhat->parsed()) return cmd_fhat(scene_path, kappas);
    if (converge->parsed())
      return cmd_converge(scene_path, kappas, grid, out_dir);
    if (classical->parsed())
      return cmd_classical(scene_path, connection_path, tol, seed, grid);
  } catch (const lc::SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lc::AmbiguousPiercing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
