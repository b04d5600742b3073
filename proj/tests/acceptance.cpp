// Acceptance gate: every release property on one line each, exit code is
// the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkcurv/classical.hpp"
#include "linkcurv/invariants.hpp"
#include "linkcurv/kernels.hpp"
#include "linkcurv/liealg.hpp"
#include "linkcurv/pathintegral.hpp"
#include "linkcurv/scene_io.hpp"

using namespace linkcurv;

namespace {

const std::string kSceneDir = LINKCURV_SCENE_DIR;
const double kSqrt4Pi = std::sqrt(4.0 * M_PI);
const cplx kI(0.0, 1.0);

Scene load(const std::string& name) {
  return load_scene(kSceneDir + "/" + name);
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::string lap() const {
    const auto dt = std::chrono::steady_clock::now() - t0;
    const double s =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count() /
        1000.0;
    return num(s) + "s";
  }
};

int failures = 0;
void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s - %s\n", n, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double alg_max(const AlgebraElement& e) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    m = std::max(m, std::abs(e.plus[i]));
    m = std::max(m, std::abs(e.minus[i]));
  }
  return m;
}

// exact reparametrisation s -> s + delta of every Fourier series
Loop reparametrized(const Loop& lp, double delta) {
  Loop out = lp;
  const double c1 = std::cos(2 * M_PI * delta), s1 = std::sin(2 * M_PI * delta);
  for (int a = 0; a < 4; ++a) {
    auto& c = out.coord[a];
    double ck = 1.0, sk = 0.0;
    const size_t n = std::max(c.cos_c.size(), c.sin_c.size());
    c.cos_c.resize(n, 0.0);
    c.sin_c.resize(n, 0.0);
    for (size_t k = 0; k < n; ++k) {
      const double next_c = ck * c1 - sk * s1;
      const double next_s = sk * c1 + ck * s1;
      ck = next_c;
      sk = next_s;
      const double a_k = c.cos_c[k], b_k = c.sin_c[k];
      c.cos_c[k] = a_k * ck + b_k * sk;
      c.sin_c[k] = b_k * ck - a_k * sk;
    }
  }
  return out;
}

}  // namespace

int main() {
  const Scene disk = load("disk.scene");
  const auto disk_geo = disk.geometric();

  // ---- criterion 1: closed-form kernels vs the window-product quadrature
  {
    Timer t;
    std::mt19937_64 rng(20260817);
    std::uniform_real_distribution<double> uk(1.0, 10.0), ux(-0.6, 0.6);
    double worst = 0.0;
    const KernelKind kinds[] = {KernelKind::A1, KernelKind::A2, KernelKind::A3,
                                KernelKind::B,  KernelKind::C1, KernelKind::C2,
                                KernelKind::C3, KernelKind::W1, KernelKind::W2,
                                KernelKind::W3};
    for (int i = 0; i < 50; ++i) {
      const KernelKind kind = kinds[i % 10];
      const double kappa = uk(rng);
      Point4 sigma, rho;
      for (int a = 0; a < 4; ++a) {
        sigma[a] = ux(rng);
        rho[a] = ux(rng);
      }
      const double f = factorized_kernel(kind, kappa, sigma, rho);
      const double b = brute_force_kernel(kind, kappa, sigma, rho);
      worst = std::max(worst, std::abs(f - b) / std::max(std::abs(b), 1e-12));
    }
    report(1, worst < 1e-6,
           "50 random pairings, all 10 kinds, worst rel err " + num(worst) +
               " (tol 1e-6), " + t.lap());
  }

  // shared surface-term sweeps on the disk scene
  const int lk_disk = lk(disk.surface, disk_geo);
  Timer sweep_t;
  std::vector<double> b_sched = {5.0, 10.0, 20.0, 40.0, 80.0};
  std::vector<double> b_vals;
  for (double k : b_sched)
    b_vals.push_back(term_B_scalar(disk.surface, disk_geo, k));
  const double b120 = term_B_scalar(disk.surface, disk_geo, 120.0);

  // ---- criterion 2: B sweep approaches -pi * lk
  {
    const double target = -M_PI * lk_disk;
    std::vector<double> err;
    for (double v : b_vals) err.push_back(std::abs(v - target));
    const size_t m = err.size();
    const bool tail = err[m - 3] > err[m - 2] && err[m - 2] > err[m - 1];
    const double rel = err.back() / std::abs(target);
    report(2, tail && rel <= 0.05,
           "B(kappa) -> -pi*lk, lk=" + std::to_string(lk_disk) +
               ", final rel err " + num(rel) + ", tail " +
               (tail ? "monotone" : "NOT monotone") + ", " + sweep_t.lap());
  }

  // ---- criterion 3: each A component approaches +pi * lk
  {
    Timer t;
    const double target = M_PI * lk_disk;
    const std::array<double, 3> a20 =
        term_A_scalar(disk.surface, disk_geo, 20.0);
    const std::array<double, 3> a40 =
        term_A_scalar(disk.surface, disk_geo, 40.0);
    const std::array<double, 3> a80 =
        term_A_scalar(disk.surface, disk_geo, 80.0);
    bool ok = true;
    double worst_rel = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double e20 = std::abs(a20[j] - target);
      const double e40 = std::abs(a40[j] - target);
      const double e80 = std::abs(a80[j] - target);
      if (!(e20 > e40 && e40 > e80)) ok = false;
      worst_rel = std::max(worst_rel, e80 / std::abs(target));
      if (std::lround(a80[j] / M_PI) != lk_disk) ok = false;
    }
    ok = ok && worst_rel <= 0.05;
    report(3, ok,
           "A_j(kappa) -> +pi*lk per axis, worst final rel err " +
               num(worst_rel) + ", all round to lk=" +
               std::to_string(lk_disk) + ", " + t.lap());
  }

  // ---- criterion 4: the two C contributions cancel as kappa grows
  {
    Timer t;
    const std::vector<double> sched = {10.0, 20.0, 40.0, 80.0, 100.0, 120.0};
    std::vector<double> csum;
    for (double k : sched) {
      const double c = term_C_scalar(disk.surface, disk_geo, k);
      csum.push_back(2.0 * std::abs(c));  // |C_plus + C_minus|
    }
    const double bbar120 = std::abs(b120) / kSqrt4Pi;
    const double bound = std::max(0.05 * bbar120, 1e-4);
    const size_t m = csum.size();
    const bool tail = csum[m - 3] > csum[m - 2] && csum[m - 2] > csum[m - 1];
    report(4, csum.back() <= bound && tail,
           "|C+ + C-|(120) = " + num(csum.back()) + " <= " + num(bound) +
               ", decreasing tail " + (tail ? "yes" : "NO") + ", " + t.lap());
  }

  // ---- criterion 5: assembled operator against the exact invariant
  {
    Timer t;
    const double kappa = 80.0;
    const OperatorValue ap = term_A(disk, kappa, FSign::plus);
    const OperatorValue am = term_A(disk, kappa, FSign::minus);
    const OperatorValue b = term_B(disk, kappa);
    const OperatorValue cp = term_C(disk, kappa, FSign::plus);
    const OperatorValue cm = term_C(disk, kappa, FSign::minus);
    cplx plus_slot = 0.0, minus_slot = 0.0;
    for (const OperatorValue* op : {&ap, &am, &b, &cp, &cm}) {
      const AlgebraElement full = op->full();
      plus_slot += full.plus[0];
      minus_slot += full.minus[0];
    }
    const cplx ref_plus = -kI * kSqrt4Pi * double(lk_disk);
    const cplx ref_minus = kI * kSqrt4Pi * double(lk_disk);
    const double rel_p = std::abs(plus_slot - ref_plus) / std::abs(ref_plus);
    const double rel_m =
        std::abs(minus_slot - ref_minus) / std::abs(ref_minus);
    const double lhs = 3.0 * std::sqrt(M_PI) / 2.0 + std::sqrt(M_PI) / 2.0;
    const bool identity = std::abs(lhs - kSqrt4Pi) <= 1e-15 * kSqrt4Pi;
    report(5, rel_p <= 0.05 && rel_m <= 0.05 && identity,
           "slot totals vs -+i*sqrt(4pi)*lk: rel err " + num(rel_p) + " / " +
               num(rel_m) + ", coefficient identity to 1e-15: " +
               (identity ? "yes" : "NO") + ", " + t.lap());
  }

  // ---- criterion 6: regularised crossing count against the Gauss oracle
  {
    Timer t;
    const char* names[] = {"disk.scene",   "hopf.scene",   "hopf_mirror.scene",
                           "split.scene",  "merid2.scene", "hopf_disk.scene"};
    bool ok = true;
    std::set<int> seen;
    double hopf_residual = -1.0;
    std::string mismatch;
    for (const char* name : names) {
      const Scene scene = load(name);
      const auto geos = scene.geometric();
      const Loop& m = *scene.matter()[0];
      const SkResult r = sk_hyperlink(m, geos, 80.0);
      double gsum = 0.0;
      for (const Loop* g : geos) gsum += gauss_linking_spatial(m, *g);
      const long oracle = std::lround(gsum);
      if (std::abs(gsum - double(oracle)) > 5e-3 || r.value != oracle) {
        ok = false;
        mismatch += std::string(" ") + name;
      }
      seen.insert(r.value);
      if (std::string(name) == "hopf.scene") hopf_residual = r.residual;
    }
    for (int want : {-1, 0, 1, 2})
      if (!seen.count(want)) ok = false;
    ok = ok && hopf_residual < 0.05;
    report(6, ok,
           "6 hyperlinks match the Gauss oracle exactly, values cover "
           "{-1,0,1,2}, hopf residual " +
               num(hopf_residual) + (mismatch.empty() ? "" : "; mismatch:" + mismatch) +
               ", " + t.lap());
  }

  // ---- criterion 7: representation traces and the holonomy observable
  {
    Timer t;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uc(-1.0, 1.0);
    double worst = 0.0;
    for (int j_x2 = 0; j_x2 <= 5; ++j_x2) {
      const auto S = spin_matrices(j_x2);
      const Mat sum3 = mat_add(mat_add(S[0], S[1]), S[2]);
      for (int rep = 0; rep < 100; ++rep) {
        const cplx c(uc(rng), uc(rng));
        const cplx closed = trace_exp_character(j_x2, c);
        const cplx direct = mat_trace(mat_expm(mat_scale(c, sum3)));
        worst = std::max(worst, std::abs(closed - direct));
      }
    }
    double worst_imag = 0.0;
    for (int sk = -2; sk <= 2; ++sk)
      for (int q = 1; q <= 3; ++q)
        for (int jp = 0; jp <= 5; ++jp)
          for (int jm = 0; jm <= 5; ++jm)
            worst_imag = std::max(
                worst_imag,
                std::abs(z_factor(IrrepSpec{jp, jm}, double(sk), double(q))
                             .imag()));
    const Scene both = load("empty_surface.scene");
    Scene first = both, second = both;
    first.loops.erase(first.loops.begin() + 1);
    second.loops.erase(second.loops.begin());
    const bool factorizes =
        z_observable(both) == z_observable(first) * z_observable(second);
    report(7, worst <= 1e-10 && worst_imag <= 1e-10 && factorizes,
           "600 character traces, worst |closed - direct| " + num(worst) +
               "; observable imag <= " + num(worst_imag) +
               ", factorization exact: " + (factorizes ? "yes" : "NO") + ", " +
               t.lap());
  }

  // ---- criterion 8: invariant properties across the shipped scenes
  {
    Timer t;
    bool ok = true;
    std::string what;

    // four projection axes agree wherever a surface is present
    for (const char* name : {"disk.scene", "hopf_disk.scene"}) {
      const Scene scene = load(name);
      for (const Loop* g : scene.geometric()) {
        const int c0 = piercing_count(scene.surface, *g, 0);
        for (int ax = 1; ax < 4; ++ax)
          if (piercing_count(scene.surface, *g, ax) != c0) {
            ok = false;
            what += " axes(" + std::string(name) + ")";
          }
      }
    }

    // orientation equivariance
    {
      Scene flipped = load("disk.scene");
      for (Loop& lp : flipped.loops)
        if (lp.role == LoopRole::geometric) lp.orientation = -lp.orientation;
      if (lk(flipped.surface, flipped.geometric()) != -lk_disk) {
        ok = false;
        what += " lk-flip";
      }
      Scene hopf = load("hopf.scene");
      for (Loop& lp : hopf.loops)
        if (lp.role == LoopRole::geometric) lp.orientation = -lp.orientation;
      const SkResult r =
          sk_hyperlink(*hopf.matter()[0], hopf.geometric(), 80.0);
      if (r.value != +1) {
        ok = false;
        what += " sk-flip";
      }
    }

    // reparametrisation invariance
    {
      Scene scene = load("disk.scene");
      for (Loop& lp : scene.loops)
        if (lp.role == LoopRole::geometric) lp = reparametrized(lp, 0.37);
      if (lk(scene.surface, scene.geometric()) != lk_disk) {
        ok = false;
        what += " lk-reparam";
      }
      Scene hopf = load("hopf.scene");
      for (Loop& lp : hopf.loops)
        if (lp.role == LoopRole::geometric) lp = reparametrized(lp, 0.37);
      const SkResult r =
          sk_hyperlink(*hopf.matter()[0], hopf.geometric(), 80.0);
      if (r.value != -1) {
        ok = false;
        what += " sk-reparam";
      }
    }

    // additivity: a far unlinked component changes nothing
    {
      Scene scene = load("hopf.scene");
      Loop far = scene.loops[1];
      far.name = "far";
      far.coord[1].a0 += 60.0;
      scene.loops.push_back(far);
      const SkResult r =
          sk_hyperlink(*scene.matter()[0], scene.geometric(), 80.0);
      if (r.value != -1) {
        ok = false;
        what += " sk-add";
      }
      Scene dsc = load("disk.scene");
      Loop dfar = dsc.loops[1];
      dfar.name = "far";
      dfar.coord[1].a0 += 60.0;
      dsc.loops.push_back(dfar);
      if (lk(dsc.surface, dsc.geometric()) != lk_disk) {
        ok = false;
        what += " lk-add";
      }
    }

    // integrality residuals on every shipped hyperlink
    for (const char* name : {"disk.scene", "hopf.scene", "hopf_mirror.scene",
                             "split.scene", "merid2.scene",
                             "hopf_disk.scene"}) {
      const Scene scene = load(name);
      const SkResult r =
          sk_hyperlink(*scene.matter()[0], scene.geometric(), 80.0);
      if (r.residual >= 0.05) {
        ok = false;
        what += " residual(" + std::string(name) + ")";
      }
    }

    report(8, ok,
           std::string("axis agreement, orientation equivariance, "
                       "reparametrisation, additivity, integrality") +
               (what.empty() ? "" : "; failed:" + what) + ", " + t.lap());
  }

  // ---- criterion 9: classical curvature flux
  {
    Timer t;
    QuadSettings tight;
    tight.rel_tol = 1e-10;
    tight.abs_tol = 1e-12;

    Patch p;
    p.name = "S";
    DiskShape dsh;
    dsh.span_u = {0.0, 1.0, 0.0, 0.0};
    dsh.span_v = {0.0, 0.0, 1.0, 0.0};
    p.shape = dsh;
    Surface flat;
    flat.patches.push_back(p);

    const ConnectionField zero =
        load_connection(kSceneDir + "/connections/zero.json");
    const double z = alg_max(total_curvature_surface(zero, flat));

    const ConnectionField abelian =
        load_connection(kSceneDir + "/connections/abelian.json");
    const AlgebraElement fa = total_curvature_surface(abelian, flat, tight);
    const double a_err = std::abs(fa.minus[2] - cplx(-0.998097308326));

    const ConnectionField nonab =
        load_connection(kSceneDir + "/connections/nonabelian.json");
    const AlgebraElement whole =
        total_curvature_surface(nonab, disk.surface, tight);
    const auto [lo, hi] = split_patch(disk.surface.patches[0], 0, 0.43);
    const auto [hi_a, hi_b] = split_patch(hi, 1, 0.71);
    Surface pieces;
    pieces.patches = {lo, hi_a, hi_b};
    const AlgebraElement split =
        total_curvature_surface(nonab, pieces, tight);
    double split_err = 0.0;
    for (int i = 0; i < 3; ++i) {
      split_err = std::max(split_err, std::abs(whole.plus[i] - split.plus[i]));
      split_err =
          std::max(split_err, std::abs(whole.minus[i] - split.minus[i]));
    }

    report(9, z == 0.0 && a_err <= 1e-6 && split_err <= 1e-8,
           "zero field -> 0 (exact), symbolic reference err " + num(a_err) +
               " (tol 1e-6), patch-split err " + num(split_err) +
               " (tol 1e-8), " + t.lap());
  }

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
