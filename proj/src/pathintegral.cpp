#include "linkcurv/pathintegral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linkcurv/kernels.hpp"

namespace linkcurv {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
const cplx kI{0.0, 1.0};

// cyclic spatial triples (i, j, k): kernel index j, J_{0i}/J_{ij} partners
constexpr int kCyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};

struct LoopSamples {
  std::vector<Point4> x, d;
  std::vector<double> w;
};

LoopSamples sample_loop(const Loop& loop, int ns) {
  const auto& xs = gl_nodes(ns);
  const auto& ws = gl_weights(ns);
  LoopSamples out;
  out.x.resize(ns);
  out.d.resize(ns);
  out.w = ws;
  for (int c = 0; c < ns; ++c) {
    out.x[c] = loop.at(xs[c]);
    out.d[c] = loop.deriv(xs[c]);
  }
  return out;
}

int grid_surf_ab(double kappa, TermGrids g) {
  return g.n_surf > 0 ? g.n_surf
                      : std::max(48, static_cast<int>(std::ceil(4.0 * kappa)));
}
int grid_surf_c(double kappa, TermGrids g) {
  return g.n_surf > 0 ? g.n_surf
                      : std::max(48, static_cast<int>(std::ceil(3.0 * kappa)));
}
int grid_loop(double kappa, TermGrids g) {
  return g.n_loop > 0 ? g.n_loop
                      : std::max(64, static_cast<int>(std::ceil(6.0 * kappa)));
}

double sq(double x) { return x * x; }

}  // namespace

AlgebraElement f_plus() {
  AlgebraElement e;
  e.plus = {1.0, 1.0, 1.0};
  return e;
}
AlgebraElement f_minus() {
  AlgebraElement e;
  e.minus = {1.0, 1.0, 1.0};
  return e;
}
AlgebraElement f_diff() { return f_plus() - f_minus(); }
AlgebraElement f_sum() { return f_plus() + f_minus(); }

double term_B_scalar(const Surface& surface,
                     const std::vector<const Loop*>& geometric, double kappa,
                     TermGrids g) {
  const int n = grid_surf_ab(kappa, g);
  const int ns = grid_loop(kappa, g);
  const auto& xt = gl_nodes(n);
  const auto& wt = gl_weights(n);
  std::vector<LoopSamples> ls;
  ls.reserve(geometric.size());
  for (const Loop* lp : geometric) ls.push_back(sample_loop(*lp, ns));
  const double q2 = kappa * kappa / 8.0;
  KahanSum acc;
  for (const Patch& patch : surface.patches)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const SurfEval se = patch.eval(xt[a], xt[b]);
        const double w2 = wt[a] * wt[b];
        const auto js = se.J_sigma();
        for (const LoopSamples& L : ls)
          for (int c = 0; c < ns; ++c) {
            const Point4& r = L.x[c];
            const Point4& dr = L.d[c];
            const double d2 =
                sq(se.x[1] - r[1]) + sq(se.x[2] - r[2]) + sq(se.x[3] - r[3]);
            const double ker = kSqrt2Pi * erf_pair(kappa, r[0], se.x[0]) *
                               std::exp(-q2 * d2);
            const double rj = dr[1] * js[0] + dr[2] * js[1] + dr[3] * js[2];
            acc.add(w2 * L.w[c] * ker * rj);
          }
      }
  return (kappa * kappa * kappa / (32.0 * M_PI)) * acc.get();
}

std::array<double, 3> term_A_scalar(const Surface& surface,
                                    const std::vector<const Loop*>& geometric,
                                    double kappa, TermGrids g) {
  const int n = grid_surf_ab(kappa, g);
  const int ns = grid_loop(kappa, g);
  const auto& xt = gl_nodes(n);
  const auto& wt = gl_weights(n);
  std::vector<LoopSamples> ls;
  ls.reserve(geometric.size());
  for (const Loop* lp : geometric) ls.push_back(sample_loop(*lp, ns));
  const double q2 = kappa * kappa / 8.0;
  KahanSum acc[3];
  for (const Patch& patch : surface.patches)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const SurfEval se = patch.eval(xt[a], xt[b]);
        const double w2 = wt[a] * wt[b];
        const auto ks = se.K_sigma();  // J_{01}, J_{02}, J_{03}
        for (const LoopSamples& L : ls)
          for (int c = 0; c < ns; ++c) {
            const Point4& r = L.x[c];
            const Point4& dr = L.d[c];
            const double g0 = std::exp(-q2 * sq(se.x[0] - r[0]));
            double gs[4], ef[4];
            for (int i = 1; i <= 3; ++i) {
              gs[i] = std::exp(-q2 * sq(se.x[i] - r[i]));
              ef[i] = erf_pair(kappa, se.x[i], r[i]);
            }
            const double wc = w2 * L.w[c];
            for (const auto& cyc : kCyc) {
              const int i = cyc[0], j = cyc[1], kk = cyc[2];
              const double ker = kSqrt2Pi * ef[j] * g0 * gs[i] * gs[kk];
              const double nj = dr[kk] * ks[i - 1] - dr[i] * ks[kk - 1];
              acc[j - 1].add(wc * nj * ker);
            }
          }
      }
  const double pref = kappa * kappa * kappa / (32.0 * M_PI);
  return {pref * acc[0].get(), pref * acc[1].get(), pref * acc[2].get()};
}

double term_C_scalar(const Surface& surface,
                     const std::vector<const Loop*>& geometric, double kappa,
                     TermGrids g) {
  const int n = grid_surf_c(kappa, g);
  const int ns = grid_loop(kappa, g);
  const auto& xt = gl_nodes(n);
  const auto& wt = gl_weights(n);
  std::vector<LoopSamples> ls;
  ls.reserve(geometric.size());
  for (const Loop* lp : geometric) ls.push_back(sample_loop(*lp, ns));
  const double q2 = kappa * kappa / 8.0;
  const double cpref = -2.0 * M_PI * kappa;
  KahanSum acc;
  for (const Patch& patch : surface.patches)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const SurfEval se = patch.eval(xt[a], xt[b]);
        const double w2 = wt[a] * wt[b];
        // brackets per cyclic triple, aggregated over the loop set; the
        // (v, vbar) double sum factorizes into the two aggregates
        double b1[3] = {0, 0, 0}, b2[3] = {0, 0, 0};
        for (const LoopSamples& L : ls)
          for (int c = 0; c < ns; ++c) {
            const Point4& r = L.x[c];
            const Point4& dr = L.d[c];
            double gs[4], ef[4];
            for (int i = 1; i <= 3; ++i) {
              gs[i] = std::exp(-q2 * sq(se.x[i] - r[i]));
              ef[i] = erf_pair(kappa, se.x[i], r[i]);
            }
            const double e0 = erf_pair(kappa, se.x[0], r[0]);
            double ck[4];
            ck[1] = cpref * e0 * ef[1] * gs[2] * gs[3];
            ck[2] = cpref * e0 * ef[2] * gs[1] * gs[3];
            ck[3] = cpref * e0 * ef[3] * gs[1] * gs[2];
            const double wc = L.w[c];
            for (int tr = 0; tr < 3; ++tr) {
              const int i = kCyc[tr][0], j = kCyc[tr][1], kk = kCyc[tr][2];
              b1[tr] += wc * (dr[kk] * ck[j] - dr[j] * ck[kk]);
              b2[tr] += wc * (dr[i] * ck[kk] - dr[kk] * ck[i]);
            }
          }
        for (int tr = 0; tr < 3; ++tr) {
          const int i = kCyc[tr][0], j = kCyc[tr][1];
          acc.add(w2 * se.J(i, j) * b1[tr] * b2[tr]);
        }
      }
  return -acc.get() / (32.0 * M_PI * M_PI);
}

namespace {

// pointwise integrands shared by the adaptive routes
double b_integrand(const Surface& surface,
                   const std::vector<const Loop*>& geometric, double kappa,
                   const double* u) {
  const double q2 = kappa * kappa / 8.0;
  double tot = 0.0;
  for (const Patch& patch : surface.patches) {
    const SurfEval se = patch.eval(u[0], u[1]);
    const auto js = se.J_sigma();
    for (const Loop* lp : geometric) {
      const Point4 r = lp->at(u[2]);
      const Point4 dr = lp->deriv(u[2]);
      const double d2 =
          sq(se.x[1] - r[1]) + sq(se.x[2] - r[2]) + sq(se.x[3] - r[3]);
      const double ker =
          kSqrt2Pi * erf_pair(kappa, r[0], se.x[0]) * std::exp(-q2 * d2);
      tot += ker * (dr[1] * js[0] + dr[2] * js[1] + dr[3] * js[2]);
    }
  }
  return (kappa * kappa * kappa / (32.0 * M_PI)) * tot;
}

double a_integrand(const Surface& surface,
                   const std::vector<const Loop*>& geometric, double kappa,
                   const double* u) {
  const double q2 = kappa * kappa / 8.0;
  double tot = 0.0;
  for (const Patch& patch : surface.patches) {
    const SurfEval se = patch.eval(u[0], u[1]);
    const auto ks = se.K_sigma();
    for (const Loop* lp : geometric) {
      const Point4 r = lp->at(u[2]);
      const Point4 dr = lp->deriv(u[2]);
      const double g0 = std::exp(-q2 * sq(se.x[0] - r[0]));
      double gs[4], ef[4];
      for (int i = 1; i <= 3; ++i) {
        gs[i] = std::exp(-q2 * sq(se.x[i] - r[i]));
        ef[i] = erf_pair(kappa, se.x[i], r[i]);
      }
      for (const auto& cyc : kCyc) {
        const int i = cyc[0], j = cyc[1], kk = cyc[2];
        tot += kSqrt2Pi * ef[j] * g0 * gs[i] * gs[kk] *
               (dr[kk] * ks[i - 1] - dr[i] * ks[kk - 1]);
      }
    }
  }
  return (kappa * kappa * kappa / (32.0 * M_PI)) * tot;
}

double c_integrand(const Surface& surface,
                   const std::vector<const Loop*>& geometric, double kappa,
                   const double* u) {
  const double q2 = kappa * kappa / 8.0;
  const double cpref = -2.0 * M_PI * kappa;
  double tot = 0.0;
  for (const Patch& patch : surface.patches) {
    const SurfEval se = patch.eval(u[0], u[1]);
    double f1[3] = {0, 0, 0}, f2[3] = {0, 0, 0};
    for (const Loop* lp : geometric)
      for (int side = 0; side < 2; ++side) {
        const double s = side == 0 ? u[2] : u[3];
        const Point4 r = lp->at(s);
        const Point4 dr = lp->deriv(s);
        double gs[4], ef[4];
        for (int i = 1; i <= 3; ++i) {
          gs[i] = std::exp(-q2 * sq(se.x[i] - r[i]));
          ef[i] = erf_pair(kappa, se.x[i], r[i]);
        }
        const double e0 = erf_pair(kappa, se.x[0], r[0]);
        double ck[4];
        ck[1] = cpref * e0 * ef[1] * gs[2] * gs[3];
        ck[2] = cpref * e0 * ef[2] * gs[1] * gs[3];
        ck[3] = cpref * e0 * ef[3] * gs[1] * gs[2];
        for (int tr = 0; tr < 3; ++tr) {
          const int i = kCyc[tr][0], j = kCyc[tr][1], kk = kCyc[tr][2];
          if (side == 0)
            f1[tr] += dr[kk] * ck[j] - dr[j] * ck[kk];
          else
            f2[tr] += dr[i] * ck[kk] - dr[kk] * ck[i];
        }
      }
    for (int tr = 0; tr < 3; ++tr)
      tot += se.J(kCyc[tr][0], kCyc[tr][1]) * f1[tr] * f2[tr];
  }
  return -tot / (32.0 * M_PI * M_PI);
}

}  // namespace

QuadResult term_B_scalar_adaptive(const Surface& surface,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings& settings) {
  return integrate_unit_cube(
      3, [&](const double* u) { return b_integrand(surface, geometric, kappa, u); },
      settings);
}

QuadResult term_A_scalar_adaptive(const Surface& surface,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings& settings) {
  return integrate_unit_cube(
      3, [&](const double* u) { return a_integrand(surface, geometric, kappa, u); },
      settings);
}

QuadResult term_C_scalar_adaptive(const Surface& surface,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings& settings) {
  return integrate_unit_cube(
      4, [&](const double* u) { return c_integrand(surface, geometric, kappa, u); },
      settings);
}

namespace {
const double kInvSqrt4Pi = 1.0 / std::sqrt(4.0 * M_PI);
}

OperatorValue term_A(const Scene& scene, double kappa, FSign sign,
                     TermGrids g) {
  const auto av = term_A_scalar(scene.surface, scene.geometric(), kappa, g);
  const double s = av[0] + av[1] + av[2];
  OperatorValue out;
  if (sign == FSign::plus) {
    out.coefficient = -kI * kInvSqrt4Pi * s;
    out.algebra = f_plus();
  } else {
    out.coefficient = kI * kInvSqrt4Pi * s;
    out.algebra = f_minus();
  }
  return out;
}

OperatorValue term_B(const Scene& scene, double kappa, TermGrids g) {
  const double s = term_B_scalar(scene.surface, scene.geometric(), kappa, g);
  OperatorValue out;
  out.coefficient = kI * kInvSqrt4Pi * s;
  out.algebra = f_diff();
  return out;
}

OperatorValue term_C(const Scene& scene, double kappa, FSign sign,
                     TermGrids g) {
  const double s = term_C_scalar(scene.surface, scene.geometric(), kappa, g);
  OperatorValue out;
  out.coefficient = s;
  out.algebra = sign == FSign::plus ? f_plus() : f_minus();
  return out;
}

double wilson_exponent(const Loop& matter,
                       const std::vector<const Loop*>& geometric, double kappa,
                       int n) {
  return wilson_I(matter, geometric, kappa, n);
}

cplx z_factor(const IrrepSpec& color, double x, double charge) {
  const cplx c = -kI * M_PI * charge * x;
  return trace_exp_character(color.jplus_x2, c, Factor::plus) +
         trace_exp_character(color.jminus_x2, -c, Factor::minus);
}

namespace {

double z_product(const Scene& scene,
                 const std::function<double(const Loop&)>& sk_like) {
  const auto geos = scene.geometric();
  cplx z{1.0, 0.0};
  for (const Loop& lp : scene.loops) {
    if (lp.role != LoopRole::matter) continue;
    if (!lp.colored)
      throw std::runtime_error("matter loop '" + lp.name +
                               "' has no color; the observable needs one");
    z *= z_factor(lp.color, sk_like(lp), scene.charge);
  }
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, std::abs(z.real())))
    throw std::runtime_error("observable came out non-real");
  return z.real();
}

}  // namespace

double z_observable(const Scene& scene, double kappa_max) {
  const auto geos = scene.geometric();
  return z_product(scene, [&](const Loop& lp) {
    return static_cast<double>(sk_hyperlink(lp, geos, kappa_max).value);
  });
}

double z_observable_numeric(const Scene& scene, double kappa) {
  const auto geos = scene.geometric();
  return z_product(scene, [&](const Loop& lp) {
    return wilson_I(lp, geos, kappa) / (4.0 * M_PI);
  });
}

OperatorValue f_hat_operator(const Scene& scene, double kappa_max) {
  const int lkv = lk(scene.surface, scene.geometric());
  const double z = z_observable(scene, kappa_max);
  OperatorValue out;
  out.coefficient = -kI * std::sqrt(4.0 * M_PI) * double(lkv) * z;
  out.algebra = f_diff();
  return out;
}

ConvergenceTable convergence_study(const Scene& scene,
                                   const std::vector<double>& schedule,
                                   TermGrids g) {
  for (size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("kappa schedule must be strictly increasing");
  const double lhs = 3.0 * std::sqrt(M_PI) / 2.0 + std::sqrt(M_PI) / 2.0;
  const double rhs = std::sqrt(4.0 * M_PI);
  if (std::abs(lhs - rhs) > 1e-15 * rhs)
    throw std::logic_error("coefficient identity violated");

  const auto geos = scene.geometric();
  const bool has_surface = !scene.surface.patches.empty();
  const int lkv = has_surface ? lk(scene.surface, geos) : 0;
  const cplx ref_a = -kI * (3.0 * std::sqrt(M_PI) / 2.0) * double(lkv);
  const cplx ref_b = -kI * (std::sqrt(M_PI) / 2.0) * double(lkv);
  const cplx ref_total = -kI * rhs * double(lkv);

  // wilson references from the classical Gauss oracle, rounded
  std::vector<std::pair<const Loop*, long>> matter_refs;
  for (const Loop& lp : scene.loops) {
    if (lp.role != LoopRole::matter) continue;
    double gsum = 0.0;
    for (const Loop* gv : geos) gsum += gauss_linking_spatial(lp, *gv);
    matter_refs.emplace_back(&lp, std::lround(gsum));
  }

  ConvergenceTable table;
  std::vector<double> err_a, err_b, err_total;
  for (double kappa : schedule) {
    if (has_surface) {
      const TermGrids full_ab{grid_surf_ab(kappa, g), grid_loop(kappa, g)};
      const TermGrids half_ab{(full_ab.n_surf + 1) / 2,
                              (full_ab.n_loop + 1) / 2};
      const TermGrids full_c{grid_surf_c(kappa, g), grid_loop(kappa, g)};
      const TermGrids half_c{(full_c.n_surf + 1) / 2, (full_c.n_loop + 1) / 2};

      const auto av = term_A_scalar(scene.surface, geos, kappa, full_ab);
      const auto avh = term_A_scalar(scene.surface, geos, kappa, half_ab);
      const double bs = term_B_scalar(scene.surface, geos, kappa, full_ab);
      const double bsh = term_B_scalar(scene.surface, geos, kappa, half_ab);
      const double cs = term_C_scalar(scene.surface, geos, kappa, full_c);
      const double csh = term_C_scalar(scene.surface, geos, kappa, half_c);

      const cplx a = -kI * kInvSqrt4Pi * (av[0] + av[1] + av[2]);
      const cplx ah = -kI * kInvSqrt4Pi * (avh[0] + avh[1] + avh[2]);
      const cplx b = kI * kInvSqrt4Pi * bs;
      const cplx bh = kI * kInvSqrt4Pi * bsh;

      table.rows.push_back({kappa, "A_sum", a, std::abs(a - ah), ref_a,
                            std::abs(a - ref_a)});
      table.rows.push_back(
          {kappa, "B", b, std::abs(b - bh), ref_b, std::abs(b - ref_b)});
      table.rows.push_back({kappa, "C_sum", cplx{2.0 * cs, 0.0},
                            2.0 * std::abs(cs - csh), cplx{0.0, 0.0},
                            std::abs(2.0 * cs)});
      const cplx total = a + b + cs;
      const double total_err =
          std::abs(a - ah) + std::abs(b - bh) + std::abs(cs - csh);
      table.rows.push_back({kappa, "total", total, total_err, ref_total,
                            std::abs(total - ref_total)});
      err_a.push_back(std::abs(a - ref_a));
      err_b.push_back(std::abs(b - ref_b));
      err_total.push_back(std::abs(total - ref_total));
    }
    for (const auto& [lp, ref] : matter_refs) {
      const int nfull = std::max(256, static_cast<int>(std::ceil(10 * kappa)));
      const double v = wilson_I(*lp, geos, kappa, nfull) / (4.0 * M_PI);
      const double vh =
          wilson_I(*lp, geos, kappa, (nfull + 1) / 2) / (4.0 * M_PI);
      table.rows.push_back({kappa, "wilson:" + lp->name, cplx{v, 0.0},
                            std::abs(v - vh), cplx{double(ref), 0.0},
                            std::abs(v - double(ref))});
    }
  }

  // tail behaviour of the limit-carrying rows over the last three points
  auto tail_ok = [](const std::vector<double>& e) {
    if (e.size() < 2) return true;
    const size_t from = e.size() > 3 ? e.size() - 3 : 0;
    for (size_t i = from; i + 1 < e.size(); ++i)
      if (e[i + 1] > e[i] * 1.05 + 1e-9) return false;
    return true;
  };
  table.tail_monotone =
      !has_surface || (tail_ok(err_a) && tail_ok(err_b) && tail_ok(err_total));

  bool final_ok = true;
  if (has_surface && !err_total.empty()) {
    const double lim = std::abs(ref_total);
    final_ok = lim > 0 ? err_total.back() <= 0.05 * lim
                       : std::abs(err_total.back()) <= 0.05;
  }
  if (!schedule.empty())
    for (auto it = table.rows.rbegin(); it != table.rows.rend(); ++it) {
      if (it->kappa != schedule.back()) break;
      if (it->term.rfind("wilson:", 0) == 0 && it->abs_error >= 0.05)
        final_ok = false;
    }
  table.final_within_tol = final_ok;
  return table;
}

}  // namespace linkcurv
