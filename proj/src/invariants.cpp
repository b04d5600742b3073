#include "linkcurv/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "linkcurv/kernels.hpp"
#include "linkcurv/quadrature.hpp"

namespace linkcurv {

namespace {

// kept coordinates ordered so that (axis, kept...) is an even permutation of
// (0,1,2,3); this frame makes every per-axis signed count agree
constexpr int kKept[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};

double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool solve3(const double a[3][3], const double b[3], double x[3]) {
  const double d = det3(a);
  if (std::abs(d) < 1e-300) return false;
  double m[3][3];
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = (j == c) ? b[i] : a[i][j];
    x[c] = det3(m) / d;
  }
  return true;
}

double wrap01(double v) { return v - std::floor(v); }

double wrap_dist(double a, double b) {
  const double d = std::abs(wrap01(a) - wrap01(b));
  return std::min(d, 1.0 - d);
}

struct Candidate {
  double t, tb, s, res2;
};

}  // namespace

std::vector<Piercing> find_piercings(const Surface& surface, const Loop& loop,
                                     int axis, const PiercingSettings& cfg) {
  std::vector<Piercing> out;
  for (int pi = 0; pi < static_cast<int>(surface.patches.size()); ++pi) {
    const Patch& patch = surface.patches[pi];
    const bool disk = std::holds_alternative<DiskShape>(patch.shape);
    // tb is an angle only when the patch covers the whole circle
    const bool tb_periodic = disk && patch.tb0 == 0.0 && patch.tb1 == 1.0;
    const bool radial_from_zero = disk && patch.t0 == 0.0;
    const int* kept = kKept[axis];

    // coarse residual scan
    std::vector<Candidate> cand;
    const int n = cfg.scan_n;
    cand.reserve(static_cast<size_t>(n) * n * n / 8);
    std::vector<Point4> rho(n), drho(n);
    for (int c = 0; c < n; ++c) {
      const double s = (c + 0.5) / n;
      rho[c] = loop.at(s);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const SurfEval se = patch.eval((a + 0.5) / n, (b + 0.5) / n);
        for (int c = 0; c < n; ++c) {
          double r2 = 0.0;
          for (int q = 0; q < 3; ++q) {
            const double d = se.x[kept[q]] - rho[c][kept[q]];
            r2 += d * d;
          }
          cand.push_back({(a + 0.5) / n, (b + 0.5) / n, (c + 0.5) / n, r2});
        }
      }
    std::sort(cand.begin(), cand.end(),
              [](const Candidate& x, const Candidate& y) { return x.res2 < y.res2; });
    const size_t seeds = std::min<size_t>(cand.size(), 600);

    std::vector<std::array<double, 3>> roots;
    for (size_t ci = 0; ci < seeds; ++ci) {
      double t = cand[ci].t, tb = cand[ci].tb, s = cand[ci].s;
      bool ok = false;
      double fn = 1e300;
      for (int it = 0; it < cfg.max_iter; ++it) {
        const SurfEval se = patch.eval(t, tb);
        const Point4 r = loop.at(s);
        const Point4 dr = loop.deriv(s);
        double F[3], Jm[3][3];
        for (int q = 0; q < 3; ++q) {
          F[q] = se.x[kept[q]] - r[kept[q]];
          Jm[q][0] = se.dt[kept[q]];
          Jm[q][1] = se.dtb[kept[q]];
          Jm[q][2] = -dr[kept[q]];
        }
        fn = std::sqrt(F[0] * F[0] + F[1] * F[1] + F[2] * F[2]);
        if (fn < cfg.root_tol) {
          ok = true;
          break;
        }
        double step[3];
        if (!solve3(Jm, F, step)) break;
        // damped update: halve the step while the residual grows
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < 8; ++h) {
          const double tn = t - lambda * step[0];
          double tbn = tb - lambda * step[1];
          if (tb_periodic) tbn = wrap01(tbn);
          const double sn = wrap01(s - lambda * step[2]);
          const SurfEval se2 = patch.eval(tn, tbn);
          const Point4 r2 = loop.at(sn);
          double f2 = 0.0;
          for (int q = 0; q < 3; ++q) {
            const double d = se2.x[kept[q]] - r2[kept[q]];
            f2 += d * d;
          }
          if (std::sqrt(f2) < fn || h == 7) {
            t = tn;
            tb = tbn;
            s = sn;
            accepted = true;
            break;
          }
          lambda *= cfg.damping;
        }
        if (!accepted || t < -0.5 || t > 1.5) break;
      }
      if (!ok) continue;
      // keep roots on the patch; flag ones that sit on its edge
      if (disk && radial_from_zero && tb_periodic && t < 0.0) {
        t = -t;  // negative radius is the antipodal direction
        tb = wrap01(tb + 0.5);
      }
      if (disk) {
        if (t < -cfg.boundary_tol || t > 1.0 + cfg.boundary_tol) continue;
        if (std::abs(t - 1.0) <= cfg.boundary_tol)
          throw AmbiguousPiercing("piercing on the disk rim");
        if (radial_from_zero && t <= cfg.boundary_tol)
          throw AmbiguousPiercing("piercing at the disk centre");
        if (!tb_periodic &&
            (tb < -cfg.boundary_tol || tb > 1.0 + cfg.boundary_tol))
          continue;
        if (!tb_periodic && (std::abs(tb) <= cfg.boundary_tol ||
                             std::abs(tb - 1.0) <= cfg.boundary_tol))
          throw AmbiguousPiercing("piercing on a patch seam");
      } else {
        if (t < -cfg.boundary_tol || t > 1.0 + cfg.boundary_tol ||
            tb < -cfg.boundary_tol || tb > 1.0 + cfg.boundary_tol)
          continue;
        if (std::abs(t) <= cfg.boundary_tol || std::abs(t - 1.0) <= cfg.boundary_tol ||
            std::abs(tb) <= cfg.boundary_tol || std::abs(tb - 1.0) <= cfg.boundary_tol)
          throw AmbiguousPiercing("piercing on a patch edge");
      }
      bool dup = false;
      for (const auto& r : roots) {
        const double dtv = std::abs(r[0] - t);
        const double dtb = tb_periodic ? wrap_dist(r[1], tb) : std::abs(r[1] - tb);
        const double ds = wrap_dist(r[2], s);
        if (dtv < 1e-6 && dtb < 1e-6 && ds < 1e-6) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      roots.push_back({t, tb, s});

      const SurfEval se = patch.eval(t, tb);
      const Point4 r = loop.at(s);
      const Point4 dr = loop.deriv(s);
      double m[3][3];
      for (int q = 0; q < 3; ++q) {
        m[0][q] = se.dt[kept[q]];
        m[1][q] = se.dtb[kept[q]];
        m[2][q] = dr[kept[q]];
      }
      const double d = det3(m);
      if (d == 0.0) throw AmbiguousPiercing("degenerate piercing frame");
      const double h = se.x[axis] - r[axis];
      if (h == 0.0) throw AmbiguousPiercing("loop touches the patch in R^4");
      Piercing p;
      p.axis = axis;
      p.patch = pi;
      p.t = t;
      p.tb = tb;
      p.s = s;
      p.orientation_sign = d > 0 ? 1 : -1;
      p.height_sign = h > 0 ? 1 : -1;
      p.gap = std::abs(h);
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const Piercing& a, const Piercing& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    if (a.s != b.s) return a.s < b.s;
    if (a.t != b.t) return a.t < b.t;
    return a.tb < b.tb;
  });
  return out;
}

int piercing_count(const Surface& surface, const Loop& loop, int axis,
                   const PiercingSettings& cfg) {
  int total = 0;
  for (const Piercing& p : find_piercings(surface, loop, axis, cfg))
    total += p.orientation_sign * p.height_sign;
  return total;
}

int lk(const Surface& surface, const std::vector<const Loop*>& geometric,
       const PiercingSettings& cfg) {
  int total = 0;
  for (const Loop* g : geometric) total += piercing_count(surface, *g, 0, cfg);
  return total;
}

double gauss_linking_spatial(const Loop& l1, const Loop& l2, int n) {
  KahanSum acc;
  std::vector<Point4> x2(n), d2(n);
  for (int j = 0; j < n; ++j) {
    const double s = (j + 0.5) / n;
    x2[j] = l2.at(s);
    d2[j] = l2.deriv(s);
  }
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    const Point4 x1 = l1.at(s);
    const Point4 d1 = l1.deriv(s);
    for (int j = 0; j < n; ++j) {
      const double r1 = x1[1] - x2[j][1];
      const double r2 = x1[2] - x2[j][2];
      const double r3 = x1[3] - x2[j][3];
      const double dist2 = r1 * r1 + r2 * r2 + r3 * r3;
      const double dist3 = dist2 * std::sqrt(dist2);
      const double cx = d1[2] * d2[j][3] - d1[3] * d2[j][2];
      const double cy = d1[3] * d2[j][1] - d1[1] * d2[j][3];
      const double cz = d1[1] * d2[j][2] - d1[2] * d2[j][1];
      acc.add((r1 * cx + r2 * cy + r3 * cz) / dist3);
    }
  }
  return acc.get() / (static_cast<double>(n) * n) / (4.0 * M_PI);
}

double wilson_I(const Loop& matter, const std::vector<const Loop*>& geometric,
                double kappa, int n) {
  if (n == 0) n = std::max(256, static_cast<int>(std::ceil(10.0 * kappa)));
  std::vector<Point4> y(n), dy(n);
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    y[i] = matter.at(s);
    dy[i] = matter.deriv(s);
  }
  KahanSum acc;
  for (const Loop* g : geometric) {
    std::vector<Point4> r(n), dr(n);
    for (int j = 0; j < n; ++j) {
      const double s = (j + 0.5) / n;
      r[j] = g->at(s);
      dr[j] = g->deriv(s);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // sum over the three kernel components; (i,j,k) cyclic carries +
        for (int kk = 1; kk <= 3; ++kk) {
          const int ia = (kk == 1) ? 2 : 1;
          const int ja = (kk == 3) ? 2 : 3;
          const double sgn = (kk == 2) ? -1.0 : 1.0;  // (2,3,1),(1,2,3) cyclic; (1,3,2) not
          const KernelKind kind = static_cast<KernelKind>(
              static_cast<int>(KernelKind::W1) + (kk - 1));
          const double ker = factorized_kernel(kind, kappa, y[i], r[j]);
          const double cross = dy[i][ia] * dr[j][ja] - dy[i][ja] * dr[j][ia];
          acc.add(ker * sgn * cross);
        }
      }
  }
  // kappa^3 / (8 pi): normalisation pinned by the closed-form observable test
  return (kappa * kappa * kappa / (8.0 * M_PI)) * acc.get() /
         (static_cast<double>(n) * n);
}

SkResult sk_hyperlink(const Loop& matter,
                      const std::vector<const Loop*>& geometric,
                      double kappa_max) {
  const double raw = wilson_I(matter, geometric, kappa_max) / (4.0 * M_PI);
  SkResult r;
  r.raw = raw;
  r.value = static_cast<int>(std::lround(raw));
  r.residual = std::abs(raw - r.value);
  if (r.residual >= 0.1)
    throw std::runtime_error("sk_hyperlink: schedule did not converge");
  return r;
}

}  // namespace linkcurv
