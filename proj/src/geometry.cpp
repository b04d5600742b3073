#include "linkcurv/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace linkcurv {

double FourierCoord::value(double s) const {
  double v = a0;
  const double w = 2.0 * M_PI * s;
  for (size_t n = 0; n < cos_c.size(); ++n) v += cos_c[n] * std::cos(w * (n + 1));
  for (size_t n = 0; n < sin_c.size(); ++n) v += sin_c[n] * std::sin(w * (n + 1));
  return v;
}

double FourierCoord::deriv(double s) const {
  double v = 0.0;
  const double w = 2.0 * M_PI * s;
  for (size_t n = 0; n < cos_c.size(); ++n)
    v -= cos_c[n] * 2.0 * M_PI * (n + 1) * std::sin(w * (n + 1));
  for (size_t n = 0; n < sin_c.size(); ++n)
    v += sin_c[n] * 2.0 * M_PI * (n + 1) * std::cos(w * (n + 1));
  return v;
}

Point4 Loop::at(double s) const {
  const double u = orientation >= 0 ? s : 1.0 - s;
  return {coord[0].value(u), coord[1].value(u), coord[2].value(u),
          coord[3].value(u)};
}

Point4 Loop::deriv(double s) const {
  const double u = orientation >= 0 ? s : 1.0 - s;
  const double sign = orientation >= 0 ? 1.0 : -1.0;
  return {sign * coord[0].deriv(u), sign * coord[1].deriv(u),
          sign * coord[2].deriv(u), sign * coord[3].deriv(u)};
}

double ParamShape::value(int a, double t, double tb) const {
  const auto& c = coeffs[a];
  double v = 0.0;
  double tp = 1.0;
  for (int m = 0; m <= deg_t; ++m) {
    double bp = 1.0, row = 0.0;
    for (int n = 0; n <= deg_tb; ++n) {
      row += c[static_cast<size_t>(m) * (deg_tb + 1) + n] * bp;
      bp *= tb;
    }
    v += row * tp;
    tp *= t;
  }
  return v;
}

double ParamShape::dt(int a, double t, double tb) const {
  const auto& c = coeffs[a];
  double v = 0.0;
  double tp = 1.0;
  for (int m = 1; m <= deg_t; ++m) {
    double bp = 1.0, row = 0.0;
    for (int n = 0; n <= deg_tb; ++n) {
      row += c[static_cast<size_t>(m) * (deg_tb + 1) + n] * bp;
      bp *= tb;
    }
    v += m * row * tp;
    tp *= t;
  }
  return v;
}

double ParamShape::dtb(int a, double t, double tb) const {
  const auto& c = coeffs[a];
  double v = 0.0;
  double tp = 1.0;
  for (int m = 0; m <= deg_t; ++m) {
    double bp = 1.0, row = 0.0;
    for (int n = 1; n <= deg_tb; ++n) {
      row += c[static_cast<size_t>(m) * (deg_tb + 1) + n] * n * bp;
      bp *= tb;
    }
    v += row * tp;
    tp *= t;
  }
  return v;
}

SurfEval Patch::eval(double t, double tb) const {
  // orientation -1 flips tb; the sub-rectangle remap scales the partials
  double u = t0 + (t1 - t0) * t;
  double vb = orientation >= 0 ? tb : 1.0 - tb;
  vb = tb0 + (tb1 - tb0) * vb;
  const double du = t1 - t0;
  const double dvb = (orientation >= 0 ? 1.0 : -1.0) * (tb1 - tb0);

  SurfEval e;
  if (const DiskShape* d = std::get_if<DiskShape>(&shape)) {
    const double ang = 2.0 * M_PI * vb;
    const double c = std::cos(ang), s = std::sin(ang);
    for (int a = 0; a < 4; ++a) {
      const double dir = c * d->span_u[a] + s * d->span_v[a];
      e.x[a] = d->center[a] + d->radius * u * dir;
      e.dt[a] = du * d->radius * dir;
      e.dtb[a] = dvb * d->radius * u * 2.0 * M_PI *
                 (-s * d->span_u[a] + c * d->span_v[a]);
    }
  } else {
    const ParamShape& p = std::get<ParamShape>(shape);
    for (int a = 0; a < 4; ++a) {
      e.x[a] = p.value(a, u, vb);
      e.dt[a] = du * p.dt(a, u, vb);
      e.dtb[a] = dvb * p.dtb(a, u, vb);
    }
  }
  return e;
}

std::pair<Patch, Patch> split_patch(const Patch& p, int axis, double at) {
  if (at <= 0.0 || at >= 1.0)
    throw std::invalid_argument("split_patch: split point must be inside (0,1)");
  Patch lo = p, hi = p;
  if (axis == 0) {
    const double mid = p.t0 + (p.t1 - p.t0) * at;
    lo.t1 = mid;
    hi.t0 = mid;
  } else {
    const double mid = p.tb0 + (p.tb1 - p.tb0) * at;
    lo.tb1 = mid;
    hi.tb0 = mid;
  }
  lo.name += "/a";
  hi.name += "/b";
  return {lo, hi};
}

std::vector<const Loop*> Scene::matter() const {
  std::vector<const Loop*> r;
  for (const Loop& l : loops)
    if (l.role == LoopRole::matter) r.push_back(&l);
  return r;
}

std::vector<const Loop*> Scene::geometric() const {
  std::vector<const Loop*> r;
  for (const Loop& l : loops)
    if (l.role == LoopRole::geometric) r.push_back(&l);
  return r;
}

std::array<double, 3> project(const Point4& x, int axis) {
  std::array<double, 3> r{};
  int q = 0;
  for (int a = 0; a < 4; ++a)
    if (a != axis) r[q++] = x[a];
  return r;
}

std::vector<TimelikeViolation> validate_timelike(const Scene& scene, int grid_n,
                                                 double tol) {
  std::vector<TimelikeViolation> out;
  const int nl = static_cast<int>(scene.loops.size());
  std::vector<std::vector<Point4>> pts(nl);
  for (int a = 0; a < nl; ++a) {
    pts[a].resize(grid_n);
    for (int i = 0; i < grid_n; ++i)
      pts[a][i] = scene.loops[a].at((i + 0.5) / grid_n);
  }
  auto s_of = [&](int i) { return (i + 0.5) / grid_n; };
  for (int a = 0; a < nl; ++a)
    for (int b = a; b < nl; ++b)
      for (int i = 0; i < grid_n; ++i) {
        const int j0 = (a == b) ? i + 1 : 0;
        for (int j = j0; j < grid_n; ++j) {
          if (a == b) {
            const int dp = std::min(j - i, grid_n - (j - i));
            if (dp < 2) continue;  // neighbouring samples of the same loop
          }
          const Point4& p = pts[a][i];
          const Point4& q = pts[b][j];
          const double d1 = p[1] - q[1], d2 = p[2] - q[2], d3 = p[3] - q[3];
          const double sp2 = d1 * d1 + d2 * d2 + d3 * d3;
          if (sp2 <= tol) {
            out.push_back({"spatial coincidence", a, b, s_of(i), s_of(j)});
            continue;
          }
          const double ad[3] = {std::abs(d1), std::abs(d2), std::abs(d3)};
          int close = (ad[0] <= tol) + (ad[1] <= tol) + (ad[2] <= tol);
          if (close >= 2 && std::abs(p[0] - q[0]) <= tol)
            out.push_back({"fold pair with equal times", a, b, s_of(i), s_of(j)});
        }
      }
  // loops must stay off the surface in R^4
  if (!scene.surface.patches.empty()) {
    const int ng = 96;
    std::vector<Point4> surf;
    surf.reserve(static_cast<size_t>(ng) * ng * scene.surface.patches.size());
    for (const Patch& patch : scene.surface.patches)
      for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j)
          surf.push_back(patch.eval((i + 0.5) / ng, (j + 0.5) / ng).x);
    for (int a = 0; a < nl; ++a)
      for (int i = 0; i < grid_n; ++i) {
        const Point4& p = pts[a][i];
        for (const Point4& q : surf) {
          double d2 = 0.0;
          for (int c = 0; c < 4; ++c) d2 += (p[c] - q[c]) * (p[c] - q[c]);
          if (d2 <= tol) {
            out.push_back({"loop touches surface", a, -1, s_of(i), 0.0});
            break;
          }
        }
      }
  }
  return out;
}

}  // namespace linkcurv
