#include "linkcurv/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace linkcurv {

namespace {

double term_monomial(const GaussTerm& t, const Point4& x) {
  double m = t.coeff;
  for (int a = 0; a < 4; ++a)
    for (int p = 0; p < t.powers[a]; ++p) m *= x[a];
  return m;
}

double term_gauss(const GaussTerm& t, const Point4& x) {
  if (t.width <= 0.0) return 1.0;
  double r2 = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double d = x[a] - t.center[a];
    r2 += d * d;
  }
  return std::exp(-r2 / t.width);
}

}  // namespace

double SlotFunc::value(const Point4& x) const {
  double v = 0.0;
  for (const GaussTerm& t : terms) v += term_monomial(t, x) * term_gauss(t, x);
  return v;
}

double SlotFunc::partial(int axis, const Point4& x) const {
  double v = 0.0;
  for (const GaussTerm& t : terms) {
    const double g = term_gauss(t, x);
    // monomial derivative: lower the power on `axis` once
    if (t.powers[axis] > 0) {
      GaussTerm lowered = t;
      lowered.powers[axis] -= 1;
      lowered.coeff *= t.powers[axis];
      v += term_monomial(lowered, x) * g;
    }
    if (t.width > 0.0)
      v += term_monomial(t, x) * g * (-2.0 * (x[axis] - t.center[axis]) / t.width);
  }
  return v;
}

namespace {

double slot_partial(const SlotFunc& f, bool fd, int axis, const Point4& x) {
  if (!fd) return f.partial(axis, x);
  // central difference with one Richardson sweep, step 1e-5
  auto diff = [&](double h) {
    Point4 xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (f.value(xp) - f.value(xm)) / (2.0 * h);
  };
  const double h = 1e-5;
  return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
}

AlgebraElement partial_component(const ConnectionField& w, int i, int axis,
                                 const Point4& x) {
  AlgebraElement out;
  for (int s = 0; s < 6; ++s) {
    const double d = slot_partial(w.comp[i - 1][s], w.use_finite_differences,
                                  axis, x);
    if (d != 0.0)
      out = out + cplx{d, 0.0} * basis_element(kSlotPairs[s].first,
                                               kSlotPairs[s].second);
  }
  return out;
}

}  // namespace

AlgebraElement connection_component(const ConnectionField& w, int i,
                                    const Point4& x) {
  AlgebraElement out;
  for (int s = 0; s < 6; ++s) {
    const double v = w.comp[i - 1][s].value(x);
    if (v != 0.0)
      out = out + cplx{v, 0.0} * basis_element(kSlotPairs[s].first,
                                               kSlotPairs[s].second);
  }
  return out;
}

CurvatureComponents curvature_at_point(const ConnectionField& w,
                                       const Point4& x) {
  CurvatureComponents out;
  AlgebraElement abar[4];
  for (int i = 1; i <= 3; ++i) abar[i] = connection_component(w, i, x);
  for (int i = 1; i <= 3; ++i) out.time_space[i - 1] = partial_component(w, i, 0, x);
  constexpr int cyc[3][2] = {{2, 3}, {3, 1}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    const int i = cyc[k][0], j = cyc[k][1];
    out.space_space[k] = partial_component(w, j, i, x) -
                         partial_component(w, i, j, x) +
                         cplx{2.0, 0.0} * bracket(abar[i], abar[j]);
  }
  return out;
}

AlgebraElement total_curvature_surface(const ConnectionField& w,
                                       const Surface& surface,
                                       const QuadSettings& settings) {
  AlgebraElement total;
  for (const Patch& patch : surface.patches) {
    auto f = [&](const double* u, double* out) {
      const SurfEval se = patch.eval(u[0], u[1]);
      const CurvatureComponents r = curvature_at_point(w, se.x);
      const auto ks = se.K_sigma();
      const auto js = se.J_sigma();
      AlgebraElement e;
      for (int i = 0; i < 3; ++i)
        e = e + cplx{ks[i], 0.0} * r.time_space[i] +
            cplx{js[i], 0.0} * r.space_space[i];
      for (int c = 0; c < 3; ++c) {
        out[c] = e.plus[c].real();
        out[3 + c] = e.minus[c].real();
      }
    };
    const QuadResultVec res = integrate_unit_cube_vec(2, 6, f, settings);
    if (!res.converged)
      throw std::runtime_error("curvature surface integral did not converge");
    AlgebraElement e;
    for (int c = 0; c < 3; ++c) {
      e.plus[c] = res.value[c];
      e.minus[c] = res.value[3 + c];
    }
    total = total + e;
  }
  return total;
}

}  // namespace linkcurv
