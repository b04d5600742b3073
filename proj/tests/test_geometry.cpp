#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linkcurv/geometry.hpp"

using namespace linkcurv;

namespace {

Loop hopf_circle() {
  Loop lp;
  lp.name = "c";
  lp.coord[0].cos_c = {-0.33};
  lp.coord[0].sin_c = {-0.5};
  lp.coord[1].cos_c = {1.0};
  lp.coord[2].sin_c = {1.0};
  return lp;
}

Patch tilted_disk() {
  Patch p;
  p.name = "S";
  DiskShape d;
  d.span_u = {1.0 / 3.0, 1.0, 0.0, 0.0};
  d.span_v = {1.0 / 3.0, 0.0, 1.0, 0.0};
  p.shape = d;
  return p;
}

Patch square_patch() {
  // sigma = (0, 2t - 1, 2tb - 1, 0)
  Patch p;
  p.name = "Q";
  ParamShape ps;
  ps.deg_t = 1;
  ps.deg_tb = 1;
  for (auto& c : ps.coeffs) c.assign(4, 0.0);
  ps.coeffs[1] = {-1.0, 0.0, 2.0, 0.0};  // rows: 1, t; cols: 1, tb
  ps.coeffs[2] = {-1.0, 2.0, 0.0, 0.0};
  p.shape = ps;
  return p;
}

double dist4(const Point4& a, const Point4& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("Fourier coordinates evaluate their series and derivative") {
  FourierCoord c;
  c.a0 = 0.4;
  c.cos_c = {0.3, -0.1};
  c.sin_c = {0.0, 0.7};
  const double s = 0.237;
  const double expect = 0.4 + 0.3 * std::cos(2 * M_PI * s) -
                        0.1 * std::cos(4 * M_PI * s) +
                        0.7 * std::sin(4 * M_PI * s);
  CHECK(c.value(s) == doctest::Approx(expect).epsilon(1e-15));
  const double h = 1e-6;
  const double fd = (c.value(s + h) - c.value(s - h)) / (2 * h);
  CHECK(c.deriv(s) == doctest::Approx(fd).epsilon(1e-7));
  // closed curve: value and derivative are 1-periodic
  CHECK(c.value(s + 1.0) == doctest::Approx(c.value(s)).epsilon(1e-14));
}

TEST_CASE("orientation reversal traverses the same image backwards") {
  Loop lp = hopf_circle();
  Loop rev = lp;
  rev.orientation = -1;
  for (double s : {0.0, 0.21, 0.5, 0.83}) {
    CHECK(dist4(rev.at(s), lp.at(1.0 - s)) < 1e-15);
    const Point4 d = rev.deriv(s), dr = lp.deriv(1.0 - s);
    for (int a = 0; a < 4; ++a)
      CHECK(d[a] == doctest::Approx(-dr[a]).epsilon(1e-13));
  }
}

TEST_CASE("loop derivative agrees with finite differences") {
  const Loop lp = hopf_circle();
  const double s = 0.371, h = 1e-6;
  const Point4 d = lp.deriv(s);
  for (int a = 0; a < 4; ++a) {
    const double fd = (lp.at(s + h)[a] - lp.at(s - h)[a]) / (2 * h);
    CHECK(d[a] == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("disk patches evaluate centre, rim and tangents") {
  const Patch p = tilted_disk();
  const SurfEval centre = p.eval(0.0, 0.37);
  CHECK(dist4(centre.x, Point4{0, 0, 0, 0}) < 1e-15);
  const SurfEval rim = p.eval(1.0, 0.0);  // t=1, tb=0: center + span_u
  CHECK(dist4(rim.x, Point4{1.0 / 3.0, 1.0, 0.0, 0.0}) < 1e-15);
  // tangents vs finite differences
  const double t = 0.62, tb = 0.18, h = 1e-6;
  const SurfEval e = p.eval(t, tb);
  for (int a = 0; a < 4; ++a) {
    const double fdt = (p.eval(t + h, tb).x[a] - p.eval(t - h, tb).x[a]) / (2 * h);
    const double fdb = (p.eval(t, tb + h).x[a] - p.eval(t, tb - h).x[a]) / (2 * h);
    CHECK(e.dt[a] == doctest::Approx(fdt).epsilon(1e-6).scale(1.0));
    CHECK(e.dtb[a] == doctest::Approx(fdb).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("monomial patches evaluate their tensor polynomial") {
  const Patch p = square_patch();
  const SurfEval e = p.eval(0.25, 0.75);
  CHECK(dist4(e.x, Point4{0.0, -0.5, 0.5, 0.0}) < 1e-15);
  CHECK(e.dt[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.dtb[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.J(1, 2) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("pullback 2-form components are antisymmetric") {
  const Patch p = tilted_disk();
  const SurfEval e = p.eval(0.45, 0.81);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(e.J(a, b) == doctest::Approx(-e.J(b, a)).epsilon(1e-15).scale(1.0));
  const auto js = e.J_sigma();
  CHECK(js[0] == e.J(2, 3));
  CHECK(js[1] == e.J(3, 1));
  CHECK(js[2] == e.J(1, 2));
  const auto ks = e.K_sigma();
  CHECK(ks[0] == e.J(0, 1));
  CHECK(ks[2] == e.J(0, 3));
}

TEST_CASE("patch orientation flips tb and every J sign") {
  Patch p = tilted_disk();
  Patch q = p;
  q.orientation = -1;
  const double t = 0.4, tb = 0.3;
  const SurfEval a = q.eval(t, tb);
  const SurfEval b = p.eval(t, 1.0 - tb);
  CHECK(dist4(a.x, b.x) < 1e-15);
  CHECK(a.J(1, 2) == doctest::Approx(-b.J(1, 2)).epsilon(1e-13).scale(1.0));
}

TEST_CASE("patch splitting covers the same image additively") {
  const Patch p = tilted_disk();
  for (int axis : {0, 1}) {
    const auto [lo, hi] = split_patch(p, axis, 0.4);
    // midpoint sample of each half maps into the parent's domain
    const SurfEval a = lo.eval(0.5, 0.5);
    const SurfEval b = hi.eval(0.5, 0.5);
    const SurfEval pa = axis == 0 ? p.eval(0.2, 0.5) : p.eval(0.5, 0.2);
    const SurfEval pb = axis == 0 ? p.eval(0.7, 0.5) : p.eval(0.5, 0.7);
    CHECK(dist4(a.x, pa.x) < 1e-14);
    CHECK(dist4(b.x, pb.x) < 1e-14);
    // the pullback integral of any smooth 2-form is preserved: compare a
    // crude fixed-grid integral of J(1,2) over parent and halves
    auto integral = [](const Patch& patch) {
      double sum = 0.0;
      const int n = 64;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sum += patch.eval((i + 0.5) / n, (j + 0.5) / n).J(1, 2) / (n * n);
      return sum;
    };
    CHECK(integral(lo) + integral(hi) ==
          doctest::Approx(integral(p)).epsilon(1e-3));
  }
}

TEST_CASE("project drops exactly the named coordinate") {
  const Point4 x{1.0, 2.0, 3.0, 4.0};
  CHECK(project(x, 0) == std::array<double, 3>{2.0, 3.0, 4.0});
  CHECK(project(x, 2) == std::array<double, 3>{1.0, 2.0, 4.0});
}

TEST_CASE("time-likeness scan accepts the Hopf pair and flags collisions") {
  Scene ok;
  ok.loops.push_back(hopf_circle());
  Loop g;
  g.name = "g";
  g.coord[0].cos_c = {-0.15};
  g.coord[0].sin_c = {-0.5};
  g.coord[1].a0 = 1.0;
  g.coord[1].cos_c = {1.0};
  g.coord[3].sin_c = {1.0};
  ok.loops.push_back(g);
  CHECK(validate_timelike(ok).empty());

  // same spatial circles with identical (zero) time: fold pairs collide
  Scene bad = ok;
  bad.loops[0].coord[0] = FourierCoord{};
  bad.loops[1].coord[0] = FourierCoord{};
  // two unit circles in orthogonal planes meeting at (1,0,0)... the Hopf
  // pair never meets spatially; instead collide a translated copy
  bad.loops[1] = bad.loops[0];
  bad.loops[1].name = "copy";
  const auto v = validate_timelike(bad);
  CHECK(!v.empty());
}

TEST_CASE("fold pairs with equal times are flagged") {
  // figure-eight shadow: x1 = sin(4 pi s) has x1(s) = x1(1/2 - s); at
  // s = 1/8, 3/8 the spatial points coincide; constant time -> violation
  Scene sc;
  Loop f;
  f.name = "eight";
  f.coord[1].sin_c = {0.0, 1.0};
  f.coord[2].sin_c = {1.0};
  sc.loops.push_back(f);
  const auto v = validate_timelike(sc);
  CHECK(!v.empty());
}
