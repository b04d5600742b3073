#pragma once
#include <array>
#include <string>
#include <variant>
#include <vector>

#include "linkcurv/kernels.hpp"  // Point4
#include "linkcurv/liealg.hpp"   // IrrepSpec

namespace linkcurv {

// One coordinate of a closed curve as a finite Fourier series on s in [0,1):
//   x(s) = a0 + sum_n cos_c[n-1] cos(2 pi n s) + sin_c[n-1] sin(2 pi n s)
struct FourierCoord {
  double a0 = 0.0;
  std::vector<double> cos_c, sin_c;
  double value(double s) const;
  double deriv(double s) const;
};

enum class LoopRole { matter, geometric };

struct Loop {
  std::string name;
  LoopRole role = LoopRole::geometric;
  int orientation = +1;  // -1 traverses the same image backwards
  std::array<FourierCoord, 4> coord;  // x0 (time), x1, x2, x3
  IrrepSpec color;        // matter loops only
  bool colored = false;   // set when a color was actually supplied

  // orientation folds into the parameter: s -> 1 - s for reversed loops
  Point4 at(double s) const;
  Point4 deriv(double s) const;
};

// Flat disk primitive: sigma(t, tb) = center + radius * t *
//   (cos(2 pi tb) span_u + sin(2 pi tb) span_v), spanning 4-vectors may carry
// time components (tilted disks).
struct DiskShape {
  Point4 center{};
  Point4 span_u{}, span_v{};
  double radius = 1.0;
};

// Tensor-monomial patch: sigma_a(t, tb) = sum_{m,n} c_a[m][n] t^m tb^n.
struct ParamShape {
  int deg_t = 0, deg_tb = 0;
  std::array<std::vector<double>, 4> coeffs;  // row-major (deg_t+1) x (deg_tb+1)
  double value(int a, double t, double tb) const;
  double dt(int a, double t, double tb) const;
  double dtb(int a, double t, double tb) const;
};

struct SurfEval {
  Point4 x{}, dt{}, dtb{};
  // pullback 2-form components J_{ab} = dt_a dtb_b - dt_b dtb_a
  double J(int a, int b) const { return dt[a] * dtb[b] - dt[b] * dtb[a]; }
  std::array<double, 3> J_sigma() const { return {J(2, 3), J(3, 1), J(1, 2)}; }
  std::array<double, 3> K_sigma() const { return {J(0, 1), J(0, 2), J(0, 3)}; }
};

struct Patch {
  std::string name;
  int orientation = +1;  // -1 flips tb, reversing every J sign
  std::variant<DiskShape, ParamShape> shape;
  // sub-rectangle of the reference domain (exact patch splitting)
  double t0 = 0.0, t1 = 1.0, tb0 = 0.0, tb1 = 1.0;

  SurfEval eval(double t, double tb) const;
};

// Split one patch into two along t (axis 0) or tb (axis 1) at `at`; the two
// halves reparametrise the same map, so any pullback integral is additive.
std::pair<Patch, Patch> split_patch(const Patch&, int axis, double at);

struct Surface {
  std::vector<Patch> patches;
};

struct Scene {
  std::vector<Loop> loops;  // matter and geometric mixed; role field decides
  Surface surface;
  double charge = 1.0;

  std::vector<const Loop*> matter() const;
  std::vector<const Loop*> geometric() const;
};

// Drop coordinate `axis` from a 4-point.
std::array<double, 3> project(const Point4&, int axis);

// Time-likeness check on parameter grids: flags (i) distinct points whose
// spatial distance^2 <= tol, (ii) pairs with two spatial coordinates equal
// within tol but |time gap| <= tol, and (iii) loop points within tol (4-d) of
// the surface.  Same-loop pairs closer than 2/grid_n in parameter are skipped.
struct TimelikeViolation {
  std::string what;
  int loop_a = -1, loop_b = -1;
  double s_a = 0.0, s_b = 0.0;
};
std::vector<TimelikeViolation> validate_timelike(const Scene&, int grid_n = 512,
                                                 double tol = 1e-9);

}  // namespace linkcurv
