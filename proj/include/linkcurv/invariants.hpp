#pragma once
#include <stdexcept>
#include <vector>

#include "linkcurv/geometry.hpp"

namespace linkcurv {

// A projection of the loop meets a projected patch transversally.
struct Piercing {
  int axis = 0;        // dropped coordinate
  int patch = 0;       // surface patch index
  int loop = 0;        // loop index within the queried set
  double t = 0, tb = 0, s = 0;
  int orientation_sign = 0;  // det [d_t sigma; d_tb sigma; rho'] in the
                             // even-permutation frame of the dropped axis
  int height_sign = 0;       // sign of sigma_axis - rho_axis at the root
  double gap = 0;            // |sigma_axis - rho_axis|
};

struct PiercingSettings {
  int scan_n = 48;
  double root_tol = 1e-10;
  int max_iter = 50;
  double damping = 0.5;
  double boundary_tol = 1e-6;
};

// Piercing root within boundary_tol of a patch edge (or with a vanishing
// orientation determinant): the count is not well-defined.
struct AmbiguousPiercing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Piercing> find_piercings(const Surface&, const Loop&, int axis,
                                     const PiercingSettings& = {});

// Signed piercing count for one axis; all four axes agree for valid scenes.
int piercing_count(const Surface&, const Loop&, int axis,
                   const PiercingSettings& = {});

// Linking number of the geometric loops with the surface (axis-0 count).
int lk(const Surface&, const std::vector<const Loop*>& geometric,
       const PiercingSettings& = {});

// Classical Gauss double integral of the spatial projections (midpoint rule).
double gauss_linking_spatial(const Loop&, const Loop&, int n = 4096);

// Regularised pairing of two loops whose kappa -> infinity limit counts
// projected crossings; equals 4 pi * sk at the limit.  Midpoint rule with
// n = max(256, ceil(10 kappa)) points per loop when n == 0.
double wilson_I(const Loop& matter, const std::vector<const Loop*>& geometric,
                double kappa, int n = 0);

struct SkResult {
  int value = 0;
  double residual = 0.0;  // |I/(4 pi) - value| at kappa_max
  double raw = 0.0;       // I/(4 pi) before rounding
};

// Evaluates wilson_I at kappa_max, rounds to the nearest integer and reports
// the residual; residual >= 0.1 throws (the schedule did not converge).
SkResult sk_hyperlink(const Loop& matter,
                      const std::vector<const Loop*>& geometric,
                      double kappa_max = 80.0);

}  // namespace linkcurv
