#pragma once
#include <array>
#include <utility>
#include <vector>

#include "linkcurv/geometry.hpp"
#include "linkcurv/liealg.hpp"
#include "linkcurv/quadrature.hpp"

namespace linkcurv {

// Two-form slot order used throughout: three time-space pairs then the
// cyclic space-space pairs.
inline constexpr std::array<std::pair<int, int>, 6> kSlotPairs{
    {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

// One analytic term: coeff * prod_a (x_a)^powers[a] * exp(-|x-center|^2/width);
// width <= 0 drops the Gaussian factor.  Partials are exact.
struct GaussTerm {
  double coeff = 0.0;
  std::array<int, 4> powers{};
  Point4 center{};
  double width = 0.0;
};

struct SlotFunc {
  std::vector<GaussTerm> terms;
  double value(const Point4&) const;
  double partial(int axis, const Point4&) const;
};

// Connection with spatial one-form components only:
// comp[i-1][slot] is the scalar in front of dx_i (x) slot pair, i = 1..3.
// The (beta, alpha) value is the negative of the stored (alpha, beta) one.
struct ConnectionField {
  std::array<std::array<SlotFunc, 6>, 3> comp;
  // derivative route: exact partials (default) or central differences with
  // step 1e-5 plus one Richardson sweep, for cross-checking
  bool use_finite_differences = false;
};

// algebra-valued coefficient of dx_i: sum over slots of comp * basis element
AlgebraElement connection_component(const ConnectionField&, int i,
                                    const Point4&);

// Curvature two-form components at a point:
//   time_space[i-1] = d_0 Abar_i
//   space_space[k-1] = d_i Abar_j - d_j Abar_i + 2 [Abar_i, Abar_j]
// for the cyclic pair (i, j) completing k; the factor 2 accounts for both
// slot orders of the quadratic group appearing once each.
struct CurvatureComponents {
  std::array<AlgebraElement, 3> time_space;   // R_{01}, R_{02}, R_{03}
  std::array<AlgebraElement, 3> space_space;  // R_{23}, R_{31}, R_{12}
};
CurvatureComponents curvature_at_point(const ConnectionField&, const Point4&);

// Surface integral of the curvature two-form pulled back through each patch:
//   sum_patches int ( sum_i R_{0i} J_{0i} + sum_k R_{space,k} J_sigma[k] )
// evaluated with the dim-2 refinement ladder per patch.  Throws on
// non-convergence.
AlgebraElement total_curvature_surface(const ConnectionField&, const Surface&,
                                       const QuadSettings& = {});

}  // namespace linkcurv
