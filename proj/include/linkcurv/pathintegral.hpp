#pragma once
#include <array>
#include <string>
#include <vector>

#include "linkcurv/geometry.hpp"
#include "linkcurv/invariants.hpp"
#include "linkcurv/liealg.hpp"
#include "linkcurv/quadrature.hpp"

namespace linkcurv {

// coefficient (x) algebra, kept apart so the algebra part stays a fixed
// real basis combination
struct OperatorValue {
  cplx coefficient{};
  AlgebraElement algebra;
  AlgebraElement full() const { return coefficient * algebra; }
};

enum class FSign { plus, minus };

// distinguished algebra elements: the basis sums of one factor and their
// combinations
AlgebraElement f_plus();   // (1,1,1 | 0,0,0)
AlgebraElement f_minus();  // (0,0,0 | 1,1,1)
AlgebraElement f_diff();   // f_plus - f_minus
AlgebraElement f_sum();    // f_plus + f_minus

// grid override for the pinned-resolution term evaluators; zeros pick the
// per-term defaults (surface max(48, 4k) for A/B and max(48, 3k) for C, loop
// max(64, 6k))
struct TermGrids {
  int n_surf = 0;
  int n_loop = 0;
};

// Scalar kernel pairings over surface x geometric loops, Gauss-Legendre
// tensor grids, prefactors included:
//   B: (k^3/32pi) sum_v int k<inv-antideriv-0 window_sigma, window_rho>
//        exp-weight * (rho' . J_sigma)
//   A_j: (k^3/32pi) sum_v int (rho'_k J_{0i} - rho'_i J_{0k}) * A_j kernel,
//        (i,j,k) cyclic
//   C: -(1/32pi^2) sum_{(i,j,k) cyc} int J_{ij} * [sum_v int ds
//        (rho'_k cker_j - rho'_j cker_k)] * [sum_v int ds (rho'_i cker_k -
//        rho'_k cker_i)]
double term_B_scalar(const Surface&, const std::vector<const Loop*>& geometric,
                     double kappa, TermGrids = {});
std::array<double, 3> term_A_scalar(const Surface&,
                                    const std::vector<const Loop*>& geometric,
                                    double kappa, TermGrids = {});
double term_C_scalar(const Surface&, const std::vector<const Loop*>& geometric,
                     double kappa, TermGrids = {});

// Same integrands through the generic refinement ladder (error-controlled
// cross-check of the pinned grids); A is returned summed over j.
QuadResult term_B_scalar_adaptive(const Surface&,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings&);
QuadResult term_A_scalar_adaptive(const Surface&,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings&);
QuadResult term_C_scalar_adaptive(const Surface&,
                                  const std::vector<const Loop*>& geometric,
                                  double kappa, const QuadSettings&);

// Operator-valued regularized terms.  Limits for a scene with linking
// number lk:  term_A(+) + term_A(-) -> -(3 i sqrt(pi)/2) lk (f_plus-f_minus),
// term_B -> -(i sqrt(pi)/2) lk (f_plus - f_minus), term_C(+) + term_C(-) -> 0.
OperatorValue term_A(const Scene&, double kappa, FSign, TermGrids = {});
OperatorValue term_B(const Scene&, double kappa, TermGrids = {});
OperatorValue term_C(const Scene&, double kappa, FSign, TermGrids = {});

// Scalar exponent I(k) of the regularized holonomy pairing; I(k)/(4 pi) -> sk.
double wilson_exponent(const Loop& matter,
                       const std::vector<const Loop*>& geometric, double kappa,
                       int n = 0);

// One matter-loop factor of the observable:
//   char(j_plus, -i pi q x, plus) + char(j_minus, +i pi q x, minus);
// real for every real x by the m -> -m symmetry of each eigenvalue sum.
cplx z_factor(const IrrepSpec& color, double x, double charge);

// Product of z_factor over matter loops with x = sk (exact integers at
// kappa_max); throws on uncolored matter loops or a non-real product.
double z_observable(const Scene&, double kappa_max = 80.0);
// Limit-verification variant: x = I(kappa)/(4 pi), unrounded.
double z_observable_numeric(const Scene&, double kappa);

// Exact-invariant operator: coefficient -i sqrt(4pi) lk Z, algebra f_diff.
OperatorValue f_hat_operator(const Scene&, double kappa_max = 80.0);

struct ConvergenceRow {
  double kappa = 0.0;
  std::string term;        // A_sum | B | C_sum | total | wilson:<loop>
  cplx value{};
  double error_estimate = 0.0;  // |value - half-resolution value|
  cplx reference{};             // from exact invariants only
  double abs_error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool tail_monotone = false;     // A_sum, B, total errors non-increasing
                                  // over the last three schedule points
  bool final_within_tol = false;  // final total within 5% of its reference
                                  // (wilson rows within 0.05 absolute)
};

// Runs every term over an increasing kappa schedule.  Rows:
//   A_sum  value = coefficient of (f_plus - f_minus), ref -(3 i sqrt(pi)/2) lk
//   B      same shape, ref -(i sqrt(pi)/2) lk
//   C_sum  value = sum of both sign coefficients (2x scalar), ref 0
//   total  value = plus-slot sum A+B+C, ref -i sqrt(4pi) lk
//   wilson:<name>  value = I(k)/(4pi), ref = rounded Gauss-linking oracle
// Also asserts 3 sqrt(pi)/2 + sqrt(pi)/2 == sqrt(4 pi) to 1e-15.
ConvergenceTable convergence_study(const Scene&,
                                   const std::vector<double>& schedule,
                                   TermGrids = {});

}  // namespace linkcurv
