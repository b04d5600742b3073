#pragma once
#include <cstdint>
#include <functional>
#include <vector>

namespace linkcurv {

struct QuadSettings {
  int base = 16;            // nodes per axis at the first refinement level
  int max_refinements = 6;  // geometric ladder: base, 2*base, 4*base, ...
  double rel_tol = 1e-3;
  double abs_tol = 1e-9;
  std::uint64_t seed = 0;   // quasi-random fallback shifts
  // tensor grids beyond this many evaluations per level fall back to
  // stratified quasi-random sampling (dim 4 only)
  long long tensor_eval_cap = 100000000;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  bool used_quasi_random = false;
  long long evals = 0;
};

// Gauss-Legendre nodes/weights on [0,1]; cached per n, deterministic.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

// Integrate f over [0,1]^dim, dim in {2,3,4}.  Nested tensor Gauss-Legendre
// grids with per-level difference as the error estimate; a level whose tensor
// grid would exceed tensor_eval_cap evaluations switches to the stratified
// quasi-random estimator (dim 4) with a 3-sigma error bar.
QuadResult integrate_unit_cube(int dim,
                               const std::function<double(const double*)>& f,
                               const QuadSettings& settings = {});

// Same ladder for an integrand with nout simultaneous components (one shared
// evaluation sweep); convergence is judged on the worst component.
struct QuadResultVec {
  std::vector<double> value;
  double error_estimate = 0.0;
  bool converged = false;
  long long evals = 0;
};
QuadResultVec integrate_unit_cube_vec(
    int dim, int nout,
    const std::function<void(const double*, double*)>& f,
    const QuadSettings& settings = {});

// Compensated (Kahan) accumulator: fixed evaluation order keeps every sum
// bit-stable across runs.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double get() const { return s; }
};

}  // namespace linkcurv
