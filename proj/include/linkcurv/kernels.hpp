#pragma once
#include <array>

namespace linkcurv {

using Point4 = std::array<double, 4>;

// Time-slice Gaussian window:  q_k^x(t) = sqrt(k) (2 pi)^(-1/4) exp(-k^2 (t-x)^2 / 4).
double gauss_window(double kappa, double t, double x);

// Antiderivative of the window in t:  C(k) erf(k (t - x) / 2),
// C(k) = sqrt(pi) (2 pi)^(-1/4) k^(-1/2); d/dt of this is gauss_window.
double inv_antideriv_gauss(double kappa, double t, double x);

// erf(k (z - x) / (2 sqrt(2))) — the saturating factor every kernel shares.
double erf_pair(double kappa, double z, double x);

// Closed-form pairings between window products centred at a surface point
// sigma and a loop point rho.  With D_a = sigma_a - rho_a, E(a,b) the erf_pair:
//   A_j  =  sqrt(2 pi) E(sigma_j, rho_j) exp(-k^2 (D_0^2 + D_i^2 + D_l^2)/8)
//   B    =  sqrt(2 pi) E(rho_0, sigma_0) exp(-k^2 (D_1^2 + D_2^2 + D_3^2)/8)
//   C_j  = -2 pi k E(sigma_0, rho_0) E(sigma_j, rho_j) exp(-k^2 (D_i^2 + D_l^2)/8)
//   W_l  =  (2 pi / k) E(sigma_l, rho_l) E(rho_0, sigma_0) exp(-k^2 (D_i^2 + D_j^2)/8)
// where {i, l} (resp. {i, j}) are the spatial axes other than j (resp. l).
enum class KernelKind { A1, A2, A3, B, C1, C2, C3, W1, W2, W3 };

double factorized_kernel(KernelKind kind, double kappa, const Point4& sigma,
                         const Point4& rho);

// Same pairing evaluated as a product of four 1-d numerical integrals over
// the Gaussian windows (no closed forms), for cross-checking the above.
double brute_force_kernel(KernelKind kind, double kappa, const Point4& sigma,
                          const Point4& rho, int nodes_per_axis = 400);

}  // namespace linkcurv
