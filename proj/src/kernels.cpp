#include "linkcurv/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "linkcurv/quadrature.hpp"

namespace linkcurv {

namespace {
const double kQuarterRoot2Pi = std::pow(2.0 * M_PI, -0.25);
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);
const double kInvSqrt8 = 1.0 / (2.0 * std::sqrt(2.0));
}  // namespace

double gauss_window(double kappa, double t, double x) {
  const double d = t - x;
  return std::sqrt(kappa) * kQuarterRoot2Pi * std::exp(-kappa * kappa * d * d / 4.0);
}

double inv_antideriv_gauss(double kappa, double t, double x) {
  const double c = std::sqrt(M_PI) * kQuarterRoot2Pi / std::sqrt(kappa);
  return c * std::erf(kappa * (t - x) / 2.0);
}

double erf_pair(double kappa, double z, double x) {
  return std::erf(kappa * (z - x) * kInvSqrt8);
}

namespace {

// spatial axes other than j, ascending
void other_axes(int j, int& i, int& l) {
  i = (j == 1) ? 2 : 1;
  l = (j == 3) ? 2 : 3;
}

double sq(double v) { return v * v; }

}  // namespace

double factorized_kernel(KernelKind kind, double kappa, const Point4& sigma,
                         const Point4& rho) {
  const double k2_8 = kappa * kappa / 8.0;
  switch (kind) {
    case KernelKind::A1:
    case KernelKind::A2:
    case KernelKind::A3: {
      const int j = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::A1);
      int i, l;
      other_axes(j, i, l);
      const double d2 = sq(sigma[0] - rho[0]) + sq(sigma[i] - rho[i]) + sq(sigma[l] - rho[l]);
      return kSqrt2Pi * erf_pair(kappa, sigma[j], rho[j]) * std::exp(-k2_8 * d2);
    }
    case KernelKind::B: {
      const double d2 =
          sq(sigma[1] - rho[1]) + sq(sigma[2] - rho[2]) + sq(sigma[3] - rho[3]);
      return kSqrt2Pi * erf_pair(kappa, rho[0], sigma[0]) * std::exp(-k2_8 * d2);
    }
    case KernelKind::C1:
    case KernelKind::C2:
    case KernelKind::C3: {
      const int j = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::C1);
      int i, l;
      other_axes(j, i, l);
      const double d2 = sq(sigma[i] - rho[i]) + sq(sigma[l] - rho[l]);
      return -2.0 * M_PI * kappa * erf_pair(kappa, sigma[0], rho[0]) *
             erf_pair(kappa, sigma[j], rho[j]) * std::exp(-k2_8 * d2);
    }
    case KernelKind::W1:
    case KernelKind::W2:
    case KernelKind::W3: {
      const int l = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::W1);
      int i, j;
      other_axes(l, i, j);
      const double d2 = sq(sigma[i] - rho[i]) + sq(sigma[j] - rho[j]);
      return (2.0 * M_PI / kappa) * erf_pair(kappa, sigma[l], rho[l]) *
             erf_pair(kappa, rho[0], sigma[0]) * std::exp(-k2_8 * d2);
    }
  }
  throw std::logic_error("factorized_kernel: bad kind");
}

namespace {

// 1-d factor integrals over a window that covers both Gaussians
double gauss_gauss_1d(double kappa, double x, double y, int n) {
  const double c = 0.5 * (x + y);
  const double half = 0.5 * std::abs(x - y) + 14.0 / kappa;
  const auto& xs = gl_nodes(n);
  const auto& ws = gl_weights(n);
  KahanSum acc;
  for (int q = 0; q < n; ++q) {
    const double t = c - half + 2.0 * half * xs[q];
    acc.add(ws[q] * gauss_window(kappa, t, x) * gauss_window(kappa, t, y));
  }
  return 2.0 * half * acc.get();
}

// integral of q^x(t) * inv_antideriv_gauss(t, y); the window q^x localises t
double gauss_iag_1d(double kappa, double x, double y, int n) {
  const double half = 14.0 / kappa;
  const auto& xs = gl_nodes(n);
  const auto& ws = gl_weights(n);
  KahanSum acc;
  for (int q = 0; q < n; ++q) {
    const double t = x - half + 2.0 * half * xs[q];
    acc.add(ws[q] * gauss_window(kappa, t, x) * inv_antideriv_gauss(kappa, t, y));
  }
  return 2.0 * half * acc.get();
}

}  // namespace

double brute_force_kernel(KernelKind kind, double kappa, const Point4& sigma,
                          const Point4& rho, int n) {
  switch (kind) {
    case KernelKind::A1:
    case KernelKind::A2:
    case KernelKind::A3: {
      // kappa < p^sigma, d_j^{-1} p^rho >
      const int j = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::A1);
      int i, l;
      other_axes(j, i, l);
      return kappa * gauss_iag_1d(kappa, sigma[j], rho[j], n) *
             gauss_gauss_1d(kappa, sigma[0], rho[0], n) *
             gauss_gauss_1d(kappa, sigma[i], rho[i], n) *
             gauss_gauss_1d(kappa, sigma[l], rho[l], n);
    }
    case KernelKind::B:
      // kappa < d_0^{-1} p^sigma, p^rho >
      return kappa * gauss_iag_1d(kappa, rho[0], sigma[0], n) *
             gauss_gauss_1d(kappa, sigma[1], rho[1], n) *
             gauss_gauss_1d(kappa, sigma[2], rho[2], n) *
             gauss_gauss_1d(kappa, sigma[3], rho[3], n);
    case KernelKind::C1:
    case KernelKind::C2:
    case KernelKind::C3: {
      // kappa^3 < d_0^{-1} p^sigma, d_j^{-1} p^rho >
      const int j = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::C1);
      int i, l;
      other_axes(j, i, l);
      return kappa * kappa * kappa * gauss_iag_1d(kappa, rho[0], sigma[0], n) *
             gauss_iag_1d(kappa, sigma[j], rho[j], n) *
             gauss_gauss_1d(kappa, sigma[i], rho[i], n) *
             gauss_gauss_1d(kappa, sigma[l], rho[l], n);
    }
    case KernelKind::W1:
    case KernelKind::W2:
    case KernelKind::W3: {
      // mixed pairing between two loops: kappa d_l^{-1} on one side,
      // a bare d_0^{-1} on the other
      const int l = 1 + static_cast<int>(kind) - static_cast<int>(KernelKind::W1);
      int i, j;
      other_axes(l, i, j);
      return kappa * gauss_iag_1d(kappa, sigma[l], rho[l], n) *
             gauss_iag_1d(kappa, rho[0], sigma[0], n) *
             gauss_gauss_1d(kappa, sigma[i], rho[i], n) *
             gauss_gauss_1d(kappa, sigma[j], rho[j], n);
    }
  }
  throw std::logic_error("brute_force_kernel: bad kind");
}

}  // namespace linkcurv
