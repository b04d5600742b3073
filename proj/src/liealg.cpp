#include "linkcurv/liealg.hpp"

#include <cmath>
#include <stdexcept>

namespace linkcurv {

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r;
  for (int i = 0; i < 3; ++i) {
    r.plus[i] = x.plus[i] + y.plus[i];
    r.minus[i] = x.minus[i] + y.minus[i];
  }
  return r;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r;
  for (int i = 0; i < 3; ++i) {
    r.plus[i] = x.plus[i] - y.plus[i];
    r.minus[i] = x.minus[i] - y.minus[i];
  }
  return r;
}

AlgebraElement operator*(cplx c, const AlgebraElement& x) {
  AlgebraElement r;
  for (int i = 0; i < 3; ++i) {
    r.plus[i] = c * x.plus[i];
    r.minus[i] = c * x.minus[i];
  }
  return r;
}

static std::array<cplx, 3> cross3(const std::array<cplx, 3>& a,
                                  const std::array<cplx, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r;
  r.plus = cross3(x.plus, y.plus);
  r.minus = cross3(x.minus, y.minus);
  return r;
}

AlgebraElement basis_element(int alpha, int beta) {
  if (alpha == beta || alpha < 0 || beta < 0 || alpha > 3 || beta > 3)
    throw std::invalid_argument("basis_element: need distinct indices in 0..3");
  if (alpha > beta) {
    AlgebraElement r = basis_element(beta, alpha);
    return cplx(-1.0) * r;
  }
  AlgebraElement r;
  if (alpha == 0) {
    r.plus[beta - 1] = 1.0;
    return r;
  }
  // spatial pairs: (2,3) -> e_1, (3,1) -> e_2 i.e. (1,3) -> -e_2, (1,2) -> e_3
  if (alpha == 2 && beta == 3) r.minus[0] = 1.0;
  else if (alpha == 1 && beta == 3) r.minus[1] = -1.0;
  else r.minus[2] = 1.0;  // (1,2)
  return r;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const cplx v = x.at(i, k);
      if (v == cplx(0.0)) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

Mat mat_add(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

Mat mat_scale(cplx c, const Mat& x) {
  Mat r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = c * x.a[i];
  return r;
}

cplx mat_trace(const Mat& x) {
  cplx t = 0.0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

double mat_max_abs(const Mat& x) {
  double m = 0.0;
  for (const cplx& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

Mat mat_expm(const Mat& x) {
  // scale so the max entry is small, Taylor to machine precision, square back
  int squarings = 0;
  double m = mat_max_abs(x) * x.n;
  while (m > 0.25 && squarings < 60) {
    m *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  Mat xs = mat_scale(scale, x);
  Mat result(x.n);
  for (int i = 0; i < x.n; ++i) result.at(i, i) = 1.0;
  Mat term = result;
  for (int k = 1; k <= 24; ++k) {
    term = mat_scale(1.0 / k, mat_mul(term, xs));
    result = mat_add(result, term);
    if (mat_max_abs(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = mat_mul(result, result);
  return result;
}

std::array<Mat, 3> spin_matrices(int j_x2) {
  if (j_x2 < 0 || j_x2 > kMaxJx2)
    throw std::invalid_argument("spin_matrices: 2j out of range 0..11");
  const int d = j_x2 + 1;
  const double j = 0.5 * j_x2;
  // standard angular momentum matrices on basis |m = j>, |j-1>, ..., |-j>
  Mat J1(d), J2(d), J3(d);
  for (int r = 0; r < d; ++r) J3.at(r, r) = j - r;
  for (int r = 1; r < d; ++r) {
    const double mm = j - r;  // raising connects |m> -> |m+1>
    const double c = std::sqrt(j * (j + 1) - mm * (mm + 1));
    J1.at(r - 1, r) += 0.5 * c;
    J1.at(r, r - 1) += 0.5 * c;
    J2.at(r - 1, r) += cplx(0.0, -0.5) * c;
    J2.at(r, r - 1) += cplx(0.0, 0.5) * c;
  }
  // S_1 = i J_2, S_2 = i J_1, S_3 = i J_3 gives [S_i, S_j] = eps_{ijk} S_k
  return {mat_scale(cplx(0, 1), J2), mat_scale(cplx(0, 1), J1),
          mat_scale(cplx(0, 1), J3)};
}

cplx trace_exp_character(int j_x2, cplx c, Factor) {
  if (j_x2 < 0 || j_x2 > kMaxJx2)
    throw std::invalid_argument("trace_exp_character: 2j out of range 0..11");
  const cplx w = c * cplx(0.0, std::sqrt(3.0));
  cplx sum = 0.0;
  for (int m2 = -j_x2; m2 <= j_x2; m2 += 2) sum += std::exp(w * (0.5 * m2));
  return sum;
}

}  // namespace linkcurv
