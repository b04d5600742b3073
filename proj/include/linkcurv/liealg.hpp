#pragma once
#include <array>
#include <complex>
#include <vector>

namespace linkcurv {

using cplx = std::complex<double>;

// Element of su(2) x su(2) in the split basis: `plus` holds the coefficients
// of the first factor's basis (e_1,e_2,e_3), `minus` the second factor's.
// Coefficients are complex so the same type carries operator values.
struct AlgebraElement {
  std::array<cplx, 3> plus{};
  std::array<cplx, 3> minus{};
};

AlgebraElement operator+(const AlgebraElement&, const AlgebraElement&);
AlgebraElement operator-(const AlgebraElement&, const AlgebraElement&);
AlgebraElement operator*(cplx, const AlgebraElement&);
// Factor-wise bracket; on each su(2) factor [e_i, e_j] = eps_{ijk} e_k,
// so the bracket of coefficient vectors is the cross product.
AlgebraElement bracket(const AlgebraElement&, const AlgebraElement&);

// Basis 2-form slot (alpha, beta), alpha != beta, mapped into the split basis:
// (0,i) -> plus e_i; (2,3) -> minus e_1, (3,1) -> minus e_2, (1,2) -> minus e_3;
// antisymmetric in (alpha, beta).
AlgebraElement basis_element(int alpha, int beta);

// Irreducible representation labels; half-integers stored doubled (2j).
struct IrrepSpec {
  int jplus_x2 = 1;
  int jminus_x2 = 1;
};
// Largest representation accepted anywhere (2j <= 11).
inline constexpr int kMaxJx2 = 11;

// Dense complex matrix, row-major, for representation dimensions <= 12.
struct Mat {
  int n = 0;
  std::vector<cplx> a;
  explicit Mat(int n_ = 0) : n(n_), a(static_cast<size_t>(n_) * n_) {}
  cplx& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

Mat mat_mul(const Mat&, const Mat&);
Mat mat_add(const Mat&, const Mat&);
Mat mat_scale(cplx, const Mat&);
cplx mat_trace(const Mat&);
double mat_max_abs(const Mat&);
Mat mat_expm(const Mat&);  // scaling-and-squaring with Taylor tail

// Skew-Hermitian generators S_1, S_2, S_3 of the spin-j representation with
// [S_i, S_j] = eps_{ijk} S_k.  At j = 1/2 they are exactly
//   S_1 = [[0, 1/2], [-1/2, 0]],  S_2 = [[0, i/2], [i/2, 0]],
//   S_3 = [[i/2, 0], [0, -i/2]].
std::array<Mat, 3> spin_matrices(int j_x2);

// Closed form for tr exp(c (S_1 + S_2 + S_3)) in the spin-j representation:
// the sum of generators has eigenvalues i*sqrt(3)*m, m = -j..j, so the trace
// is sum_m exp(c * i * sqrt(3) * m).  The factor tag picks which su(2) factor
// the representation acts on; the value is the same closed form for both.
enum class Factor { plus, minus };
cplx trace_exp_character(int j_x2, cplx c, Factor f = Factor::plus);

}  // namespace linkcurv
