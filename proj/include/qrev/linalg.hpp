#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qrev/error.hpp"

namespace qrev {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Default relative tolerance for rank/support decisions (relative to the
// largest singular value). Double precision with dims <= 32 leaves ample
// headroom below this.
inline constexpr double kDefaultTol = 1e-9;

// Spectral decomposition of a Hermitian matrix with a deterministic
// ordering: eigenvalues descending, ties broken lexicographically on the
// phase-normalized eigenvector entries (first entry of modulus > 1e-6 made
// real positive).
struct HermitianEig {
  RVec eigenvalues;  // sorted descending
  Mat eigenvectors;  // unitary, columns match eigenvalues
};

HermitianEig herm_eig(const Mat& m, double tol = kDefaultTol);

// PSD square root. Eigenvalues in [-tol*lmax, 0) are clamped to zero;
// anything more negative raises NotPSD.
Mat psd_sqrt(const Mat& m, double tol = kDefaultTol);

// Pseudo inverse square root on the support of a PSD matrix, together with
// the projector onto that support. Eigenvalues <= tol*lmax are treated as
// zero. Raises ZeroMatrix when nothing survives the cut.
std::pair<Mat, Mat> support_inv_sqrt(const Mat& m, double tol = kDefaultTol);

// Projector onto the support of a PSD matrix.
Mat support_projector(const Mat& m, double tol = kDefaultTol);

// Kronecker product, left-factor-major: index of A (x) B is iA*dimB + iB.
Mat tensor(const Mat& a, const Mat& b);

enum class Subsystem { A, B };

// Partial trace of a (dA*dB)x(dA*dB) matrix over the discarded factor.
Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem keep);

// Swap the tensor factors of a (d1*d2)-dimensional operator: A (x) B -> B (x) A.
Mat swap_factors(const Mat& m, int d1, int d2);

// Count of singular values > tol * sigma_max; zero matrix has rank 0.
int rank_tol(const Mat& m, double tol = kDefaultTol);

// Trace norm ||m||_1 = sum of singular values.
double trace_norm(const Mat& m);

// Trace-norm distance ||a - b||_1.
double trace_norm_dist(const Mat& a, const Mat& b);

double frobenius_norm(const Mat& m);

bool is_hermitian(const Mat& m, double tol = kDefaultTol);

// Flatten row-major: vec(V)[r*cols + c] = V(r, c).
Vec vec_row_major(const Mat& m);
Mat unvec_row_major(const Vec& v, int rows, int cols);

Mat identity(int d);

// Fixes the global phase so the first entry of modulus > 1e-6 is real
// positive. Returns v unchanged if no such entry exists.
Vec phase_normalize(const Vec& v);

}  // namespace qrev
