#include "qrev/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrev {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::NotOvercomplete: return "NotOvercomplete";
    case ErrorKind::NotAGramMatrix: return "NotAGramMatrix";
    case ErrorKind::InvalidResolution: return "InvalidResolution";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::InvalidT: return "InvalidT";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Error";
}

double frobenius_norm(const Mat& m) { return m.norm(); }

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

Mat identity(int d) { return Mat::Identity(d, d); }

Vec phase_normalize(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-6) {
      cxd phase = v(i) / std::abs(v(i));
      return v / phase;
    }
  }
  return v;
}

namespace {

// Lexicographic order on (re, im) pairs of phase-normalized vectors; used
// only to break eigenvalue ties deterministically.
bool vec_lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

HermitianEig herm_eig(const Mat& m, double tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::NotHermitian, "matrix is not square");
  double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol * scale)
    throw Error(ErrorKind::NotHermitian, "symmetry check failed");

  Eigen::SelfAdjointEigenSolver<Mat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NotHermitian, "eigensolver did not converge");

  const int n = static_cast<int>(m.rows());
  std::vector<Vec> cols(n);
  for (int i = 0; i < n; ++i) cols[i] = phase_normalize(solver.eigenvectors().col(i));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RVec& ev = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (ev(i) != ev(j)) return ev(i) > ev(j);
    return vec_lex_less(cols[i], cols[j]);
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = ev(order[i]);
    out.eigenvectors.col(i) = cols[order[i]];
  }
  return out;
}

Mat psd_sqrt(const Mat& m, double tol) {
  HermitianEig eig = herm_eig(m, std::max(tol, kDefaultTol));
  const int n = static_cast<int>(m.rows());
  double lmax = n > 0 ? std::max(0.0, eig.eigenvalues(0)) : 0.0;
  double floor = -tol * std::max(1.0, lmax);
  RVec roots(n);
  for (int i = 0; i < n; ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda < floor)
      throw Error(ErrorKind::NotPSD, "negative eigenvalue beyond tolerance");
    roots(i) = lambda > 0 ? std::sqrt(lambda) : 0.0;
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

std::pair<Mat, Mat> support_inv_sqrt(const Mat& m, double tol) {
  HermitianEig eig = herm_eig(m, std::max(tol, kDefaultTol));
  const int n = static_cast<int>(m.rows());
  double lmax = n > 0 ? eig.eigenvalues(0) : 0.0;
  if (lmax <= tol) throw Error(ErrorKind::ZeroMatrix, "no support above tolerance");
  double cut = tol * lmax;
  Mat inv_sqrt = Mat::Zero(n, n);
  Mat proj = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda > cut) {
      Vec u = eig.eigenvectors.col(i);
      inv_sqrt += (1.0 / std::sqrt(lambda)) * (u * u.adjoint());
      proj += u * u.adjoint();
    }
  }
  return {inv_sqrt, proj};
}

Mat support_projector(const Mat& m, double tol) {
  return support_inv_sqrt(m, tol).second;
}

Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem keep) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (m.rows() != d || m.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "matrix size does not match dim_a*dim_b");
  if (keep == Subsystem::A) {
    Mat out = Mat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Mat out = Mat::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

Mat swap_factors(const Mat& m, int d1, int d2) {
  const Eigen::Index d = static_cast<Eigen::Index>(d1) * d2;
  if (m.rows() != d || m.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "matrix size does not match d1*d2");
  Mat out(d, d);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2)
          out(i2 * d1 + i1, j2 * d1 + j1) = m(i1 * d2 + i2, j1 * d2 + j2);
  return out;
}

int rank_tol(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  double cut = tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

double trace_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double trace_norm_dist(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "trace_norm_dist shapes differ");
  return trace_norm(a - b);
}

Vec vec_row_major(const Mat& m) {
  Vec v(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(idx++) = m(r, c);
  return v;
}

Mat unvec_row_major(const Vec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw Error(ErrorKind::DimensionMismatch, "unvec size mismatch");
  Mat m(rows, cols);
  Eigen::Index idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = v(idx++);
  return m;
}

}  // namespace qrev
