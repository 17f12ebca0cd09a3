#include "qrev/states.hpp"

#include <cmath>
#include <numbers>

namespace qrev {

DensityMatrix::DensityMatrix(Mat m, bool validate_now) : mat(std::move(m)) {
  if (validate_now) validate();
}

void DensityMatrix::validate() const {
  if (mat.rows() != mat.cols())
    throw Error(ErrorKind::InvalidState, "density matrix must be square");
  if (!mat.allFinite())
    throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
  if ((mat - mat.adjoint()).norm() > 1e-10 * std::max(1.0, mat.norm()))
    throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
  double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw Error(ErrorKind::ValidationError,
                "trace = " + std::to_string(tr) + ", expected 1 +- 1e-10");
  Eigen::SelfAdjointEigenSolver<Mat> solver((mat + mat.adjoint()) / 2.0);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
}

DensityMatrix pure_state(const Vec& v) {
  double n = v.norm();
  if (n <= 0.0) throw Error(ErrorKind::InvalidState, "zero vector");
  Vec u = v / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix maximally_mixed(int dim) {
  return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

PureStateFamily::PureStateFamily(int d, std::vector<Vec> vs)
    : dim(d), vectors(std::move(vs)) {
  validate();
}

void PureStateFamily::validate() const {
  for (const Vec& v : vectors) {
    if (v.size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "family vector has wrong dimension");
    if (std::abs(v.norm() - 1.0) > 1e-10)
      throw Error(ErrorKind::ValidationError, "family vector is not unit norm");
  }
  if (!labels.empty() && labels.size() != vectors.size())
    throw Error(ErrorKind::ValidationError, "labels count does not match vectors");
}

DiscreteEnsemble::DiscreteEnsemble(std::vector<double> w,
                                   std::vector<DensityMatrix> s) {
  if (w.size() != s.size())
    throw Error(ErrorKind::DimensionMismatch, "weights/states count mismatch");
  double total = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0)
      throw Error(ErrorKind::ValidationError, "negative ensemble weight");
    // Prune negligible weights so rho_bar does not pick up spurious
    // singular directions.
    if (w[i] < 1e-12) continue;
    weights.push_back(w[i]);
    states.push_back(std::move(s[i]));
    total += w[i];
  }
  if (states.empty())
    throw Error(ErrorKind::ValidationError, "ensemble has no effective members");
  for (double& x : weights) x /= total;
  validate();
}

void DiscreteEnsemble::validate() const {
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-10)
    throw Error(ErrorKind::ValidationError, "ensemble weights do not sum to 1");
  int d = dim();
  for (const auto& s : states) {
    if (s.dim() != d)
      throw Error(ErrorKind::DimensionMismatch, "ensemble states have mixed dimensions");
  }
}

DensityMatrix average_state(const DiscreteEnsemble& e) {
  Mat avg = Mat::Zero(e.dim(), e.dim());
  for (int i = 0; i < e.size(); ++i) avg += e.weights[i] * e.states[i].mat;
  return DensityMatrix(std::move(avg));
}

namespace {

Mat stacked_vectors(const PureStateFamily& f) {
  Mat m(f.dim, f.size());
  for (int i = 0; i < f.size(); ++i) m.col(i) = f.vectors[i];
  return m;
}

}  // namespace

bool is_complete(const PureStateFamily& f, double tol) {
  if (f.size() == 0) return f.dim == 0;
  return rank_tol(stacked_vectors(f), tol) == f.dim;
}

bool is_orthonormal_basis(const PureStateFamily& f, double tol) {
  if (f.size() != f.dim) return false;
  Mat v = stacked_vectors(f);
  return (v.adjoint() * v - Mat::Identity(f.dim, f.dim)).norm() <= tol * f.dim;
}

std::vector<Vec> dual_overcomplete(const PureStateFamily& f,
                                   const std::vector<double>& pi,
                                   double tol) {
  if (static_cast<int>(pi.size()) != f.size())
    throw Error(ErrorKind::DimensionMismatch, "distribution size mismatch");
  for (double p : pi)
    if (p <= 0.0)
      throw Error(ErrorKind::DegenerateDistribution,
                  "all probabilities must be positive");
  Mat rho_bar = Mat::Zero(f.dim, f.dim);
  for (int i = 0; i < f.size(); ++i)
    rho_bar += pi[i] * (f.vectors[i] * f.vectors[i].adjoint());
  auto [inv_sqrt, proj] = support_inv_sqrt(rho_bar, tol);
  (void)proj;
  std::vector<Vec> duals;
  duals.reserve(f.size());
  for (int i = 0; i < f.size(); ++i)
    duals.push_back(std::sqrt(pi[i]) * (inv_sqrt * f.vectors[i]));
  return duals;
}

double Rng::uniform() {
  // 53 bits of mantissa from the top of the raw 64-bit draw.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  // Box-Muller; u1 bounded away from zero.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

cxd Rng::complex_gaussian() {
  double re = gaussian();
  double im = gaussian();
  return {re, im};
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Mat random_gaussian_matrix(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = rng.complex_gaussian();
  return g;
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g = random_gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase gauge so the result is a deterministic function of g.
  Vec d(dim);
  for (int i = 0; i < dim; ++i) {
    cxd rii = r(i, i);
    d(i) = std::abs(rii) > 0 ? rii / std::abs(rii) : cxd(1.0, 0.0);
  }
  return q * d.asDiagonal();
}

DensityMatrix random_state(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim)
    throw Error(ErrorKind::InvalidRank, "rank must be in [1, dim]");
  Mat g = random_gaussian_matrix(dim, rank, rng);
  Mat w = g * g.adjoint();
  return DensityMatrix(w / w.trace().real());
}

DensityMatrix random_state(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim, rank, rng);
}

PureStateFamily random_pure_family(int dim, int n, Rng& rng) {
  std::vector<Vec> vs;
  vs.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v(k) = rng.complex_gaussian();
    vs.push_back(v / v.norm());
  }
  return PureStateFamily(dim, std::move(vs));
}

PureStateFamily random_pure_family(int dim, int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure_family(dim, n, rng);
}

std::vector<double> random_distribution(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    p[i] = 0.1 + rng.uniform();
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace qrev
