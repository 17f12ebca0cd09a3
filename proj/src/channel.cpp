#include "qrev/channel.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrev {

KrausChannel::KrausChannel(int din, int dout, std::vector<Mat> ops,
                           bool validate_now)
    : dim_in(din), dim_out(dout), kraus(std::move(ops)) {
  if (validate_now) validate();
}

void KrausChannel::validate(double tol) const {
  if (dim_in <= 0 || dim_out <= 0)
    throw Error(ErrorKind::ValidationError, "channel dimensions must be positive");
  if (kraus.empty())
    throw Error(ErrorKind::ValidationError, "channel needs at least one Kraus operator");
  Mat sum = Mat::Zero(dim_in, dim_in);
  for (const Mat& v : kraus) {
    if (v.rows() != dim_out || v.cols() != dim_in)
      throw Error(ErrorKind::DimensionMismatch, "Kraus operator has wrong shape");
    if (!v.allFinite())
      throw Error(ErrorKind::ValidationError, "Kraus operator has non-finite entries");
    sum += v.adjoint() * v;
  }
  double residual = (sum - Mat::Identity(dim_in, dim_in)).norm();
  if (residual > tol)
    throw Error(ErrorKind::ValidationError,
                "trace preservation residual = " + std::to_string(residual));
}

Mat KrausChannel::apply_mat(const Mat& x) const {
  if (x.rows() != dim_in || x.cols() != dim_in)
    throw Error(ErrorKind::DimensionMismatch, "input does not match dim_in");
  Mat out = Mat::Zero(dim_out, dim_out);
  for (const Mat& v : kraus) out += v * x * v.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  Mat out = apply_mat(rho.mat);
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out), false);
}

Mat KrausChannel::dual_apply(const Mat& a) const {
  if (a.rows() != dim_out || a.cols() != dim_out)
    throw Error(ErrorKind::DimensionMismatch, "dual input does not match dim_out");
  Mat out = Mat::Zero(dim_in, dim_in);
  for (const Mat& v : kraus) out += v.adjoint() * a * v;
  return out;
}

Mat choi(const KrausChannel& phi) {
  const int d = phi.dim_out * phi.dim_in;
  Mat c = Mat::Zero(d, d);
  for (const Mat& v : phi.kraus) {
    Vec w = vec_row_major(v);
    c += w * w.adjoint();
  }
  return c;
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out)
    throw Error(ErrorKind::DimensionMismatch, "choi_distance dims differ");
  return trace_norm_dist(choi(a), choi(b));
}

KrausChannel minimal_kraus(const KrausChannel& phi, double tol) {
  Mat c = choi(phi);
  HermitianEig eig = herm_eig(c, 1e-8);
  double lmax = eig.eigenvalues(0);
  std::vector<Mat> ops;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda > tol * lmax)
      ops.push_back(std::sqrt(lambda) *
                    unvec_row_major(eig.eigenvectors.col(i), phi.dim_out, phi.dim_in));
  }
  return KrausChannel(phi.dim_in, phi.dim_out, std::move(ops));
}

KrausChannel complementary_raw(const KrausChannel& phi) {
  const int d = static_cast<int>(phi.kraus.size());
  std::vector<Mat> ops;
  for (int b = 0; b < phi.dim_out; ++b) {
    Mat w(d, phi.dim_in);
    for (int k = 0; k < d; ++k) w.row(k) = phi.kraus[k].row(b);
    if (w.norm() > 1e-14) ops.push_back(std::move(w));
  }
  return KrausChannel(phi.dim_in, d, std::move(ops));
}

KrausChannel complementary(const KrausChannel& phi, double tol) {
  return complementary_raw(minimal_kraus(phi, tol));
}

KrausChannel reexpand_kraus(const KrausChannel& phi, const std::vector<Vec>& psi,
                            double tol) {
  const int d = static_cast<int>(phi.kraus.size());
  Mat resolution = Mat::Zero(d, d);
  for (const Vec& p : psi) {
    if (p.size() != d)
      throw Error(ErrorKind::DimensionMismatch, "psi vector size != Kraus count");
    resolution += p * p.adjoint();
  }
  if ((resolution - Mat::Identity(d, d)).norm() > std::max(tol, 1e-9))
    throw Error(ErrorKind::NotOvercomplete,
                "psi system does not resolve the identity on the Kraus index space");
  std::vector<Mat> ops;
  ops.reserve(psi.size());
  for (const Vec& p : psi) {
    Mat w = Mat::Zero(phi.dim_out, phi.dim_in);
    for (int k = 0; k < d; ++k) w += std::conj(p(k)) * phi.kraus[k];
    ops.push_back(std::move(w));
  }
  return KrausChannel(phi.dim_in, phi.dim_out, std::move(ops));
}

OutputSpan output_span_and_m(const KrausChannel& phi, double tol) {
  Mat mixed_out = phi.apply_mat(Mat::Identity(phi.dim_in, phi.dim_in) /
                                static_cast<double>(phi.dim_in));
  mixed_out = (mixed_out + mixed_out.adjoint()) / 2.0;
  HermitianEig eig = herm_eig(mixed_out, 1e-8);
  double lmax = eig.eigenvalues(0);
  std::vector<Vec> span;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > tol * lmax) span.push_back(eig.eigenvectors.col(i));
  const int s = static_cast<int>(span.size());
  Mat u(phi.dim_out, s);
  for (int i = 0; i < s; ++i) u.col(i) = span[i];

  // Matrix of X -> Phi^*(U X U^dag) over the s^2-dimensional domain.
  Mat t(phi.dim_in * phi.dim_in, s * s);
  for (int p = 0; p < s; ++p)
    for (int q = 0; q < s; ++q) {
      Mat e = u.col(p) * u.col(q).adjoint();
      t.col(p * s + q) = vec_row_major(phi.dual_apply(e));
    }
  OutputSpan out;
  out.projector = u * u.adjoint();
  out.span_dim = s;
  out.m_value = s * s - rank_tol(t, std::max(tol, 1e-8));
  return out;
}

namespace {

// Hermitian operator basis of B(C^d): diagonal units, symmetrized and
// antisymmetrized off-diagonal pairs.
std::vector<Mat> hermitian_basis(int d) {
  std::vector<Mat> basis;
  basis.reserve(d * d);
  for (int i = 0; i < d; ++i) {
    Mat e = Mat::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = inv_sqrt2;
      e(j, i) = inv_sqrt2;
      basis.push_back(e);
      Mat f = Mat::Zero(d, d);
      f(i, j) = cxd(0.0, inv_sqrt2);
      f(j, i) = cxd(0.0, -inv_sqrt2);
      basis.push_back(f);
    }
  return basis;
}

// Refines the common eigenspaces of a commuting Hermitian family. Each block
// is an orthonormal column frame; eigenvalues are clustered with an absolute
// gap threshold.
std::vector<Mat> joint_eigenblocks(const std::vector<Mat>& ops, int dim,
                                   double cluster_tol) {
  std::vector<Mat> blocks{Mat::Identity(dim, dim)};
  for (const Mat& x : ops) {
    std::vector<Mat> next;
    for (const Mat& q : blocks) {
      if (q.cols() == 1) {
        next.push_back(q);
        continue;
      }
      Mat h = q.adjoint() * x * q;
      HermitianEig eig = herm_eig(h, 1e-7);
      int start = 0;
      for (int i = 1; i <= static_cast<int>(eig.eigenvalues.size()); ++i) {
        bool split = i == eig.eigenvalues.size() ||
                     std::abs(eig.eigenvalues(i) - eig.eigenvalues(i - 1)) > cluster_tol;
        if (split) {
          next.push_back(q * eig.eigenvectors.middleCols(start, i - start));
          start = i;
        }
      }
    }
    blocks = std::move(next);
  }
  return blocks;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<CqStructure> detect_cq(const KrausChannel& phi, double tol) {
  const int din = phi.dim_in;
  std::vector<Mat> range;
  for (const Mat& y : hermitian_basis(phi.dim_out)) {
    Mat x = phi.dual_apply(y);
    range.push_back((x + x.adjoint()) / 2.0);
  }

  double commute_tol = std::max(tol, 1e-9);
  for (size_t a = 0; a < range.size(); ++a)
    for (size_t b = a + 1; b < range.size(); ++b) {
      double scale = std::max(1.0, range[a].norm() * range[b].norm());
      if ((range[a] * range[b] - range[b] * range[a]).norm() > commute_tol * scale)
        return std::nullopt;
    }

  const double cluster_tol = 1e-7;
  std::vector<Mat> blocks = joint_eigenblocks(range, din, cluster_tol);

  // Eigenvalue vector of each block across the dual range.
  const int nb = static_cast<int>(blocks.size());
  std::vector<RVec> values(nb);
  for (int j = 0; j < nb; ++j) {
    values[j].resize(static_cast<Eigen::Index>(range.size()));
    for (size_t a = 0; a < range.size(); ++a) {
      Mat h = blocks[j].adjoint() * range[a] * blocks[j];
      values[j](static_cast<Eigen::Index>(a)) =
          h.trace().real() / static_cast<double>(blocks[j].cols());
    }
  }

  // Blocks indistinguishable by every dual-range operator belong to the
  // same projector.
  UnionFind uf(nb);
  for (int j = 0; j < nb; ++j)
    for (int l = j + 1; l < nb; ++l)
      if ((values[j] - values[l]).cwiseAbs().maxCoeff() <= cluster_tol) uf.unite(j, l);

  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(nb, -1);
  for (int j = 0; j < nb; ++j) {
    int r = uf.find(j);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_of[r]].push_back(j);
  }

  // Deterministic block order: lexicographic on the eigenvalue vectors.
  std::sort(groups.begin(), groups.end(), [&](const auto& g1, const auto& g2) {
    const RVec& v1 = values[g1.front()];
    const RVec& v2 = values[g2.front()];
    for (Eigen::Index i = 0; i < v1.size(); ++i)
      if (v1(i) != v2(i)) return v1(i) > v2(i);
    return false;
  });

  CqStructure cq;
  for (const auto& g : groups) {
    Mat p = Mat::Zero(din, din);
    for (int j : g) p += blocks[j] * blocks[j].adjoint();
    Mat sigma = phi.apply_mat(p / p.trace().real());
    sigma = (sigma + sigma.adjoint()) / 2.0;
    cq.projectors.push_back(std::move(p));
    cq.sigmas.emplace_back(std::move(sigma), false);
  }

  // Reconstruction check: Choi of sum_k Tr(P_k .) sigma_k against Phi.
  Mat cq_choi = Mat::Zero(phi.dim_out * din, phi.dim_out * din);
  for (int k = 0; k < cq.blocks(); ++k)
    cq_choi += tensor(cq.sigmas[k].mat, cq.projectors[k].transpose());
  if (trace_norm_dist(choi(phi), cq_choi) > tol) return std::nullopt;
  return cq;
}

bool verify_isometric_equivalence(const KrausChannel& phi,
                                  const KrausChannel& phi_prime, const Mat& w,
                                  double tol) {
  if (phi.dim_in != phi_prime.dim_in)
    throw Error(ErrorKind::DimensionMismatch, "input dimensions differ");
  if (w.rows() != phi_prime.dim_out || w.cols() != phi.dim_out)
    throw Error(ErrorKind::DimensionMismatch, "witness shape mismatch");

  Mat wdw = w.adjoint() * w;
  Mat wwd = w * w.adjoint();
  if ((wdw * wdw - wdw).norm() > 1e-9 * std::max(1.0, wdw.norm())) return false;
  if ((wwd * wwd - wwd).norm() > 1e-9 * std::max(1.0, wwd.norm())) return false;

  const int d = phi.dim_in;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      Mat a = phi.apply_mat(e);
      Mat b = phi_prime.apply_mat(e);
      if ((b - w * a * w.adjoint()).norm() > tol) return false;
      if ((a - w.adjoint() * b * w).norm() > tol) return false;
    }
  return true;
}

namespace {

struct SupportBasis {
  Mat u;          // columns: eigenvectors with eigenvalue above cut
  RVec lambdas;   // matching eigenvalues, descending
};

SupportBasis output_support(const KrausChannel& phi, double tol) {
  Mat m = phi.apply_mat(Mat::Identity(phi.dim_in, phi.dim_in) /
                        static_cast<double>(phi.dim_in));
  m = (m + m.adjoint()) / 2.0;
  HermitianEig eig = herm_eig(m, 1e-8);
  double cut = tol * eig.eigenvalues(0);
  int s = 0;
  while (s < eig.eigenvalues.size() && eig.eigenvalues(s) > cut) ++s;
  SupportBasis out;
  out.u = eig.eigenvectors.leftCols(s);
  out.lambdas = eig.eigenvalues.head(s);
  return out;
}

std::optional<Mat> witness_by_eigen_matching(const KrausChannel& phi,
                                             const KrausChannel& phi_prime,
                                             double tol) {
  SupportBasis sb = output_support(phi, kDefaultTol);
  SupportBasis sbp = output_support(phi_prime, kDefaultTol);
  const int s = static_cast<int>(sb.lambdas.size());
  if (s != sbp.lambdas.size()) return std::nullopt;
  if ((sb.lambdas - sbp.lambdas).cwiseAbs().maxCoeff() > 1e-7) return std::nullopt;

  // A generic full-rank probe exposes the relative phases of the matched
  // eigenvectors.
  Rng rng(0x9e3779b97f4a7c15ull);
  DensityMatrix probe = random_state(phi.dim_in, phi.dim_in, rng);
  Mat n = sb.u.adjoint() * phi.apply_mat(probe.mat) * sb.u;
  Mat np = sbp.u.adjoint() * phi_prime.apply_mat(probe.mat) * sbp.u;

  std::vector<cxd> z(s, cxd(0.0, 0.0));
  std::vector<bool> placed(s, false);
  for (int root = 0; root < s; ++root) {
    if (placed[root]) continue;
    z[root] = 1.0;
    placed[root] = true;
    std::vector<int> queue{root};
    while (!queue.empty()) {
      int j = queue.back();
      queue.pop_back();
      for (int k = 0; k < s; ++k) {
        if (placed[k] || std::abs(n(j, k)) < 1e-8) continue;
        cxd ratio = np(j, k) / (z[j] * n(j, k));
        // ratio = conj(z_k); unit-modulus up to noise.
        cxd zk = std::conj(ratio);
        double mod = std::abs(zk);
        if (mod < 0.5 || mod > 2.0) return std::nullopt;
        z[k] = zk / mod;
        placed[k] = true;
        queue.push_back(k);
      }
    }
  }

  Mat w = Mat::Zero(phi_prime.dim_out, phi.dim_out);
  for (int j = 0; j < s; ++j) w += z[j] * (sbp.u.col(j) * sb.u.col(j).adjoint());
  if (verify_isometric_equivalence(phi, phi_prime, w, tol)) return w;
  return std::nullopt;
}

std::optional<Mat> witness_by_intertwining(const KrausChannel& phi,
                                           const KrausChannel& phi_prime,
                                           double tol) {
  const int db = phi.dim_out;
  const int dbp = phi_prime.dim_out;
  const int d = phi.dim_in;
  const int nvar = db * dbp;

  Mat pb = output_span_and_m(phi).projector;
  Mat pbp = output_span_and_m(phi_prime).projector;

  // Row-major vec(W): index r*db + c.
  auto left_mult = [&](const Mat& l) {  // W -> L W
    Mat op = Mat::Zero(nvar, nvar);
    for (int r = 0; r < dbp; ++r)
      for (int c = 0; c < db; ++c)
        for (int rp = 0; rp < dbp; ++rp)
          op(r * db + c, rp * db + c) = l(r, rp);
    return op;
  };
  auto right_mult = [&](const Mat& r) {  // W -> W R
    Mat op = Mat::Zero(nvar, nvar);
    for (int rr = 0; rr < dbp; ++rr)
      for (int c = 0; c < db; ++c)
        for (int cp = 0; cp < db; ++cp)
          op(rr * db + c, rr * db + cp) = r(cp, c);
    return op;
  };

  std::vector<Mat> rows;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      rows.push_back(right_mult(phi.apply_mat(e)) - left_mult(phi_prime.apply_mat(e)));
    }
  rows.push_back(right_mult(Mat::Identity(db, db) - pb));
  rows.push_back(left_mult(Mat::Identity(dbp, dbp) - pbp));

  Mat system(static_cast<Eigen::Index>(rows.size()) * nvar, nvar);
  for (size_t r = 0; r < rows.size(); ++r)
    system.middleRows(static_cast<Eigen::Index>(r) * nvar, nvar) = rows[r];

  Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<int> null_cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax <= 0.0 || sv(i) <= 1e-8 * smax) null_cols.push_back(static_cast<int>(i));
  if (null_cols.empty()) return std::nullopt;

  auto try_candidate = [&](const Vec& v) -> std::optional<Mat> {
    Mat w = unvec_row_major(v, dbp, db);
    Eigen::JacobiSVD<Mat> wsvd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& ws = wsvd.singularValues();
    if (ws.size() == 0 || ws(0) <= 0.0) return std::nullopt;
    Mat iso = Mat::Zero(dbp, db);
    for (Eigen::Index i = 0; i < ws.size(); ++i)
      if (ws(i) > 0.5 * ws(0))
        iso += wsvd.matrixU().col(i) * wsvd.matrixV().col(i).adjoint();
    if (verify_isometric_equivalence(phi, phi_prime, iso, tol)) return iso;
    return std::nullopt;
  };

  for (int c : null_cols) {
    if (auto w = try_candidate(svd.matrixV().col(c))) return w;
  }
  if (null_cols.size() > 1) {
    Vec mix = Vec::Zero(nvar);
    double coeff = 1.0;
    for (int c : null_cols) {
      mix += coeff * svd.matrixV().col(c);
      coeff *= 0.61803398875;
    }
    if (auto w = try_candidate(mix)) return w;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat> find_equivalence_witness(const KrausChannel& phi,
                                            const KrausChannel& phi_prime,
                                            double tol) {
  if (phi.dim_in != phi_prime.dim_in)
    throw Error(ErrorKind::DimensionMismatch, "input dimensions differ");
  if (auto w = witness_by_eigen_matching(phi, phi_prime, tol)) return w;
  return witness_by_intertwining(phi, phi_prime, tol);
}

//------------------------------------------------------------------------
// Constructors
//------------------------------------------------------------------------

KrausChannel identity_channel(int dim) {
  return KrausChannel(dim, dim, {Mat::Identity(dim, dim)});
}

KrausChannel unitary_channel(const Mat& u) {
  if (u.rows() != u.cols())
    throw Error(ErrorKind::DimensionMismatch, "unitary must be square");
  if ((u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).norm() > 1e-9)
    throw Error(ErrorKind::ValidationError, "matrix is not unitary");
  return KrausChannel(static_cast<int>(u.cols()), static_cast<int>(u.rows()), {u});
}

KrausChannel depolarize_to(const DensityMatrix& sigma, int dim_in, double tol) {
  HermitianEig eig = herm_eig(sigma.mat, 1e-8);
  std::vector<Mat> ops;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda <= tol) continue;
    for (int j = 0; j < dim_in; ++j) {
      Mat v = Mat::Zero(sigma.dim(), dim_in);
      v.col(j) = std::sqrt(lambda) * eig.eigenvectors.col(i);
      ops.push_back(std::move(v));
    }
  }
  return KrausChannel(dim_in, sigma.dim(), std::move(ops));
}

namespace {

void check_resolution(const std::vector<Mat>& projectors, int dim, double tol) {
  if (projectors.empty())
    throw Error(ErrorKind::InvalidResolution, "empty projector list");
  Mat sum = Mat::Zero(dim, dim);
  for (size_t k = 0; k < projectors.size(); ++k) {
    const Mat& p = projectors[k];
    if (p.rows() != dim || p.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "projector has wrong dimension");
    if ((p - p.adjoint()).norm() > 1e-9 || (p * p - p).norm() > 1e-9)
      throw Error(ErrorKind::InvalidResolution, "not an orthogonal projector");
    for (size_t l = k + 1; l < projectors.size(); ++l)
      if ((p * projectors[l]).norm() > std::max(tol, 1e-9))
        throw Error(ErrorKind::InvalidResolution, "projectors are not orthogonal");
    sum += p;
  }
  if ((sum - Mat::Identity(dim, dim)).norm() > std::max(tol, 1e-9))
    throw Error(ErrorKind::InvalidResolution, "projectors do not sum to identity");
}

// Orthonormal basis of the range of a projector.
std::vector<Vec> range_basis(const Mat& p, double tol) {
  HermitianEig eig = herm_eig(p, 1e-8);
  std::vector<Vec> basis;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 0.5) basis.push_back(eig.eigenvectors.col(i));
  (void)tol;
  return basis;
}

}  // namespace

KrausChannel cq_channel(const std::vector<Mat>& projectors,
                        const std::vector<DensityMatrix>& sigmas, double tol) {
  if (projectors.size() != sigmas.size())
    throw Error(ErrorKind::DimensionMismatch, "projector/state count mismatch");
  const int dim_in = static_cast<int>(projectors.front().rows());
  check_resolution(projectors, dim_in, tol);
  const int dim_out = sigmas.front().dim();
  std::vector<Mat> ops;
  for (size_t k = 0; k < projectors.size(); ++k) {
    if (sigmas[k].dim() != dim_out)
      throw Error(ErrorKind::DimensionMismatch, "output states have mixed dimensions");
    HermitianEig eig = herm_eig(sigmas[k].mat, 1e-8);
    for (const Vec& f : range_basis(projectors[k], tol)) {
      for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double lambda = eig.eigenvalues(i);
        if (lambda <= tol) continue;
        ops.push_back(std::sqrt(lambda) * (eig.eigenvectors.col(i) * f.adjoint()));
      }
    }
  }
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

KrausChannel cq_channel(const PureStateFamily& basis,
                        const std::vector<DensityMatrix>& sigmas, double tol) {
  if (!is_orthonormal_basis(basis, 1e-8))
    throw Error(ErrorKind::NotOrthogonal, "c-q basis must be orthonormal and complete");
  std::vector<Mat> projectors;
  projectors.reserve(basis.size());
  for (const Vec& v : basis.vectors) projectors.push_back(v * v.adjoint());
  return cq_channel(projectors, sigmas, tol);
}

KrausChannel pinching_channel(const std::vector<Mat>& projectors, double tol) {
  const int dim = static_cast<int>(projectors.front().rows());
  check_resolution(projectors, dim, tol);
  return KrausChannel(dim, dim, projectors);
}

KrausChannel gram_channel(const std::vector<Mat>& projectors, const Mat& c,
                          double tol) {
  const int n = static_cast<int>(projectors.size());
  const int dim = static_cast<int>(projectors.front().rows());
  check_resolution(projectors, dim, tol);
  if (c.rows() != n || c.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "Gram matrix size != projector count");
  if ((c - c.adjoint()).norm() > 1e-9)
    throw Error(ErrorKind::NotAGramMatrix, "Gram matrix is not Hermitian");
  for (int k = 0; k < n; ++k)
    if (std::abs(c(k, k) - 1.0) > 1e-9)
      throw Error(ErrorKind::NotAGramMatrix, "Gram matrix diagonal is not 1");
  Mat factor;
  try {
    factor = psd_sqrt(c.transpose(), std::max(tol, 1e-9));
  } catch (const Error&) {
    throw Error(ErrorKind::NotAGramMatrix, "Gram matrix is not PSD");
  }
  std::vector<Mat> ops;
  for (int m = 0; m < n; ++m) {
    Mat v = Mat::Zero(dim, dim);
    for (int k = 0; k < n; ++k) v += factor(m, k) * projectors[k];
    if (v.norm() > 1e-14) ops.push_back(std::move(v));
  }
  return KrausChannel(dim, dim, std::move(ops));
}

KrausChannel partial_trace_channel(int dim_a, int dim_b, Subsystem keep) {
  std::vector<Mat> ops;
  if (keep == Subsystem::A) {
    for (int j = 0; j < dim_b; ++j) {
      Mat v = Mat::Zero(dim_a, dim_a * dim_b);
      for (int a = 0; a < dim_a; ++a) v(a, a * dim_b + j) = 1.0;
      ops.push_back(std::move(v));
    }
    return KrausChannel(dim_a * dim_b, dim_a, std::move(ops));
  }
  for (int j = 0; j < dim_a; ++j) {
    Mat v = Mat::Zero(dim_b, dim_a * dim_b);
    for (int b = 0; b < dim_b; ++b) v(b, j * dim_b + b) = 1.0;
    ops.push_back(std::move(v));
  }
  return KrausChannel(dim_a * dim_b, dim_b, std::move(ops));
}

KrausChannel embed_recovery_channel(const Mat& w, const DensityMatrix& sigma,
                                    double tol) {
  const int db = static_cast<int>(w.cols());
  const int dbp = static_cast<int>(w.rows());
  if (sigma.dim() != db)
    throw Error(ErrorKind::DimensionMismatch, "state must live on the target space");
  std::vector<Mat> ops{w.adjoint()};
  Mat leftover = Mat::Identity(dbp, dbp) - w * w.adjoint();
  leftover = (leftover + leftover.adjoint()) / 2.0;
  if (leftover.norm() > 1e-12) {
    HermitianEig lf = herm_eig(leftover, 1e-8);
    HermitianEig sg = herm_eig(sigma.mat, 1e-8);
    for (Eigen::Index j = 0; j < lf.eigenvalues.size(); ++j) {
      if (lf.eigenvalues(j) < 0.5) continue;
      for (Eigen::Index i = 0; i < sg.eigenvalues.size(); ++i) {
        double lambda = sg.eigenvalues(i);
        if (lambda <= tol) continue;
        ops.push_back(std::sqrt(lambda) *
                      (sg.eigenvectors.col(i) * lf.eigenvectors.col(j).adjoint()));
      }
    }
  }
  return KrausChannel(dbp, db, std::move(ops));
}

KrausChannel compose(const KrausChannel& after, const KrausChannel& first) {
  if (after.dim_in != first.dim_out)
    throw Error(ErrorKind::DimensionMismatch, "composition dims do not chain");
  std::vector<Mat> ops;
  ops.reserve(after.kraus.size() * first.kraus.size());
  for (const Mat& a : after.kraus)
    for (const Mat& b : first.kraus) ops.push_back(a * b);
  return KrausChannel(first.dim_in, after.dim_out, std::move(ops));
}

KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, Rng& rng) {
  if (n_kraus < 1 || n_kraus * dim_out < dim_in)
    throw Error(ErrorKind::InvalidRank,
                "need n_kraus * dim_out >= dim_in for a CPTP map");
  std::vector<Mat> raw;
  Mat sum = Mat::Zero(dim_in, dim_in);
  for (int i = 0; i < n_kraus; ++i) {
    raw.push_back(random_gaussian_matrix(dim_out, dim_in, rng));
    sum += raw.back().adjoint() * raw.back();
  }
  auto [inv_sqrt, proj] = support_inv_sqrt(sum, 1e-12);
  if ((proj - Mat::Identity(dim_in, dim_in)).norm() > 1e-9)
    throw Error(ErrorKind::InvalidRank, "sampled Kraus set is rank deficient");
  std::vector<Mat> ops;
  ops.reserve(raw.size());
  for (const Mat& g : raw) ops.push_back(g * inv_sqrt);
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

}  // namespace qrev
