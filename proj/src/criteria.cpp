#include "qrev/criteria.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrev {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Mat span_projector(const std::vector<Vec>& vectors, int dim) {
  Mat stacked(dim, static_cast<Eigen::Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) stacked.col(static_cast<int>(i)) = vectors[i];
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Mat p = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kDefaultTol * sv(0))
      p += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
  return p;
}

std::vector<Vec> projector_basis(const Mat& p) {
  HermitianEig eig = herm_eig(p, 1e-8);
  std::vector<Vec> basis;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 0.5) basis.push_back(eig.eigenvectors.col(i));
  return basis;
}

}  // namespace

OndDecomposition ond_decompose(const PureStateFamily& f, double tol) {
  const int n = f.size();
  UnionFind uf(n);
  OndDecomposition out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double overlap = std::abs(f.vectors[i].dot(f.vectors[j]));
      if (overlap > tol)
        uf.unite(i, j);
      else if (overlap > 1e-10)
        out.ambiguous_pairs.emplace_back(i, j);
    }

  std::vector<int> root_to_block(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (root_to_block[r] < 0) {
      root_to_block[r] = static_cast<int>(out.components.size());
      out.components.emplace_back();
    }
    out.components[root_to_block[r]].push_back(i);
  }
  // Union-find visits indices in order, so blocks are already ordered by
  // smallest member; members are appended in increasing order.
  for (const auto& block : out.components) {
    std::vector<Vec> vs;
    vs.reserve(block.size());
    for (int i : block) vs.push_back(f.vectors[i]);
    out.projectors.push_back(span_projector(vs, f.dim));
  }
  return out;
}

Theorem1Extraction theorem1_extract(const KrausChannel& phi,
                                    const DiscreteEnsemble& ensemble,
                                    double tol) {
  const int n = ensemble.size();
  if (ensemble.dim() != phi.dim_in)
    throw Error(ErrorKind::DimensionMismatch, "ensemble does not match channel input");
  for (double w : ensemble.weights)
    if (w <= 0.0)
      throw Error(ErrorKind::DegenerateDistribution, "weights must be positive");

  Theorem1Extraction out;
  OutputSpan osm = output_span_and_m(phi);
  out.m_phi = osm.m_value;
  out.span_dim = osm.span_dim;

  DensityMatrix rho_bar = average_state(ensemble);
  out.restricted = rank_tol(rho_bar.mat, kDefaultTol) < phi.dim_in;
  auto [rbar_inv_sqrt, rbar_proj] = support_inv_sqrt(rho_bar.mat, kDefaultTol);
  (void)rbar_proj;

  // Psi = double complement built on the minimal representation of the
  // complementary channel; its Kraus index space carries the B_i.
  KrausChannel phi_hat = complementary(phi);
  KrausChannel phi_hat_min = minimal_kraus(phi_hat);
  KrausChannel psi_channel = complementary_raw(phi_hat_min);
  const int dc = psi_channel.dim_out;

  Mat psi_rbar = psi_channel.apply_mat(rho_bar.mat);
  psi_rbar = (psi_rbar + psi_rbar.adjoint()) / 2.0;
  auto [out_inv_sqrt, out_proj] = support_inv_sqrt(psi_rbar, kDefaultTol);

  Mat resolution = Mat::Zero(dc, dc);
  double max_residual = 0.0;
  std::vector<Mat> kraus;
  int max_rank = 0;
  for (int i = 0; i < n; ++i) {
    double pi_i = ensemble.weights[i];
    const Mat& rho_i = ensemble.states[i].mat;
    Mat a_i = pi_i * (rbar_inv_sqrt * rho_i * rbar_inv_sqrt);
    Mat b_i = pi_i * (out_inv_sqrt * psi_channel.apply_mat(rho_i) * out_inv_sqrt);
    b_i = (b_i + b_i.adjoint()) / 2.0;
    resolution += b_i;
    max_residual = std::max(max_residual,
                            trace_norm_dist(a_i, psi_channel.dual_apply(b_i)));

    HermitianEig eig = herm_eig(b_i, 1e-8);
    for (Eigen::Index j = 0; j < eig.eigenvalues.size(); ++j) {
      double mu = eig.eigenvalues(j);
      if (mu <= 1e-12) continue;
      Vec psi_ij = std::sqrt(mu) * eig.eigenvectors.col(j);
      Mat w = Mat::Zero(phi_hat.dim_out, phi_hat.dim_in);
      for (int k = 0; k < static_cast<int>(phi_hat_min.kraus.size()); ++k)
        w += std::conj(psi_ij(k)) * phi_hat_min.kraus[k];
      max_rank = std::max(max_rank, rank_tol(w));
      kraus.push_back(std::move(w));
    }
  }
  out.reversibility_residual = max_residual;
  out.resolution_residual = (resolution - out_proj).norm();
  out.max_rank = max_rank;

  KrausChannel reexpanded(phi_hat.dim_in, phi_hat.dim_out, kraus, false);
  out.reexpansion_choi_distance = choi_distance(reexpanded, phi_hat);
  out.kraus = std::move(kraus);
  (void)tol;
  return out;
}

namespace {

// Block-alignment of a detected resolution {Q_j} against reference
// projectors {P_k}: each Q_j must equal the sum of the P_k it covers.
struct Alignment {
  bool aligned = false;
  double residual = 0.0;
  std::vector<std::vector<int>> covered;  // reference indices per detected block
};

Alignment align_resolutions(const std::vector<Mat>& detected,
                            const std::vector<Mat>& reference, double tol) {
  Alignment out;
  out.covered.resize(detected.size());
  double residual = 0.0;
  std::vector<bool> used(reference.size(), false);
  for (size_t j = 0; j < detected.size(); ++j) {
    Mat sum = Mat::Zero(detected[j].rows(), detected[j].cols());
    for (size_t k = 0; k < reference.size(); ++k) {
      double weight = (detected[j] * reference[k]).trace().real() /
                      std::max(1.0, reference[k].trace().real());
      if (weight > 0.5) {
        if (used[k]) return out;  // reference block claimed twice
        used[k] = true;
        out.covered[j].push_back(static_cast<int>(k));
        sum += reference[k];
      }
    }
    residual = std::max(residual, (detected[j] - sum).norm());
  }
  for (bool u : used)
    if (!u) return out;
  out.residual = residual;
  out.aligned = residual <= tol;
  return out;
}

std::vector<Vec> spectral_vectors(const DensityMatrix& sigma, double tol) {
  HermitianEig eig = herm_eig(sigma.mat, 1e-8);
  std::vector<Vec> vs;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > tol)
      vs.push_back(std::sqrt(eig.eigenvalues(i)) *
                   phase_normalize(eig.eigenvectors.col(i)));
  return vs;
}

int sigma_rank(const DensityMatrix& sigma) {
  return rank_tol(sigma.mat, 1e-7);
}

}  // namespace

KrausChannel theorem4_channel(const std::vector<Mat>& projectors,
                              const std::vector<std::vector<Vec>>& psi,
                              int m_dim) {
  if (projectors.size() != psi.size())
    throw Error(ErrorKind::DimensionMismatch, "one psi list per projector required");
  const int dim = static_cast<int>(projectors.front().rows());

  // The psi vectors may live in any common ambient space; only their mutual
  // inner products enter the block channel.
  int ambient = 1;
  for (const auto& vs : psi) {
    if (static_cast<int>(vs.size()) > m_dim)
      throw Error(ErrorKind::InvalidRank, "more than m_dim vectors in one block");
    for (const Vec& v : vs) ambient = std::max(ambient, static_cast<int>(v.size()));
  }

  // Adapted basis: per-block orthonormal frames, tagged with their block.
  std::vector<Vec> basis;
  std::vector<int> block_of;
  for (size_t k = 0; k < projectors.size(); ++k) {
    for (const Vec& v : projector_basis(projectors[k])) {
      basis.push_back(v);
      block_of.push_back(static_cast<int>(k));
    }
  }
  if (static_cast<int>(basis.size()) != dim)
    throw Error(ErrorKind::InvalidResolution, "projectors do not resolve the space");

  // Kraus list of the intermediate channel, (i, p)-ordered with zero padding
  // so the complementary output space factorizes as H_A (x) H_m.
  std::vector<Mat> hat_ops;
  for (int i = 0; i < dim; ++i) {
    const auto& vs = psi[block_of[i]];
    for (int p = 0; p < m_dim; ++p) {
      Mat w = Mat::Zero(ambient, dim);
      if (p < static_cast<int>(vs.size())) {
        Vec padded = Vec::Zero(ambient);
        padded.head(vs[p].size()) = vs[p];
        w = padded * basis[i].adjoint();
      }
      hat_ops.push_back(std::move(w));
    }
  }
  KrausChannel hat(dim, ambient, std::move(hat_ops));
  KrausChannel pre = complementary_raw(hat);

  // Relabel |i*m + p> -> |phi_i> (x) |p>.
  Mat relabel = Mat::Zero(dim * m_dim, dim * m_dim);
  for (int i = 0; i < dim; ++i)
    for (int p = 0; p < m_dim; ++p) {
      Vec target = Vec::Zero(dim * m_dim);
      for (int a = 0; a < dim; ++a) target(a * m_dim + p) = basis[i](a);
      relabel.col(i * m_dim + p) = target;
    }
  std::vector<Mat> ops;
  ops.reserve(pre.kraus.size());
  for (const Mat& k : pre.kraus) ops.push_back(relabel * k);
  return KrausChannel(dim, dim * m_dim, std::move(ops));
}

namespace {

// Shared core of the orthogonal and general criteria. The reference blocks
// are rank-one projectors of the family (orthogonal case) or OND block
// projectors (general case).
struct StructuralCheck {
  std::optional<CqStructure> cq;
  Alignment alignment;
  std::vector<DensityMatrix> block_sigmas;  // one per reference block
  bool ranks_ok = false;
  int max_sigma_rank = 0;
  int m_bound = 0;
};

StructuralCheck structural_check(const KrausChannel& phi,
                                 const std::vector<Mat>& reference,
                                 double tol) {
  StructuralCheck out;
  OutputSpan osm = output_span_and_m(phi);
  out.m_bound = std::min(osm.m_value + 1, osm.span_dim);

  KrausChannel phi_hat = complementary(phi);
  out.cq = detect_cq(phi_hat, std::max(tol, 1e-8));
  if (!out.cq) return out;

  out.alignment = align_resolutions(out.cq->projectors, reference, 1e-7);
  if (!out.alignment.aligned) return out;

  out.block_sigmas.resize(reference.size(), DensityMatrix());
  out.ranks_ok = true;
  for (size_t j = 0; j < out.cq->projectors.size(); ++j) {
    int r = sigma_rank(out.cq->sigmas[j]);
    out.max_sigma_rank = std::max(out.max_sigma_rank, r);
    if (r > out.m_bound) out.ranks_ok = false;
    for (int k : out.alignment.covered[j]) out.block_sigmas[k] = out.cq->sigmas[j];
  }
  return out;
}

// Statement (iv)/(iii)-style construction: canonical block channel from the
// detected sigmas, then a witness search.
void equivalence_statement(CriterionReport& report, const std::string& label,
                           const KrausChannel& phi, const StructuralCheck& sc,
                           const std::vector<Mat>& reference, double tol) {
  if (!sc.cq || !sc.alignment.aligned || !sc.ranks_ok) {
    report.set_statement(label, false, 0.0, false,
                         "no structural representation to build the block channel from");
    return;
  }
  std::vector<std::vector<Vec>> psi;
  int m_dim = 1;
  for (const DensityMatrix& sigma : sc.block_sigmas) {
    m_dim = std::max(m_dim, sigma_rank(sigma));
    psi.push_back(spectral_vectors(sigma, 1e-12));
  }
  KrausChannel block_channel = theorem4_channel(reference, psi, m_dim);
  auto w = find_equivalence_witness(phi, block_channel, std::max(tol, 1e-7));
  if (!w) {
    report.set_statement(label, false, 0.0, false, "equivalence witness not found");
    return;
  }
  report.isometry_witness = *w;
  report.set_statement(label, true, 0.0, true, "verified isometric equivalence");
}

}  // namespace

CriterionReport check_orthogonal_criterion(const KrausChannel& phi,
                                           const PureStateFamily& f,
                                           double tol) {
  if (!is_complete(f))
    throw Error(ErrorKind::NotComplete, "family must span the input space");
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j)
      if (std::abs(f.vectors[i].dot(f.vectors[j])) > 1e-8)
        throw Error(ErrorKind::NotOrthogonal, "family is not pairwise orthogonal");

  CriterionReport report;
  report.tolerance = tol;

  std::vector<Mat> reference;
  reference.reserve(f.size());
  for (const Vec& v : f.vectors) reference.push_back(v * v.adjoint());

  StructuralCheck sc = structural_check(phi, reference, tol);
  report.m_value = sc.m_bound;
  if (sc.cq) report.cq_witness = sc.cq;

  if (!sc.cq) {
    report.set_statement("ii_cq_structure", false, 0.0, true,
                         "complementary channel is not classical-quantum");
  } else if (!sc.alignment.aligned) {
    report.set_statement("ii_cq_structure", false, sc.alignment.residual, true,
                         "detected resolution does not refine to the family");
  } else {
    report.set_statement("ii_cq_structure", sc.ranks_ok, sc.alignment.residual, true,
                         sc.ranks_ok ? "" : "sigma rank exceeds m");
  }

  std::vector<double> pi(f.size(), 1.0 / f.size());
  CriterionReport family_report = check_family(phi, f, pi, tol);
  report.member_residuals = family_report.member_residuals;
  report.max_residual = family_report.max_residual;
  report.set_statement("i_recovery", family_report.max_residual <= tol,
                       family_report.max_residual);

  equivalence_statement(report, "iii_block_form", phi, sc, reference, tol);

  report.conclude();
  return report;
}

bool verify_w_condition(const KrausChannel& phi, const PureStateFamily& f,
                        const Mat& w, double tol) {
  OutputSpan osm = output_span_and_m(phi);
  int m = std::min(osm.m_value + 1, osm.span_dim);
  if (w.rows() != phi.dim_out || w.cols() != static_cast<Eigen::Index>(phi.dim_in) * m)
    throw Error(ErrorKind::DimensionMismatch,
                "witness must map H_A (x) H_m into H_B");

  Mat wdw = w.adjoint() * w;
  if ((wdw * wdw - wdw).norm() > 1e-9 * std::max(1.0, wdw.norm())) return false;

  Mat im = Mat::Identity(m, m);
  for (const Vec& v : f.vectors) {
    Mat proj = v * v.adjoint();
    Mat lifted = w * tensor(proj, im) * w.adjoint();
    if ((phi.dual_apply(lifted) - proj).norm() > tol) return false;
  }
  Mat unital = phi.dual_apply(w * w.adjoint());
  return (unital - Mat::Identity(phi.dim_in, phi.dim_in)).norm() <= tol;
}

CriterionReport check_general_criterion(const KrausChannel& phi,
                                        const PureStateFamily& f, double tol) {
  if (!is_complete(f))
    throw Error(ErrorKind::NotComplete, "family must span the input space");

  CriterionReport report;
  report.tolerance = tol;

  OndDecomposition ond = ond_decompose(f);
  for (const auto& [i, j] : ond.ambiguous_pairs)
    report.warnings.push_back("near-orthogonal pair (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") close to the decomposition cut");

  StructuralCheck sc = structural_check(phi, ond.projectors, tol);
  report.m_value = sc.m_bound;
  if (sc.cq) report.cq_witness = sc.cq;

  if (!sc.cq) {
    report.set_statement("iii_cq_structure", false, 0.0, true,
                         "complementary channel is not classical-quantum");
  } else if (!sc.alignment.aligned) {
    report.set_statement("iii_cq_structure", false, sc.alignment.residual, true,
                         "detected resolution does not coarsen the OND blocks");
  } else {
    report.set_statement("iii_cq_structure", sc.ranks_ok, sc.alignment.residual, true,
                         sc.ranks_ok ? "" : "sigma rank exceeds m");
  }

  // (i): recovery of the family itself.
  std::vector<double> pi(f.size(), 1.0 / f.size());
  CriterionReport family_report = check_family(phi, f, pi, tol);
  report.member_residuals = family_report.member_residuals;
  report.max_residual = family_report.max_residual;
  report.set_statement("i_recovery", family_report.max_residual <= tol,
                       family_report.max_residual);

  // (ii): recovery on the block-diagonal set, probed by an adapted basis
  // plus sampled block-diagonal mixed states.
  {
    std::vector<DensityMatrix> probes;
    for (const Mat& p : ond.projectors)
      for (const Vec& v : projector_basis(p)) probes.push_back(pure_state(v));
    Rng rng(0x51c2a1dull + 977 * static_cast<std::uint64_t>(f.dim));
    for (int s = 0; s < 8; ++s) {
      Mat mix = Mat::Zero(f.dim, f.dim);
      auto weights = random_distribution(ond.blocks(), rng);
      for (int k = 0; k < ond.blocks(); ++k) {
        auto basis = projector_basis(ond.projectors[k]);
        int bd = static_cast<int>(basis.size());
        Mat frame(f.dim, bd);
        for (int c = 0; c < bd; ++c) frame.col(c) = basis[c];
        DensityMatrix local = random_state(bd, bd, rng);
        mix += weights[k] * (frame * local.mat * frame.adjoint());
      }
      probes.emplace_back((mix + mix.adjoint()) / 2.0, false);
    }
    std::vector<double> pw(probes.size(), 1.0 / probes.size());
    CriterionReport block_report =
        check_family(phi, DiscreteEnsemble(pw, probes), pw, tol);
    report.set_statement("ii_block_diagonal_recovery",
                         block_report.max_residual <= tol, block_report.max_residual);
  }

  equivalence_statement(report, "iv_block_form", phi, sc, ond.projectors, tol);

  // Gram witness when every block state is pure.
  if (sc.cq && sc.alignment.aligned && sc.ranks_ok && sc.max_sigma_rank == 1) {
    const int nb = ond.blocks();
    std::vector<Vec> psis;
    bool all_pure = true;
    for (const DensityMatrix& sigma : sc.block_sigmas) {
      auto vs = spectral_vectors(sigma, 1e-10);
      if (vs.size() != 1) {
        all_pure = false;
        break;
      }
      psis.push_back(vs.front().normalized());
    }
    if (all_pure) {
      Mat c(nb, nb);
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) c(k, l) = psis[l].dot(psis[k]);
      report.gram_witness = c;
    }
  }

  report.conclude();
  return report;
}

std::optional<GramReconstruction> gram_reconstruct(const KrausChannel& phi,
                                                   const PureStateFamily& f,
                                                   double tol) {
  OutputSpan osm = output_span_and_m(phi);
  bool kernel_free = osm.span_dim == phi.dim_out && osm.m_value == 0;
  bool square_unital = false;
  if (phi.dim_in == phi.dim_out) {
    Mat phi_id = phi.apply_mat(Mat::Identity(phi.dim_in, phi.dim_in));
    square_unital =
        (phi_id - Mat::Identity(phi.dim_out, phi.dim_out)).norm() <= std::max(tol, 1e-9);
  }
  if (!kernel_free && !square_unital)
    throw Error(ErrorKind::HypothesisNotMet,
                "need ker Phi^* = {0} or equal dimensions with a unital channel");

  CriterionReport report = check_general_criterion(phi, f, tol);
  if (report.verdict != Verdict::Reversible || !report.gram_witness) return std::nullopt;

  OndDecomposition ond = ond_decompose(f);
  GramReconstruction out;
  out.projectors = ond.projectors;
  out.gram = *report.gram_witness;
  KrausChannel gram_ch = gram_channel(out.projectors, out.gram);
  out.witness = find_equivalence_witness(phi, gram_ch, std::max(tol, 1e-7));
  return out;
}

CriterionReport capacity_saturation_check(
    const KrausChannel& phi, const std::optional<PureStateFamily>& candidate_family,
    double tol) {
  CriterionReport report;
  report.tolerance = tol;
  const int d = phi.dim_in;
  double log_dim = von_neumann_entropy(maximally_mixed(d));

  std::vector<Mat> resolution;
  if (candidate_family) {
    CriterionReport crit = check_general_criterion(phi, *candidate_family, tol);
    report.statements = crit.statements;
    report.cq_witness = crit.cq_witness;
    report.m_value = crit.m_value;
    if (crit.verdict != Verdict::Reversible) {
      report.conclude();
      return report;
    }
    resolution = ond_decompose(*candidate_family).projectors;
  } else {
    // With no candidate the resolution detected on the complementary channel
    // is itself the reference.
    OutputSpan osm = output_span_and_m(phi);
    int m_bound = std::min(osm.m_value + 1, osm.span_dim);
    KrausChannel phi_hat = complementary(phi);
    auto cq = detect_cq(phi_hat, std::max(tol, 1e-8));
    report.m_value = m_bound;
    if (!cq) {
      report.set_statement("structure", false, 0.0, true,
                           "complementary channel is not classical-quantum");
      report.conclude();
      return report;
    }
    report.cq_witness = cq;
    int max_rank = 0;
    for (const DensityMatrix& sigma : cq->sigmas)
      max_rank = std::max(max_rank, sigma_rank(sigma));
    bool ranks_ok = max_rank <= m_bound;
    report.set_statement("structure", ranks_ok, 0.0, true,
                         ranks_ok ? "" : "sigma rank exceeds m");
    if (!ranks_ok) {
      report.conclude();
      return report;
    }
    resolution = cq->projectors;
  }

  // Saturating ensemble: uniform over a basis adapted to the resolution.
  std::vector<DensityMatrix> outputs;
  for (const Mat& p : resolution)
    for (const Vec& v : projector_basis(p)) outputs.push_back(phi.apply(pure_state(v)));
  std::vector<double> weights(outputs.size(), 1.0 / outputs.size());
  ExtendedReal chi = holevo_chi(DiscreteEnsemble(weights, outputs));
  double chi_residual = chi.infinite ? 1.0 : std::abs(chi.value - log_dim);
  report.set_statement("chi_saturation", chi_residual <= 1e-8, chi_residual);

  // Minimal output entropy over the adapted basis for unital square
  // channels (the covariant-channel reading of the saturation criterion).
  if (phi.dim_in == phi.dim_out) {
    Mat phi_id = phi.apply_mat(Mat::Identity(d, d));
    if ((phi_id - Mat::Identity(d, d)).norm() <= 1e-9) {
      double h_min = -1.0;
      for (const DensityMatrix& out : outputs) {
        double h = von_neumann_entropy(out);
        if (h_min < 0.0 || h < h_min) h_min = h;
      }
      report.set_statement("h_min_zero", h_min <= 1e-6, h_min, true,
                           "minimal output entropy over the saturating basis");
    }
  }

  report.conclude();
  return report;
}

namespace {

void check_strict_hypotheses(const DiscreteEnsemble& ensemble, int total_dim,
                             int traced_dim, const char* traced_label, double tol) {
  if (ensemble.dim() != total_dim)
    throw Error(ErrorKind::DimensionMismatch, "ensemble does not match the bipartition");
  for (int i = 0; i < ensemble.size(); ++i)
    if (rank_tol(ensemble.states[i].mat, std::max(tol, kDefaultTol)) >= traced_dim)
      throw Error(ErrorKind::PreconditionFailed,
                  std::string("member rank must be below dim ") + traced_label +
                      " (member " + std::to_string(i) + ")");
  DensityMatrix avg = average_state(ensemble);
  if (rank_tol(avg.mat, std::max(tol, kDefaultTol)) < total_dim)
    throw Error(ErrorKind::PreconditionFailed, "average state is not full rank");
}

}  // namespace

double strict_decrease_gap(const DiscreteEnsemble& ensemble, int dim_b, int dim_e,
                           double tol) {
  // States live on B (x) E; the channel traces out the second factor E.
  check_strict_hypotheses(ensemble, dim_b * dim_e, dim_e, "H_E", tol);
  ExtendedReal chi_in = holevo_chi(ensemble);
  std::vector<DensityMatrix> traced;
  traced.reserve(ensemble.size());
  for (const DensityMatrix& rho : ensemble.states)
    traced.emplace_back(partial_trace(rho.mat, dim_b, dim_e, Subsystem::A), false);
  ExtendedReal chi_out = holevo_chi(DiscreteEnsemble(ensemble.weights, traced));
  return (chi_in - chi_out).value;
}

double strict_concavity_gap(const DiscreteEnsemble& ensemble, int dim_a, int dim_b,
                            double tol) {
  // States live on A (x) B; H_{A|B} conditions on the second factor.
  check_strict_hypotheses(ensemble, dim_a * dim_b, dim_a, "H_A", tol);
  DensityMatrix avg = average_state(ensemble);
  double gap = conditional_entropy(avg, dim_a, dim_b);
  for (int i = 0; i < ensemble.size(); ++i)
    gap -= ensemble.weights[i] * conditional_entropy(ensemble.states[i], dim_a, dim_b);
  return gap;
}

}  // namespace qrev
