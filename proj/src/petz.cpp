#include "qrev/petz.hpp"

#include <cmath>

namespace qrev {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Reversible: return "Reversible";
    case Verdict::NotReversible: return "NotReversible";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

void CriterionReport::set_statement(const std::string& label, bool pass,
                                    double residual, bool known,
                                    const std::string& note) {
  statements[label] = StatementResult{pass, residual, known, note};
}

void CriterionReport::conclude() {
  int passes = 0, fails = 0;
  for (const auto& [label, st] : statements) {
    if (!st.known) continue;
    (st.pass ? passes : fails)++;
  }
  if (passes > 0 && fails == 0)
    verdict = Verdict::Reversible;
  else if (fails > 0 && passes == 0)
    verdict = Verdict::NotReversible;
  else {
    verdict = Verdict::Unknown;
    if (passes > 0 && fails > 0)
      warnings.push_back("definitive statements disagree");
  }
}

KrausChannel petz_channel(const KrausChannel& phi, const DensityMatrix& sigma,
                          double tol) {
  if (sigma.dim() != phi.dim_in)
    throw Error(ErrorKind::InvalidState, "sigma must live on the channel input");
  sigma.validate();

  Mat sigma_sqrt = psd_sqrt(sigma.mat, std::max(tol, 1e-9));
  Mat phi_sigma = phi.apply_mat(sigma.mat);
  phi_sigma = (phi_sigma + phi_sigma.adjoint()) / 2.0;
  auto [inv_sqrt, proj] = support_inv_sqrt(phi_sigma, tol);

  std::vector<Mat> ops;
  ops.reserve(phi.kraus.size() + 1);
  for (const Mat& v : phi.kraus) ops.push_back(sigma_sqrt * v.adjoint() * inv_sqrt);

  // Completion: map the orthocomplement of supp Phi(sigma) to sigma.
  Mat leftover = Mat::Identity(phi.dim_out, phi.dim_out) - proj;
  if (leftover.norm() > 1e-9) {
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
  return KrausChannel(phi.dim_out, phi.dim_in, std::move(ops));
}

RecoveryDiagnostics check_pair(const KrausChannel& phi, const DensityMatrix& rho,
                               const DensityMatrix& sigma, double tol) {
  ExtendedReal h_in = relative_entropy(rho, sigma);
  if (h_in.infinite)
    throw Error(ErrorKind::SupportViolation,
                "H(rho||sigma) is infinite; supp rho must lie in supp sigma");
  ExtendedReal h_out = relative_entropy(phi.apply(rho), phi.apply(sigma));

  RecoveryDiagnostics diag;
  diag.entropy_gap = h_in - h_out;
  KrausChannel theta = petz_channel(phi, sigma);
  DensityMatrix recovered = theta.apply(phi.apply(rho));
  diag.recovery_residual = trace_norm_dist(rho.mat, recovered.mat);
  diag.tolerance = tol;
  diag.reversible = diag.recovery_residual <= tol;
  return diag;
}

namespace {

std::vector<DensityMatrix> family_members(const StateFamily& family) {
  if (std::holds_alternative<DiscreteEnsemble>(family))
    return std::get<DiscreteEnsemble>(family).states;
  const auto& f = std::get<PureStateFamily>(family);
  std::vector<DensityMatrix> members;
  members.reserve(f.size());
  for (int i = 0; i < f.size(); ++i) members.push_back(f.state(i));
  return members;
}

}  // namespace

CriterionReport check_family(const KrausChannel& phi, const StateFamily& family,
                             const std::vector<double>& pi, double tol) {
  std::vector<DensityMatrix> members = family_members(family);
  if (members.empty())
    throw Error(ErrorKind::ValidationError, "empty family");
  if (pi.size() != members.size())
    throw Error(ErrorKind::DimensionMismatch, "pi size does not match family");
  double total = 0.0;
  for (double p : pi) {
    if (p <= 0.0)
      throw Error(ErrorKind::DegenerateDistribution,
                  "family distribution must be strictly positive");
    total += p;
  }

  Mat avg = Mat::Zero(members.front().dim(), members.front().dim());
  for (size_t i = 0; i < members.size(); ++i) avg += (pi[i] / total) * members[i].mat;
  DensityMatrix rho_bar(std::move(avg), false);

  CriterionReport report;
  report.tolerance = tol;
  report.restricted = rank_tol(rho_bar.mat, kDefaultTol) < rho_bar.dim();
  if (report.restricted)
    report.warnings.push_back("average state is rank deficient; check ran on its support");

  KrausChannel theta = petz_channel(phi, rho_bar);
  double max_residual = 0.0;
  for (const DensityMatrix& rho : members) {
    DensityMatrix recovered = theta.apply(phi.apply(rho));
    double r = trace_norm_dist(rho.mat, recovered.mat);
    report.member_residuals.push_back(r);
    max_residual = std::max(max_residual, r);
  }
  report.max_residual = max_residual;
  report.set_statement("theorem3", max_residual <= tol, max_residual);
  report.kraus_witness = theta.kraus;
  report.conclude();
  return report;
}

KrausChannel petz_t_channel(const KrausChannel& phi, const DensityMatrix& rho,
                            const DensityMatrix& sigma, double t, double tol) {
  if (!(t > 0.0 && t < 1.0))
    throw Error(ErrorKind::InvalidT, "t must lie in (0, 1)");
  DensityMatrix sigma_t(t * rho.mat + (1.0 - t) * sigma.mat, false);
  return petz_channel(phi, sigma_t, tol);
}

std::vector<std::pair<double, double>> theta_t_convergence(
    const KrausChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma,
    const std::vector<double>& t_grid, double tol) {
  KrausChannel theta_sigma = petz_channel(phi, sigma, tol);
  Mat ref = choi(theta_sigma);
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    KrausChannel theta_t = petz_t_channel(phi, rho, sigma, t, tol);
    out.emplace_back(t, trace_norm_dist(choi(theta_t), ref));
  }
  return out;
}

}  // namespace qrev
