#include "qrev/entropy.hpp"

#include <atomic>
#include <cmath>

#include "qrev/channel.hpp"

namespace qrev {

namespace {

std::atomic<LogBase> g_log_base{LogBase::Two};

double xlog(double x) {
  double ln = std::log(x);
  return log_base() == LogBase::Two ? ln / std::numbers::ln2 : ln;
}

}  // namespace

void set_log_base(LogBase base) { g_log_base.store(base); }
LogBase log_base() { return g_log_base.load(); }

ExtendedReal ExtendedReal::operator+(const ExtendedReal& o) const {
  if (infinite || o.infinite) return infinity();
  return finite(value + o.value);
}

ExtendedReal ExtendedReal::operator-(const ExtendedReal& o) const {
  if (infinite && o.infinite)
    throw Error(ErrorKind::NotApplicable, "infinity minus infinity");
  if (infinite) return infinity();
  if (o.infinite)
    throw Error(ErrorKind::NotApplicable, "finite minus infinity");
  return finite(value - o.value);
}

double von_neumann_entropy(const DensityMatrix& rho, double tol) {
  HermitianEig eig = herm_eig(rho.mat, 1e-8);
  double h = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda > tol) h -= lambda * xlog(lambda);
  }
  return h;
}

ExtendedReal relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& sigma, double tol) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorKind::DimensionMismatch, "relative entropy dims differ");
  HermitianEig er = herm_eig(rho.mat, 1e-8);
  HermitianEig es = herm_eig(sigma.mat, 1e-8);

  Mat proj_sigma = Mat::Zero(sigma.dim(), sigma.dim());
  for (Eigen::Index j = 0; j < es.eigenvalues.size(); ++j)
    if (es.eigenvalues(j) > tol)
      proj_sigma += es.eigenvectors.col(j) * es.eigenvectors.col(j).adjoint();
  double outside = ((Mat::Identity(sigma.dim(), sigma.dim()) - proj_sigma) * rho.mat)
                       .trace()
                       .real();
  if (outside > tol) return ExtendedReal::infinity();

  double h = 0.0;
  for (Eigen::Index i = 0; i < er.eigenvalues.size(); ++i) {
    double p = er.eigenvalues(i);
    if (p <= tol) continue;
    h += p * xlog(p);
    const Vec ui = er.eigenvectors.col(i);
    for (Eigen::Index j = 0; j < es.eigenvalues.size(); ++j) {
      double q = es.eigenvalues(j);
      if (q <= tol) continue;
      double overlap = std::norm(es.eigenvectors.col(j).dot(ui));
      h -= p * overlap * xlog(q);
    }
  }
  return ExtendedReal::finite(h);
}

ExtendedReal holevo_chi(const DiscreteEnsemble& e, double tol) {
  DensityMatrix avg = average_state(e);
  ExtendedReal chi = ExtendedReal::finite(0.0);
  for (int i = 0; i < e.size(); ++i) {
    ExtendedReal term = relative_entropy(e.states[i], avg, tol);
    if (term.infinite) return ExtendedReal::infinity();
    chi.value += e.weights[i] * term.value;
  }
  return chi;
}

std::pair<ExtendedReal, double> holevo_chi_both(const DiscreteEnsemble& e,
                                                double tol) {
  ExtendedReal chi = holevo_chi(e, tol);
  DensityMatrix avg = average_state(e);
  double chi2 = von_neumann_entropy(avg, tol);
  for (int i = 0; i < e.size(); ++i)
    chi2 -= e.weights[i] * von_neumann_entropy(e.states[i], tol);
  return {chi, chi2};
}

double conditional_entropy(const DensityMatrix& rho, int dim_a, int dim_b,
                           double tol) {
  if (rho.dim() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "bipartite dims do not match state");
  DensityMatrix reduced(partial_trace(rho.mat, dim_a, dim_b, Subsystem::B), false);
  return von_neumann_entropy(rho, tol) - von_neumann_entropy(reduced, tol);
}

double entropy_gain(const KrausChannel& phi, const DensityMatrix& rho,
                    double tol) {
  return von_neumann_entropy(phi.apply(rho), tol) - von_neumann_entropy(rho, tol);
}

double donald_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                       double t, double tol) {
  if (!(t > 0.0 && t < 1.0))
    throw Error(ErrorKind::InvalidT, "t must lie in (0, 1)");
  DensityMatrix sigma_t(t * rho.mat + (1.0 - t) * sigma.mat, false);

  ExtendedReal h_rs = relative_entropy(rho, sigma, tol);
  ExtendedReal h_rt = relative_entropy(rho, sigma_t, tol);
  ExtendedReal h_st = relative_entropy(sigma, sigma_t, tol);
  ExtendedReal h_ts = relative_entropy(sigma_t, sigma, tol);
  if (h_rs.infinite || h_rt.infinite || h_st.infinite || h_ts.infinite)
    throw Error(ErrorKind::NotApplicable,
                "Donald identity has infinite terms for these supports");

  double lhs = t * h_rs.value;  // H(sigma||sigma) = 0
  double rhs = t * h_rt.value + (1.0 - t) * h_st.value + h_ts.value;
  return std::abs(lhs - rhs);
}

}  // namespace qrev
