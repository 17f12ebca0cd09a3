#pragma once

#include <variant>

#include "qrev/entropy.hpp"
#include "qrev/report.hpp"

namespace qrev {

// Outcome of the two-state recovery test: the entropy gap
// H(rho||sigma) - H(Phi(rho)||Phi(sigma)) and the trace-norm recovery
// residual ||rho - Theta_sigma(Phi(rho))||_1. The two verdicts agree for
// every admissible instance; `reversible` is keyed to the residual.
struct RecoveryDiagnostics {
  ExtendedReal entropy_gap;
  double recovery_residual = 0.0;
  bool reversible = false;
  double tolerance = 0.0;
};

// The Petz recovery channel Theta_sigma for (Phi, sigma): Kraus operators
// sigma^{1/2} V_k^dag [Phi(sigma)]^{-1/2} on supp Phi(sigma), completed to a
// CPTP map by the branch x -> sigma Tr[(I - Pi) x] on the orthocomplement.
KrausChannel petz_channel(const KrausChannel& phi, const DensityMatrix& sigma,
                          double tol = kDefaultTol);

// Evaluates Theorem-2 style statements (i) and (iii) for the pair (rho,
// sigma). Raises SupportViolation when H(rho||sigma) is infinite.
RecoveryDiagnostics check_pair(const KrausChannel& phi, const DensityMatrix& rho,
                               const DensityMatrix& sigma, double tol = 1e-6);

using StateFamily = std::variant<DiscreteEnsemble, PureStateFamily>;

// Family reversibility via the single recovery channel Theta_rho_bar:
// reversible iff every member satisfies rho_i = Theta(Phi(rho_i)) within tol.
// pi must be non-degenerate; for a PureStateFamily it weights the members.
CriterionReport check_family(const KrausChannel& phi, const StateFamily& family,
                             const std::vector<double>& pi, double tol = 1e-6);

// Petz channel at the interpolated reference sigma_t = t rho + (1-t) sigma.
KrausChannel petz_t_channel(const KrausChannel& phi, const DensityMatrix& rho,
                            const DensityMatrix& sigma, double t,
                            double tol = kDefaultTol);

// Choi-distance trajectory ||Choi(Theta_t) - Choi(Theta_sigma)||_1 along a
// grid of t values decreasing toward zero.
std::vector<std::pair<double, double>> theta_t_convergence(
    const KrausChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma,
    const std::vector<double>& t_grid, double tol = kDefaultTol);

}  // namespace qrev
