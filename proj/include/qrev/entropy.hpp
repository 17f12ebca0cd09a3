#pragma once

#include "qrev/states.hpp"

namespace qrev {

struct KrausChannel;

enum class LogBase { Two, E };

// Global unit selection: bits by default, nats on request. Set once at
// startup (the CLI does); entropy functions read it on each call.
void set_log_base(LogBase base);
LogBase log_base();

// Real value extended with +infinity, which arises only from support
// violations. Arithmetic saturates; infinity minus infinity is rejected.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal infinity() { return {0.0, true}; }
  static ExtendedReal finite(double v) { return {v, false}; }

  bool is_finite() const { return !infinite; }
  ExtendedReal operator+(const ExtendedReal& o) const;
  ExtendedReal operator-(const ExtendedReal& o) const;  // NotApplicable on inf-inf
};

// -sum lambda log lambda over eigenvalues above tolerance.
double von_neumann_entropy(const DensityMatrix& rho, double tol = kDefaultTol);

// Tr rho (log rho - log sigma) on supp sigma; +infinity iff supp rho is not
// contained in supp sigma (detected via Tr[(I - Pi_sigma) rho] > tol).
ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double tol = kDefaultTol);

// Holevo quantity, relative-entropy form: sum_i pi_i H(rho_i || rho_bar).
ExtendedReal holevo_chi(const DiscreteEnsemble& e, double tol = kDefaultTol);

// Both Holevo forms: the relative-entropy sum and H(rho_bar) - sum pi_i H(rho_i).
// They agree to ~1e-8 whenever finite.
std::pair<ExtendedReal, double> holevo_chi_both(const DiscreteEnsemble& e,
                                                double tol = kDefaultTol);

// H(rho) - H(Tr_A rho) for a state on A (x) B.
double conditional_entropy(const DensityMatrix& rho, int dim_a, int dim_b,
                           double tol = kDefaultTol);

// H(Phi(rho)) - H(rho).
double entropy_gain(const KrausChannel& phi, const DensityMatrix& rho,
                    double tol = kDefaultTol);

// Residual |LHS - RHS| of the Donald identity at sigma_t = t rho + (1-t) sigma:
//   t H(rho||sigma) + (1-t) H(sigma||sigma)
//     = t H(rho||sigma_t) + (1-t) H(sigma||sigma_t) + H(sigma_t||sigma).
// Raises NotApplicable when the identity degenerates to infinite terms.
double donald_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                       double t, double tol = kDefaultTol);

}  // namespace qrev
