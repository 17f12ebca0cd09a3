#pragma once

#include <optional>
#include <vector>

#include "qrev/states.hpp"

namespace qrev {

// Completely positive trace-preserving map in Kraus form. Operators are
// dim_out x dim_in; trace preservation (sum V_k^dag V_k = I) is validated to
// 1e-9 on construction.
struct KrausChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<Mat> kraus;

  KrausChannel() = default;
  KrausChannel(int din, int dout, std::vector<Mat> ops, bool validate_now = true);

  void validate(double tol = 1e-9) const;

  // Phi(X) = sum_k V_k X V_k^dag, defined for any input-sized matrix.
  Mat apply_mat(const Mat& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  // Dual (adjoint) map Phi^*(A) = sum_k V_k^dag A V_k.
  Mat dual_apply(const Mat& a) const;
};

// Orthogonal resolution {P_k} of the input identity together with output
// states {sigma_k} representing Phi(rho) = sum_k Tr(P_k rho) sigma_k.
struct CqStructure {
  std::vector<Mat> projectors;
  std::vector<DensityMatrix> sigmas;

  int blocks() const { return static_cast<int>(projectors.size()); }
};

// Output span H^Phi_B and the kernel dimension m(Phi) of the dual map
// restricted to operators on that span.
struct OutputSpan {
  Mat projector;    // onto H^Phi_B, dim_out x dim_out
  int span_dim = 0; // dim H^Phi_B
  int m_value = 0;  // dim ker Phi^*|_{B(H^Phi_B)}
};

// Choi matrix (Phi (x) Id)(|Omega><Omega|), |Omega> = sum_i |i>|i>
// unnormalized, with the output factor first.
Mat choi(const KrausChannel& phi);

// Trace-norm distance between Choi matrices; the canonical channel metric
// used throughout.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

// Kraus representation of minimal size (= Choi rank), obtained from the
// Choi eigendecomposition.
KrausChannel minimal_kraus(const KrausChannel& phi, double tol = kDefaultTol);

// Complementary channel via Eq.-(5)-style construction on the given Kraus
// list: output dimension equals the number of Kraus operators.
KrausChannel complementary_raw(const KrausChannel& phi);

// Complementary channel computed on the minimal representation, so that the
// environment output is full rank for full-rank inputs.
KrausChannel complementary(const KrausChannel& phi, double tol = kDefaultTol);

// Kraus re-expansion W_i = sum_k <psi_i|k> V_k over an overcomplete system
// {psi_i} on the Kraus index space. Preserves the channel.
KrausChannel reexpand_kraus(const KrausChannel& phi, const std::vector<Vec>& psi,
                            double tol = kDefaultTol);

OutputSpan output_span_and_m(const KrausChannel& phi, double tol = kDefaultTol);

// Searches for the finest orthogonal resolution {P_k} and states {sigma_k}
// with Phi(rho) = sum_k Tr(P_k rho) sigma_k. Absent when the dual range does
// not commute or the reconstruction misses by more than tol.
std::optional<CqStructure> detect_cq(const KrausChannel& phi, double tol = 1e-8);

// Checks both identities Phi' = W Phi(.) W^dag and Phi = W^dag Phi'(.) W on a
// matrix-unit basis, and that W is a partial isometry.
bool verify_isometric_equivalence(const KrausChannel& phi, const KrausChannel& phi_prime,
                                  const Mat& w, double tol = 1e-8);

// Best-effort witness construction by eigenbasis matching of Phi(I/d) and
// Phi'(I/d) with a phase-consistency pass, falling back to the linear
// intertwining system. Absent means "not found", never "not equivalent".
std::optional<Mat> find_equivalence_witness(const KrausChannel& phi,
                                            const KrausChannel& phi_prime,
                                            double tol = 1e-8);

//------------------------------------------------------------------------
// Constructors
//------------------------------------------------------------------------

KrausChannel identity_channel(int dim);
KrausChannel unitary_channel(const Mat& u);

// Phi(rho) = sigma Tr(rho).
KrausChannel depolarize_to(const DensityMatrix& sigma, int dim_in,
                           double tol = kDefaultTol);

// Phi(rho) = sum_k Tr(P_k rho) sigma_k for an orthogonal resolution {P_k}.
KrausChannel cq_channel(const std::vector<Mat>& projectors,
                        const std::vector<DensityMatrix>& sigmas,
                        double tol = kDefaultTol);

// C-q channel over an orthonormal basis: Phi(rho) = sum_k <k|rho|k> sigma_k.
KrausChannel cq_channel(const PureStateFamily& basis,
                        const std::vector<DensityMatrix>& sigmas,
                        double tol = kDefaultTol);

// Phi(rho) = sum_k P_k rho P_k.
KrausChannel pinching_channel(const std::vector<Mat>& projectors,
                              double tol = kDefaultTol);

// Phi(rho) = sum_{k,l} c_{kl} P_k rho P_l with c a PSD unit-diagonal Gram
// matrix; Kraus operators come from a square-root factorization of c.
KrausChannel gram_channel(const std::vector<Mat>& projectors, const Mat& c,
                          double tol = kDefaultTol);

// Partial trace over one factor of A (x) B as a channel.
KrausChannel partial_trace_channel(int dim_a, int dim_b, Subsystem keep);

// Theta(x) = W^dag x W + sigma Tr[(I - W W^dag) x] for a partial isometry
// W : H_B -> H_B'; this is the channel used to transport reversibility
// across an isometric equivalence.
KrausChannel embed_recovery_channel(const Mat& w, const DensityMatrix& sigma,
                                    double tol = kDefaultTol);

// after o first as a single Kraus channel.
KrausChannel compose(const KrausChannel& after, const KrausChannel& first);

// Random CPTP map with the prescribed number of Kraus operators.
KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, Rng& rng);

}  // namespace qrev
