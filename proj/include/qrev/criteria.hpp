#pragma once

#include "qrev/petz.hpp"

namespace qrev {

// Partition of a pure-state family into the connected components of its
// non-orthogonality graph, with the projector onto each block's span.
struct OndDecomposition {
  std::vector<std::vector<int>> components;  // ordered by smallest member index
  std::vector<Mat> projectors;
  std::vector<std::pair<int, int>> ambiguous_pairs;  // overlaps in (1e-10, tol]

  int blocks() const { return static_cast<int>(components.size()); }
};

OndDecomposition ond_decompose(const PureStateFamily& f, double tol = 1e-8);

// Output of the constructive Kraus extraction for the complementary channel
// from an ensemble of bounded-rank states.
struct Theorem1Extraction {
  std::vector<Mat> kraus;  // re-expanded Kraus operators of the complementary channel
  int max_rank = 0;
  double reversibility_residual = 0.0;   // max_i || A_i - Psi^*(B_i) ||_1
  double resolution_residual = 0.0;      // || sum_ij psi psi^dag - I ||
  double reexpansion_choi_distance = 0.0;
  int m_phi = 0;      // m(Phi)
  int span_dim = 0;   // dim H^Phi_B
  bool restricted = false;
};

Theorem1Extraction theorem1_extract(const KrausChannel& phi,
                                    const DiscreteEnsemble& ensemble,
                                    double tol = 1e-6);

// Reversibility criterion for a complete orthonormal family: statements
// (i) recovery, (ii) complementary c-q structure with rank bounds,
// (iii) isometric equivalence to the canonical block form.
CriterionReport check_orthogonal_criterion(const KrausChannel& phi,
                                           const PureStateFamily& f,
                                           double tol = 1e-6);

// Checks |phi_i><phi_i| = Phi^*(W [|phi_i><phi_i| (x) I_m] W^dag) for all i,
// that W is a partial isometry, and Phi^*(W W^dag) = I.
bool verify_w_condition(const KrausChannel& phi, const PureStateFamily& f,
                        const Mat& w, double tol = 1e-6);

// Reversibility criterion for an arbitrary complete pure family via its OND
// decomposition: statements (i) family recovery, (ii) recovery on the
// block-diagonal set, (iii) complementary c-q structure, (iv) equivalence to
// the canonical block channel.
CriterionReport check_general_criterion(const KrausChannel& phi,
                                        const PureStateFamily& f,
                                        double tol = 1e-6);

struct GramReconstruction {
  std::vector<Mat> projectors;
  Mat gram;                      // c_{kl}, defined up to diagonal phase gauge
  std::optional<Mat> witness;    // unitary intertwining Phi with the Gram channel
};

// Recovers the Gram-channel normal form of a reversible channel under the
// kernel-free or square-unital hypothesis. Absent when the criterion fails.
std::optional<GramReconstruction> gram_reconstruct(const KrausChannel& phi,
                                                   const PureStateFamily& f,
                                                   double tol = 1e-6);

// Saturation test for the Holevo-capacity bound C(Phi) <= log dim H_A. With
// no candidate family the orthogonal resolution is auto-detected from the
// complementary channel.
CriterionReport capacity_saturation_check(
    const KrausChannel& phi,
    const std::optional<PureStateFamily>& candidate_family = std::nullopt,
    double tol = 1e-6);

// chi(E) - chi(Tr_A E) for an ensemble on A (x) B (first factor traced out).
// Requires rank rho_i < dim H_A for all members and a full-rank average.
double strict_decrease_gap(const DiscreteEnsemble& ensemble, int dim_a, int dim_b,
                           double tol = kDefaultTol);

// H_{A|B}(rho_bar) - sum_i pi_i H_{A|B}(rho_i) on A (x) B, same hypotheses.
double strict_concavity_gap(const DiscreteEnsemble& ensemble, int dim_a, int dim_b,
                            double tol = kDefaultTol);

// The Theorem-4(iv) block channel: Phi'(rho) = sum_{kl} P_k rho P_l (x)
// sum_{pt} <psi^l_t | psi^k_p> |p><t| into H_A (x) H_m. psi[k] lists the
// per-block vectors in C^m_dim (mutually orthogonal, squared norms summing
// to one).
KrausChannel theorem4_channel(const std::vector<Mat>& projectors,
                              const std::vector<std::vector<Vec>>& psi,
                              int m_dim);

}  // namespace qrev
