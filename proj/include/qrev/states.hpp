#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qrev/linalg.hpp"

namespace qrev {

// Positive semidefinite unit-trace matrix. Validation tolerances follow the
// state invariants: Hermitian to 1e-10, eigenvalues >= -1e-10, trace 1 +- 1e-10.
struct DensityMatrix {
  Mat mat;

  DensityMatrix() = default;
  explicit DensityMatrix(Mat m, bool validate_now = true);

  int dim() const { return static_cast<int>(mat.rows()); }
  void validate() const;
};

DensityMatrix pure_state(const Vec& v);
DensityMatrix maximally_mixed(int dim);

// Indexed family of unit vectors |phi_lambda>.
struct PureStateFamily {
  int dim = 0;
  std::vector<Vec> vectors;
  std::vector<std::string> labels;  // optional, empty or one per vector

  PureStateFamily() = default;
  PureStateFamily(int d, std::vector<Vec> vs);

  int size() const { return static_cast<int>(vectors.size()); }
  void validate() const;
  DensityMatrix state(int i) const { return pure_state(vectors.at(i)); }
};

// Probability vector paired with states of equal dimension. Weights below
// 1e-12 are pruned with renormalization on construction.
struct DiscreteEnsemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> states;

  DiscreteEnsemble() = default;
  DiscreteEnsemble(std::vector<double> w, std::vector<DensityMatrix> s);

  int size() const { return static_cast<int>(states.size()); }
  int dim() const { return states.empty() ? 0 : states.front().dim(); }
  void validate() const;
};

DensityMatrix average_state(const DiscreteEnsemble& e);

// True iff the vectors span the whole space (rank of the stacked-vector
// matrix equals dim).
bool is_complete(const PureStateFamily& f, double tol = kDefaultTol);

// True iff the family is a pairwise orthonormal basis of its space.
bool is_orthonormal_basis(const PureStateFamily& f, double tol = kDefaultTol);

// Dual overcomplete system |dual_i> = sqrt(pi_i) * rho_bar^{-1/2} |phi_i>,
// with rho_bar = sum_i pi_i |phi_i><phi_i|. When rho_bar is singular the
// construction is carried out on its support. The outputs resolve the
// projector onto supp rho_bar.
std::vector<Vec> dual_overcomplete(const PureStateFamily& f,
                                   const std::vector<double>& pi,
                                   double tol = kDefaultTol);

// Deterministic, seed-reproducible generators. The Gaussian sampler is
// implemented over std::mt19937_64 directly so output bits do not depend on
// the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();              // [0, 1)
  double gaussian();             // standard normal
  cxd complex_gaussian();        // re, im independent N(0,1)
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
};

Mat random_gaussian_matrix(int rows, int cols, Rng& rng);
Mat random_unitary(int dim, Rng& rng);

DensityMatrix random_state(int dim, int rank, std::uint64_t seed);
DensityMatrix random_state(int dim, int rank, Rng& rng);
PureStateFamily random_pure_family(int dim, int n, std::uint64_t seed);
PureStateFamily random_pure_family(int dim, int n, Rng& rng);

// Random probability vector with all entries bounded away from zero.
std::vector<double> random_distribution(int n, Rng& rng);

}  // namespace qrev
