#ifndef PCGRAPH_MCAR_HPP
#define PCGRAPH_MCAR_HPP

#include <vector>

#include "pcgraph/linalg.hpp"

namespace pcgraph {

struct CausalityCheck {
  bool is_causal = false;
  std::vector<Complex> state_eigenvalues;
};

// Causality test on raw coefficients: the companion matrix spectrum must lie
// strictly inside the open left half plane (margin kStabilityMargin).
CausalityCheck check_causal(const std::vector<Matrix>& ar_coefficients);

// State space form of the AR dynamics: dX = A X dt + B dL, Y = C X.
struct StateSpace {
  Matrix transition;  // kp x kp companion matrix
  Matrix input;       // kp x k, zeros stacked on I_k
  Matrix output;      // k x kp, (I_k 0 ... 0)
};

// Continuous-time AR(p) model: coefficient matrices A_1..A_p and the
// covariance Sigma_L of the driving noise at unit time. Validation runs at
// construction: Sigma_L must be symmetric positive definite and the model
// causal; invalid models throw ValidationError.
class MCARModel {
 public:
  MCARModel(std::vector<Matrix> ar_coefficients, Matrix sigma_l);

  int dim() const { return k_; }
  int order() const { return p_; }

  // A_j for j = 1..p.
  const Matrix& ar_coefficient(int j) const { return ar_.at(j - 1); }
  const std::vector<Matrix>& ar_coefficients() const { return ar_; }
  const Matrix& sigma_l() const { return sigma_l_; }
  const Matrix& sigma_l_inverse() const { return sigma_l_inv_; }
  const std::vector<Complex>& state_eigenvalues() const { return eigs_; }
  double spectral_abscissa() const;

  // P(z) = I z^p + A_1 z^{p-1} + ... + A_p.
  MatrixPolynomial ar_polynomial() const;

 private:
  int k_ = 0;
  int p_ = 0;
  std::vector<Matrix> ar_;
  Matrix sigma_l_;
  Matrix sigma_l_inv_;
  std::vector<Complex> eigs_;
};

CausalityCheck check_causal(const MCARModel& model);

StateSpace companion(const MCARModel& model);
StateSpace companion(const std::vector<Matrix>& ar_coefficients);

// f(lambda) = (2 pi)^-1 P(i lambda)^-1 Sigma_L (P(-i lambda)^-1)^T;
// Hermitian positive definite for causal models with Sigma_L > 0.
ComplexMatrix spectral_density(const MCARModel& model, double lambda);

// g(lambda) = 2 pi P(-i lambda)^T Sigma_L^-1 P(i lambda) = f(lambda)^-1.
ComplexMatrix inverse_spectral_density(const MCARModel& model, double lambda);

// Real coefficients G_0..G_2p of g as a polynomial in the variable (i lambda):
// evaluating the returned polynomial at i*lambda reproduces
// inverse_spectral_density(model, lambda).
MatrixPolynomial g_coefficients(const MCARModel& model);

// c(t) = C e^{A|t|} Gamma(0) C^T for t >= 0 and c(-t) = c(t)^T.
Matrix autocovariance(const MCARModel& model, double t);

}  // namespace pcgraph

#endif
