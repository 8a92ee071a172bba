#ifndef PCGRAPH_LINALG_HPP
#define PCGRAPH_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pcgraph/errors.hpp"

namespace pcgraph {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Eigenvalues with real part >= -kStabilityMargin fail the stability check;
// guards against numerically marginal models.
inline constexpr double kStabilityMargin = 1e-9;

// Condition numbers beyond this cap are reported as singular instead of
// returning an unreliable inverse.
inline constexpr double kConditionCap = 1e12;

// Relative magnitude below which a computed quantity counts as a structural
// zero.
inline constexpr double kZeroTol = 1e-8;

// P(z) = C_0 + C_1 z + ... + C_d z^d with real square coefficient matrices
// of a common dimension.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  explicit MatrixPolynomial(std::vector<Matrix> coefficients);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  int dim() const;
  const Matrix& coefficient(int power) const { return coefficients_.at(power); }
  const std::vector<Matrix>& coefficients() const { return coefficients_; }

  // Horner evaluation of sum_j C_j z^j.
  ComplexMatrix operator()(Complex z) const;

 private:
  std::vector<Matrix> coefficients_;
};

// exp(M) by scaling and squaring with a Pade approximant.
Matrix matrix_exponential(const Matrix& m);

// Unordered eigenvalue multiset of a real square matrix.
std::vector<Complex> eigenvalues(const Matrix& m);

// max Re sigma(M).
double spectral_abscissa(const Matrix& m);

// Solves A*G + G*A^T + Q = 0 for stable A and symmetric PSD Q; the solution
// equals the infinite-horizon Gramian integral_0^inf e^{Au} Q e^{A^T u} du.
// Throws ValidationError if A is not stable.
Matrix lyapunov_stationary(const Matrix& a, const Matrix& q);

// integral_0^delta e^{Au} Q e^{A^T u} du via the block matrix exponential.
// Works for any square A; delta must be positive.
Matrix gramian_finite(const Matrix& a, const Matrix& q, double delta);

// Both exp(A*delta) and the finite-horizon Gramian from one block
// exponential, for callers that need the pair.
struct DiscretizedPair {
  Matrix transition;  // exp(A*delta)
  Matrix gramian;     // integral_0^delta e^{Au} Q e^{A^T u} du
};
DiscretizedPair discretize(const Matrix& a, const Matrix& q, double delta);

// Inverse of a Hermitian positive definite matrix through its spectral
// decomposition. Throws SingularMatrixError when an eigenvalue is not
// strictly positive or the condition number exceeds kConditionCap.
ComplexMatrix hermitian_inverse(const ComplexMatrix& m);

inline double inf_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double inf_norm(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace pcgraph

#endif
