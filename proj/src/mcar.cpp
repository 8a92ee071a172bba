#include "pcgraph/mcar.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <sstream>

namespace pcgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix companion_matrix(const std::vector<Matrix>& ar) {
  const int p = static_cast<int>(ar.size());
  const int k = static_cast<int>(ar.front().rows());
  Matrix a = Matrix::Zero(k * p, k * p);
  for (int i = 0; i + 1 < p; ++i) {
    a.block(i * k, (i + 1) * k, k, k) = Matrix::Identity(k, k);
  }
  for (int j = 0; j < p; ++j) {
    // bottom block row: (-A_p, -A_{p-1}, ..., -A_1)
    a.block((p - 1) * k, j * k, k, k) = -ar[p - 1 - j];
  }
  return a;
}

}  // namespace

CausalityCheck check_causal(const std::vector<Matrix>& ar_coefficients) {
  if (ar_coefficients.empty()) {
    throw std::invalid_argument("at least one AR coefficient matrix required");
  }
  CausalityCheck out;
  out.state_eigenvalues = eigenvalues(companion_matrix(ar_coefficients));
  out.is_causal = true;
  for (const Complex& e : out.state_eigenvalues) {
    if (e.real() >= -kStabilityMargin) out.is_causal = false;
  }
  return out;
}

CausalityCheck check_causal(const MCARModel& model) {
  return check_causal(model.ar_coefficients());
}

MCARModel::MCARModel(std::vector<Matrix> ar_coefficients, Matrix sigma_l)
    : ar_(std::move(ar_coefficients)), sigma_l_(std::move(sigma_l)) {
  if (ar_.empty()) {
    throw ValidationError("model requires order p >= 1");
  }
  p_ = static_cast<int>(ar_.size());
  k_ = static_cast<int>(ar_.front().rows());
  for (const Matrix& a : ar_) {
    if (a.rows() != k_ || a.cols() != k_ || !a.allFinite()) {
      throw ValidationError("AR coefficient matrices must be square, of equal dimension, and finite");
    }
  }
  if (sigma_l_.rows() != k_ || sigma_l_.cols() != k_ || !sigma_l_.allFinite()) {
    throw ValidationError("Sigma_L must be a finite k x k matrix");
  }
  if ((sigma_l_ - sigma_l_.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * (1.0 + sigma_l_.cwiseAbs().maxCoeff())) {
    throw ValidationError("Sigma_L must be symmetric");
  }
  sigma_l_ = (sigma_l_ + sigma_l_.transpose()) / 2.0;

  Eigen::LLT<Matrix> llt(sigma_l_);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("Sigma_L must be positive definite");
  }
  sigma_l_inv_ = llt.solve(Matrix::Identity(k_, k_));

  CausalityCheck causal = check_causal(ar_);
  eigs_ = causal.state_eigenvalues;
  if (!causal.is_causal) {
    std::ostringstream msg;
    msg << "model is not causal: state eigenvalues";
    for (const Complex& e : eigs_) {
      msg << " (" << e.real() << (e.imag() < 0 ? "-" : "+")
          << std::abs(e.imag()) << "i)";
    }
    throw ValidationError(msg.str());
  }
}

double MCARModel::spectral_abscissa() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Complex& e : eigs_) worst = std::max(worst, e.real());
  return worst;
}

MatrixPolynomial MCARModel::ar_polynomial() const {
  std::vector<Matrix> coeffs(p_ + 1);
  coeffs[p_] = Matrix::Identity(k_, k_);
  for (int j = 1; j <= p_; ++j) {
    coeffs[p_ - j] = ar_[j - 1];  // coefficient of z^{p-j} is A_j
  }
  return MatrixPolynomial(std::move(coeffs));
}

StateSpace companion(const std::vector<Matrix>& ar_coefficients) {
  if (ar_coefficients.empty()) {
    throw std::invalid_argument("at least one AR coefficient matrix required");
  }
  const int p = static_cast<int>(ar_coefficients.size());
  const int k = static_cast<int>(ar_coefficients.front().rows());
  StateSpace ss;
  ss.transition = companion_matrix(ar_coefficients);
  ss.input = Matrix::Zero(k * p, k);
  ss.input.bottomRows(k) = Matrix::Identity(k, k);
  ss.output = Matrix::Zero(k, k * p);
  ss.output.leftCols(k) = Matrix::Identity(k, k);
  return ss;
}

StateSpace companion(const MCARModel& model) {
  return companion(model.ar_coefficients());
}

ComplexMatrix spectral_density(const MCARModel& model, double lambda) {
  const MatrixPolynomial p = model.ar_polynomial();
  const ComplexMatrix p_il = p(Complex(0.0, lambda));
  Eigen::PartialPivLU<ComplexMatrix> lu(p_il);
  const ComplexMatrix p_inv = lu.inverse();
  // P(-il)^T = P(il)^H for real coefficients, so f is Hermitian by
  // construction.
  ComplexMatrix f =
      p_inv * model.sigma_l().cast<Complex>() * p_inv.adjoint() / kTwoPi;
  if (!f.allFinite()) {
    throw SingularMatrixError("spectral_density: AR polynomial singular at this frequency");
  }
  return (f + f.adjoint()) / 2.0;
}

ComplexMatrix inverse_spectral_density(const MCARModel& model, double lambda) {
  const MatrixPolynomial p = model.ar_polynomial();
  const ComplexMatrix p_il = p(Complex(0.0, lambda));
  ComplexMatrix g = kTwoPi * p_il.adjoint() *
                    model.sigma_l_inverse().cast<Complex>() * p_il;
  return (g + g.adjoint()) / 2.0;
}

MatrixPolynomial g_coefficients(const MCARModel& model) {
  const int p = model.order();
  const int k = model.dim();
  const Matrix& sinv = model.sigma_l_inverse();

  // A_0 = I_k; A_j as given. Coefficient of (i lambda)^n of
  // P(-il)^T Sigma^-1 P(il) is sum over m of (-1)^m A_{p-m}^T Sigma^-1
  // A_{p-n+m}.
  auto coeff_a = [&](int j) -> Matrix {
    return j == 0 ? Matrix::Identity(k, k) : model.ar_coefficient(j);
  };
  std::vector<Matrix> out(2 * p + 1, Matrix::Zero(k, k));
  for (int n = 0; n <= 2 * p; ++n) {
    for (int m = std::max(0, n - p); m <= std::min(n, p); ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      out[n] += sign * coeff_a(p - m).transpose() * sinv * coeff_a(p - n + m);
    }
    out[n] *= kTwoPi;
  }
  return MatrixPolynomial(std::move(out));
}

Matrix autocovariance(const MCARModel& model, double t) {
  const StateSpace ss = companion(model);
  const Matrix q =
      ss.input * model.sigma_l() * ss.input.transpose();
  const Matrix gamma0 = lyapunov_stationary(ss.transition, q);
  const Matrix e_at = matrix_exponential(ss.transition * std::abs(t));
  Matrix c = ss.output * e_at * gamma0 * ss.output.transpose();
  return t >= 0.0 ? c : Matrix(c.transpose());
}

}  // namespace pcgraph
