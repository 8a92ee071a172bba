#include "pcgraph/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace pcgraph {

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw std::invalid_argument("matrix polynomial needs at least one coefficient");
  }
  const Eigen::Index k = coefficients_.front().rows();
  for (const Matrix& c : coefficients_) {
    if (c.rows() != k || c.cols() != k) {
      throw std::invalid_argument("matrix polynomial coefficients must be square and of equal dimension");
    }
    if (!c.allFinite()) {
      throw std::invalid_argument("matrix polynomial coefficient has non-finite entries");
    }
  }
}

int MatrixPolynomial::dim() const {
  return coefficients_.empty() ? 0 : static_cast<int>(coefficients_.front().rows());
}

ComplexMatrix MatrixPolynomial::operator()(Complex z) const {
  const int d = degree();
  ComplexMatrix acc = coefficients_[d].cast<Complex>();
  for (int j = d - 1; j >= 0; --j) {
    acc = acc * z + coefficients_[j].cast<Complex>();
  }
  return acc;
}

Matrix matrix_exponential(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_exponential: input must be square");
  }
  return m.exp();
}

std::vector<Complex> eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigenvalues: input must be square");
  }
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw SingularMatrixError("eigenvalue iteration failed");
  }
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

double spectral_abscissa(const Matrix& m) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Complex& e : eigenvalues(m)) {
    worst = std::max(worst, e.real());
  }
  return worst;
}

Matrix lyapunov_stationary(const Matrix& a, const Matrix& q) {
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows()) {
    throw std::invalid_argument("lyapunov_stationary: dimension mismatch");
  }
  const Eigen::Index n = a.rows();

  Eigen::ComplexSchur<ComplexMatrix> schur(a.cast<Complex>());
  if (schur.info() != Eigen::Success) {
    throw SingularMatrixError("lyapunov_stationary: Schur decomposition failed");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();

  for (Eigen::Index i = 0; i < n; ++i) {
    if (t(i, i).real() >= -kStabilityMargin) {
      std::ostringstream msg;
      msg << "lyapunov_stationary: matrix is not stable (eigenvalue real part "
          << t(i, i).real() << ")";
      throw ValidationError(msg.str());
    }
  }

  // Bartels-Stewart on T Y + Y T^H = -U^H Q U, solved column by column from
  // the right: (T + conj(T_jj) I) y_j = -q_j - sum_{m>j} conj(T_jm) y_m.
  ComplexMatrix qt = u.adjoint() * q.cast<Complex>() * u;
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = -qt.col(j);
    for (Eigen::Index m2 = j + 1; m2 < n; ++m2) {
      rhs -= std::conj(t(j, m2)) * y.col(m2);
    }
    ComplexMatrix lhs = t;
    lhs.diagonal().array() += std::conj(t(j, j));
    y.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }

  Matrix gamma = (u * y * u.adjoint()).real();
  return (gamma + gamma.transpose()) / 2.0;
}

DiscretizedPair discretize(const Matrix& a, const Matrix& q, double delta) {
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows()) {
    throw std::invalid_argument("discretize: dimension mismatch");
  }
  if (!(delta > 0.0)) {
    throw ValidationError("discretize: delta must be positive");
  }
  const Eigen::Index n = a.rows();

  // The block exponential of [[A, Q], [0, -A^T]] overflows for large
  // ||A|| delta (the lower-right block is anti-stable), so evaluate on a
  // subdivided horizon and double back up with
  // W(2h) = W(h) + e^{Ah} W(h) e^{A^T h}.
  int doublings = 0;
  double h = delta;
  while (inf_norm(a) * h > 1.0 && doublings < 60) {
    h /= 2.0;
    ++doublings;
  }

  // exp([[A, Q], [0, -A^T]] h) = [[e^{Ah}, G], [0, e^{-A^T h}]] with
  // G e^{A^T h} = integral_0^h e^{Au} Q e^{A^T u} du.
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a * h;
  block.topRightCorner(n, n) = q * h;
  block.bottomRightCorner(n, n) = -a.transpose() * h;
  Matrix e = block.exp();

  DiscretizedPair out;
  out.transition = e.topLeftCorner(n, n);
  Matrix w = e.topRightCorner(n, n) * out.transition.transpose();
  w = (w + w.transpose()) / 2.0;
  for (int i = 0; i < doublings; ++i) {
    const Matrix propagated = out.transition * w * out.transition.transpose();
    w += propagated;
    w = (w + w.transpose()) / 2.0;
    out.transition = Matrix(out.transition * out.transition);
  }
  out.gramian = std::move(w);
  return out;
}

Matrix gramian_finite(const Matrix& a, const Matrix& q, double delta) {
  return discretize(a, q, delta).gramian;
}

ComplexMatrix hermitian_inverse(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_inverse: input must be square");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw SingularMatrixError("hermitian_inverse: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  if (ev.minCoeff() <= 0.0 || ev.maxCoeff() / ev.minCoeff() > kConditionCap) {
    throw SingularMatrixError(
        "hermitian_inverse: matrix is not positive definite to working precision");
  }
  return solver.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace pcgraph
