#include "pcgraph/estimate.hpp"

#include "pcgraph/partialcorr.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pcgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix rank_one(const Eigen::VectorXcd& d) {
  return d * d.adjoint();
}

double lag_window_weight(LagWindow window, double x) {
  x = std::abs(x);
  if (x > 1.0) return 0.0;
  switch (window) {
    case LagWindow::bartlett:
      return 1.0 - x;
    case LagWindow::parzen:
      if (x <= 0.5) return 1.0 - 6.0 * x * x + 6.0 * x * x * x;
      return 2.0 * std::pow(1.0 - x, 3);
  }
  return 0.0;
}

}  // namespace

ComplexMatrix periodogram(const SampledSeries& series, double lambda) {
  const long n = series.n_samples();
  const int k = series.dim();
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(k);
  for (long j = 0; j < n; ++j) {
    const Complex w = std::polar(1.0, -lambda * static_cast<double>(j));
    d += w * series.data.col(j).cast<Complex>();
  }
  return rank_one(d) / (kTwoPi * static_cast<double>(n));
}

SpectralEstimator::SpectralEstimator(const SampledSeries& series)
    : n_(series.n_samples()), k_(series.dim()) {
  dft_.assign(n_, Eigen::VectorXcd::Zero(k_));

  std::vector<double> in(n_);
  std::vector<fftw_complex> out(n_ / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in.data(),
                                        out.data(), FFTW_ESTIMATE);
  for (int c = 0; c < k_; ++c) {
    for (long j = 0; j < n_; ++j) in[j] = series.data(c, j);
    fftw_execute(plan);
    for (long j = 0; j <= n_ / 2; ++j) {
      dft_[j](c) = Complex(out[j][0], out[j][1]);
    }
    for (long j = n_ / 2 + 1; j < n_; ++j) {
      dft_[j](c) = std::conj(dft_[n_ - j](c));
    }
  }
  fftw_destroy_plan(plan);
}

ComplexMatrix SpectralEstimator::smoothed(double lambda, int bandwidth) const {
  if (bandwidth < 0 || 2L * bandwidth + 1 > n_) {
    throw ValidationError("smoothed periodogram: bandwidth too large for the sample count");
  }
  const long center = static_cast<long>(
      std::llround(lambda * static_cast<double>(n_) / kTwoPi));
  ComplexMatrix acc = ComplexMatrix::Zero(k_, k_);
  for (long r = -bandwidth; r <= bandwidth; ++r) {
    const long idx = ((center + r) % n_ + n_) % n_;
    acc += rank_one(dft_[idx]);
  }
  acc /= kTwoPi * static_cast<double>(n_) * static_cast<double>(2 * bandwidth + 1);
  return (acc + acc.adjoint()) / 2.0;
}

ComplexMatrix smoothed_periodogram(const SampledSeries& series, double lambda,
                                   int bandwidth) {
  return SpectralEstimator(series).smoothed(lambda, bandwidth);
}

ComplexMatrix lag_window_estimate(const SampledSeries& series, double lambda,
                                  LagWindow window, int truncation) {
  const long n = series.n_samples();
  if (truncation < 0 || truncation >= n) {
    throw ValidationError("lag window estimate: truncation must be in [0, n)");
  }
  ComplexMatrix acc = sample_autocovariance(series, 0).cast<Complex>();
  for (long h = 1; h <= truncation; ++h) {
    const double w = lag_window_weight(
        window, static_cast<double>(h) / static_cast<double>(truncation));
    if (w == 0.0) continue;
    const Matrix c = sample_autocovariance(series, h);
    const Complex phase = std::polar(1.0, -lambda * static_cast<double>(h));
    // c(-h) = c(h)^T pairs with the conjugate phase
    acc += w * (phase * c.cast<Complex>() +
                std::conj(phase) * c.transpose().cast<Complex>());
  }
  acc /= kTwoPi;
  return (acc + acc.adjoint()) / 2.0;
}

ComplexMatrix rescale_highfreq(const ComplexMatrix& discrete_estimate,
                               double lambda, double delta) {
  if (!(delta > 0.0)) throw ValidationError("rescale_highfreq: delta must be positive");
  if (std::abs(lambda) * delta > std::numbers::pi * (1.0 + 1e-12)) {
    throw ValidationError("rescale_highfreq: frequency outside the Nyquist band");
  }
  return delta * discrete_estimate;
}

ComplexMatrix folded_density(const MCARModel& model, double delta,
                             double lambda_discrete) {
  if (!(delta > 0.0)) throw ValidationError("folded_density: delta must be positive");
  if (std::abs(lambda_discrete) > std::numbers::pi * (1.0 + 1e-12)) {
    throw ValidationError("folded_density: discrete frequency must lie in [-pi, pi]");
  }

  // Alias sum sum_k f((w + 2 k pi)/delta). The tail decays like mu^-2p; a
  // midpoint-rule integral correction M2/mu at the cut edge brings the
  // truncation error far below the 1e-12 stopping target.
  auto f_at = [&](double mu) { return spectral_density(model, mu); };

  ComplexMatrix acc = f_at(lambda_discrete / delta);
  ComplexMatrix previous;
  bool have_previous = false;
  const long k_max = 1L << 20;
  for (long k = 1, checkpoint = 16; k <= k_max; ++k) {
    const double mu_plus = (lambda_discrete + kTwoPi * k) / delta;
    const double mu_minus = (lambda_discrete - kTwoPi * k) / delta;
    acc += f_at(mu_plus) + f_at(mu_minus);

    if (k == checkpoint) {
      const double edge_plus = (lambda_discrete + kTwoPi * (k + 0.5)) / delta;
      const double edge_minus = (lambda_discrete - kTwoPi * (k + 0.5)) / delta;
      ComplexMatrix corrected =
          acc + (delta / kTwoPi) * (edge_plus * f_at(edge_plus) -
                                    edge_minus * f_at(edge_minus));
      if (have_previous &&
          inf_norm(ComplexMatrix(corrected - previous)) <=
              1e-12 * std::max(1e-300, inf_norm(corrected))) {
        return corrected / delta;
      }
      previous = corrected;
      have_previous = true;
      checkpoint *= 2;
    }
  }
  return previous / delta;  // converged to machine limits anyway
}

int default_bandwidth(long n) {
  return static_cast<int>(
      std::ceil(std::pow(static_cast<double>(n), 0.6) / 2.0));
}

std::vector<double> default_estimation_grid(double delta) {
  const double nyquist = std::numbers::pi / delta;
  std::vector<double> grid;
  for (double lambda = 0.5; lambda <= 4.0 + 1e-12; lambda += 0.5) {
    if (lambda < nyquist) grid.push_back(lambda);
  }
  if (grid.empty()) {
    for (int i = 1; i <= 8; ++i) grid.push_back(nyquist * i / 9.0);
  }
  return grid;
}

namespace {

EdgeEstimate score_edges(
    int k, const std::vector<double>& lambda_grid, double delta, double tau,
    const std::function<ComplexMatrix(double)>& density_at) {
  if (lambda_grid.empty()) {
    throw ValidationError("estimate_pc_graph: frequency grid is empty");
  }
  EdgeEstimate out;
  out.grid = lambda_grid;
  out.tau = tau;
  out.delta = delta;
  out.scores = Matrix::Zero(k, k);

  for (double lambda : lambda_grid) {
    const ComplexMatrix f_hat =
        rescale_highfreq(density_at(lambda), lambda, delta);
    ComplexMatrix g_hat;
    try {
      g_hat = hermitian_inverse(f_hat);
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError(
          "estimate_pc_graph: density estimate singular at lambda = " +
          std::to_string(lambda) + "; increase the bandwidth");
    }
    for (int a = 1; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) {
        const double r = std::abs(partial_coherence_pair(g_hat, a, b));
        out.scores(a - 1, b - 1) = std::max(out.scores(a - 1, b - 1), r);
        out.scores(b - 1, a - 1) = out.scores(a - 1, b - 1);
      }
    }
  }

  out.graph = UndirectedGraph(k);
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      if (out.scores(a - 1, b - 1) > tau) out.graph.add_edge(a, b);
    }
  }
  return out;
}

}  // namespace

EdgeEstimate estimate_pc_graph(const SampledSeries& series,
                               const std::vector<double>& lambda_grid,
                               int bandwidth, double tau) {
  SpectralEstimator estimator(series);
  EdgeEstimate out = score_edges(
      series.dim(), lambda_grid, series.delta, tau,
      [&](double lambda) {
        return estimator.smoothed(lambda * series.delta, bandwidth);
      });
  out.bandwidth = bandwidth;
  out.n = series.n_samples();
  return out;
}

EdgeEstimate estimate_pc_graph_oracle(const MCARModel& model, double delta,
                                      const std::vector<double>& lambda_grid,
                                      double tau) {
  return score_edges(model.dim(), lambda_grid, delta, tau,
                     [&](double lambda) {
                       return folded_density(model, delta, lambda * delta);
                     });
}

}  // namespace pcgraph
