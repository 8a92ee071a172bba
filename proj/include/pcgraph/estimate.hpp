#ifndef PCGRAPH_ESTIMATE_HPP
#define PCGRAPH_ESTIMATE_HPP

#include <functional>
#include <vector>

#include "pcgraph/graphs.hpp"
#include "pcgraph/mcar.hpp"
#include "pcgraph/simulate.hpp"

namespace pcgraph {

// I(lambda) = (2 pi n)^-1 d(lambda) d(lambda)^H with the DFT
// d(lambda) = sum_j Y_j e^{-i lambda j}; Hermitian PSD of rank <= 1.
ComplexMatrix periodogram(const SampledSeries& series, double lambda);

// Daniell smoother: average of the periodogram over the 2m+1 Fourier
// frequencies nearest lambda (cyclically). Requires 2m+1 <= n.
ComplexMatrix smoothed_periodogram(const SampledSeries& series, double lambda,
                                   int bandwidth);

enum class LagWindow { bartlett, parzen };

// (2 pi)^-1 sum_{|h| <= b} w(h/b) c_hat(h) e^{-i lambda h} with biased sample
// autocovariances.
ComplexMatrix lag_window_estimate(const SampledSeries& series, double lambda,
                                  LagWindow window, int truncation);

// Maps a discrete-frequency density estimate at lambda*delta to the
// continuous-time target: multiplies by delta. Throws ValidationError when
// |lambda * delta| > pi (outside the Nyquist band).
ComplexMatrix rescale_highfreq(const ComplexMatrix& discrete_estimate,
                               double lambda, double delta);

// Exact spectral density of the delta-sampled process at discrete frequency
// in [-pi, pi]: the alias sum (1/delta) sum_k f((lambda + 2 k pi)/delta),
// truncated adaptively with an integral tail correction so the remainder is
// below 1e-12 relative.
ComplexMatrix folded_density(const MCARModel& model, double delta,
                             double lambda_discrete);

// Precomputed FFT of a series; answers smoothed-periodogram queries without
// re-transforming.
class SpectralEstimator {
 public:
  explicit SpectralEstimator(const SampledSeries& series);

  // Same value as smoothed_periodogram(series, lambda, bandwidth).
  ComplexMatrix smoothed(double lambda, int bandwidth) const;

  long n_samples() const { return n_; }
  int dim() const { return k_; }

 private:
  long n_;
  int k_;
  std::vector<Eigen::VectorXcd> dft_;  // per Fourier frequency, length k
};

// Default bandwidth ceil(n^0.6 / 2); documented artifact choice.
int default_bandwidth(long n);

inline constexpr double kDefaultTau = 0.1;

struct EdgeEstimate {
  UndirectedGraph graph;
  Matrix scores;  // max |partial coherence| over the grid, per pair
  std::vector<double> grid;
  double tau = kDefaultTau;
  int bandwidth = 0;
  double delta = 0.0;
  long n = 0;
};

// Default scoring frequencies: 8 points 0.5, 1.0, ..., 4.0 clipped to the
// Nyquist band; targets processes with spectral scale O(1), override for
// other time scales.
std::vector<double> default_estimation_grid(double delta);

// Graph recovery from data: inverts the rescaled Daniell estimate on the
// grid, scores each pair by its maximal partial coherence magnitude, and
// keeps edges scoring above tau. Throws SingularMatrixError with an
// increase-bandwidth hint when the estimate is singular at a grid point.
EdgeEstimate estimate_pc_graph(const SampledSeries& series,
                               const std::vector<double>& lambda_grid,
                               int bandwidth, double tau = kDefaultTau);

// Noiseless plug-in variant: scores computed from the exact folded density
// of the model instead of an estimate.
EdgeEstimate estimate_pc_graph_oracle(const MCARModel& model, double delta,
                                      const std::vector<double>& lambda_grid,
                                      double tau = kDefaultTau);

}  // namespace pcgraph

#endif
