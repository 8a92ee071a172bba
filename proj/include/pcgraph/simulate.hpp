#ifndef PCGRAPH_SIMULATE_HPP
#define PCGRAPH_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>

#include "pcgraph/mcar.hpp"

namespace pcgraph {

// Equidistant multivariate observations, column j = Y(j * delta).
struct SampledSeries {
  double delta = 0.0;
  Matrix data;  // k x n

  int dim() const { return static_cast<int>(data.rows()); }
  long n_samples() const { return static_cast<long>(data.cols()); }
};

// Exact-in-distribution draw of the stationary Gaussian process on the grid
// 0, delta, ..., (n-1) delta:
//   X_0 ~ N(0, Gamma(0)),  X_{j+1} = e^{A delta} X_j + eta_j,
//   eta_j ~ N(0, integral_0^delta e^{Au} B Sigma_L B^T e^{A^T u} du),
// then Y_j = C X_j. Deterministic given the seed (mt19937_64 driving a
// Box-Muller transform, so the stream is reproducible across platforms).
SampledSeries simulate(const MCARModel& model, double delta, long n,
                       std::uint64_t seed);

// (1/n) sum_j Y(j+lag) Y(j)^T over valid j; negative lags return the
// transpose of the positive-lag value.
Matrix sample_autocovariance(const SampledSeries& series, long lag);

// CSV with header "t,y1,...,yk", one row per grid point.
void write_csv(const SampledSeries& series, std::ostream& out);
SampledSeries read_csv(std::istream& in);

}  // namespace pcgraph

#endif
