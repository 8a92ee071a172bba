#ifndef PCGRAPH_PARTIALCORR_HPP
#define PCGRAPH_PARTIALCORR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pcgraph/graphs.hpp"
#include "pcgraph/linalg.hpp"
#include "pcgraph/mcar.hpp"

namespace pcgraph {

// Finite frequency grid standing in for "for almost all lambda" decisions,
// with the tolerance separating structural zeros from roundoff. Tolerances
// are relative to max(1, ||.||_inf) of the matrix under test.
struct SpectralGrid {
  std::vector<double> frequencies;
  double zero_tol = kZeroTol;

  // Chebyshev-spaced points on [0, lambda_max] (f(-lambda) = conj f(lambda)
  // makes the negative axis redundant).
  static SpectralGrid chebyshev(double lambda_max, int n_points,
                                double zero_tol = kZeroTol);

  // Default grid for a model: 129 points, lambda_max = 10 (1 + |abscissa|).
  static SpectralGrid for_model(const MCARModel& model,
                                double zero_tol = kZeroTol);
};

// Disjoint vertex sets (1-based); A and B non-empty, C may be empty.
struct IndexSets {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> c;

  // Throws std::invalid_argument on overlap, empty A/B, or out-of-range
  // vertices.
  void validate(int n_vertices) const;
};

// Cross-spectral density of the residuals of A and B after projecting on the
// full time course of C:
//   f_AB - f_AC f_CC^-1 f_CB,
// evaluated on a full-process density matrix f at one frequency. C empty
// returns f_AB unchanged.
ComplexMatrix residual_cross_density(const ComplexMatrix& f_full,
                                     const IndexSets& sets);
ComplexMatrix residual_cross_density(const MCARModel& model,
                                     const IndexSets& sets, double lambda);

// f_AA^{-1/2} f_AB f_BB^{-1/2}; zero matrix when either diagonal block is
// singular.
ComplexMatrix spectral_coherence(const ComplexMatrix& f,
                                 const std::vector<int>& a,
                                 const std::vector<int>& b);

// -g_ab / sqrt(g_aa g_bb) for a Hermitian positive definite g.
Complex partial_coherence_pair(const ComplexMatrix& g, int a, int b);

// True iff the (A,B) block of the inverse of f restricted to A u B u C
// vanishes on the whole grid.
bool is_partially_uncorrelated(const MCARModel& model, const IndexSets& sets,
                               const SpectralGrid& grid);

// Inverse spectral density of the process with the components C removed:
//   g_AB - g_AC g_CC^-1 g_CB over the remaining indices.
ComplexMatrix remove_confounder(const ComplexMatrix& g_full,
                                const std::vector<int>& confounder);

// Concentration graph of a covariance matrix: edge a--b iff
// |[Sigma^-1]_ab| exceeds the tolerance.
UndirectedGraph concentration_edges(const Matrix& sigma,
                                    double zero_tol = kZeroTol);

// Caching partial-uncorrelation oracle for one model and grid; answers
// queries (A, B, C) from the inverse of the restricted density, with
// per-subset memoization.
class PartialCorrOracle {
 public:
  PartialCorrOracle(const MCARModel& model, SpectralGrid grid);

  bool uncorrelated(const std::vector<int>& a, const std::vector<int>& b,
                    const std::vector<int>& c) const;
  int dim() const { return k_; }
  const SpectralGrid& grid() const { return grid_; }

 private:
  const std::vector<ComplexMatrix>& inverses_for(unsigned mask) const;

  int k_;
  SpectralGrid grid_;
  std::vector<ComplexMatrix> density_;  // f(lambda) per grid point
  mutable std::map<unsigned, std::vector<ComplexMatrix>> inverse_cache_;
};

// Consistency report of the graphoid properties (symmetry, decomposition,
// weak union, contraction, intersection) evaluated with the numeric oracle
// on one disjoint partition (A, B, C, D). Violations indicate tolerance
// failures of the oracle, not of the underlying theory.
struct GraphoidReport {
  long checks_run = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

GraphoidReport graphoid_report(const PartialCorrOracle& oracle,
                               const std::vector<int>& a,
                               const std::vector<int>& b,
                               const std::vector<int>& c,
                               const std::vector<int>& d);
GraphoidReport graphoid_report(const MCARModel& model,
                               const std::vector<int>& a,
                               const std::vector<int>& b,
                               const std::vector<int>& c,
                               const std::vector<int>& d,
                               const SpectralGrid& grid);

}  // namespace pcgraph

#endif
