#ifndef PCGRAPH_BUILDER_HPP
#define PCGRAPH_BUILDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "pcgraph/graphs.hpp"
#include "pcgraph/mcar.hpp"
#include "pcgraph/partialcorr.hpp"

namespace pcgraph {

enum class EdgeTestMethod {
  // Exact zero test on the real coefficient matrices of g; the entries of g
  // are polynomials in lambda, so coefficient zeros decide the zero function.
  coefficient,
  // Cross-validation route: max |g_ab(lambda)| over a frequency grid.
  grid,
};

// Partial correlation graph of the model: edge a--b iff g_ab is not the zero
// function.
UndirectedGraph pc_graph(const MCARModel& model,
                         EdgeTestMethod method = EdgeTestMethod::coefficient,
                         double zero_tol = kZeroTol,
                         const std::optional<SpectralGrid>& grid = std::nullopt);

// Order-1 edge test from the coefficients alone. Returns true when the edge
// a--b is absent, i.e. when
//   [S^-1]_ab = 0, [A^T S^-1 - S^-1 A]_ab = 0, [A^T S^-1 A]_ab = 0
// with A = -A_1 and S = Sigma_L (the first condition is trivial and the
// other two collapse to [A]_ba - [A]_ab = 0, [A^T A]_ab = 0 when S = I).
bool ou_edge_absent(const Matrix& a1, const Matrix& sigma_l, int a, int b,
                    double zero_tol = kZeroTol);

// Mixed graph with a->b iff some [A_j]_ba is nonzero and a--b dashed iff
// [Sigma_L]_ab is nonzero.
MixedGraph local_causality_graph(const MCARModel& model,
                                 double zero_tol = kZeroTol);

// Order-1 causality graph for Sigma_L = I_k:
//   a->b present iff [A^alpha]_ba != 0 for some alpha in 1..k-1,
//   a--b dashed  iff [A^alpha (A^T)^beta]_ab != 0 for some alpha,beta in
//   0..k-1,
// with A = -A_1. Exponent ranges are exact by Cayley-Hamilton.
MixedGraph ou_causality_graph(const Matrix& a1, double zero_tol = kZeroTol);

// Model of order p whose partial correlation graph equals g:
// [Sigma_L^-1]_ab = k on the diagonal, 1 on edges, 0 otherwise, and
// A_m = binom(p, m) I_k, which is causal with state spectrum {-1}.
MCARModel synthesize_model(const UndirectedGraph& g, int p);

// Inclusion checks between the concentration graph of Sigma_L, the partial
// correlation graph, and the augmented (local) causality graphs.
struct SubsetReport {
  UndirectedGraph concentration;        // E_CO
  UndirectedGraph partial_correlation;  // E_PC
  UndirectedGraph augmented_local;      // augmented local causality graph
  std::optional<UndirectedGraph> augmented_order1;  // p=1, Sigma_L=I only
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

SubsetReport subset_checks(const MCARModel& model, double zero_tol = kZeroTol);

// Partial correlation graph of the exactly sampled order-1 process at
// spacing delta: a VAR(1) with transition e^{A delta} and innovation
// covariance S_delta = integral_0^delta e^{Au} Sigma_L e^{A^T u} du. Edge
// a--b absent iff all three hold:
//   [S_delta^-1 + e^{A^T d} S_delta^-1 e^{A d}]_ab = 0,
//   [S_delta^-1 e^{A d}]_ab = 0,  [e^{A^T d} S_delta^-1]_ab = 0.
UndirectedGraph sampled_var1_pc_graph(const Matrix& a1, const Matrix& sigma_l,
                                      double delta,
                                      double zero_tol = kZeroTol);

}  // namespace pcgraph

#endif
