#ifndef PCGRAPH_TESTUTIL_HPP
#define PCGRAPH_TESTUTIL_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pcgraph/builder.hpp"
#include "pcgraph/graphs.hpp"
#include "pcgraph/mcar.hpp"

namespace pcgraph::testutil {

// ---- reference models -----------------------------------------------------

// 4-dimensional order-1 model with identity noise covariance whose partial
// correlation graph misses exactly the edge 1--2.
inline MCARModel four_dim_ou() {
  Matrix state(4, 4);
  state << -2, 0, 1, 1,  //
      0, -2, -1, -1,     //
      -1, -1, -2, -1,    //
      1, -1, -1, -2;
  return MCARModel({-state}, Matrix::Identity(4, 4));
}

inline Matrix four_dim_ou_state() {
  Matrix state(4, 4);
  state << -2, 0, 1, 1,  //
      0, -2, -1, -1,     //
      -1, -1, -2, -1,    //
      1, -1, -1, -2;
  return state;
}

// 3-dimensional order-1 model without the edge 1--2 in the partial
// correlation graph although both 1->2 and 2->1 are causality edges.
inline Matrix three_dim_pcfree_state() {
  Matrix state(3, 3);
  state << -3, 1, 1,  //
      1, -3, 1,       //
      6, 1, -8;
  return state;
}
inline MCARModel three_dim_pcfree() {
  return MCARModel({-three_dim_pcfree_state()}, Matrix::Identity(3, 3));
}

// 3-dimensional order-1 model with the edge 1--2 in the partial correlation
// graph although the causality graph has no edge between 1 and 2.
inline Matrix three_dim_gcfree_state() {
  Matrix state(3, 3);
  state << -1, 0, 0,  //
      0, -1, 0,       //
      1, 1, -2;
  return state;
}
inline MCARModel three_dim_gcfree() {
  return MCARModel({-three_dim_gcfree_state()}, Matrix::Identity(3, 3));
}

inline MCARModel scalar_ou() {
  return MCARModel({Matrix::Identity(1, 1)}, Matrix::Identity(1, 1));
}

// ---- random inputs ---------------------------------------------------------

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols,
                            double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

inline Matrix random_stable_matrix(std::mt19937_64& rng, int k,
                                   double margin = 0.5) {
  Matrix m = random_matrix(rng, k, k);
  const double shift = spectral_abscissa(m);
  return m - (shift + margin) * Matrix::Identity(k, k);
}

inline Matrix random_spd(std::mt19937_64& rng, int k) {
  Matrix b = random_matrix(rng, k, k);
  return b * b.transpose() + 0.4 * static_cast<double>(k) * Matrix::Identity(k, k);
}

// SPD matrix whose inverse has a sparse off-diagonal pattern.
inline Matrix random_sparse_precision(std::mt19937_64& rng, int k,
                                      double edge_prob = 0.4) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 0.5);
  Matrix p = Matrix::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (unif(rng) < edge_prob) {
        p(a, b) = p(b, a) = normal(rng);
      }
    }
  }
  // diagonal dominance keeps it positive definite
  for (int a = 0; a < k; ++a) {
    p(a, a) = 1.0 + p.row(a).cwiseAbs().sum();
  }
  return p;
}

// Causal model with sparsified coefficients: rejection sampling around a
// binomial-scaled identity backbone, which keeps the acceptance rate high.
inline MCARModel random_causal_model(std::mt19937_64& rng, int k, int p,
                                     double sparsify_prob = 0.5,
                                     bool identity_noise = false) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Matrix> ar(p);
    double binom = 1.0;
    for (int m = 1; m <= p; ++m) {
      binom = binom * (p - m + 1) / m;
      Matrix noise = random_matrix(rng, k, k, 0.35);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          if (unif(rng) < sparsify_prob) noise(r, c) = 0.0;
        }
      }
      ar[m - 1] = binom * Matrix::Identity(k, k) + noise;
    }
    if (!check_causal(ar).is_causal) continue;

    Matrix sigma;
    if (identity_noise) {
      sigma = Matrix::Identity(k, k);
    } else {
      sigma = hermitian_inverse(random_sparse_precision(rng, k).cast<Complex>())
                  .real();
      sigma = (sigma + sigma.transpose()) / 2.0;
    }
    try {
      return MCARModel(std::move(ar), std::move(sigma));
    } catch (const ValidationError&) {
      continue;
    }
  }
  throw std::runtime_error("random_causal_model: rejection sampling failed");
}

inline UndirectedGraph random_undirected_graph(std::mt19937_64& rng, int k,
                                               double edge_prob = 0.4) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  UndirectedGraph g(k);
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      if (unif(rng) < edge_prob) g.add_edge(a, b);
    }
  }
  return g;
}

inline MixedGraph random_mixed_graph(std::mt19937_64& rng, int k,
                                     double directed_prob = 0.25,
                                     double dashed_prob = 0.25) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  MixedGraph g(k);
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      if (a != b && unif(rng) < directed_prob) g.add_directed(a, b);
    }
  }
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      if (unif(rng) < dashed_prob) g.add_dashed(a, b);
    }
  }
  return g;
}

// ---- quadrature oracles -----------------------------------------------------

// Adaptive Simpson for matrix-valued integrands.
inline Matrix adaptive_simpson(const std::function<Matrix(double)>& f, double a,
                               double b, double tol, int depth = 24) {
  struct Rec {
    const std::function<Matrix(double)>& f;
    Matrix run(double a, double b, const Matrix& fa, const Matrix& fm,
               const Matrix& fb, const Matrix& whole, double tol, int depth) {
      const double m = (a + b) / 2;
      const Matrix fl = f((a + m) / 2);
      const Matrix fr = f((m + b) / 2);
      const Matrix left = (m - a) / 6 * (fa + 4 * fl + fm);
      const Matrix right = (b - m) / 6 * (fm + 4 * fr + fb);
      const Matrix delta = left + right - whole;
      if (depth <= 0 || delta.cwiseAbs().maxCoeff() < 15 * tol) {
        return left + right + delta / 15;
      }
      return run(a, m, fa, fl, fm, left, tol / 2, depth - 1) +
             run(m, b, fm, fr, fb, right, tol / 2, depth - 1);
    }
  } rec{f};
  const Matrix fa = f(a);
  const Matrix fb = f(b);
  const Matrix fm = f((a + b) / 2);
  const Matrix whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return rec.run(a, b, fa, fm, fb, whole, tol, depth);
}

// Midpoint Riemann sum of e^{Au} Q e^{A^T u} on [0, delta].
inline Matrix gramian_riemann(const Matrix& a, const Matrix& q, double delta,
                              int steps) {
  const double h = delta / steps;
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < steps; ++i) {
    const double u = (i + 0.5) * h;
    const Matrix e = matrix_exponential(a * u);
    acc += e * q * e.transpose();
  }
  return acc * h;
}

inline bool same_edges(const UndirectedGraph& x, const UndirectedGraph& y) {
  return x.n_vertices() == y.n_vertices() && x.edges() == y.edges();
}

}  // namespace pcgraph::testutil

#endif
