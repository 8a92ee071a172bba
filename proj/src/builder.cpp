#include "pcgraph/builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcgraph {

namespace {

double rel_scale(double largest) { return std::max(1.0, largest); }

bool entry_nonzero(const Matrix& m, int a, int b, double zero_tol,
                   double scale) {
  return std::abs(m(a - 1, b - 1)) > zero_tol * rel_scale(scale);
}

}  // namespace

UndirectedGraph pc_graph(const MCARModel& model, EdgeTestMethod method,
                         double zero_tol,
                         const std::optional<SpectralGrid>& grid) {
  const int k = model.dim();
  UndirectedGraph g(k);

  if (method == EdgeTestMethod::coefficient) {
    const MatrixPolynomial coeffs = g_coefficients(model);
    double scale = 0.0;
    for (const Matrix& c : coeffs.coefficients()) scale = std::max(scale, inf_norm(c));
    for (int a = 1; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) {
        for (const Matrix& c : coeffs.coefficients()) {
          if (entry_nonzero(c, a, b, zero_tol, scale) ||
              entry_nonzero(c, b, a, zero_tol, scale)) {
            g.add_edge(a, b);
            break;
          }
        }
      }
    }
    return g;
  }

  const SpectralGrid eval_grid =
      grid ? *grid : SpectralGrid::for_model(model, zero_tol);
  for (double lambda : eval_grid.frequencies) {
    const ComplexMatrix gl = inverse_spectral_density(model, lambda);
    const double tol = zero_tol * rel_scale(inf_norm(gl));
    for (int a = 1; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) {
        if (std::abs(gl(a - 1, b - 1)) > tol) g.add_edge(a, b);
      }
    }
  }
  return g;
}

bool ou_edge_absent(const Matrix& a1, const Matrix& sigma_l, int a, int b,
                    double zero_tol) {
  const int k = static_cast<int>(a1.rows());
  if (a < 1 || a > k || b < 1 || b > k || a == b) {
    throw std::invalid_argument("ou_edge_absent: invalid vertex pair");
  }
  const Matrix state = -a1;

  const bool identity_noise =
      (sigma_l - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() == 0.0;
  if (identity_noise) {
    const Matrix sym_gap = state.transpose() - state;
    const Matrix gram = state.transpose() * state;
    const double scale = std::max(inf_norm(sym_gap), inf_norm(gram));
    return !entry_nonzero(sym_gap, a, b, zero_tol, scale) &&
           !entry_nonzero(gram, a, b, zero_tol, scale);
  }

  const Matrix sinv =
      hermitian_inverse(sigma_l.cast<Complex>()).real();
  const Matrix m0 = sinv;
  const Matrix m1 = state.transpose() * sinv - sinv * state;
  const Matrix m2 = state.transpose() * sinv * state;
  const double scale =
      std::max({inf_norm(m0), inf_norm(m1), inf_norm(m2)});
  return !entry_nonzero(m0, a, b, zero_tol, scale) &&
         !entry_nonzero(m1, a, b, zero_tol, scale) &&
         !entry_nonzero(m2, a, b, zero_tol, scale);
}

MixedGraph local_causality_graph(const MCARModel& model, double zero_tol) {
  const int k = model.dim();
  MixedGraph g(k);
  double coeff_scale = 0.0;
  for (const Matrix& aj : model.ar_coefficients()) {
    coeff_scale = std::max(coeff_scale, inf_norm(aj));
  }
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      if (a == b) continue;
      for (const Matrix& aj : model.ar_coefficients()) {
        if (entry_nonzero(aj, b, a, zero_tol, coeff_scale)) {
          g.add_directed(a, b);
          break;
        }
      }
    }
  }
  const double noise_scale = inf_norm(model.sigma_l());
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      if (entry_nonzero(model.sigma_l(), a, b, zero_tol, noise_scale)) {
        g.add_dashed(a, b);
      }
    }
  }
  return g;
}

MixedGraph ou_causality_graph(const Matrix& a1, double zero_tol) {
  const int k = static_cast<int>(a1.rows());
  if (a1.cols() != k) {
    throw std::invalid_argument("ou_causality_graph: coefficient matrix must be square");
  }
  const Matrix state = -a1;

  std::vector<Matrix> powers(k);  // state^0 .. state^{k-1}
  powers[0] = Matrix::Identity(k, k);
  for (int i = 1; i < k; ++i) powers[i] = powers[i - 1] * state;

  double scale = 0.0;
  for (const Matrix& m : powers) scale = std::max(scale, inf_norm(m));
  scale = std::max(1.0, scale * scale);

  MixedGraph g(k);
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      if (a == b) continue;
      for (int alpha = 1; alpha < k; ++alpha) {
        if (std::abs(powers[alpha](b - 1, a - 1)) > zero_tol * scale) {
          g.add_directed(a, b);
          break;
        }
      }
    }
  }
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      bool connected = false;
      for (int alpha = 0; alpha < k && !connected; ++alpha) {
        for (int beta = 0; beta < k && !connected; ++beta) {
          const Matrix prod = powers[alpha] * powers[beta].transpose();
          if (std::abs(prod(a - 1, b - 1)) > zero_tol * scale) connected = true;
        }
      }
      if (connected) g.add_dashed(a, b);
    }
  }
  return g;
}

MCARModel synthesize_model(const UndirectedGraph& g, int p) {
  if (p < 1) throw ValidationError("synthesize_model: order must be >= 1");
  const int k = g.n_vertices();

  Matrix precision = static_cast<double>(k) * Matrix::Identity(k, k);
  for (const auto& [a, b] : g.edges()) {
    precision(a - 1, b - 1) = 1.0;
    precision(b - 1, a - 1) = 1.0;
  }
  const Matrix sigma_l = hermitian_inverse(precision.cast<Complex>()).real();

  std::vector<Matrix> ar(p);
  double binom = 1.0;
  for (int m = 1; m <= p; ++m) {
    binom = binom * (p - m + 1) / m;  // binom(p, m)
    ar[m - 1] = binom * Matrix::Identity(k, k);
  }
  return MCARModel(std::move(ar), (sigma_l + sigma_l.transpose()) / 2.0);
}

SubsetReport subset_checks(const MCARModel& model, double zero_tol) {
  SubsetReport report;
  report.concentration = concentration_edges(model.sigma_l(), zero_tol);
  report.partial_correlation =
      pc_graph(model, EdgeTestMethod::coefficient, zero_tol);
  report.augmented_local = augment(local_causality_graph(model, zero_tol));

  auto require_subset = [&](const UndirectedGraph& inner,
                            const UndirectedGraph& outer, const char* what) {
    for (const auto& [a, b] : inner.edges()) {
      if (!outer.has_edge(a, b)) {
        std::ostringstream msg;
        msg << what << ": edge " << a << "--" << b << " missing from superset";
        report.violations.push_back(msg.str());
      }
    }
  };
  require_subset(report.concentration, report.partial_correlation,
                 "concentration within partial correlation");
  require_subset(report.partial_correlation, report.augmented_local,
                 "partial correlation within augmented local causality");

  const bool identity_noise =
      (model.sigma_l() - Matrix::Identity(model.dim(), model.dim()))
          .cwiseAbs()
          .maxCoeff() < 1e-14;
  if (model.order() == 1 && identity_noise) {
    report.augmented_order1 =
        augment(ou_causality_graph(model.ar_coefficient(1), zero_tol));
    require_subset(report.partial_correlation, *report.augmented_order1,
                   "partial correlation within augmented causality");
  }
  return report;
}

UndirectedGraph sampled_var1_pc_graph(const Matrix& a1, const Matrix& sigma_l,
                                      double delta, double zero_tol) {
  if (!(delta > 0.0)) {
    throw ValidationError("sampled_var1_pc_graph: delta must be positive");
  }
  const int k = static_cast<int>(a1.rows());
  const Matrix state = -a1;
  if (spectral_abscissa(state) >= -kStabilityMargin) {
    throw ValidationError("sampled_var1_pc_graph: state matrix must be stable");
  }

  const DiscretizedPair d = discretize(state, sigma_l, delta);
  const Matrix innov_inv =
      hermitian_inverse(d.gramian.cast<Complex>()).real();
  const Matrix& e = d.transition;

  const Matrix m0 = innov_inv + e.transpose() * innov_inv * e;
  const Matrix m1 = innov_inv * e;
  const Matrix m2 = e.transpose() * innov_inv;
  const double scale = std::max({inf_norm(m0), inf_norm(m1), inf_norm(m2)});

  UndirectedGraph g(k);
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      const bool absent = !entry_nonzero(m0, a, b, zero_tol, scale) &&
                          !entry_nonzero(m1, a, b, zero_tol, scale) &&
                          !entry_nonzero(m2, a, b, zero_tol, scale) &&
                          !entry_nonzero(m0, b, a, zero_tol, scale) &&
                          !entry_nonzero(m1, b, a, zero_tol, scale) &&
                          !entry_nonzero(m2, b, a, zero_tol, scale);
      if (!absent) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace pcgraph
