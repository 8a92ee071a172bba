#include "pcgraph/partialcorr.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace pcgraph {

namespace {

ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  ComplexMatrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = m(rows[i] - 1, cols[j] - 1);
    }
  }
  return out;
}

double rel_scale(const ComplexMatrix& m) { return std::max(1.0, inf_norm(m)); }

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

unsigned mask_of(const std::vector<int>& s) {
  unsigned m = 0;
  for (int v : s) m |= 1u << (v - 1);
  return m;
}

}  // namespace

SpectralGrid SpectralGrid::chebyshev(double lambda_max, int n_points,
                                     double zero_tol) {
  if (n_points < 2 || !(lambda_max > 0.0)) {
    throw std::invalid_argument("SpectralGrid: need lambda_max > 0 and at least two points");
  }
  if (!(zero_tol > 0.0)) {
    throw std::invalid_argument("SpectralGrid: zero tolerance must be positive");
  }
  SpectralGrid grid;
  grid.zero_tol = zero_tol;
  grid.frequencies.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double theta = std::numbers::pi * i / (n_points - 1);
    grid.frequencies[i] = lambda_max * (1.0 - std::cos(theta)) / 2.0;
  }
  return grid;
}

SpectralGrid SpectralGrid::for_model(const MCARModel& model, double zero_tol) {
  const double abscissa = std::abs(model.spectral_abscissa());
  return chebyshev(10.0 * (1.0 + abscissa), 129, zero_tol);
}

void IndexSets::validate(int n_vertices) const {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("index sets A and B must be non-empty");
  }
  std::vector<char> seen(n_vertices + 1, 0);
  auto mark = [&](const std::vector<int>& s) {
    for (int v : s) {
      if (v < 1 || v > n_vertices) {
        throw std::invalid_argument("vertex out of range: " + std::to_string(v));
      }
      if (seen[v]) {
        throw std::invalid_argument("index sets must be pairwise disjoint");
      }
      seen[v] = 1;
    }
  };
  mark(a);
  mark(b);
  mark(c);
}

ComplexMatrix residual_cross_density(const ComplexMatrix& f_full,
                                     const IndexSets& sets) {
  // A and B may coincide or overlap here (the A = B case is the residual
  // auto-density); C must stay disjoint from both.
  const int n = static_cast<int>(f_full.rows());
  if (sets.a.empty() || sets.b.empty()) {
    throw std::invalid_argument("index sets A and B must be non-empty");
  }
  for (const std::vector<int>* s : {&sets.a, &sets.b, &sets.c}) {
    for (int v : *s) {
      if (v < 1 || v > n) {
        throw std::invalid_argument("vertex out of range: " + std::to_string(v));
      }
    }
  }
  for (int v : sets.c) {
    if (std::find(sets.a.begin(), sets.a.end(), v) != sets.a.end() ||
        std::find(sets.b.begin(), sets.b.end(), v) != sets.b.end()) {
      throw std::invalid_argument("conditioning set C must be disjoint from A and B");
    }
  }
  ComplexMatrix f_ab = submatrix(f_full, sets.a, sets.b);
  if (sets.c.empty()) return f_ab;
  ComplexMatrix f_cc = submatrix(f_full, sets.c, sets.c);
  ComplexMatrix f_cc_inv = hermitian_inverse(f_cc);
  return f_ab - submatrix(f_full, sets.a, sets.c) * f_cc_inv *
                    submatrix(f_full, sets.c, sets.b);
}

ComplexMatrix residual_cross_density(const MCARModel& model,
                                     const IndexSets& sets, double lambda) {
  return residual_cross_density(spectral_density(model, lambda), sets);
}

namespace {

// M^{-1/2} of a Hermitian PSD block, or nothing when numerically singular.
std::optional<ComplexMatrix> inverse_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() <= 0.0 || largest / ev.minCoeff() > kConditionCap) {
    return std::nullopt;
  }
  return ComplexMatrix(solver.eigenvectors() *
                       ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                       solver.eigenvectors().adjoint());
}

}  // namespace

ComplexMatrix spectral_coherence(const ComplexMatrix& f,
                                 const std::vector<int>& a,
                                 const std::vector<int>& b) {
  auto left = inverse_sqrt(submatrix(f, a, a));
  auto right = inverse_sqrt(submatrix(f, b, b));
  if (!left || !right) {
    return ComplexMatrix::Zero(a.size(), b.size());  // singular-block convention
  }
  return *left * submatrix(f, a, b) * *right;
}

Complex partial_coherence_pair(const ComplexMatrix& g, int a, int b) {
  const int n = static_cast<int>(g.rows());
  if (a < 1 || a > n || b < 1 || b > n) {
    throw std::invalid_argument("vertex out of range");
  }
  const double gaa = g(a - 1, a - 1).real();
  const double gbb = g(b - 1, b - 1).real();
  if (!(gaa > 0.0) || !(gbb > 0.0)) {
    throw std::invalid_argument("partial_coherence_pair: non-positive diagonal");
  }
  return -g(a - 1, b - 1) / std::sqrt(gaa * gbb);
}

bool is_partially_uncorrelated(const MCARModel& model, const IndexSets& sets,
                               const SpectralGrid& grid) {
  PartialCorrOracle oracle(model, grid);
  return oracle.uncorrelated(sets.a, sets.b, sets.c);
}

ComplexMatrix remove_confounder(const ComplexMatrix& g_full,
                                const std::vector<int>& confounder) {
  const int n = static_cast<int>(g_full.rows());
  if (confounder.empty()) return g_full;
  std::vector<char> in_c(n + 1, 0);
  for (int v : confounder) {
    if (v < 1 || v > n) throw std::invalid_argument("vertex out of range");
    in_c[v] = 1;
  }
  std::vector<int> rest;
  for (int v = 1; v <= n; ++v) {
    if (!in_c[v]) rest.push_back(v);
  }
  ComplexMatrix g_cc_inv = hermitian_inverse(submatrix(g_full, confounder, confounder));
  return submatrix(g_full, rest, rest) -
         submatrix(g_full, rest, confounder) * g_cc_inv *
             submatrix(g_full, confounder, rest);
}

UndirectedGraph concentration_edges(const Matrix& sigma, double zero_tol) {
  ComplexMatrix inv = hermitian_inverse(sigma.cast<Complex>());
  const double scale = rel_scale(inv);
  UndirectedGraph g(static_cast<int>(sigma.rows()));
  for (int a = 1; a <= g.n_vertices(); ++a) {
    for (int b = a + 1; b <= g.n_vertices(); ++b) {
      if (std::abs(inv(a - 1, b - 1)) > zero_tol * scale) g.add_edge(a, b);
    }
  }
  return g;
}

PartialCorrOracle::PartialCorrOracle(const MCARModel& model, SpectralGrid grid)
    : k_(model.dim()), grid_(std::move(grid)) {
  if (k_ > 30) {
    throw std::invalid_argument("PartialCorrOracle supports up to 30 components");
  }
  density_.reserve(grid_.frequencies.size());
  for (double lambda : grid_.frequencies) {
    density_.push_back(spectral_density(model, lambda));
  }
}

const std::vector<ComplexMatrix>& PartialCorrOracle::inverses_for(
    unsigned mask) const {
  auto it = inverse_cache_.find(mask);
  if (it != inverse_cache_.end()) return it->second;

  std::vector<int> subset;
  for (int v = 1; v <= k_; ++v) {
    if (mask & (1u << (v - 1))) subset.push_back(v);
  }
  std::vector<ComplexMatrix> inverses;
  inverses.reserve(density_.size());
  for (const ComplexMatrix& f : density_) {
    inverses.push_back(hermitian_inverse(submatrix(f, subset, subset)));
  }
  return inverse_cache_.emplace(mask, std::move(inverses)).first->second;
}

bool PartialCorrOracle::uncorrelated(const std::vector<int>& a,
                                     const std::vector<int>& b,
                                     const std::vector<int>& c) const {
  IndexSets sets{a, b, c};
  sets.validate(k_);

  const std::vector<int> support = sorted_union(sorted_union(a, b), c);
  const std::vector<ComplexMatrix>& inverses = inverses_for(mask_of(support));

  // positions of a and b inside the support subset
  auto positions = [&](const std::vector<int>& s) {
    std::vector<int> out;
    for (int v : s) {
      auto it = std::lower_bound(support.begin(), support.end(), v);
      out.push_back(static_cast<int>(it - support.begin()));
    }
    return out;
  };
  const std::vector<int> pos_a = positions(a);
  const std::vector<int> pos_b = positions(b);

  for (const ComplexMatrix& g : inverses) {
    const double tol = grid_.zero_tol * rel_scale(g);
    for (int ia : pos_a) {
      for (int ib : pos_b) {
        if (std::abs(g(ia, ib)) > tol) return false;
      }
    }
  }
  return true;
}

namespace {

std::string set_to_string(const std::vector<int>& s) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "}";
  return out.str();
}

}  // namespace

GraphoidReport graphoid_report(const PartialCorrOracle& oracle,
                               const std::vector<int>& a,
                               const std::vector<int>& b,
                               const std::vector<int>& c,
                               const std::vector<int>& d) {
  GraphoidReport report;
  auto upc = [&](const std::vector<int>& x, const std::vector<int>& y,
                 const std::vector<int>& z) {
    return oracle.uncorrelated(x, y, z);
  };
  auto implication = [&](const char* name, bool antecedent, bool consequent) {
    ++report.checks_run;
    if (antecedent && !consequent) {
      report.violations.push_back(std::string(name) + " violated at A=" +
                                  set_to_string(a) + " B=" + set_to_string(b) +
                                  " C=" + set_to_string(c) + " D=" +
                                  set_to_string(d));
    }
  };

  // (P1) symmetry
  implication("P1", upc(a, b, c), upc(b, a, c));

  // (P2) decomposition and (P3) weak union need B u C non-trivial
  if (!c.empty()) {
    const std::vector<int> bc = sorted_union(b, c);
    const bool joint = upc(a, bc, d);
    implication("P2", joint, upc(a, b, d));
    implication("P3", joint, upc(a, b, sorted_union(c, d)));
    // (P4) contraction
    implication("P4", upc(a, b, d) && upc(a, c, sorted_union(b, d)),
                upc(a, bc, d));
    // (P5) intersection
    implication("P5",
                upc(a, b, sorted_union(c, d)) && upc(a, c, sorted_union(b, d)),
                upc(a, bc, d));
  }
  return report;
}

GraphoidReport graphoid_report(const MCARModel& model,
                               const std::vector<int>& a,
                               const std::vector<int>& b,
                               const std::vector<int>& c,
                               const std::vector<int>& d,
                               const SpectralGrid& grid) {
  PartialCorrOracle oracle(model, grid);
  return graphoid_report(oracle, a, b, c, d);
}

}  // namespace pcgraph
