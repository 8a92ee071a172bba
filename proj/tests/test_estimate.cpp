#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "pcgraph/builder.hpp"
#include "pcgraph/estimate.hpp"
#include "testutil.hpp"

using namespace pcgraph;
namespace tu = pcgraph::testutil;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SampledSeries white_noise(std::mt19937_64& rng, int k, long n,
                          const Matrix& chol = Matrix()) {
  SampledSeries s{1.0, tu::random_matrix(rng, k, static_cast<int>(n))};
  if (chol.size() > 0) s.data = chol * s.data;
  return s;
}

// spectral density of the sampled scalar unit-coefficient process
double scalar_sampled_density(double delta, double omega) {
  const double phi = std::exp(-delta);
  const double s2 = (1.0 - std::exp(-2.0 * delta)) / 2.0;
  const Complex denom = 1.0 - phi * std::polar(1.0, -omega);
  return s2 / (kTwoPi * std::norm(denom));
}

}  // namespace

TEST_CASE("raw periodogram") {
  SUBCASE("zero series") {
    SampledSeries zero{1.0, Matrix::Zero(2, 64)};
    CHECK(inf_norm(periodogram(zero, 0.7)) == 0.0);
  }
  SUBCASE("a pure tone concentrates at its frequency") {
    const long n = 256;
    const double omega0 = kTwoPi * 32 / n;
    SampledSeries s{1.0, Matrix::Zero(1, n)};
    for (long j = 0; j < n; ++j) s.data(0, j) = std::cos(omega0 * j);
    const double at_tone = periodogram(s, omega0)(0, 0).real();
    const double elsewhere = periodogram(s, kTwoPi * 90 / n)(0, 0).real();
    CHECK(at_tone > 1e6 * elsewhere);
  }
  SUBCASE("white noise averages to a flat spectrum") {
    std::mt19937_64 rng(139);
    const long n = 4096;
    const SampledSeries s = white_noise(rng, 2, n);
    ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
    for (long j = 0; j < n; ++j) mean += periodogram(s, kTwoPi * j / n);
    mean /= static_cast<double>(n);
    CHECK(inf_norm(ComplexMatrix(mean - ComplexMatrix::Identity(2, 2) / kTwoPi)) < 0.02);
  }
  SUBCASE("Hermitian positive semidefinite rank-one structure") {
    std::mt19937_64 rng(149);
    const SampledSeries s = white_noise(rng, 3, 512);
    const ComplexMatrix p = periodogram(s, 1.234);
    CHECK(inf_norm(ComplexMatrix(p - p.adjoint())) < 1e-12 * inf_norm(p));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(p);
    CHECK(eig.eigenvalues()(0) > -1e-10);  // smallest
    CHECK(eig.eigenvalues()(1) < 1e-10 * eig.eigenvalues()(2));  // rank one
  }
}

TEST_CASE("Daniell smoothing") {
  std::mt19937_64 rng(151);

  SUBCASE("bandwidth zero reproduces the raw periodogram") {
    const SampledSeries s = white_noise(rng, 2, 128);
    const double omega = kTwoPi * 17 / 128;
    CHECK(inf_norm(ComplexMatrix(smoothed_periodogram(s, omega, 0) -
                                 periodogram(s, omega))) < 1e-12);
  }
  SUBCASE("white noise with a general covariance") {
    Matrix sigma(2, 2);
    sigma << 2.0, 0.7, 0.7, 1.0;
    const Matrix chol = Eigen::LLT<Matrix>(sigma).matrixL();
    ComplexMatrix pooled = ComplexMatrix::Zero(2, 2);
    const int replicates = 100;
    for (int r = 0; r < replicates; ++r) {
      std::mt19937_64 seeded(500 + r);
      const SampledSeries s = white_noise(seeded, 2, 2048, chol);
      pooled += smoothed_periodogram(s, 1.5, 40);
    }
    pooled /= replicates;
    CHECK(inf_norm(ComplexMatrix(pooled - sigma.cast<Complex>() / kTwoPi)) <
          0.01 * inf_norm(sigma));
  }
  SUBCASE("estimator symmetry and positive semidefiniteness") {
    const SampledSeries s = white_noise(rng, 3, 1024);
    for (double omega : {0.3, 1.1, 2.9}) {
      const ComplexMatrix plus = smoothed_periodogram(s, omega, 12);
      const ComplexMatrix minus = smoothed_periodogram(s, -omega, 12);
      CHECK(inf_norm(ComplexMatrix(minus - plus.conjugate())) < 1e-12 * inf_norm(plus));
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(plus);
      CHECK(eig.eigenvalues().minCoeff() > -1e-12);
    }
  }
  SUBCASE("bandwidth limits are enforced") {
    const SampledSeries s = white_noise(rng, 1, 64);
    CHECK_THROWS_AS(smoothed_periodogram(s, 0.5, 32), ValidationError);
    CHECK_NOTHROW(smoothed_periodogram(s, 0.5, 31));
  }
  SUBCASE("rescaled estimate tracks the continuous-time density") {
    // pooled across seeds to push the noise below the bias
    const MCARModel model = tu::four_dim_ou();
    const double delta = 0.01;
    const long n = 1 << 17;
    const int bandwidth = 80;
    const int replicates = 20;
    std::vector<double> freqs{0.5, 1.0, 2.0};
    std::vector<ComplexMatrix> pooled(freqs.size(), ComplexMatrix::Zero(4, 4));
    for (int r = 0; r < replicates; ++r) {
      const SampledSeries s = simulate(model, delta, n, 9000 + r);
      const SpectralEstimator est(s);
      for (size_t i = 0; i < freqs.size(); ++i) {
        pooled[i] += rescale_highfreq(est.smoothed(freqs[i] * delta, bandwidth),
                                      freqs[i], delta);
      }
    }
    for (size_t i = 0; i < freqs.size(); ++i) {
      pooled[i] /= replicates;
      const ComplexMatrix truth = spectral_density(model, freqs[i]);
      const double scale = inf_norm(truth);
      CHECK(inf_norm(ComplexMatrix(pooled[i] - truth)) < 0.10 * scale);
    }
  }
}

TEST_CASE("lag window estimation") {
  std::mt19937_64 rng(157);

  SUBCASE("truncation zero keeps only the variance term") {
    const SampledSeries s = white_noise(rng, 2, 512);
    const ComplexMatrix est = lag_window_estimate(s, 0.9, LagWindow::bartlett, 0);
    const Matrix c0 = sample_autocovariance(s, 0);
    CHECK(inf_norm(ComplexMatrix(est - c0.cast<Complex>() / kTwoPi)) < 1e-12);
  }
  SUBCASE("triangular weights enter linearly") {
    const SampledSeries s = white_noise(rng, 1, 256);
    const double omega = 0.4;
    const int b = 4;
    ComplexMatrix manual = sample_autocovariance(s, 0).cast<Complex>();
    for (int h = 1; h <= b; ++h) {
      const double w = 1.0 - static_cast<double>(h) / b;
      const Complex phase = std::polar(1.0, -omega * h);
      const Matrix ch = sample_autocovariance(s, h);
      manual += w * (phase * ch.cast<Complex>() +
                     std::conj(phase) * ch.transpose().cast<Complex>());
    }
    manual /= kTwoPi;
    CHECK(inf_norm(ComplexMatrix(lag_window_estimate(s, omega, LagWindow::bartlett, b) -
                                 manual)) < 1e-12);
  }
  SUBCASE("agrees with Daniell smoothing on white noise") {
    Matrix sigma(2, 2);
    sigma << 1.5, -0.4, -0.4, 0.8;
    const Matrix chol = Eigen::LLT<Matrix>(sigma).matrixL();
    const int replicates = 60;
    ComplexMatrix daniell = ComplexMatrix::Zero(2, 2);
    ComplexMatrix lagwin = ComplexMatrix::Zero(2, 2);
    for (int r = 0; r < replicates; ++r) {
      std::mt19937_64 seeded(700 + r);
      const SampledSeries s = white_noise(seeded, 2, 2048, chol);
      daniell += smoothed_periodogram(s, 1.1, 32);
      lagwin += lag_window_estimate(s, 1.1, LagWindow::parzen, 40);
    }
    daniell /= replicates;
    lagwin /= replicates;
    CHECK(inf_norm(ComplexMatrix(daniell - lagwin)) < 0.05 * inf_norm(daniell));
  }
  SUBCASE("rejects out-of-range truncation") {
    const SampledSeries s = white_noise(rng, 1, 64);
    CHECK_THROWS_AS(lag_window_estimate(s, 0.5, LagWindow::parzen, 64),
                    ValidationError);
  }
}

TEST_CASE("high-frequency rescaling window") {
  const ComplexMatrix est = ComplexMatrix::Identity(2, 2);
  CHECK_NOTHROW(rescale_highfreq(est, std::numbers::pi / 0.5, 0.5));  // boundary
  CHECK_THROWS_AS(rescale_highfreq(est, 1.01 * std::numbers::pi / 0.5, 0.5),
                  ValidationError);
  CHECK(inf_norm(ComplexMatrix(rescale_highfreq(est, 1.0, 0.5) - 0.5 * est)) == 0.0);
}

TEST_CASE("folded spectral density") {
  SUBCASE("matches the sampled scalar closed form") {
    const MCARModel model = tu::scalar_ou();
    for (double delta : {1e-3, 0.05, 0.4}) {
      for (double omega : {0.0, 0.3, 2.0, std::numbers::pi}) {
        const double closed = scalar_sampled_density(delta, omega);
        const double folded = folded_density(model, delta, omega)(0, 0).real();
        CHECK(std::abs(folded - closed) <= 1e-10 * closed);
      }
    }
  }
  SUBCASE("rescaled folded density approaches the continuous-time one") {
    const MCARModel model = tu::scalar_ou();
    const double lambda = 1.0;
    const double delta = 1e-3;
    const double approx =
        delta * folded_density(model, delta, lambda * delta)(0, 0).real();
    const double truth = 1.0 / (kTwoPi * (1.0 + lambda * lambda));
    CHECK(std::abs(approx - truth) / truth < 1e-4);
  }
  SUBCASE("multivariate rescaled folded density stays within the aliasing bound") {
    const MCARModel model = tu::four_dim_ou();
    const double lambda = 1.0;
    // delta * folded(lambda delta) - f(lambda) = sum_{k != 0} f(lambda + 2 pi
    // k / delta), and f(mu) ~ Sigma_L / (2 pi mu^2) in the tails, so the
    // aliasing error is about zeta(2) ||Sigma_L|| delta^2 / (4 pi^3).
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    for (double delta : {0.01, 0.001}) {
      const ComplexMatrix approx = rescale_highfreq(
          folded_density(model, delta, lambda * delta), lambda, delta);
      const ComplexMatrix truth = spectral_density(model, lambda);
      const double bound = zeta2 * inf_norm(model.sigma_l()) * delta * delta /
                           (4.0 * std::pow(std::numbers::pi, 3));
      CHECK(inf_norm(ComplexMatrix(approx - truth)) < 1.5 * bound);
      CHECK(inf_norm(ComplexMatrix(approx - truth)) > 0.5 * bound);
    }
  }
  SUBCASE("Hermitian positive definite at every frequency") {
    const MCARModel model = tu::four_dim_ou();
    for (double omega : {-3.0, -0.5, 0.0, 1.2, std::numbers::pi}) {
      const ComplexMatrix f = folded_density(model, 0.2, omega);
      CHECK(inf_norm(ComplexMatrix(f - f.adjoint())) < 1e-12 * inf_norm(f));
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(f);
      CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
  }
  SUBCASE("frequency domain is validated") {
    CHECK_THROWS_AS(folded_density(tu::scalar_ou(), 0.1, 4.0), ValidationError);
  }
}

TEST_CASE("graph recovery") {
  SUBCASE("plug-in oracle recovers every reference graph across thresholds") {
    struct Case {
      MCARModel model;
      const char* name;
    };
    const Case cases[] = {{tu::four_dim_ou(), "four_dim"},
                          {tu::three_dim_pcfree(), "pcfree"},
                          {tu::three_dim_gcfree(), "gcfree"}};
    const double delta = 0.01;
    for (const Case& c : cases) {
      const UndirectedGraph expected = pc_graph(c.model);
      for (double tau : {0.025, 0.1, 0.29}) {
        const EdgeEstimate est = estimate_pc_graph_oracle(
            c.model, delta, default_estimation_grid(delta), tau);
        INFO(c.name, " tau=", tau);
        CHECK(tu::same_edges(est.graph, expected));
      }
    }
  }
  SUBCASE("white noise stays empty") {
    std::mt19937_64 rng(163);
    const SampledSeries s = white_noise(rng, 3, 1L << 17);
    const EdgeEstimate est = estimate_pc_graph(s, default_estimation_grid(s.delta),
                                               default_bandwidth(s.n_samples()));
    CHECK(est.graph.edges().empty());
    CHECK(est.scores.maxCoeff() < 0.08);
  }
  SUBCASE("one seeded replicate of the full pipeline") {
    const MCARModel model = tu::four_dim_ou();
    const double delta = 0.01;
    const long n = 1 << 17;
    const SampledSeries s = simulate(model, delta, n, 424242);
    const EdgeEstimate est = estimate_pc_graph(s, default_estimation_grid(delta),
                                               default_bandwidth(n));
    CHECK(tu::same_edges(est.graph, pc_graph(model)));
    CHECK(est.scores(0, 1) < 0.1);
    CHECK(est.bandwidth == 589);
  }
  SUBCASE("relative error decreases with the sample size") {
    const MCARModel model = tu::scalar_ou();
    const double delta = 0.01;
    const double lambda = 1.0;
    const double truth = 1.0 / (kTwoPi * (1.0 + lambda * lambda));
    std::vector<double> mean_err;
    for (long n : {1L << 12, 1L << 14, 1L << 16}) {
      const int bandwidth = default_bandwidth(n);
      double total = 0.0;
      const int replicates = 100;
      for (int r = 0; r < replicates; ++r) {
        const SampledSeries s = simulate(model, delta, n, 100000 + r);
        const SpectralEstimator est(s);
        const double value =
            rescale_highfreq(est.smoothed(lambda * delta, bandwidth), lambda, delta)(0, 0)
                .real();
        total += std::abs(value - truth) / truth;
      }
      mean_err.push_back(total / replicates);
    }
    CHECK(mean_err[1] < mean_err[0]);
    CHECK(mean_err[2] < mean_err[1]);
  }
  SUBCASE("singular estimates ask for more bandwidth") {
    std::mt19937_64 rng(167);
    const SampledSeries s = white_noise(rng, 3, 256);
    CHECK_THROWS_AS(estimate_pc_graph(s, {0.5}, 0), SingularMatrixError);
  }
}
