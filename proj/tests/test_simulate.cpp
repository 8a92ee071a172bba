#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "pcgraph/simulate.hpp"
#include "testutil.hpp"

using namespace pcgraph;
namespace tu = pcgraph::testutil;

TEST_CASE("scalar process moments") {
  const MCARModel model = tu::scalar_ou();
  const double delta = 0.1;
  const long n = 1000000;
  const SampledSeries series = simulate(model, delta, n, 20240117);

  SUBCASE("variance matches the stationary value") {
    const double c0 = sample_autocovariance(series, 0)(0, 0);
    // Var(c0_hat) ~ (2/n) sum_h c(h)^2 for the Gaussian process
    const double rho = std::exp(-delta);
    const double var_c0 =
        2.0 / n * 0.25 * (1.0 + 2.0 * rho * rho / (1.0 - rho * rho));
    CHECK(std::abs(c0 - 0.5) < 3.0 * std::sqrt(var_c0));
  }
  SUBCASE("lag-one autocorrelation matches") {
    const double c0 = sample_autocovariance(series, 0)(0, 0);
    const double c1 = sample_autocovariance(series, 1)(0, 0);
    const double rho_hat = c1 / c0;
    const double rho = std::exp(-delta);
    const double se = std::sqrt((1.0 - rho * rho) / n);
    CHECK(std::abs(rho_hat - rho) < 3.0 * se);
  }
}

TEST_CASE("higher-order dynamics project the companion state") {
  // k = 1, p = 2 with state spectrum {-1, -2}
  const MCARModel model({3.0 * Matrix::Identity(1, 1), 2.0 * Matrix::Identity(1, 1)},
                        Matrix::Identity(1, 1));
  const double delta = 0.05;
  const int replicates = 12;
  for (long lag : {0L, 2L}) {
    double mean = 0.0, var = 0.0;
    std::vector<double> values;
    for (int r = 0; r < replicates; ++r) {
      const SampledSeries s = simulate(model, delta, 1 << 15, 600 + r);
      values.push_back(sample_autocovariance(s, lag)(0, 0));
    }
    for (double v : values) mean += v;
    mean /= replicates;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (replicates - 1);
    const double expected = autocovariance(model, lag * delta)(0, 0);
    CHECK(std::abs(mean - expected) < 4.0 * std::sqrt(var / replicates));
  }
}

TEST_CASE("noise scaling") {
  const MCARModel tiny({Matrix::Identity(1, 1)}, 1e-12 * Matrix::Identity(1, 1));
  const SampledSeries series = simulate(tiny, 0.1, 1000, 7);
  CHECK(series.data.cwiseAbs().maxCoeff() < 1e-4);
  CHECK(series.data.cwiseAbs().maxCoeff() > 1e-9);
}

TEST_CASE("determinism given the seed") {
  const MCARModel model = tu::four_dim_ou();
  const SampledSeries a = simulate(model, 0.05, 4096, 99);
  const SampledSeries b = simulate(model, 0.05, 4096, 99);
  CHECK(std::memcmp(a.data.data(), b.data.data(),
                    sizeof(double) * a.data.size()) == 0);
  const SampledSeries c = simulate(model, 0.05, 4096, 100);
  CHECK(std::memcmp(a.data.data(), c.data.data(),
                    sizeof(double) * a.data.size()) != 0);
}

TEST_CASE("stationarity across the sample") {
  const MCARModel model = tu::four_dim_ou();
  const int replicates = 20;
  const long n = 16384;
  const int k = model.dim();
  std::vector<Matrix> diffs;
  for (int r = 0; r < replicates; ++r) {
    const SampledSeries series = simulate(model, 0.1, n, 3000 + r);
    SampledSeries first{series.delta, series.data.leftCols(n / 2)};
    SampledSeries second{series.delta, series.data.rightCols(n / 2)};
    diffs.push_back(Matrix(sample_autocovariance(first, 0) -
                           sample_autocovariance(second, 0)));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double mean = 0.0, var = 0.0;
      for (const Matrix& d : diffs) mean += d(i, j);
      mean /= replicates;
      for (const Matrix& d : diffs) var += (d(i, j) - mean) * (d(i, j) - mean);
      var /= (replicates - 1);
      const double se = std::sqrt(var / replicates);
      CHECK(std::abs(mean) <= 5.0 * se);
    }
  }
}

TEST_CASE("second-order fidelity against the model autocovariance") {
  const MCARModel model = tu::four_dim_ou();
  const double delta = 0.1;
  const long n = 16384;
  const int replicates = 30;
  const int k = model.dim();

  for (long lag : {0L, 3L}) {
    std::vector<Matrix> estimates;
    for (int r = 0; r < replicates; ++r) {
      const SampledSeries series = simulate(model, delta, n, 5000 + r);
      estimates.push_back(sample_autocovariance(series, lag));
    }
    const Matrix expected = autocovariance(model, lag * delta);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        double mean = 0.0, var = 0.0;
        for (const Matrix& e : estimates) mean += e(i, j);
        mean /= replicates;
        for (const Matrix& e : estimates) var += (e(i, j) - mean) * (e(i, j) - mean);
        var /= (replicates - 1);
        const double se = std::sqrt(var / replicates);
        CHECK(std::abs(mean - expected(i, j)) <= 4.0 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("sample autocovariance mechanics") {
  SUBCASE("zero series") {
    SampledSeries zero{0.5, Matrix::Zero(2, 100)};
    CHECK(inf_norm(sample_autocovariance(zero, 3)) == 0.0);
  }
  SUBCASE("standardized noise at lag zero") {
    std::mt19937_64 rng(137);
    SampledSeries series{1.0, tu::random_matrix(rng, 3, 20000)};
    const Matrix c0 = sample_autocovariance(series, 0);
    CHECK(inf_norm(Matrix(c0 - Matrix::Identity(3, 3))) < 0.08);
  }
  SUBCASE("negative lags transpose") {
    const SampledSeries series = simulate(tu::four_dim_ou(), 0.1, 2048, 11);
    CHECK(inf_norm(Matrix(sample_autocovariance(series, -4) -
                          sample_autocovariance(series, 4).transpose())) == 0.0);
  }
  SUBCASE("lag bounds are enforced") {
    SampledSeries tiny{1.0, Matrix::Zero(1, 5)};
    CHECK_THROWS_AS(sample_autocovariance(tiny, 5), ValidationError);
  }
}

TEST_CASE("simulation input validation") {
  const MCARModel model = tu::scalar_ou();
  CHECK_THROWS_AS(simulate(model, 0.0, 100, 1), ValidationError);
  CHECK_THROWS_AS(simulate(model, 0.1, 1, 1), ValidationError);
}

TEST_CASE("csv round trip") {
  const MCARModel model = tu::four_dim_ou();
  const SampledSeries series = simulate(model, 0.25, 64, 3);
  std::stringstream buffer;
  write_csv(series, buffer);

  std::string header;
  std::getline(buffer, header);
  CHECK(header == "t,y1,y2,y3,y4");
  buffer.seekg(0);

  const SampledSeries parsed = read_csv(buffer);
  CHECK(parsed.delta == doctest::Approx(series.delta).epsilon(1e-12));
  REQUIRE(parsed.n_samples() == series.n_samples());
  CHECK(inf_norm(Matrix(parsed.data - series.data)) < 1e-12);
}

TEST_CASE("csv rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x,y1\n0,1\n1,2\n"), ParseError);
  CHECK_THROWS_AS(parse("t,y1\n0,1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse("t,y1\n0,abc\n1,2\n"), ParseError);
  CHECK_THROWS_AS(parse("t,y1\n0,1\n0.5,2\n1.6,3\n"), ParseError);
  CHECK_THROWS_AS(parse("t,y1\n0,1\n"), ValidationError);
}
