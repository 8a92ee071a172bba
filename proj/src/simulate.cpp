#include "pcgraph/simulate.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace pcgraph {

namespace {

// Standard normals from mt19937_64 via Box-Muller. The engine is fully
// specified by the standard and the transform is fixed here, so a seed pins
// the output stream across platforms.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = (*this)();
    return v;
  }

 private:
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Matrix cholesky_factor(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError(std::string(what) +
                              ": covariance is not numerically positive definite");
  }
  return llt.matrixL();
}

}  // namespace

SampledSeries simulate(const MCARModel& model, double delta, long n,
                       std::uint64_t seed) {
  if (!(delta > 0.0)) throw ValidationError("simulate: delta must be positive");
  if (n < 2) throw ValidationError("simulate: need at least two samples");

  const StateSpace ss = companion(model);
  const Matrix noise_cov = ss.input * model.sigma_l() * ss.input.transpose();
  const Matrix stationary_cov = lyapunov_stationary(ss.transition, noise_cov);
  const DiscretizedPair d = discretize(ss.transition, noise_cov, delta);

  const Matrix l_stationary = cholesky_factor(stationary_cov, "stationary covariance");
  const Matrix l_innovation = cholesky_factor(d.gramian, "innovation covariance");

  const int k = model.dim();
  const Eigen::Index state_dim = ss.transition.rows();

  GaussianSampler normal(seed);
  SampledSeries series;
  series.delta = delta;
  series.data.resize(k, n);

  Eigen::VectorXd state = l_stationary * normal.vector(state_dim);
  series.data.col(0) = state.head(k);
  for (long j = 1; j < n; ++j) {
    state = d.transition * state + l_innovation * normal.vector(state_dim);
    series.data.col(j) = state.head(k);
  }
  return series;
}

Matrix sample_autocovariance(const SampledSeries& series, long lag) {
  const long n = series.n_samples();
  if (std::abs(lag) >= n) {
    throw ValidationError("sample_autocovariance: |lag| must be below the sample count");
  }
  const long h = std::abs(lag);
  const int k = series.dim();
  Matrix acc = Matrix::Zero(k, k);
  for (long j = 0; j + h < n; ++j) {
    acc += series.data.col(j + h) * series.data.col(j).transpose();
  }
  acc /= static_cast<double>(n);
  return lag >= 0 ? acc : Matrix(acc.transpose());
}

void write_csv(const SampledSeries& series, std::ostream& out) {
  const int k = series.dim();
  out << "t";
  for (int c = 1; c <= k; ++c) out << ",y" << c;
  out << "\n";
  out.precision(17);
  for (long j = 0; j < series.n_samples(); ++j) {
    out << j * series.delta;
    for (int c = 0; c < k; ++c) out << "," << series.data(c, j);
    out << "\n";
  }
}

SampledSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");

  // header "t,y1,...,yk"
  int k = 0;
  {
    std::istringstream header(line);
    std::string field;
    if (!std::getline(header, field, ',') || field != "t") {
      throw ParseError("csv: expected header starting with 't'");
    }
    while (std::getline(header, field, ',')) ++k;
    if (k < 1) throw ParseError("csv: no data columns");
  }

  std::vector<double> times;
  std::vector<double> values;  // row-major per sample
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    int col = 0;
    while (std::getline(row, field, ',')) {
      double v;
      try {
        v = std::stod(field);
      } catch (const std::exception&) {
        throw ParseError("csv: non-numeric field '" + field + "'");
      }
      if (col == 0) {
        times.push_back(v);
      } else {
        values.push_back(v);
      }
      ++col;
    }
    if (col != k + 1) throw ParseError("csv: inconsistent column count");
  }
  const long n = static_cast<long>(times.size());
  if (n < 2) throw ValidationError("csv: need at least two samples");

  const double delta = times[1] - times[0];
  if (!(delta > 0.0)) throw ParseError("csv: time column must be strictly increasing");
  for (long j = 1; j < n; ++j) {
    if (std::abs(times[j] - times[j - 1] - delta) > 1e-9 * (1.0 + delta)) {
      throw ParseError("csv: samples must be equidistant in time");
    }
  }

  SampledSeries series;
  series.delta = delta;
  series.data.resize(k, n);
  for (long j = 0; j < n; ++j) {
    for (int c = 0; c < k; ++c) {
      series.data(c, j) = values[j * k + c];
    }
  }
  if (!series.data.allFinite()) throw ParseError("csv: non-finite sample values");
  return series;
}

}  // namespace pcgraph
