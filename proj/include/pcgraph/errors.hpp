#ifndef PCGRAPH_ERRORS_HPP
#define PCGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcgraph {

// Numerically singular or ill-conditioned matrix where an inverse/factor
// was required.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what)
      : std::runtime_error(what) {}
};

// Model or parameter fails a validity requirement (non-causal coefficients,
// covariance not positive definite, sample count too small, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed input file or JSON document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcgraph

#endif
