#pragma once

#include <stdexcept>
#include <string>

namespace rgg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Problem too large for the requested method (e.g. dense eigensolve cap).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Exact integer walk counts no longer fit the counting type.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// The calibrated Eulerian volume formula disagrees with the reference value.
class FormulaMismatchError : public Error {
 public:
  FormulaMismatchError(const std::string& what, int order, double formula, double reference)
      : Error(what), order_(order), formula_(formula), reference_(reference) {}
  int order() const noexcept { return order_; }
  double formula_value() const noexcept { return formula_; }
  double reference_value() const noexcept { return reference_; }

 private:
  int order_;
  double formula_;
  double reference_;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rgg
