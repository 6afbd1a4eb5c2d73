#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cwf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// ── error taxonomy ──────────────────────────────────────────────────────────
// Each category maps to a stable status at the C boundary (and a CLI exit
// code), so callers can distinguish "your file is malformed" from "your
// operators violate an invariant" from "this computation refuses to certify".

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ── tolerances ──────────────────────────────────────────────────────────────
struct Tolerances {
  // Positive-semidefiniteness slack, relative to the spectral norm of the
  // operands with an absolute floor of 1.
  double psd_tol = 1e-9;
  // Absolute width target for the scale bisection in max_scale_psd.
  double bisect_tol = 1e-10;
  // Commutator slack, relative to the Frobenius norms of the operands.
  double commute_tol = 1e-8;

  void validate() const {
    if (!(psd_tol > 0.0) || !(bisect_tol > 0.0) || !(commute_tol > 0.0)) {
      throw ValidationError("tolerances must all be strictly positive");
    }
  }
};

}  // namespace cwf
