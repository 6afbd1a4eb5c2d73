#pragma once

#include "cwf/types.hpp"

namespace cwf {

// ── spectral primitives ─────────────────────────────────────────────────────
// Everything downstream (frame bounds, Loewner comparisons, weaving verdicts)
// reduces to Hermitian eigenproblems on small dense complex matrices.  The
// invariants here are deliberately strict: operators that should be Hermitian
// are symmetrized explicitly and the discarded skew part is reported, never
// silently dropped.

struct HermitizeResult {
  Matrix matrix;    // (M + M*)/2
  double residual;  // Frobenius norm of (M - M*)/2
};

// Splits a square matrix into Hermitian part plus skew residual.
// Throws ValidationError on non-square input.
HermitizeResult hermitize(const Matrix& m);

struct HermitianSpectrum {
  RealVector eigenvalues;    // ascending; eigenvalues[k] pairs with column k
  Matrix eigenvectors;       // orthonormal columns
  double hermitian_residual;  // skew part removed before decomposing
};

double frobenius(const Matrix& m);

// Largest |eigenvalue| of a (nearly) Hermitian matrix.
double spectral_norm(const Matrix& h);

// Eigendecomposition of the Hermitian part of h.  Throws ValidationError when
// the skew residual exceeds commute_tol relative to the Frobenius norm
// (a non-Hermitian operand here signals a modeling error upstream), and
// NumericError if the solver fails to converge.
HermitianSpectrum eig_hermitian(const Matrix& h, const Tolerances& tol = {});

// Unique positive-semidefinite square root.  Eigenvalues negative within
// psd_tol (relative to the spectral norm) are clamped to zero; materially
// negative spectra raise NumericError.
Matrix psd_sqrt(const Matrix& h, const Tolerances& tol = {});

// Loewner comparison t1 <= t2: true iff the smallest eigenvalue of t2 - t1 is
// >= -psd_tol * max(||t1||, ||t2||, 1) in the spectral norm.
bool loewner_leq(const Matrix& t1, const Matrix& t2, const Tolerances& tol = {});

// True iff ||ab - ba||_F <= commute_tol * ||a||_F * ||b||_F.
bool commutes(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

// ── optimal lower-bound scale ───────────────────────────────────────────────
// max_scale_psd computes sup{ a >= 0 : s - a*p is positive semidefinite } for
// Hermitian PSD s and p by bisection on a -> lambda_min(s - a*p).  Bisection
// is used instead of a generalized eigensolver because p (typically K K*) is
// allowed to be singular, even sharing kernel directions with s; the bracket
// upper end (lambda_max(s) + 1) / lambda_min_active(p) is provably infeasible.
// Inputs are spectrally clamped first so borderline-PSD noise cannot empty the
// feasible set.  The returned value is the last verified-feasible bracket end,
// so it never exceeds any Rayleigh ratio <s f, f> / <p f, f>.
//
// Throws NumericError when s is materially non-PSD or when p vanishes
// (no active scale direction).
struct MaxScaleResult {
  double scale;
  Vector witness;  // unit vector on which the constraint binds
};

MaxScaleResult max_scale_psd_with_witness(const Matrix& s, const Matrix& p,
                                          const Tolerances& tol = {});

double max_scale_psd(const Matrix& s, const Matrix& p, const Tolerances& tol = {});

}  // namespace cwf
