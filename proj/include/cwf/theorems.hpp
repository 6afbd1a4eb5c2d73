#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cwf/weaving.hpp"

namespace cwf {

// ── reports ─────────────────────────────────────────────────────────────────
// A checker never asserts a theorem; it tests the theorem's hypotheses on a
// concrete instance, derives the claimed interval from the statement's
// constants, and cross-examines the claim against the brute-force weaving
// oracle.  A disagreement while hypotheses hold would falsify the
// implementation (or the claim), so it is the master soundness signal.

struct HypothesisCheck {
  std::string name;
  bool ok = false;
  double residual = 0.0;  // measured violation or the relevant magnitude
  std::string detail;
};

struct TheoremReport {
  std::string theorem;
  bool hypotheses_hold = false;
  std::vector<HypothesisCheck> hypotheses;
  double claimed_lower = 0.0;
  double claimed_upper = 0.0;
  // The Bessel-sum check claims only a Bessel (upper) conclusion; every other
  // checker claims full wovenness.
  bool claims_weaving = true;
  std::optional<bool> oracle_agrees;  // set only when an oracle was consulted
  double oracle_lower = 0.0;
  double oracle_upper = 0.0;
  std::vector<std::string> notes;
};

// ── auxiliary theorem inputs ────────────────────────────────────────────────
// Scalar expansion data for the perturbation check: omega members expand in
// the lambda images of an orthonormal basis, with coefficients beta_{ij}^k
// stored sparsely (absent means zero) and a declared diagonal floor M.
struct ScalarExpansion {
  Matrix basis;  // n x n, orthonormal columns
  std::map<std::tuple<int, int, int>, Complex> coefficients;  // (i, j, k), 0-based
  double m_floor = 0.0;

  Complex beta(int i, int j, int k) const {
    const auto it = coefficients.find({i, j, k});
    return it == coefficients.end() ? Complex(0.0, 0.0) : it->second;
  }
};

// Local vector frames ("atoms") for each member codomain, with uniform stated
// bounds: (alpha, beta) for the lambda side, (alpha', beta') for omega.
struct AtomicSystem {
  std::vector<std::vector<Vector>> lambda_atoms;
  std::vector<std::vector<Vector>> omega_atoms;
  double alpha = 1.0;
  double beta = 1.0;
  double alpha_prime = 1.0;
  double beta_prime = 1.0;
};

enum class GapMode { per_index, all_subsets };
enum class AtomicDirection { forward, backward };

// ── checkers ────────────────────────────────────────────────────────────────
// Every checker accepts an optional precomputed exhaustive certificate so
// sweeps can amortize the oracle; when absent it is computed on demand
// (subject to the exhaustive member cap).

// Two Bessel families weave into Bessel families: every braid's upper bound
// is at most the sum of the component Bessel bounds.
TheoremReport check_bessel_sum(const WeavingInstance& w, const Tolerances& tol = {},
                               const BoundCertificate* oracle = nullptr);

// Lower-bound characterization: a_candidate is a universal lower scale iff
// a_candidate * K K^* <= U_sigma U_sigma^* for every braid's synthesis U_sigma.
TheoremReport check_characterization(const WeavingInstance& w, double a_candidate,
                                     const Tolerances& tol = {},
                                     const BoundCertificate* oracle = nullptr);

// Scalar-perturbation sufficient condition: orthogonal images, an exact
// expansion of omega images in lambda images, and a positive diagonal floor M
// force wovenness with bounds (min{1, M} * A_lambda, B_lambda + B_omega).
TheoremReport check_perturbation_scalars(const WeavingInstance& w,
                                         const ScalarExpansion& expansion,
                                         const Tolerances& tol = {},
                                         const BoundCertificate* oracle = nullptr);

// Cross-synthesis sufficient condition: if K factors through the mixed
// synthesis sum_i C lambda_i^* omega_i C' and each term is symmetric under
// swapping the families, the pair weaves with bounds
// (1 / (2 max{B1, B2}), B1 + B2).
TheoremReport check_cross_synthesis(const WeavingInstance& w,
                                    const Tolerances& tol = {},
                                    const BoundCertificate* oracle = nullptr);

// Atomic equivalence: transfers weaving between the operator level and the
// induced vector families built from local atoms.  forward assumes the
// operator-level verdict and claims induced bounds
// (min{alpha, alpha'} * A, max{beta, beta'} * B); backward assumes the induced
// verdict (C*, D*) and claims operator-level bounds
// (min{1/beta, 1/beta'} * C*, max{1/alpha, 1/alpha'} * D*).
TheoremReport check_atomic_equivalence(const WeavingInstance& w,
                                       const AtomicSystem& atoms,
                                       AtomicDirection direction,
                                       const Tolerances& tol = {},
                                       const BoundCertificate* oracle = nullptr);

// Positive-gap sufficient condition: when every controlled gap
// C'(omega_i^* omega_i - lambda_i^* lambda_i)C is PSD (per index, or summed
// over every index set in all_subsets mode), the pair weaves with bounds
// (A_lambda, B_lambda + B_omega).  Identity controls recover the plain
// statement.
TheoremReport check_positive_gap(const WeavingInstance& w, GapMode mode,
                                 const Tolerances& tol = {},
                                 const BoundCertificate* oracle = nullptr);

// Universal weaving bounds of the induced vector families of an atomic
// system (exposed for tests and reports).
BoundCertificate induced_universal_bounds(const WeavingInstance& w,
                                          const AtomicSystem& atoms,
                                          const Tolerances& tol = {});

}  // namespace cwf
