#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cwf/numerics.hpp"
#include "cwf/types.hpp"

namespace cwf {

// ── ambient space ───────────────────────────────────────────────────────────
struct HilbertSpec {
  int dim = 0;
};

// ── operator families ───────────────────────────────────────────────────────
// Member j is a bounded operator from the ambient n-dimensional space into a
// d_j-dimensional coordinate space, stored as a d_j x n matrix acting on
// column vectors.
class GFrameFamily {
 public:
  GFrameFamily(int ambient_dim, std::vector<Matrix> members);

  int ambient_dim() const { return ambient_dim_; }
  int size() const { return static_cast<int>(members_.size()); }
  int codomain_dim(int j) const { return static_cast<int>(members_[j].rows()); }
  const Matrix& member(int j) const { return members_[j]; }
  const std::vector<Matrix>& members() const { return members_; }

  // Uncontrolled gram sum  sum_j member_j^* member_j.
  Matrix gram_sum() const;

 private:
  int ambient_dim_;
  std::vector<Matrix> members_;
};

// ── control pair ────────────────────────────────────────────────────────────
// Two Hermitian positive-definite operators that commute with each other.
// Positivity in the sesquilinear sense forces self-adjointness in a complex
// space, so Hermitian-ness is required outright rather than inferred.  The
// positive square root of the product is cached because analysis/synthesis
// factorizations use it on every call.
class ControlPair {
 public:
  static ControlPair create(Matrix c, Matrix cprime, const Tolerances& tol = {});

  const Matrix& c() const { return c_; }
  const Matrix& cprime() const { return cprime_; }
  const Matrix& sqrt_product() const { return sqrt_product_; }  // (C C')^{1/2}
  int dim() const { return static_cast<int>(c_.rows()); }

 private:
  ControlPair(Matrix c, Matrix cprime, Matrix sqrt_product)
      : c_(std::move(c)), cprime_(std::move(cprime)),
        sqrt_product_(std::move(sqrt_product)) {}

  Matrix c_;
  Matrix cprime_;
  Matrix sqrt_product_;
};

// ── K operator ──────────────────────────────────────────────────────────────
class KOperator {
 public:
  static KOperator create(Matrix k);

  const Matrix& k() const { return k_; }
  const Matrix& kk_star() const { return kk_star_; }  // K K^*, Hermitian PSD
  int dim() const { return static_cast<int>(k_.rows()); }

 private:
  KOperator(Matrix k, Matrix kk_star)
      : k_(std::move(k)), kk_star_(std::move(kk_star)) {}

  Matrix k_;
  Matrix kk_star_;
};

// ── instances ───────────────────────────────────────────────────────────────
struct ControlledInstance {
  HilbertSpec space;
  GFrameFamily family;
  ControlPair controls;
  KOperator k;
  // Whether the standing assumption holds: the family's gram sum commutes
  // with both controls.  Certification downstream refuses to proceed when it
  // fails, but construction records the fact instead of erroring.
  bool commutation_ok = false;

  int dim() const { return space.dim; }
};

struct WeavingInstance {
  HilbertSpec space;
  GFrameFamily lambda;
  GFrameFamily omega;
  ControlPair controls;
  KOperator k;
  bool commutation_ok = false;  // both families satisfy the standing assumption

  int dim() const { return space.dim; }
  int members() const { return lambda.size(); }

  ControlledInstance lambda_instance() const;
  ControlledInstance omega_instance() const;
};

// ── validation and construction ─────────────────────────────────────────────
struct GlPlusReport {
  bool ok = false;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double hermitian_residual = 0.0;
};

// Membership in the positive invertible cone: Hermitian within commute_tol
// (relative) and lambda_min > psd_tol * max(lambda_max, 1).
GlPlusReport validate_gl_plus(const Matrix& m, const Tolerances& tol = {});

ControlledInstance build_controlled_instance(GFrameFamily family, const Matrix& c,
                                             const Matrix& cprime, const Matrix& k,
                                             const Tolerances& tol = {});

// Variant that reuses an already validated control pair / K operator; used by
// the weaving driver, which instantiates one mixed family per subset.
ControlledInstance make_controlled_instance(GFrameFamily family, ControlPair controls,
                                            KOperator k, const Tolerances& tol = {});

WeavingInstance build_weaving_instance(GFrameFamily lambda, GFrameFamily omega,
                                       const Matrix& c, const Matrix& cprime,
                                       const Matrix& k, const Tolerances& tol = {});

// ── subsets ─────────────────────────────────────────────────────────────────
// Subsets of member indices are bitmasks: bit j set means member j is taken
// from the lambda family, clear means it is taken from omega.
constexpr int kMaxExhaustiveMembers = 20;

GFrameFamily weave_subfamily(const WeavingInstance& w, std::uint64_t sigma);

ControlledInstance mixed_instance(const WeavingInstance& w, std::uint64_t sigma,
                                  const Tolerances& tol = {});

// ── certificates ────────────────────────────────────────────────────────────
struct BoundCertificate {
  double lower = 0.0;   // optimal lower scale (may be +infinity when K = 0)
  double upper = 0.0;   // optimal upper bound
  Vector lower_witness;  // unit vector where the lower constraint binds
  Vector upper_witness;  // unit vector attaining the upper bound
  std::optional<std::uint64_t> worst_subset;  // weaving context only
  bool verdict = false;  // frame condition (or wovenness) holds
  bool sampled = false;  // produced by subset sampling, not exhaustion
  std::string advisory;  // nonempty for degenerate cases (e.g. vanishing K)
};

}  // namespace cwf
