#pragma once

#include <vector>

#include "cwf/model.hpp"

namespace cwf {

// ── block layout of the direct-sum coordinate space ─────────────────────────
// Analysis coefficients of a g-frame family live in the orthogonal direct sum
// of the member codomains.  The layout pins each member to a contiguous slot
// so that embeddings and extractions are exact inverses of one another.
struct GBasisLayout {
  std::vector<int> offsets;  // size m+1, offsets[0] = 0, strictly increasing

  static GBasisLayout for_family(const GFrameFamily& family);

  int members() const { return static_cast<int>(offsets.size()) - 1; }
  int total() const { return offsets.back(); }
  int block_offset(int j) const { return offsets[j]; }
  int block_dim(int j) const { return offsets[j + 1] - offsets[j]; }

  Vector flatten(const std::vector<Vector>& blocks) const;
  std::vector<Vector> split(const Vector& flat) const;
};

// ── controlled frame operator ───────────────────────────────────────────────
// sum_j C' member_j^* member_j C, symmetrized.  Under the standing commutation
// assumption the skew residual is numerical noise; it is reported so callers
// can refuse to trust the result otherwise.
struct FrameOperatorResult {
  Matrix matrix;
  double hermitian_residual;
};

FrameOperatorResult frame_operator(const ControlledInstance& inst);

// Synthesis operator as an n x total matrix whose j-th column block is
// (C C')^{1/2} member_j^*.  Its adjoint is the analysis operator.
Matrix synthesis_matrix(const ControlledInstance& inst, const GBasisLayout& layout);

// Analysis coefficients { member_j ((C C')^{1/2} f) }_j as codomain blocks.
std::vector<Vector> analysis_apply(const ControlledInstance& inst, const Vector& f);

// Controlled quadratic form sum_j < member_j C f, member_j C' f >.  The value
// is the real part; the imaginary residual is reported and should be noise
// whenever the commutation assumption holds.
struct QuadraticFormResult {
  double value;
  double imag_residual;
};

QuadraticFormResult quadratic_form(const ControlledInstance& inst, const Vector& f);

// Classical dual-frame reconstruction  f = sum_j <inverse(S) f_j, f> f_j  for
// a spanning vector family.  Throws NumericError when the family does not
// span.
Vector classical_reconstruct(const std::vector<Vector>& frame, const Vector& f,
                             const Tolerances& tol = {});

}  // namespace cwf
