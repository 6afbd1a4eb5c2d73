#include "cwf/frame_ops.hpp"

namespace cwf {

GBasisLayout GBasisLayout::for_family(const GFrameFamily& family) {
  GBasisLayout layout;
  layout.offsets.resize(family.size() + 1);
  layout.offsets[0] = 0;
  for (int j = 0; j < family.size(); ++j) {
    layout.offsets[j + 1] = layout.offsets[j] + family.codomain_dim(j);
  }
  return layout;
}

Vector GBasisLayout::flatten(const std::vector<Vector>& blocks) const {
  if (static_cast<int>(blocks.size()) != members()) {
    throw ValidationError("GBasisLayout: block count mismatch");
  }
  Vector flat = Vector::Zero(total());
  for (int j = 0; j < members(); ++j) {
    if (blocks[j].size() != block_dim(j)) {
      throw ValidationError("GBasisLayout: block " + std::to_string(j + 1) +
                            " has the wrong dimension");
    }
    flat.segment(block_offset(j), block_dim(j)) = blocks[j];
  }
  return flat;
}

std::vector<Vector> GBasisLayout::split(const Vector& flat) const {
  if (flat.size() != total()) {
    throw ValidationError("GBasisLayout: flat vector has the wrong dimension");
  }
  std::vector<Vector> blocks;
  blocks.reserve(members());
  for (int j = 0; j < members(); ++j) {
    blocks.push_back(flat.segment(block_offset(j), block_dim(j)));
  }
  return blocks;
}

FrameOperatorResult frame_operator(const ControlledInstance& inst) {
  const Matrix& c = inst.controls.c();
  const Matrix& cp = inst.controls.cprime();
  Matrix s = Matrix::Zero(inst.dim(), inst.dim());
  for (const Matrix& member : inst.family.members()) {
    s += cp * (member.adjoint() * (member * c));
  }
  const HermitizeResult parts = hermitize(s);
  return FrameOperatorResult{parts.matrix, parts.residual};
}

Matrix synthesis_matrix(const ControlledInstance& inst, const GBasisLayout& layout) {
  if (layout.members() != inst.family.size()) {
    throw ValidationError("synthesis_matrix: layout does not match the family");
  }
  const Matrix& root = inst.controls.sqrt_product();
  Matrix t = Matrix::Zero(inst.dim(), layout.total());
  for (int j = 0; j < inst.family.size(); ++j) {
    if (layout.block_dim(j) != inst.family.codomain_dim(j)) {
      throw ValidationError("synthesis_matrix: layout block " +
                            std::to_string(j + 1) + " has the wrong dimension");
    }
    t.block(0, layout.block_offset(j), inst.dim(), layout.block_dim(j)) =
        root * inst.family.member(j).adjoint();
  }
  return t;
}

std::vector<Vector> analysis_apply(const ControlledInstance& inst, const Vector& f) {
  if (f.size() != inst.dim()) {
    throw ValidationError("analysis_apply: vector dimension mismatch");
  }
  const Vector rooted = inst.controls.sqrt_product() * f;
  std::vector<Vector> blocks;
  blocks.reserve(inst.family.size());
  for (const Matrix& member : inst.family.members()) {
    blocks.push_back(member * rooted);
  }
  return blocks;
}

QuadraticFormResult quadratic_form(const ControlledInstance& inst, const Vector& f) {
  if (f.size() != inst.dim()) {
    throw ValidationError("quadratic_form: vector dimension mismatch");
  }
  const Vector cf = inst.controls.c() * f;
  const Vector cpf = inst.controls.cprime() * f;
  Complex acc(0.0, 0.0);
  for (const Matrix& member : inst.family.members()) {
    // <member C f, member C' f>, linear in the first argument.
    acc += (member * cpf).dot(member * cf);
  }
  return QuadraticFormResult{acc.real(), std::abs(acc.imag())};
}

Vector classical_reconstruct(const std::vector<Vector>& frame, const Vector& f,
                             const Tolerances& tol) {
  tol.validate();
  if (frame.empty()) {
    throw ValidationError("classical_reconstruct: empty family");
  }
  const Eigen::Index n = f.size();
  Matrix s = Matrix::Zero(n, n);
  for (const Vector& v : frame) {
    if (v.size() != n) {
      throw ValidationError("classical_reconstruct: vector dimension mismatch");
    }
    s += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
  if (solver.info() != Eigen::Success) {
    throw NumericError("classical_reconstruct: eigensolver failed to converge");
  }
  const RealVector& lam = solver.eigenvalues();
  if (lam[0] <= tol.psd_tol * std::max(lam[lam.size() - 1], 1.0)) {
    throw NumericError("classical_reconstruct: family does not span (frame "
                       "operator is singular)");
  }
  RealVector inv = lam.cwiseInverse();
  const Matrix s_inv =
      solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().adjoint();
  Vector rec = Vector::Zero(n);
  for (const Vector& v : frame) {
    rec += (s_inv * v).dot(f) * v;  // <S^{-1} f_j, f> f_j
  }
  return rec;
}

}  // namespace cwf
