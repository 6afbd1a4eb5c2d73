#include "cwf/bounds.hpp"

#include <limits>

namespace cwf {

BoundCertificate optimal_bounds(const ControlledInstance& inst, const Tolerances& tol) {
  tol.validate();
  if (!inst.commutation_ok) {
    throw ValidationError("optimal_bounds: the family's gram sum does not "
                          "commute with the controls; refusing to certify");
  }
  const FrameOperatorResult fo = frame_operator(inst);
  const HermitianSpectrum spec = eig_hermitian(fo.matrix, tol);
  const Eigen::Index n = spec.eigenvalues.size();
  const double lam_min = spec.eigenvalues[0];
  const double lam_max = spec.eigenvalues[n - 1];
  const double top = std::max(std::abs(lam_min), std::abs(lam_max));
  if (lam_min < -tol.psd_tol * std::max(top, 1.0)) {
    throw NumericError("optimal_bounds: controlled frame operator is not "
                       "positive semidefinite (eigenvalue " +
                       std::to_string(lam_min) + ")");
  }

  BoundCertificate cert;
  cert.upper = std::max(lam_max, 0.0);
  cert.upper_witness = spec.eigenvectors.col(n - 1);

  const Matrix& kk = inst.k.kk_star();
  if (spectral_norm(kk) <= tol.psd_tol) {
    cert.lower = std::numeric_limits<double>::infinity();
    cert.lower_witness = Vector::Zero(inst.dim());
    cert.advisory = "K vanishes: the lower frame condition is vacuous";
    cert.verdict = true;
    return cert;
  }

  const MaxScaleResult scale = max_scale_psd_with_witness(fo.matrix, kk, tol);
  cert.lower = scale.scale;
  cert.lower_witness = scale.witness;
  cert.verdict = cert.lower > tol.psd_tol;
  return cert;
}

bool is_bessel(const ControlledInstance& inst, double b, const Tolerances& tol) {
  tol.validate();
  const FrameOperatorResult fo = frame_operator(inst);
  const Matrix bound = b * Matrix::Identity(inst.dim(), inst.dim());
  return loewner_leq(fo.matrix, bound, tol);
}

ClassicalBounds classical_frame_bounds(const std::vector<Vector>& vectors) {
  if (vectors.empty()) {
    throw ValidationError("classical_frame_bounds: empty family");
  }
  const Eigen::Index n = vectors.front().size();
  Matrix s = Matrix::Zero(n, n);
  for (const Vector& v : vectors) {
    if (v.size() != n) {
      throw ValidationError("classical_frame_bounds: vector dimension mismatch");
    }
    s += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("classical_frame_bounds: eigensolver failed to converge");
  }
  const RealVector& lam = solver.eigenvalues();
  return ClassicalBounds{std::max(lam[0], 0.0), std::max(lam[lam.size() - 1], 0.0)};
}

}  // namespace cwf
