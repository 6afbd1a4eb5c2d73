#include "cwf/model.hpp"

#include <utility>

namespace cwf {

GFrameFamily::GFrameFamily(int ambient_dim, std::vector<Matrix> members)
    : ambient_dim_(ambient_dim), members_(std::move(members)) {
  if (ambient_dim_ < 1) {
    throw ValidationError("GFrameFamily: ambient dimension must be >= 1");
  }
  if (members_.empty()) {
    throw ValidationError("GFrameFamily: at least one member is required");
  }
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const Matrix& m = members_[j];
    if (m.cols() != ambient_dim_ || m.rows() < 1) {
      throw ValidationError("GFrameFamily: member " + std::to_string(j + 1) +
                            " must map the ambient space into a space of "
                            "dimension >= 1");
    }
    if (!m.allFinite()) {
      throw ValidationError("GFrameFamily: member " + std::to_string(j + 1) +
                            " has non-finite entries");
    }
  }
}

Matrix GFrameFamily::gram_sum() const {
  Matrix s = Matrix::Zero(ambient_dim_, ambient_dim_);
  for (const Matrix& m : members_) s += m.adjoint() * m;
  return s;
}

GlPlusReport validate_gl_plus(const Matrix& m, const Tolerances& tol) {
  tol.validate();
  if (m.rows() != m.cols()) {
    throw ValidationError("validate_gl_plus: matrix must be square");
  }
  GlPlusReport report;
  const HermitizeResult parts = hermitize(m);
  report.hermitian_residual = parts.residual;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(parts.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("validate_gl_plus: eigensolver failed to converge");
  }
  report.lambda_min = solver.eigenvalues()[0];
  report.lambda_max = solver.eigenvalues()[solver.eigenvalues().size() - 1];
  const bool hermitian_ok = parts.residual <= tol.commute_tol * frobenius(parts.matrix);
  const bool positive_ok =
      report.lambda_min > tol.psd_tol * std::max(report.lambda_max, 1.0);
  report.ok = hermitian_ok && positive_ok;
  return report;
}

ControlPair ControlPair::create(Matrix c, Matrix cprime, const Tolerances& tol) {
  tol.validate();
  if (c.rows() != c.cols() || cprime.rows() != cprime.cols() ||
      c.rows() != cprime.rows()) {
    throw ValidationError("ControlPair: controls must be square with equal dims");
  }
  const GlPlusReport rc = validate_gl_plus(c, tol);
  if (!rc.ok) {
    throw ValidationError(
        "ControlPair: C is not Hermitian positive definite (lambda_min " +
        std::to_string(rc.lambda_min) + ", skew residual " +
        std::to_string(rc.hermitian_residual) + ")");
  }
  const GlPlusReport rp = validate_gl_plus(cprime, tol);
  if (!rp.ok) {
    throw ValidationError(
        "ControlPair: C' is not Hermitian positive definite (lambda_min " +
        std::to_string(rp.lambda_min) + ", skew residual " +
        std::to_string(rp.hermitian_residual) + ")");
  }
  if (!commutes(c, cprime, tol)) {
    throw ValidationError("ControlPair: non-commuting controls (the product "
                          "C C' has no shared positive square root)");
  }
  Matrix product = hermitize(c * cprime).matrix;
  Matrix root = psd_sqrt(product, tol);
  return ControlPair(std::move(c), std::move(cprime), std::move(root));
}

KOperator KOperator::create(Matrix k) {
  if (k.rows() != k.cols()) {
    throw ValidationError("KOperator: K must be square");
  }
  if (!k.allFinite()) {
    throw ValidationError("KOperator: K has non-finite entries");
  }
  Matrix kk = hermitize(k * k.adjoint()).matrix;
  return KOperator(std::move(k), std::move(kk));
}

ControlledInstance make_controlled_instance(GFrameFamily family, ControlPair controls,
                                            KOperator k, const Tolerances& tol) {
  tol.validate();
  const int n = family.ambient_dim();
  if (controls.dim() != n || k.dim() != n) {
    throw ValidationError("controlled instance: family, controls and K must "
                          "share the ambient dimension");
  }
  const Matrix gram = family.gram_sum();
  const bool ok = commutes(gram, controls.c(), tol) &&
                  commutes(gram, controls.cprime(), tol);
  return ControlledInstance{HilbertSpec{n}, std::move(family), std::move(controls),
                            std::move(k), ok};
}

ControlledInstance build_controlled_instance(GFrameFamily family, const Matrix& c,
                                             const Matrix& cprime, const Matrix& k,
                                             const Tolerances& tol) {
  return make_controlled_instance(std::move(family),
                                  ControlPair::create(c, cprime, tol),
                                  KOperator::create(k), tol);
}

ControlledInstance WeavingInstance::lambda_instance() const {
  return ControlledInstance{space, lambda, controls, k,
                            commutation_ok};
}

ControlledInstance WeavingInstance::omega_instance() const {
  return ControlledInstance{space, omega, controls, k, commutation_ok};
}

WeavingInstance build_weaving_instance(GFrameFamily lambda, GFrameFamily omega,
                                       const Matrix& c, const Matrix& cprime,
                                       const Matrix& k, const Tolerances& tol) {
  tol.validate();
  if (lambda.ambient_dim() != omega.ambient_dim()) {
    throw ValidationError("WeavingInstance: families live on different spaces");
  }
  if (lambda.size() != omega.size()) {
    throw ValidationError("WeavingInstance: families must have equally many "
                          "members (got " + std::to_string(lambda.size()) +
                          " and " + std::to_string(omega.size()) + ")");
  }
  ControlPair controls = ControlPair::create(c, cprime, tol);
  KOperator kop = KOperator::create(k);
  const int n = lambda.ambient_dim();
  if (controls.dim() != n || kop.dim() != n) {
    throw ValidationError("WeavingInstance: controls and K must share the "
                          "ambient dimension");
  }
  const Matrix gl = lambda.gram_sum();
  const Matrix go = omega.gram_sum();
  const bool ok = commutes(gl, controls.c(), tol) &&
                  commutes(gl, controls.cprime(), tol) &&
                  commutes(go, controls.c(), tol) &&
                  commutes(go, controls.cprime(), tol);
  return WeavingInstance{HilbertSpec{n}, std::move(lambda), std::move(omega),
                         std::move(controls), std::move(kop), ok};
}

GFrameFamily weave_subfamily(const WeavingInstance& w, std::uint64_t sigma) {
  const int m = w.members();
  if (m < 64 && sigma >= (std::uint64_t{1} << m)) {
    throw ValidationError("weave_subfamily: subset mask has bits beyond the "
                          "member count");
  }
  std::vector<Matrix> picked;
  picked.reserve(m);
  for (int j = 0; j < m; ++j) {
    const bool take_lambda = (sigma >> j) & 1ULL;
    picked.push_back(take_lambda ? w.lambda.member(j) : w.omega.member(j));
  }
  return GFrameFamily(w.dim(), std::move(picked));
}

ControlledInstance mixed_instance(const WeavingInstance& w, std::uint64_t sigma,
                                  const Tolerances& tol) {
  return make_controlled_instance(weave_subfamily(w, sigma), w.controls, w.k, tol);
}

}  // namespace cwf
