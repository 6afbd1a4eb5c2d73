#include "cwf/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace cwf {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw ValidationError(std::string(who) + ": matrix must be square");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(std::string(who) + ": dimension mismatch");
  }
}

// Hermitian part with a skew-residual gate; shared by every consumer that is
// only allowed to see genuinely self-adjoint data.
Matrix gated_hermitian_part(const Matrix& m, const Tolerances& tol, const char* who) {
  const HermitizeResult h = hermitize(m);
  if (h.residual > tol.commute_tol * frobenius(h.matrix)) {
    throw ValidationError(std::string(who) +
                          ": operand has an excessive skew part (residual " +
                          std::to_string(h.residual) + ")");
  }
  return h.matrix;
}

Eigen::SelfAdjointEigenSolver<Matrix> solve_hermitian(const Matrix& h, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError(std::string(who) + ": eigensolver failed to converge");
  }
  return solver;
}

// Reconstitute from clamped spectrum: V * diag(max(lambda, 0)) * V^*.
Matrix clamp_psd(const Eigen::SelfAdjointEigenSolver<Matrix>& solver) {
  RealVector lam = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::max(lam[i], 0.0);
  Matrix s = solver.eigenvectors() * lam.asDiagonal() *
             solver.eigenvectors().adjoint();
  return 0.5 * (s + s.adjoint());
}

}  // namespace

HermitizeResult hermitize(const Matrix& m) {
  require_square(m, "hermitize");
  HermitizeResult out;
  out.matrix = 0.5 * (m + m.adjoint());
  out.residual = frobenius(0.5 * (m - m.adjoint()));
  return out;
}

double frobenius(const Matrix& m) { return m.norm(); }

double spectral_norm(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  const Matrix sym = hermitize(h).matrix;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectral_norm: eigensolver failed to converge");
  }
  const RealVector& lam = solver.eigenvalues();
  return std::max(std::abs(lam[0]), std::abs(lam[lam.size() - 1]));
}

HermitianSpectrum eig_hermitian(const Matrix& h, const Tolerances& tol) {
  tol.validate();
  require_square(h, "eig_hermitian");
  const HermitizeResult parts = hermitize(h);
  if (parts.residual > tol.commute_tol * frobenius(parts.matrix)) {
    throw ValidationError(
        "eig_hermitian: operand has an excessive skew part (residual " +
        std::to_string(parts.residual) + ")");
  }
  const auto solver = solve_hermitian(parts.matrix, "eig_hermitian");
  HermitianSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.hermitian_residual = parts.residual;
  return out;
}

Matrix psd_sqrt(const Matrix& h, const Tolerances& tol) {
  tol.validate();
  const HermitianSpectrum spec = eig_hermitian(h, tol);
  const double top = spec.eigenvalues.size() == 0
                         ? 0.0
                         : std::max(std::abs(spec.eigenvalues[0]),
                                    std::abs(spec.eigenvalues[spec.eigenvalues.size() - 1]));
  const double floor = -tol.psd_tol * std::max(top, 1.0);
  RealVector roots = spec.eigenvalues;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (roots[i] < floor) {
      throw NumericError("psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
                         std::to_string(roots[i]) + ")");
    }
    roots[i] = std::sqrt(std::max(roots[i], 0.0));
  }
  Matrix r = spec.eigenvectors * roots.asDiagonal() * spec.eigenvectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

bool loewner_leq(const Matrix& t1, const Matrix& t2, const Tolerances& tol) {
  tol.validate();
  require_square(t1, "loewner_leq");
  require_same_shape(t1, t2, "loewner_leq");
  const Matrix a = gated_hermitian_part(t1, tol, "loewner_leq");
  const Matrix b = gated_hermitian_part(t2, tol, "loewner_leq");
  const Matrix diff = b - a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("loewner_leq: eigensolver failed to converge");
  }
  const double lam_min = solver.eigenvalues()[0];
  const double scale = std::max({spectral_norm(a), spectral_norm(b), 1.0});
  return lam_min >= -tol.psd_tol * scale;
}

bool commutes(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  tol.validate();
  require_square(a, "commutes");
  require_same_shape(a, b, "commutes");
  const double gap = frobenius(a * b - b * a);
  return gap <= tol.commute_tol * frobenius(a) * frobenius(b);
}

static MaxScaleResult max_scale_impl(const Matrix& s, const Matrix& p, const Tolerances& tol) {
  tol.validate();
  require_square(s, "max_scale_psd");
  require_same_shape(s, p, "max_scale_psd");

  const Matrix s_sym = gated_hermitian_part(s, tol, "max_scale_psd");
  const Matrix p_sym = gated_hermitian_part(p, tol, "max_scale_psd");

  const auto s_solver = solve_hermitian(s_sym, "max_scale_psd");
  const auto p_solver = solve_hermitian(p_sym, "max_scale_psd");

  const RealVector& s_lam = s_solver.eigenvalues();
  const RealVector& p_lam = p_solver.eigenvalues();
  const double s_top = std::max(std::abs(s_lam[0]), std::abs(s_lam[s_lam.size() - 1]));
  const double p_top = std::max(std::abs(p_lam[0]), std::abs(p_lam[p_lam.size() - 1]));

  if (s_lam[0] < -tol.psd_tol * std::max(s_top, 1.0)) {
    throw NumericError(
        "max_scale_psd: quadratic-form operator is not positive semidefinite "
        "(eigenvalue " + std::to_string(s_lam[0]) + ")");
  }
  if (p_lam[p_lam.size() - 1] <= tol.psd_tol * std::max(p_top, 1.0)) {
    throw NumericError("max_scale_psd: scale direction vanishes (p is zero "
                       "within tolerance)");
  }

  const Matrix s_c = clamp_psd(s_solver);
  const Matrix p_c = clamp_psd(p_solver);

  // Smallest eigenvalue of p that is genuinely active.
  double p_min_active = p_top;
  for (Eigen::Index i = 0; i < p_lam.size(); ++i) {
    if (p_lam[i] > tol.psd_tol * std::max(p_top, 1.0)) {
      p_min_active = std::min(p_min_active, p_lam[i]);
    }
  }

  const auto feasible = [&](double a) {
    Eigen::SelfAdjointEigenSolver<Matrix> probe(s_c - a * p_c, Eigen::EigenvaluesOnly);
    if (probe.info() != Eigen::Success) {
      throw NumericError("max_scale_psd: eigensolver failed to converge during bisection");
    }
    return probe.eigenvalues()[0] >= 0.0;
  };

  double lo = 0.0;  // feasible by construction: s_c is PSD
  double hi = (std::max(s_lam[s_lam.size() - 1], 0.0) + 1.0) / p_min_active;
  const double width_target = 0.25 * tol.bisect_tol;
  for (int iter = 0; iter < 200 && hi - lo > width_target; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  MaxScaleResult out;
  out.scale = lo;
  Eigen::SelfAdjointEigenSolver<Matrix> binding(s_c - lo * p_c);
  if (binding.info() != Eigen::Success) {
    throw NumericError("max_scale_psd: eigensolver failed on the binding direction");
  }
  out.witness = binding.eigenvectors().col(0);
  return out;
}

MaxScaleResult max_scale_psd_with_witness(const Matrix& s, const Matrix& p,
                                          const Tolerances& tol) {
  return max_scale_impl(s, p, tol);
}

double max_scale_psd(const Matrix& s, const Matrix& p, const Tolerances& tol) {
  return max_scale_impl(s, p, tol).scale;
}

}  // namespace cwf
