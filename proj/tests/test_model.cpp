#include <cmath>
#include <initializer_list>
#include <limits>

#include "cwf/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using cwf::Complex;
using cwf::GFrameFamily;
using cwf::Matrix;
using cwf::Tolerances;

namespace {

Matrix row(std::initializer_list<Complex> entries) {
  Matrix m(1, static_cast<int>(entries.size()));
  int c = 0;
  for (const Complex& e : entries) m(0, c++) = e;
  return m;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("family construction validates shapes and entries") {
  CHECK_THROWS_AS(GFrameFamily(0, {row({1.0})}), cwf::ValidationError);
  CHECK_THROWS_AS(GFrameFamily(2, {}), cwf::ValidationError);
  CHECK_THROWS_AS(GFrameFamily(2, {row({1.0, 0.0, 0.0})}), cwf::ValidationError);

  Matrix bad = row({1.0, 0.0});
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(GFrameFamily(2, {bad}), cwf::ValidationError);

  const GFrameFamily family(2, {row({1.0, 0.0}), row({0.0, 1.0})});
  CHECK(family.size() == 2);
  CHECK(family.codomain_dim(0) == 1);
  CHECK((family.gram_sum() - Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("positive invertible cone membership") {
  const auto ok = cwf::validate_gl_plus(diag2(1.0, 3.0));
  CHECK(ok.ok);
  CHECK(std::abs(ok.lambda_min - 1.0) < 1e-12);
  CHECK(std::abs(ok.lambda_max - 3.0) < 1e-12);

  Matrix skewed = Matrix::Identity(2, 2);
  skewed(0, 1) = 1.0;  // upper triangular, materially non-Hermitian
  CHECK_FALSE(cwf::validate_gl_plus(skewed).ok);

  CHECK_FALSE(cwf::validate_gl_plus(diag2(1.0, -0.5)).ok);
  CHECK_FALSE(cwf::validate_gl_plus(diag2(1.0, 1e-12)).ok);
  CHECK_THROWS_AS(cwf::validate_gl_plus(Matrix::Zero(2, 3)),
                  cwf::ValidationError);
}

TEST_CASE("control pair caches the positive square root of the product") {
  const auto controls = cwf::ControlPair::create(diag2(1.0, 4.0), diag2(4.0, 1.0));
  CHECK((controls.sqrt_product() - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);

  // Generic commuting pair: the cached root must square back to C C'.
  cwf::SeededRng rng(411);
  const Matrix u = oracles::random_unitary(3, rng);
  const Matrix c = u * cwf::RealVector::LinSpaced(3, 0.5, 2.0).asDiagonal() *
                   u.adjoint();
  const Matrix cp = u * cwf::RealVector::LinSpaced(3, 1.0, 3.0).asDiagonal() *
                    u.adjoint();
  const auto pair = cwf::ControlPair::create(c, cp);
  CHECK((pair.sqrt_product() * pair.sqrt_product() - c * cp).norm() <
        1e-10 * (c * cp).norm());
}

TEST_CASE("control pair rejects inadmissible operators") {
  Matrix offdiag(2, 2);
  offdiag << 2.0, 1.0, 1.0, 2.0;  // Hermitian PD but not diagonal
  CHECK_THROWS_AS(cwf::ControlPair::create(diag2(1.0, 2.0), offdiag),
                  cwf::ValidationError);  // non-commuting
  CHECK_THROWS_AS(cwf::ControlPair::create(diag2(1.0, -1.0), diag2(1.0, 1.0)),
                  cwf::ValidationError);  // not positive
  Matrix shear = Matrix::Identity(2, 2);
  shear(0, 1) = 1.0;
  CHECK_THROWS_AS(cwf::ControlPair::create(shear, diag2(1.0, 1.0)),
                  cwf::ValidationError);  // not Hermitian
  CHECK_THROWS_AS(
      cwf::ControlPair::create(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
      cwf::ValidationError);  // dimension mismatch
}

TEST_CASE("K operator caches K K^*") {
  Matrix k = Matrix::Zero(2, 2);
  k(0, 1) = 1.0;
  const auto op = cwf::KOperator::create(k);
  CHECK((op.kk_star() - diag2(1.0, 0.0)).norm() < 1e-15);
  CHECK_THROWS_AS(cwf::KOperator::create(Matrix::Zero(2, 3)),
                  cwf::ValidationError);
}

TEST_CASE("instance construction records the commutation assumption") {
  const Matrix id = Matrix::Identity(2, 2);
  Matrix offdiag(2, 2);
  offdiag << 2.0, 1.0, 1.0, 2.0;

  // gram_sum = diag(1, 0) commutes with the identity but not with offdiag.
  const auto good = cwf::build_controlled_instance(
      GFrameFamily(2, {row({1.0, 0.0})}), id, id, id);
  CHECK(good.commutation_ok);

  const auto bad = cwf::build_controlled_instance(
      GFrameFamily(2, {row({1.0, 0.0})}), offdiag, offdiag, id);
  CHECK_FALSE(bad.commutation_ok);

  CHECK_THROWS_AS(
      cwf::build_controlled_instance(GFrameFamily(2, {row({1.0, 0.0})}), id, id,
                                     Matrix::Identity(3, 3)),
      cwf::ValidationError);
}

TEST_CASE("weaving instance validates and exposes component instances") {
  const Matrix id = Matrix::Identity(2, 2);
  const GFrameFamily lambda(2, {row({1.0, 0.0}), row({0.0, 1.0})});
  const GFrameFamily omega(2, {row({0.0, 1.0}), row({1.0, 0.0})});

  const auto w = cwf::build_weaving_instance(lambda, omega, id, id, id);
  CHECK(w.members() == 2);
  CHECK(w.commutation_ok);
  CHECK(w.lambda_instance().family.member(0)(0, 0) == Complex(1.0, 0.0));
  CHECK(w.omega_instance().family.member(0)(0, 1) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(
      cwf::build_weaving_instance(lambda, GFrameFamily(2, {row({0.0, 1.0})}), id,
                                  id, id),
      cwf::ValidationError);  // member count mismatch
  CHECK_THROWS_AS(
      cwf::build_weaving_instance(lambda, GFrameFamily(3, {Matrix::Ones(1, 3),
                                                           Matrix::Ones(1, 3)}),
                                  id, id, id),
      cwf::ValidationError);  // different ambient spaces
}

TEST_CASE("subset masks pick lambda members on set bits") {
  const Matrix id = Matrix::Identity(2, 2);
  const GFrameFamily lambda(2, {row({1.0, 0.0}), row({0.0, 1.0})});
  const GFrameFamily omega(2, {row({0.0, 2.0}), row({2.0, 0.0})});
  const auto w = cwf::build_weaving_instance(lambda, omega, id, id, id);

  const GFrameFamily braid = cwf::weave_subfamily(w, 0b01);
  CHECK(braid.member(0)(0, 0) == Complex(1.0, 0.0));  // lambda member 1
  CHECK(braid.member(1)(0, 0) == Complex(2.0, 0.0));  // omega member 2

  const GFrameFamily all_omega = cwf::weave_subfamily(w, 0);
  CHECK(all_omega.member(0)(0, 1) == Complex(2.0, 0.0));

  CHECK_THROWS_AS(cwf::weave_subfamily(w, 0b100), cwf::ValidationError);

  const auto mixed = cwf::mixed_instance(w, 0b10);
  CHECK(mixed.commutation_ok);
  CHECK(mixed.family.member(1)(0, 1) == Complex(1.0, 0.0));
}
