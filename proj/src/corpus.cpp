#include "cwf/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cwf/rng.hpp"

namespace cwf::corpus {

namespace {

Matrix random_gaussian(int rows, int cols, SeededRng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

// Haar-like unitary: QR of a Gaussian block with the R diagonal phase folded
// back so the factorization is canonical.
Matrix random_unitary(int n, SeededRng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

RealVector uniform_vector(int n, double lo, double hi, SeededRng& rng) {
  RealVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// Shared scaffolding of the commuting generators: one random eigenbasis, a
// commuting control pair, and lambda members that scale round-robin
// coordinate selections of that basis.
struct CommutingBase {
  Matrix v;
  Matrix c;
  Matrix cprime;
  std::vector<Matrix> lambda;
  std::vector<std::vector<int>> coords;  // selected coordinates per member
};

CommutingBase make_commuting_base(SeededRng& rng, int dim, int members,
                                  int max_codomain, double spread) {
  if (dim < 1 || members < 1) {
    throw ValidationError("corpus: dimension and member count must be positive");
  }
  if (!(spread >= 1.0)) {
    throw ValidationError("corpus: control spread must be at least 1");
  }
  CommutingBase base;
  base.v = random_unitary(dim, rng);
  const Matrix vh = base.v.adjoint();
  base.c = base.v *
           uniform_vector(dim, 1.0 / spread, spread, rng).asDiagonal() * vh;
  base.cprime = base.v *
                uniform_vector(dim, 1.0 / spread, spread, rng).asDiagonal() * vh;

  std::vector<int> dims(members);
  const int cap = std::max(1, std::min(max_codomain, dim));
  int total = 0;
  for (int j = 0; j < members; ++j) {
    dims[j] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
    total += dims[j];
  }
  for (int j = 0; total < dim; j = (j + 1) % members) {
    if (dims[j] < dim) {
      ++dims[j];
      ++total;
    }
  }

  int cursor = 0;
  for (int j = 0; j < members; ++j) {
    std::vector<int> sel(dims[j]);
    for (int& s : sel) s = cursor++ % dim;
    Matrix member = Matrix::Zero(dims[j], dim);
    for (int r = 0; r < dims[j]; ++r) {
      member.row(r) = rng.uniform(0.5, 1.5) * vh.row(sel[r]);
    }
    base.lambda.push_back(std::move(member));
    base.coords.push_back(std::move(sel));
  }
  return base;
}

Matrix random_k(const Matrix& v, SeededRng& rng) {
  const int n = static_cast<int>(v.rows());
  RealVector kappa = uniform_vector(n, 0.7, 1.3, rng);
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() < 0.2) kappa[i] = 0.0;
  }
  if (kappa.maxCoeff() == 0.0) kappa[0] = 1.0;
  return v * kappa.asDiagonal() * random_unitary(n, rng).adjoint();
}

}  // namespace

ExpandedPair banded_pair(int dim, const Tolerances& tol) {
  if (dim < 6) {
    throw ValidationError("banded_pair: dimension must be at least 6, got " +
                          std::to_string(dim));
  }
  const int n = dim;
  const int m = n - 3;

  std::vector<Matrix> lambda, omega;
  for (int j = 0; j < m; ++j) {
    Matrix l = Matrix::Zero(2, n);
    l(0, j + 2) = 1.0;
    l(1, j + 3) = 1.0;
    Matrix o = l;
    o(0, j + 2) = 1.0 + std::ldexp(1.0, -(j + 1));
    lambda.push_back(std::move(l));
    omega.push_back(std::move(o));
  }

  Matrix c = Matrix::Identity(n, n);
  c(0, 0) = 1.0;
  c(0, 1) = 1.0;
  c(1, 0) = 1.0;
  c(1, 1) = 2.0;

  Matrix k = Matrix::Identity(n, n);
  k(0, 0) = 0.0;
  k(1, 1) = 0.0;

  ExpandedPair out{
      build_weaving_instance(GFrameFamily(n, std::move(lambda)),
                             GFrameFamily(n, std::move(omega)), c, c, k, tol),
      {}};
  out.expansion.basis = Matrix::Identity(n, n);
  out.expansion.m_floor = 1.0;
  for (int j = 0; j < m; ++j) {
    for (int coord = 0; coord < n; ++coord) {
      const double beta =
          coord == j + 2 ? 1.0 + std::ldexp(1.0, -(j + 1)) : 1.0;
      out.expansion.coefficients[{coord, j, coord}] = Complex(beta, 0.0);
    }
  }
  return out;
}

WeavingInstance random_pair(const RandomSpec& spec, const Tolerances& tol) {
  SeededRng rng(spec.seed);
  if (!spec.ensure_commutation) {
    if (spec.dim < 1 || spec.members < 1) {
      throw ValidationError("corpus: dimension and member count must be positive");
    }
    const int cap = std::max(1, std::min(spec.max_codomain, spec.dim));
    std::vector<Matrix> lambda, omega;
    for (int j = 0; j < spec.members; ++j) {
      const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
      lambda.push_back(random_gaussian(d, spec.dim, rng));
      omega.push_back(random_gaussian(d, spec.dim, rng));
    }
    const Matrix v = random_unitary(spec.dim, rng);
    const Matrix c = v *
                     uniform_vector(spec.dim, 1.0 / spec.spread, spec.spread, rng)
                         .asDiagonal() *
                     v.adjoint();
    const Matrix cp = v *
                      uniform_vector(spec.dim, 1.0 / spec.spread, spec.spread, rng)
                          .asDiagonal() *
                      v.adjoint();
    const Matrix k = random_k(v, rng);
    return build_weaving_instance(GFrameFamily(spec.dim, std::move(lambda)),
                                  GFrameFamily(spec.dim, std::move(omega)), c, cp,
                                  k, tol);
  }

  CommutingBase base = make_commuting_base(rng, spec.dim, spec.members,
                                           spec.max_codomain, spec.spread);
  std::vector<Matrix> omega;
  omega.reserve(base.lambda.size());
  const Matrix vh = base.v.adjoint();
  for (std::size_t j = 0; j < base.lambda.size(); ++j) {
    Matrix member = Matrix::Zero(base.lambda[j].rows(), spec.dim);
    for (int r = 0; r < member.rows(); ++r) {
      member.row(r) = rng.uniform(0.5, 1.5) * vh.row(base.coords[j][r]);
    }
    omega.push_back(std::move(member));
  }
  const Matrix k = random_k(base.v, rng);
  return build_weaving_instance(GFrameFamily(spec.dim, std::move(base.lambda)),
                                GFrameFamily(spec.dim, std::move(omega)), base.c,
                                base.cprime, k, tol);
}

WeavingInstance swap_pair(const Tolerances& tol) {
  Matrix l1 = Matrix::Zero(1, 2);
  l1(0, 0) = 1.0;
  Matrix l2 = Matrix::Zero(1, 2);
  l2(0, 1) = 1.0;
  const Matrix id = Matrix::Identity(2, 2);
  return build_weaving_instance(GFrameFamily(2, {l1, l2}),
                                GFrameFamily(2, {l2, l1}), id, id, id, tol);
}

WeavingInstance positive_gap_pair(std::uint64_t seed, int dim, int members,
                                  const Tolerances& tol) {
  SeededRng rng(seed);
  CommutingBase base = make_commuting_base(rng, dim, members, 3, 2.0);
  std::vector<Matrix> omega;
  omega.reserve(base.lambda.size());
  for (const Matrix& l : base.lambda) omega.push_back(rng.uniform(1.0, 1.4) * l);
  const Matrix k = random_k(base.v, rng);
  return build_weaving_instance(GFrameFamily(dim, std::move(base.lambda)),
                                GFrameFamily(dim, std::move(omega)), base.c,
                                base.cprime, k, tol);
}

WeavingInstance cross_synthesis_pair(std::uint64_t seed, int dim, int members,
                                     const Tolerances& tol) {
  SeededRng rng(seed);
  CommutingBase base = make_commuting_base(rng, dim, members, 3, 2.0);
  std::vector<Matrix> omega;
  omega.reserve(base.lambda.size());
  for (const Matrix& l : base.lambda) omega.push_back(rng.uniform(0.6, 1.4) * l);
  Matrix k = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < base.lambda.size(); ++i) {
    k += base.c * base.lambda[i].adjoint() * omega[i] * base.cprime;
  }
  return build_weaving_instance(GFrameFamily(dim, std::move(base.lambda)),
                                GFrameFamily(dim, std::move(omega)), base.c,
                                base.cprime, k, tol);
}

ExpandedPair perturbation_pair(std::uint64_t seed, int dim, int members,
                               const Tolerances& tol) {
  SeededRng rng(seed);
  CommutingBase base = make_commuting_base(rng, dim, members, 3, 2.0);

  ScalarExpansion expansion;
  expansion.basis = base.v;
  expansion.m_floor = 1.0;
  std::vector<Matrix> omega;
  omega.reserve(base.lambda.size());
  for (int j = 0; j < static_cast<int>(base.lambda.size()); ++j) {
    const int d = static_cast<int>(base.lambda[j].rows());
    Matrix member = base.lambda[j];
    std::vector<bool> selected(dim, false);
    for (int r = 0; r < d; ++r) {
      const double t = rng.uniform(0.8, 1.25);
      member.row(r) *= t;
      const int coord = base.coords[j][r];
      selected[coord] = true;
      expansion.coefficients[{coord, j, coord}] = Complex(t, 0.0);
      expansion.m_floor = std::min(expansion.m_floor, t * t);
    }
    for (int coord = 0; coord < dim; ++coord) {
      if (!selected[coord]) {
        expansion.coefficients[{coord, j, coord}] = Complex(1.0, 0.0);
      }
    }
    omega.push_back(std::move(member));
  }
  const Matrix k = random_k(base.v, rng);
  return {build_weaving_instance(GFrameFamily(dim, std::move(base.lambda)),
                                 GFrameFamily(dim, std::move(omega)), base.c,
                                 base.cprime, k, tol),
          std::move(expansion)};
}

AtomicSystem identity_atoms(const WeavingInstance& w) {
  AtomicSystem atoms;
  const auto basis_of = [](const GFrameFamily& family) {
    std::vector<std::vector<Vector>> all;
    all.reserve(family.size());
    for (int j = 0; j < family.size(); ++j) {
      const int d = family.codomain_dim(j);
      std::vector<Vector> local;
      local.reserve(d);
      for (int r = 0; r < d; ++r) local.push_back(Vector::Unit(d, r));
      all.push_back(std::move(local));
    }
    return all;
  };
  atoms.lambda_atoms = basis_of(w.lambda);
  atoms.omega_atoms = basis_of(w.omega);
  atoms.alpha = atoms.beta = atoms.alpha_prime = atoms.beta_prime = 1.0;
  return atoms;
}

AtomicSystem random_atoms(const WeavingInstance& w, std::uint64_t seed) {
  SeededRng rng(seed);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const auto draw = [&](const GFrameFamily& family) {
    std::vector<std::vector<Vector>> all;
    all.reserve(family.size());
    for (int j = 0; j < family.size(); ++j) {
      const int d = family.codomain_dim(j);
      for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Vector> local;
        const int count = d + 1 + static_cast<int>(rng.below(2));
        Matrix sum = Matrix::Zero(d, d);
        for (int a = 0; a < count; ++a) {
          Vector v(d);
          for (int i = 0; i < d; ++i) v[i] = rng.complex_normal() / std::sqrt(2.0);
          sum += v * v.adjoint();
          local.push_back(std::move(v));
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sum, Eigen::EigenvaluesOnly);
        if (solver.info() == Eigen::Success && solver.eigenvalues()[0] > 0.05) {
          lo = std::min(lo, solver.eigenvalues()[0]);
          hi = std::max(hi, solver.eigenvalues()[d - 1]);
          all.push_back(std::move(local));
          break;
        }
      }
      if (static_cast<int>(all.size()) != j + 1) {
        throw NumericError("random_atoms: failed to draw a well-conditioned "
                           "local frame");
      }
    }
    return all;
  };
  AtomicSystem atoms;
  atoms.lambda_atoms = draw(w.lambda);
  atoms.omega_atoms = draw(w.omega);
  atoms.alpha = atoms.alpha_prime = lo;
  atoms.beta = atoms.beta_prime = hi;
  return atoms;
}

std::vector<Vector> random_vector_family(std::uint64_t seed, int dim, int count) {
  if (dim < 1 || count < dim) {
    throw ValidationError("random_vector_family: need at least dim vectors");
  }
  SeededRng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.complex_normal();
    out.push_back(std::move(v));
  }
  return out;
}

ControlledInstance induced_rank_one(const std::vector<Vector>& vectors,
                                    const Tolerances& tol) {
  if (vectors.empty()) {
    throw ValidationError("induced_rank_one: empty vector family");
  }
  const int n = static_cast<int>(vectors.front().size());
  std::vector<Matrix> members;
  members.reserve(vectors.size());
  for (const Vector& v : vectors) {
    if (v.size() != n) {
      throw ValidationError("induced_rank_one: inconsistent vector dimensions");
    }
    members.push_back(v.adjoint());
  }
  const Matrix id = Matrix::Identity(n, n);
  return build_controlled_instance(GFrameFamily(n, std::move(members)), id, id,
                                   id, tol);
}

}  // namespace cwf::corpus
