#pragma once

#include <cstdint>
#include <vector>

#include "cwf/theorems.hpp"

namespace cwf::corpus {

// A weaving pair together with the scalar-expansion data that exhibits the
// omega family as a diagonal perturbation of the lambda family.
struct ExpandedPair {
  WeavingInstance instance;
  ScalarExpansion expansion;
};

// Banded coordinate pair on an n-dimensional space (n >= 6), with n - 3
// members.  Member j (1-based) extracts coordinates j+2 and j+3; the omega
// twin scales the first of the two by 1 + 2^{-j}.  K projects onto
// coordinates 3..n, and both controls equal the positive block
// [[1, 1], [1, 2]] completed by the identity.  Closed forms: the lambda
// family has optimal bounds (1, 2), every braid has lower bound exactly 1,
// and the universal upper bound is (1 + 1/4)^2 + 1 = 41/16.
ExpandedPair banded_pair(int dim, const Tolerances& tol = {});

// Seeded random weaving pair.  With ensure_commutation, every operator in
// sight is diagonal in one shared random eigenbasis, which makes the standing
// commutation assumption hold for every braid by construction; otherwise the
// members are dense Gaussian blocks and certification will refuse.  Member
// codomains cover all coordinates round-robin, so every braid is a frame.
struct RandomSpec {
  std::uint64_t seed = 1;
  int dim = 4;
  int members = 4;
  int max_codomain = 3;  // per-member codomain dimensions drawn from [1, this]
  double spread = 2.0;   // control eigenvalues drawn from [1/spread, spread]
  bool ensure_commutation = true;
};

WeavingInstance random_pair(const RandomSpec& spec, const Tolerances& tol = {});

// Two-dimensional pair that swaps the coordinate directions between the
// families: mixed braids see one direction twice and the other never, so the
// pair is maximally non-woven while both components are orthonormal frames.
WeavingInstance swap_pair(const Tolerances& tol = {});

// Tailored pairs whose construction makes one checker's hypotheses hold:
//   positive_gap_pair    omega_i = c_i lambda_i with c_i >= 1,
//   cross_synthesis_pair omega_i = a_i lambda_i and K defined as the
//                        cross-synthesis sum itself,
//   perturbation_pair    omega_j = T_j lambda_j for diagonal T_j, expanded in
//                        the shared eigenbasis with an explicit scalar table.
WeavingInstance positive_gap_pair(std::uint64_t seed, int dim, int members,
                                  const Tolerances& tol = {});
WeavingInstance cross_synthesis_pair(std::uint64_t seed, int dim, int members,
                                     const Tolerances& tol = {});
ExpandedPair perturbation_pair(std::uint64_t seed, int dim, int members,
                               const Tolerances& tol = {});

// Atom systems for the atomic-equivalence checker: standard bases of every
// member codomain (all stated bounds 1), or seeded random local frames whose
// stated bounds are the measured extremes (redrawn when ill-conditioned).
AtomicSystem identity_atoms(const WeavingInstance& w);
AtomicSystem random_atoms(const WeavingInstance& w, std::uint64_t seed);

// Classical (vector-frame) material: a seeded Gaussian spanning family, and
// its embedding as a one-row-per-vector instance with identity controls and
// K, whose optimal bounds coincide with the classical frame bounds.
std::vector<Vector> random_vector_family(std::uint64_t seed, int dim, int count);
ControlledInstance induced_rank_one(const std::vector<Vector>& vectors,
                                    const Tolerances& tol = {});

}  // namespace cwf::corpus
