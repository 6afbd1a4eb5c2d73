#pragma once

#include "cwf/frame_ops.hpp"
#include "cwf/model.hpp"

namespace cwf {

// Optimal frame bounds of a controlled instance:
//   upper = lambda_max(S)                    with S the controlled frame operator,
//   lower = sup{ a : S - a K K^* >= 0 }      via max_scale_psd.
// The verdict records whether the instance is a frame for its K (lower bound
// materially positive).  When K vanishes the lower condition is vacuous: the
// certificate carries lower = +infinity and an advisory instead of erroring.
// Throws ValidationError when the commutation assumption fails (refuses to
// certify) and NumericError when the frame operator is materially indefinite.
BoundCertificate optimal_bounds(const ControlledInstance& inst,
                                const Tolerances& tol = {});

// True iff the controlled frame operator satisfies S <= b * identity.
bool is_bessel(const ControlledInstance& inst, double b, const Tolerances& tol = {});

// Extreme eigenvalues of sum_j f_j f_j^*; equals optimal_bounds of the induced
// rank-one instance with identity controls and K.  Never throws on non-frames:
// a non-spanning family simply reports lower = 0.
struct ClassicalBounds {
  double lower;
  double upper;
};

ClassicalBounds classical_frame_bounds(const std::vector<Vector>& vectors);

}  // namespace cwf
