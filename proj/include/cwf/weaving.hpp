#pragma once

#include <cstdint>

#include "cwf/bounds.hpp"
#include "cwf/model.hpp"

namespace cwf {

// Certificate for a single braid: the mixed family that takes lambda members
// on sigma and omega members elsewhere.
BoundCertificate per_subset_bounds(const WeavingInstance& w, std::uint64_t sigma,
                                   const Tolerances& tol = {});

// Universal weaving bounds by full subset enumeration (2^m braids).  The
// reduction is a pure min over lower bounds and max over upper bounds, so
// enumeration order cannot affect the result; ties on the worst subset break
// toward the smallest bitmask.  Throws CapExceededError when the member count
// exceeds kMaxExhaustiveMembers.
BoundCertificate universal_bounds_exhaustive(const WeavingInstance& w,
                                             const Tolerances& tol = {});

// Same reduction over a seeded uniform sample of braids (deduplicated, and
// always including the empty and full subsets).  The certificate is flagged
// sampled: it is evidence, not an exhaustive proof.
BoundCertificate universal_bounds_sampled(const WeavingInstance& w,
                                          std::uint64_t trials, std::uint64_t seed,
                                          const Tolerances& tol = {});

}  // namespace cwf
