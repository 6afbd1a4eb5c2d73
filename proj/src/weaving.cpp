#include "cwf/weaving.hpp"

#include <set>
#include <string>

#include "cwf/rng.hpp"

namespace cwf {

namespace {

void require_weavable(const WeavingInstance& w) {
  if (!w.commutation_ok) {
    throw ValidationError("weaving: a component family's gram sum does not "
                          "commute with the controls; refusing to certify");
  }
}

// Shared min/max reduction over an ascending sequence of subset masks.
template <typename MaskRange>
BoundCertificate reduce_over_subsets(const WeavingInstance& w, const MaskRange& masks,
                                     const Tolerances& tol) {
  BoundCertificate out;
  bool first = true;
  for (const std::uint64_t sigma : masks) {
    BoundCertificate cert = per_subset_bounds(w, sigma, tol);
    if (first) {
      out = cert;
      out.worst_subset = sigma;
      first = false;
      continue;
    }
    out.verdict = out.verdict && cert.verdict;
    if (cert.lower < out.lower) {
      out.lower = cert.lower;
      out.lower_witness = cert.lower_witness;
      out.worst_subset = sigma;
    }
    if (cert.upper > out.upper) {
      out.upper = cert.upper;
      out.upper_witness = cert.upper_witness;
    }
    if (out.advisory.empty()) out.advisory = cert.advisory;
  }
  return out;
}

}  // namespace

BoundCertificate per_subset_bounds(const WeavingInstance& w, std::uint64_t sigma,
                                   const Tolerances& tol) {
  tol.validate();
  require_weavable(w);
  BoundCertificate cert = optimal_bounds(mixed_instance(w, sigma, tol), tol);
  cert.worst_subset = sigma;
  return cert;
}

BoundCertificate universal_bounds_exhaustive(const WeavingInstance& w,
                                             const Tolerances& tol) {
  tol.validate();
  require_weavable(w);
  const int m = w.members();
  if (m > kMaxExhaustiveMembers) {
    throw CapExceededError("universal_bounds_exhaustive: " + std::to_string(m) +
                           " members exceed the exhaustive cap of " +
                           std::to_string(kMaxExhaustiveMembers) +
                           "; use sampling instead");
  }
  struct AscendingMasks {
    std::uint64_t count;
    struct Iter {
      std::uint64_t v;
      std::uint64_t operator*() const { return v; }
      Iter& operator++() { ++v; return *this; }
      bool operator!=(const Iter& o) const { return v != o.v; }
    };
    Iter begin() const { return Iter{0}; }
    Iter end() const { return Iter{count}; }
  };
  return reduce_over_subsets(w, AscendingMasks{std::uint64_t{1} << m}, tol);
}

BoundCertificate universal_bounds_sampled(const WeavingInstance& w,
                                          std::uint64_t trials, std::uint64_t seed,
                                          const Tolerances& tol) {
  tol.validate();
  require_weavable(w);
  const int m = w.members();
  if (m > 63) {
    throw CapExceededError("universal_bounds_sampled: more than 63 members "
                           "cannot be indexed by a subset mask");
  }
  const std::uint64_t full =
      m == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << m) - 1;
  std::set<std::uint64_t> masks{0, full};
  SeededRng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    masks.insert(rng.next_u64() & full);
  }
  BoundCertificate cert = reduce_over_subsets(w, masks, tol);
  cert.sampled = true;
  return cert;
}

}  // namespace cwf
