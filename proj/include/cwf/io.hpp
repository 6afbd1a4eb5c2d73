#pragma once

#include <optional>
#include <string>

#include "cwf/theorems.hpp"

namespace cwf::io {

// ── problem documents ───────────────────────────────────────────────────────
// A problem file is a JSON object with keys
//   ambient_dim : positive integer
//   controls    : { "C": matrix, "Cprime": matrix }
//   k_operator  : matrix
//   lambda      : [ matrix, ... ]            (nonempty)
//   omega       : [ matrix, ... ]            (optional; makes it a pair)
//   expansion   : scalar-expansion table     (optional)
//   atoms       : local atom systems         (optional)
// where a matrix is { "rows": r, "cols": c, "entries": [[re, im], ...] } in
// row-major order.  Expansion coefficients are 0-based
// { "i": , "j": , "k": , "value": [re, im] } records plus an orthonormal
// "basis" matrix and a positive "m_floor".  Atoms are per-member arrays of
// vectors (each vector an array of [re, im] pairs) with stated bounds
// "alpha", "beta", "alpha_prime", "beta_prime".
struct ProblemFile {
  std::optional<ControlledInstance> single;  // set when "omega" is absent
  std::optional<WeavingInstance> weaving;    // set when "omega" is present
  std::optional<ScalarExpansion> expansion;
  std::optional<AtomicSystem> atoms;

  int dim() const { return single ? single->dim() : weaving->dim(); }
};

// Throws ParseError for malformed documents (bad JSON, missing keys, shape
// lies inside a matrix object) and lets model-level failures surface as
// ValidationError.  Caps on sizes raise CapExceededError.
ProblemFile parse_problem(const std::string& text, const Tolerances& tol = {});
ProblemFile load_problem(const std::string& path, const Tolerances& tol = {});

// Canonical emissions (sorted keys, shortest round-trip doubles): parsing an
// emission and emitting again reproduces the text byte for byte.
std::string emit_single(const ControlledInstance& inst);
std::string emit_weaving(const WeavingInstance& w,
                         const ScalarExpansion* expansion = nullptr,
                         const AtomicSystem* atoms = nullptr);

// 64-bit FNV-1a of the canonical core emission (auxiliary expansion/atom
// data excluded), rendered as "fnv1a:" plus 16 hex digits.
std::string digest_single(const ControlledInstance& inst);
std::string digest_weaving(const WeavingInstance& w);
std::string digest_problem(const ProblemFile& problem);

// ── result documents ────────────────────────────────────────────────────────
// Pretty-printed JSON reports.  Non-finite bounds (vacuous lower condition)
// are emitted as null with the certificate's advisory left to explain why.
std::string report_check(const BoundCertificate& cert, const Tolerances& tol,
                         const std::string& digest);
std::string report_check_pair(const BoundCertificate& lambda_cert,
                              const BoundCertificate& omega_cert,
                              const Tolerances& tol, const std::string& digest);
std::string report_weave(const BoundCertificate& cert, int members,
                         const Tolerances& tol, const std::string& digest);
std::string report_theorem(const TheoremReport& report, const Tolerances& tol,
                           const std::string& digest);

}  // namespace cwf::io
