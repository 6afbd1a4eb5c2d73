#include "cwf/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace cwf::io {

namespace {

using nlohmann::json;

constexpr int kMaxAmbientDim = 1024;
constexpr int kMaxCodomainDim = 4096;
constexpr std::size_t kMaxMembers = 4096;

[[noreturn]] void fail(const std::string& message) {
  throw ParseError("problem document: " + message);
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + " is missing key '" + key + "'");
  return *it;
}

int need_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -kMaxCodomainDim || v > kMaxCodomainDim) {
    throw CapExceededError(what + " = " + std::to_string(v) +
                           " is outside the supported range");
  }
  return static_cast<int>(v);
}

double need_number(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  return j.get<double>();
}

Complex parse_entry(const json& e, const std::string& what) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    fail(what + ": every entry must be a [re, im] pair of numbers");
  }
  return Complex(e[0].get<double>(), e[1].get<double>());
}

Matrix parse_matrix(const json& j, const std::string& what) {
  if (!j.is_object()) fail(what + " must be a matrix object");
  const int rows = need_int(need(j, "rows", what), what + ".rows");
  const int cols = need_int(need(j, "cols", what), what + ".cols");
  if (rows < 1 || cols < 1) fail(what + ": dimensions must be positive");
  if (rows > kMaxCodomainDim || cols > kMaxAmbientDim) {
    throw CapExceededError(what + ": " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " exceeds the supported size");
  }
  const json& entries = need(j, "entries", what);
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(rows) * cols) {
    fail(what + ": entries must hold exactly rows*cols pairs in row-major order");
  }
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = parse_entry(entries[idx++], what);
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    fail(what + " must be a nonempty array of [re, im] pairs");
  }
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = parse_entry(j[i], what);
  return v;
}

std::vector<Matrix> parse_family(const json& arr, const std::string& name) {
  if (!arr.is_array() || arr.empty()) {
    fail(name + " must be a nonempty array of matrices");
  }
  if (arr.size() > kMaxMembers) {
    throw CapExceededError(name + ": " + std::to_string(arr.size()) +
                           " members exceed the supported count");
  }
  std::vector<Matrix> members;
  members.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    members.push_back(parse_matrix(arr[i], name + "[" + std::to_string(i) + "]"));
  }
  return members;
}

ScalarExpansion parse_expansion(const json& j, int dim, int members) {
  ScalarExpansion out;
  out.basis = parse_matrix(need(j, "basis", "expansion"), "expansion.basis");
  out.m_floor = need_number(need(j, "m_floor", "expansion"), "expansion.m_floor");
  const json& coeffs = need(j, "coefficients", "expansion");
  if (!coeffs.is_array()) fail("expansion.coefficients must be an array");
  for (const json& rec : coeffs) {
    const int i = need_int(need(rec, "i", "expansion coefficient"), "expansion.i");
    const int jj = need_int(need(rec, "j", "expansion coefficient"), "expansion.j");
    const int k = need_int(need(rec, "k", "expansion coefficient"), "expansion.k");
    if (i < 0 || i >= dim || k < 0 || k >= dim || jj < 0 || jj >= members) {
      throw ValidationError("expansion coefficient (" + std::to_string(i) + ", " +
                            std::to_string(jj) + ", " + std::to_string(k) +
                            ") is out of range (0-based indices)");
    }
    out.coefficients[{i, jj, k}] =
        parse_entry(need(rec, "value", "expansion coefficient"),
                    "expansion coefficient value");
  }
  return out;
}

std::vector<std::vector<Vector>> parse_atom_side(const json& arr,
                                                 const std::string& name) {
  if (!arr.is_array() || arr.empty()) {
    fail(name + " must be a nonempty array (one atom list per member)");
  }
  std::vector<std::vector<Vector>> out;
  out.reserve(arr.size());
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const json& list = arr[j];
    const std::string where = name + "[" + std::to_string(j) + "]";
    if (!list.is_array() || list.empty()) {
      fail(where + " must be a nonempty array of vectors");
    }
    std::vector<Vector> atoms;
    atoms.reserve(list.size());
    for (std::size_t a = 0; a < list.size(); ++a) {
      atoms.push_back(parse_vector(list[a], where + "[" + std::to_string(a) + "]"));
    }
    out.push_back(std::move(atoms));
  }
  return out;
}

AtomicSystem parse_atoms(const json& j) {
  AtomicSystem out;
  out.lambda_atoms = parse_atom_side(need(j, "lambda", "atoms"), "atoms.lambda");
  out.omega_atoms = parse_atom_side(need(j, "omega", "atoms"), "atoms.omega");
  out.alpha = j.contains("alpha") ? need_number(j.at("alpha"), "atoms.alpha") : 1.0;
  out.beta = j.contains("beta") ? need_number(j.at("beta"), "atoms.beta") : 1.0;
  out.alpha_prime = j.contains("alpha_prime")
                        ? need_number(j.at("alpha_prime"), "atoms.alpha_prime")
                        : 1.0;
  out.beta_prime = j.contains("beta_prime")
                       ? need_number(j.at("beta_prime"), "atoms.beta_prime")
                       : 1.0;
  return out;
}

json matrix_json(const Matrix& m) {
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  json out;
  out["rows"] = static_cast<int>(m.rows());
  out["cols"] = static_cast<int>(m.cols());
  out["entries"] = std::move(entries);
  return out;
}

json family_json(const GFrameFamily& family) {
  json arr = json::array();
  for (int j = 0; j < family.size(); ++j) arr.push_back(matrix_json(family.member(j)));
  return arr;
}

json vector_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) {
    arr.push_back(json::array({v[i].real(), v[i].imag()}));
  }
  return arr;
}

json expansion_json(const ScalarExpansion& e) {
  json coeffs = json::array();
  for (const auto& [key, value] : e.coefficients) {
    const auto& [i, j, k] = key;
    json rec;
    rec["i"] = i;
    rec["j"] = j;
    rec["k"] = k;
    rec["value"] = json::array({value.real(), value.imag()});
    coeffs.push_back(std::move(rec));
  }
  json out;
  out["basis"] = matrix_json(e.basis);
  out["m_floor"] = e.m_floor;
  out["coefficients"] = std::move(coeffs);
  return out;
}

json atoms_json(const AtomicSystem& atoms) {
  const auto side = [](const std::vector<std::vector<Vector>>& lists) {
    json arr = json::array();
    for (const auto& list : lists) {
      json inner = json::array();
      for (const Vector& v : list) inner.push_back(vector_json(v));
      arr.push_back(std::move(inner));
    }
    return arr;
  };
  json out;
  out["lambda"] = side(atoms.lambda_atoms);
  out["omega"] = side(atoms.omega_atoms);
  out["alpha"] = atoms.alpha;
  out["beta"] = atoms.beta;
  out["alpha_prime"] = atoms.alpha_prime;
  out["beta_prime"] = atoms.beta_prime;
  return out;
}

json core_json(int dim, const ControlPair& controls, const KOperator& k,
               const GFrameFamily& lambda, const GFrameFamily* omega) {
  json doc;
  doc["ambient_dim"] = dim;
  doc["controls"]["C"] = matrix_json(controls.c());
  doc["controls"]["Cprime"] = matrix_json(controls.cprime());
  doc["k_operator"] = matrix_json(k.k());
  doc["lambda"] = family_json(lambda);
  if (omega != nullptr) doc["omega"] = family_json(*omega);
  return doc;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char byte : text) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string digest_of(const json& core) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a(core.dump())));
  return buf;
}

json tolerances_json(const Tolerances& tol) {
  json out;
  out["psd_tol"] = tol.psd_tol;
  out["bisect_tol"] = tol.bisect_tol;
  out["commute_tol"] = tol.commute_tol;
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json cert_json(const BoundCertificate& cert) {
  json out;
  out["verdict"] = cert.verdict;
  out["lower"] = finite_or_null(cert.lower);
  out["upper"] = finite_or_null(cert.upper);
  if (!cert.advisory.empty()) out["advisory"] = cert.advisory;
  return out;
}

std::string finish(json doc, const Tolerances& tol, const std::string& digest) {
  doc["tolerances"] = tolerances_json(tol);
  doc["instance_digest"] = digest;
  return doc.dump(2) + "\n";
}

}  // namespace

ProblemFile parse_problem(const std::string& text, const Tolerances& tol) {
  tol.validate();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem document: invalid JSON (") + e.what() +
                     ")");
  }
  if (!doc.is_object()) fail("top level must be an object");
  const int dim = need_int(need(doc, "ambient_dim", "document"), "ambient_dim");
  if (dim < 1) fail("ambient_dim must be positive");
  if (dim > kMaxAmbientDim) {
    throw CapExceededError("ambient_dim " + std::to_string(dim) +
                           " exceeds the supported cap of " +
                           std::to_string(kMaxAmbientDim));
  }
  const json& controls = need(doc, "controls", "document");
  const Matrix c = parse_matrix(need(controls, "C", "controls"), "controls.C");
  const Matrix cp =
      parse_matrix(need(controls, "Cprime", "controls"), "controls.Cprime");
  const Matrix k = parse_matrix(need(doc, "k_operator", "document"), "k_operator");
  std::vector<Matrix> lambda = parse_family(need(doc, "lambda", "document"), "lambda");

  ProblemFile out;
  if (doc.contains("omega")) {
    std::vector<Matrix> omega = parse_family(doc.at("omega"), "omega");
    out.weaving = build_weaving_instance(GFrameFamily(dim, std::move(lambda)),
                                         GFrameFamily(dim, std::move(omega)), c,
                                         cp, k, tol);
  } else {
    out.single = build_controlled_instance(GFrameFamily(dim, std::move(lambda)),
                                           c, cp, k, tol);
  }

  if (doc.contains("expansion")) {
    if (!out.weaving) {
      throw ValidationError("expansion data requires a weaving pair "
                            "(an 'omega' family)");
    }
    out.expansion = parse_expansion(doc.at("expansion"), dim,
                                    out.weaving->members());
  }
  if (doc.contains("atoms")) {
    if (!out.weaving) {
      throw ValidationError("atom data requires a weaving pair "
                            "(an 'omega' family)");
    }
    out.atoms = parse_atoms(doc.at("atoms"));
  }
  return out;
}

ProblemFile load_problem(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str(), tol);
}

std::string emit_single(const ControlledInstance& inst) {
  return core_json(inst.dim(), inst.controls, inst.k, inst.family, nullptr)
             .dump(2) +
         "\n";
}

std::string emit_weaving(const WeavingInstance& w, const ScalarExpansion* expansion,
                         const AtomicSystem* atoms) {
  json doc = core_json(w.dim(), w.controls, w.k, w.lambda, &w.omega);
  if (expansion != nullptr) doc["expansion"] = expansion_json(*expansion);
  if (atoms != nullptr) doc["atoms"] = atoms_json(*atoms);
  return doc.dump(2) + "\n";
}

std::string digest_single(const ControlledInstance& inst) {
  return digest_of(core_json(inst.dim(), inst.controls, inst.k, inst.family,
                             nullptr));
}

std::string digest_weaving(const WeavingInstance& w) {
  return digest_of(core_json(w.dim(), w.controls, w.k, w.lambda, &w.omega));
}

std::string digest_problem(const ProblemFile& problem) {
  return problem.weaving ? digest_weaving(*problem.weaving)
                         : digest_single(*problem.single);
}

std::string report_check(const BoundCertificate& cert, const Tolerances& tol,
                         const std::string& digest) {
  json doc = cert_json(cert);
  doc["command"] = "check";
  return finish(std::move(doc), tol, digest);
}

std::string report_check_pair(const BoundCertificate& lambda_cert,
                              const BoundCertificate& omega_cert,
                              const Tolerances& tol, const std::string& digest) {
  json doc;
  doc["command"] = "check";
  doc["verdict"] = lambda_cert.verdict && omega_cert.verdict;
  doc["lambda"] = cert_json(lambda_cert);
  doc["omega"] = cert_json(omega_cert);
  return finish(std::move(doc), tol, digest);
}

std::string report_weave(const BoundCertificate& cert, int members,
                         const Tolerances& tol, const std::string& digest) {
  json doc = cert_json(cert);
  doc["command"] = "weave";
  doc["sampled"] = cert.sampled;
  if (cert.worst_subset) {
    json members_list = json::array();
    for (int j = 0; j < members; ++j) {
      if ((*cert.worst_subset >> j) & 1ULL) members_list.push_back(j + 1);
    }
    doc["worst_subset"]["mask"] = *cert.worst_subset;
    doc["worst_subset"]["lambda_members"] = std::move(members_list);
  }
  return finish(std::move(doc), tol, digest);
}

std::string report_theorem(const TheoremReport& report, const Tolerances& tol,
                           const std::string& digest) {
  json doc;
  doc["command"] = "theorem";
  doc["theorem"] = report.theorem;
  doc["verdict"] = report.hypotheses_hold &&
                   (!report.oracle_agrees || *report.oracle_agrees);
  doc["hypotheses_hold"] = report.hypotheses_hold;
  json checks = json::array();
  for (const HypothesisCheck& h : report.hypotheses) {
    json rec;
    rec["name"] = h.name;
    rec["ok"] = h.ok;
    rec["residual"] = finite_or_null(h.residual);
    if (!h.detail.empty()) rec["detail"] = h.detail;
    checks.push_back(std::move(rec));
  }
  doc["hypotheses"] = std::move(checks);
  doc["lower"] = finite_or_null(report.claimed_lower);
  doc["upper"] = finite_or_null(report.claimed_upper);
  doc["claims_weaving"] = report.claims_weaving;
  if (report.oracle_agrees) {
    doc["oracle"]["agrees"] = *report.oracle_agrees;
    doc["oracle"]["lower"] = finite_or_null(report.oracle_lower);
    doc["oracle"]["upper"] = finite_or_null(report.oracle_upper);
  }
  if (!report.notes.empty()) doc["notes"] = report.notes;
  return finish(std::move(doc), tol, digest);
}

}  // namespace cwf::io
