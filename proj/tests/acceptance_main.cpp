// Acceptance harness: one criterion per line, exit code = number of failures.
// Criteria 1-3 drive the installed CLI binary (path in $CWF_CLI or argv[1]);
// the property suites 4-8 run in process against the library.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cwf/bounds.hpp"
#include "cwf/corpus.hpp"
#include "cwf/frame_ops.hpp"
#include "cwf/io.hpp"
#include "cwf/numerics.hpp"
#include "cwf/rng.hpp"
#include "cwf/theorems.hpp"
#include "cwf/weaving.hpp"
#include "json.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using cwf::Matrix;
using cwf::Vector;
using nlohmann::json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector gaussian_vector(cwf::SeededRng& rng, int n) {
  Vector f(n);
  for (int i = 0; i < n; ++i) f(i) = rng.complex_normal();
  return f;
}

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

std::string g_cli_path;
std::string g_work_dir;

CliResult run_cli(const std::string& args) {
  const std::string command = "\"" + g_cli_path + "\" " + args;
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> chunk;
  size_t got = 0;
  while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
    result.stdout_text.append(chunk.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct Criterion {
  int failures = 0;

  void report(int id, const std::string& title, bool ok,
              const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
                title.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

struct SweepCase {
  cwf::WeavingInstance w;
  std::optional<cwf::ScalarExpansion> expansion;
};

std::vector<SweepCase> build_sweep() {
  std::vector<SweepCase> cases;
  cases.reserve(200);
  const int dims[] = {2, 3, 4, 5, 6};
  const int member_counts[] = {2, 3, 4, 5, 6, 7, 8};
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const int dim = dims[i % 5];
    const int members = member_counts[i % 7];
    switch (i % 4) {
      case 0: {
        cwf::corpus::RandomSpec spec;
        spec.seed = seed;
        spec.dim = dim;
        spec.members = members;
        spec.max_codomain = std::min(3, dim);
        cases.push_back({cwf::corpus::random_pair(spec), std::nullopt});
        break;
      }
      case 1:
        cases.push_back(
            {cwf::corpus::positive_gap_pair(seed, dim, members), std::nullopt});
        break;
      case 2:
        cases.push_back(
            {cwf::corpus::cross_synthesis_pair(seed, dim, members),
             std::nullopt});
        break;
      default: {
        auto pair = cwf::corpus::perturbation_pair(seed, dim, members);
        cases.push_back({std::move(pair.instance), std::move(pair.expansion)});
        break;
      }
    }
  }
  return cases;
}

bool certified_and_disagrees(const cwf::TheoremReport& report, int* certified) {
  if (!report.hypotheses_hold) return false;
  ++*certified;
  return !report.oracle_agrees.has_value() || !*report.oracle_agrees;
}

// ── criteria 1-3: worked example and negative control through the CLI ──────
void criterion_1(Criterion& crit) {
  const auto start = Clock::now();
  std::ostringstream detail;
  bool ok = true;

  const std::string example_path = g_work_dir + "/example12.json";
  const auto gen = run_cli("example --dim 12 --emit " + example_path);
  if (gen.exit_code != 0) {
    crit.report(1, "worked example bounds", false,
                "example subcommand exited " + std::to_string(gen.exit_code));
    return;
  }
  const auto check = run_cli("check " + example_path);
  if (check.exit_code != 0) {
    crit.report(1, "worked example bounds", false,
                "check subcommand exited " + std::to_string(check.exit_code));
    return;
  }
  const auto doc = json::parse(check.stdout_text);
  const double la = doc.at("lambda").at("lower").get<double>();
  const double lb = doc.at("lambda").at("upper").get<double>();
  if (std::abs(la - 1.0) > 1e-9 || std::abs(lb - 2.0) > 1e-9) {
    ok = false;
    detail << "lambda bounds (" << la << ", " << lb << ") != (1, 2); ";
  }

  // Stated two-sided inequality for the omega family with constants (1, 5).
  const auto pair = cwf::corpus::banded_pair(12);
  const auto omega = pair.instance.omega_instance();
  const Matrix s_omega = cwf::frame_operator(omega).matrix;
  const Matrix identity = Matrix::Identity(12, 12);
  if (!cwf::loewner_leq(omega.k.kk_star(), s_omega) ||
      !cwf::loewner_leq(s_omega, 5.0 * identity)) {
    ok = false;
    detail << "omega Loewner pair (1, 5) violated; ";
  }

  const double omega_upper = doc.at("omega").at("upper").get<double>();
  if (std::abs(omega_upper - 2.25) > 1e-9) {
    ok = false;
    detail << "omega optimal upper computed " << omega_upper
           << ", stated 2.25; ";
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    detail << "runtime " << elapsed << "s >= 1s; ";
  }
  crit.report(1, "worked example bounds", ok, detail.str());
}

void criterion_2(Criterion& crit) {
  const auto start = Clock::now();
  std::ostringstream detail;
  bool ok = true;

  const std::string example_path = g_work_dir + "/example12.json";
  const auto weave = run_cli("weave --exhaustive " + example_path);
  if (weave.exit_code != 0) {
    crit.report(2, "worked example weaving", false,
                "weave subcommand exited " + std::to_string(weave.exit_code));
    return;
  }
  const auto doc = json::parse(weave.stdout_text);
  const double lower = doc.at("lower").get<double>();
  const double upper = doc.at("upper").get<double>();
  if (!doc.at("verdict").get<bool>()) {
    ok = false;
    detail << "not reported woven; ";
  }
  if (std::abs(lower - 1.0) > 1e-9) {
    ok = false;
    detail << "universal lower " << lower << " != 1; ";
  }
  if (upper > 3.25 + 1e-9) {
    ok = false;
    detail << "universal upper " << upper << " > 3.25; ";
  }

  const auto theorem = run_cli("theorem perturbation " + example_path);
  if (theorem.exit_code != 0) {
    ok = false;
    detail << "perturbation checker exited " << theorem.exit_code << "; ";
  } else {
    const auto report = json::parse(theorem.stdout_text);
    if (!report.at("hypotheses_hold").get<bool>()) {
      ok = false;
      detail << "perturbation hypotheses rejected; ";
    }
    for (const auto& h : report.at("hypotheses")) {
      if (h.at("name") == "diagonal-floor") {
        const double floor_measured = h.at("residual").get<double>();
        if (std::abs(floor_measured - 1.0) > 1e-9) {
          ok = false;
          detail << "diagonal floor M " << floor_measured << " != 1; ";
        }
      }
    }
    if (!report.at("oracle").at("agrees").get<bool>()) {
      ok = false;
      detail << "claimed interval does not contain the oracle interval; ";
    }
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    detail << "runtime " << elapsed << "s >= 10s; ";
  }
  crit.report(2, "worked example weaving (512 braids)", ok, detail.str());
}

void criterion_3(Criterion& crit) {
  std::ostringstream detail;
  bool ok = true;

  const std::string swap_path = g_work_dir + "/swap.json";
  {
    std::ofstream out(swap_path, std::ios::binary);
    out << cwf::io::emit_weaving(cwf::corpus::swap_pair());
  }
  const auto weave = run_cli("weave --exhaustive " + swap_path);
  if (weave.exit_code != 1) {
    ok = false;
    detail << "expected exit 1, got " << weave.exit_code << "; ";
  }
  const auto doc = json::parse(weave.stdout_text);
  if (doc.at("verdict").get<bool>()) {
    ok = false;
    detail << "swap pair reported woven; ";
  }
  const double lower =
      doc.at("lower").is_null() ? 0.0 : doc.at("lower").get<double>();
  if (!(lower < 1e-9)) {
    ok = false;
    detail << "worst lower " << lower << " not < 1e-9; ";
  }
  const auto mask = doc.at("worst_subset").at("mask").get<std::uint64_t>();
  if (mask != 1 && mask != 2) {
    ok = false;
    detail << "worst subset mask " << mask << " not in {1, 2}; ";
  }
  crit.report(3, "swap pair negative control", ok, detail.str());
}

// ── criterion 4: checker soundness sweep ────────────────────────────────────
void criterion_4(Criterion& crit, const std::vector<SweepCase>& sweep) {
  const auto start = Clock::now();
  int certified = 0;
  int counterexamples = 0;
  std::ostringstream detail;

  for (const SweepCase& sc : sweep) {
    const auto& w = sc.w;
    const auto oracle = cwf::universal_bounds_exhaustive(w);
    const double candidate =
        (std::isfinite(oracle.lower) && oracle.lower > 0.0) ? oracle.lower
                                                            : 0.5;

    std::vector<cwf::TheoremReport> reports;
    reports.push_back(cwf::check_bessel_sum(w, {}, &oracle));
    reports.push_back(cwf::check_characterization(w, candidate, {}, &oracle));
    reports.push_back(cwf::check_cross_synthesis(w, {}, &oracle));
    const auto atoms = cwf::corpus::identity_atoms(w);
    reports.push_back(cwf::check_atomic_equivalence(
        w, atoms, cwf::AtomicDirection::forward, {}, &oracle));
    reports.push_back(cwf::check_atomic_equivalence(
        w, atoms, cwf::AtomicDirection::backward, {}, &oracle));
    reports.push_back(
        cwf::check_positive_gap(w, cwf::GapMode::per_index, {}, &oracle));
    if (sc.expansion) {
      reports.push_back(
          cwf::check_perturbation_scalars(w, *sc.expansion, {}, &oracle));
    }

    for (const auto& report : reports) {
      if (certified_and_disagrees(report, &certified)) {
        ++counterexamples;
        if (counterexamples == 1) {
          detail << "first counterexample: " << report.theorem << " claimed ["
                 << report.claimed_lower << ", " << report.claimed_upper
                 << "] oracle [" << report.oracle_lower << ", "
                 << report.oracle_upper << "]; ";
        }
      }
    }
  }

  const double elapsed = seconds_since(start);
  bool ok = counterexamples == 0;
  if (certified < 400) {
    ok = false;
    detail << "sweep too weak: only " << certified << " certified claims; ";
  }
  if (elapsed >= 120.0) {
    ok = false;
    detail << "runtime " << elapsed << "s >= 120s; ";
  }
  detail << certified << " certified claims, " << counterexamples
         << " counterexamples over " << sweep.size() << " instances in "
         << elapsed << "s";
  crit.report(4, "theorem checker soundness sweep", ok, detail.str());
}

// ── criterion 5: lower-bound solver vs the diagonal oracle ─────────────────
void criterion_5(Criterion& crit) {
  cwf::SeededRng rng(777);
  const cwf::Tolerances tol;
  std::ostringstream detail;
  bool ok = true;

  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<double> s_diag(n), p_diag(n);
    bool any_active = false;
    for (int i = 0; i < n; ++i) {
      s_diag[i] = rng.uniform(0.0, 4.0);
      const bool active = rng.uniform(0.0, 1.0) > 0.3;
      p_diag[i] = active ? rng.uniform(0.3, 2.0) : 0.0;
      any_active = any_active || active;
    }
    if (!any_active) p_diag[0] = rng.uniform(0.3, 2.0);

    Matrix s = Matrix::Zero(n, n);
    Matrix p = Matrix::Zero(n, n);
    double exact = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      s(i, i) = s_diag[i];
      p(i, i) = p_diag[i];
      if (p_diag[i] > 0.0) exact = std::min(exact, s_diag[i] / p_diag[i]);
    }

    const double got = cwf::max_scale_psd(s, p, tol);
    if (std::abs(got - exact) > tol.bisect_tol) {
      ok = false;
      detail << "trial " << trial << ": solver " << got << " vs exact "
             << exact << "; ";
      break;
    }

    for (int probe = 0; probe < 10000; ++probe) {
      double num = 0.0;
      double den = 0.0;
      for (int i = 0; i < n; ++i) {
        const double mag = std::norm(rng.complex_normal());
        num += s_diag[i] * mag;
        den += p_diag[i] * mag;
      }
      if (den <= 1e-12) continue;
      if (got > num / den + 1e-6) {
        ok = false;
        detail << "trial " << trial << ": scale " << got
               << " exceeds Rayleigh ratio " << num / den << "; ";
        break;
      }
    }
  }
  crit.report(5, "diagonal oracle and Rayleigh consistency (100 x 10^4)", ok,
              detail.str());
}

// ── criterion 6: classical reduction ────────────────────────────────────────
void criterion_6(Criterion& crit) {
  std::ostringstream detail;
  bool ok = true;

  for (std::uint64_t seed = 1; seed <= 50 && ok; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 4);
    const int count = dim + 1 + static_cast<int>(seed % 3);
    const auto vectors = cwf::corpus::random_vector_family(seed, dim, count);
    const auto classical = cwf::classical_frame_bounds(vectors);
    const auto inst = cwf::corpus::induced_rank_one(vectors);
    const auto cert = cwf::optimal_bounds(inst);

    if (!cert.verdict || classical.lower <= 0.0) {
      ok = false;
      detail << "seed " << seed << ": verdict mismatch; ";
      break;
    }
    if (std::abs(cert.lower - classical.lower) > 1e-9 ||
        std::abs(cert.upper - classical.upper) > 1e-9) {
      ok = false;
      detail << "seed " << seed << ": bounds (" << cert.lower << ", "
             << cert.upper << ") vs classical (" << classical.lower << ", "
             << classical.upper << "); ";
      break;
    }

    cwf::SeededRng rng(seed ^ 0xabcdefULL);
    const Vector f = gaussian_vector(rng, dim);
    const Vector rebuilt = cwf::classical_reconstruct(vectors, f);
    const double rel = (rebuilt - f).norm() / f.norm();
    if (rel > 1e-8) {
      ok = false;
      detail << "seed " << seed << ": reconstruction error " << rel << "; ";
      break;
    }
  }
  crit.report(6, "classical frame reduction (50 families)", ok, detail.str());
}

// ── criterion 7: Bessel pair subadditivity ──────────────────────────────────
void criterion_7(Criterion& crit) {
  std::ostringstream detail;
  bool ok = true;

  for (int i = 0; i < 50 && ok; ++i) {
    cwf::corpus::RandomSpec spec;
    spec.seed = 4000 + static_cast<std::uint64_t>(i);
    spec.dim = 2 + i % 5;
    spec.members = 2 + i % 9;  // up to 10 members, 1024 braids
    spec.max_codomain = std::min(3, spec.dim);
    const auto w = cwf::corpus::random_pair(spec);

    const auto top = [](const cwf::ControlledInstance& inst) {
      const auto spec_eig = cwf::eig_hermitian(cwf::frame_operator(inst).matrix);
      return spec_eig.eigenvalues[spec_eig.eigenvalues.size() - 1];
    };
    const double budget =
        top(w.lambda_instance()) + top(w.omega_instance()) + 1e-9;

    for (std::uint64_t sigma = 0; sigma < (1ULL << w.members()); ++sigma) {
      const double upper = top(cwf::mixed_instance(w, sigma));
      if (upper > budget) {
        ok = false;
        detail << "pair " << i << " braid " << sigma << ": upper " << upper
               << " exceeds B1+B2 " << budget << "; ";
        break;
      }
    }
  }
  crit.report(7, "braid uppers within B1+B2 (50 Bessel pairs)", ok,
              detail.str());
}

// ── criterion 8: operator identities across the sweep ───────────────────────
void criterion_8(Criterion& crit, const std::vector<SweepCase>& sweep) {
  std::ostringstream detail;
  double worst_gram = 0.0;
  double worst_adjoint = 0.0;
  cwf::SeededRng rng(0x1dea);

  for (const SweepCase& sc : sweep) {
    if (!sc.w.commutation_ok) continue;
    const std::uint64_t sigma = rng.below(1ULL << sc.w.members());
    const cwf::ControlledInstance braids[] = {
        sc.w.lambda_instance(), sc.w.omega_instance(),
        cwf::mixed_instance(sc.w, sigma)};
    for (const auto& inst : braids) {
      const auto layout = cwf::GBasisLayout::for_family(inst.family);
      const Matrix synthesis = cwf::synthesis_matrix(inst, layout);
      const Matrix gram = synthesis * synthesis.adjoint();
      const Matrix s = cwf::frame_operator(inst).matrix;
      const double scale = std::max(1.0, cwf::frobenius(s));
      worst_gram = std::max(
          worst_gram,
          cwf::frobenius(cwf::hermitize(gram).matrix - s) / scale);

      const Vector f = gaussian_vector(rng, inst.dim());
      const Vector via_adjoint = synthesis.adjoint() * f;
      const Vector via_analysis =
          layout.flatten(cwf::analysis_apply(inst, f));
      worst_adjoint =
          std::max(worst_adjoint,
                   (via_adjoint - via_analysis).norm() / (1.0 + f.norm()));
    }
  }

  bool ok = worst_gram <= 1e-9 && worst_adjoint <= 1e-10;
  detail << "max synthesis-gram deviation " << worst_gram
         << ", max adjoint residual " << worst_adjoint;
  crit.report(8, "synthesis/analysis operator identities", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli_env = std::getenv("CWF_CLI");
  if (argc > 1) {
    g_cli_path = argv[1];
  } else if (cli_env != nullptr) {
    g_cli_path = cli_env;
  } else {
    std::fprintf(stderr,
                 "acceptance: set CWF_CLI or pass the CLI path as argv[1]\n");
    return 64;
  }

  char work_template[] = "/tmp/cwf-acceptance-XXXXXX";
  const char* work = mkdtemp(work_template);
  if (work == nullptr) {
    std::fprintf(stderr, "acceptance: cannot create a scratch directory\n");
    return 64;
  }
  g_work_dir = work;

  Criterion crit;
  criterion_1(crit);
  criterion_2(crit);
  criterion_3(crit);

  const auto sweep = build_sweep();
  criterion_4(crit, sweep);
  criterion_5(crit);
  criterion_6(crit);
  criterion_7(crit);
  criterion_8(crit, sweep);

  std::printf("%d of 8 criteria failed\n", crit.failures);
  return crit.failures;
}
