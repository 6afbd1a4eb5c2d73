// cwf — command-line front end of the cwframes library.
//
// Exit codes: 0 affirmative verdict, 1 negative verdict, 2 parse/usage error,
// 3 validation error, 4 cap exceeded.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "cwframes.h"

namespace {

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCap = 4;

int exit_code_for(cwf_status status) {
  switch (status) {
    case CWF_OK:
      return kExitAffirmative;
    case CWF_ERR_PARSE:
    case CWF_ERR_ARGUMENT:
      return kExitParse;
    case CWF_ERR_VALIDATE:
    case CWF_ERR_NUMERIC:
      return kExitValidation;
    case CWF_ERR_CAP:
      return kExitCap;
  }
  return kExitValidation;
}

[[noreturn]] void die(cwf_status status) {
  std::cerr << "error: " << cwf_last_error() << "\n";
  std::exit(exit_code_for(status));
}

cwf_instance* load_instance(const std::string& path, const cwf_tolerances& tol) {
  cwf_instance* inst = nullptr;
  cwf_status status = CWF_OK;
  if (path == "-") {
    const std::string text{std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>()};
    status = cwf_instance_from_json(text.c_str(), &tol, &inst);
  } else {
    status = cwf_instance_from_file(path.c_str(), &tol, &inst);
  }
  if (status != CWF_OK) die(status);
  return inst;
}

// Prints the report JSON and translates the verdict into the exit code.
int finish_with_report(cwf_instance* inst, cwf_report* report) {
  char* text = nullptr;
  const cwf_status status = cwf_report_json(report, &text);
  if (status != CWF_OK) {
    cwf_report_free(report);
    cwf_instance_free(inst);
    die(status);
  }
  std::fputs(text, stdout);
  cwf_string_free(text);
  const int code = cwf_report_verdict(report) ? kExitAffirmative : kExitNegative;
  cwf_report_free(report);
  cwf_instance_free(inst);
  return code;
}

int emit_instance(cwf_instance* inst, const std::string& emit_path) {
  char* text = nullptr;
  const cwf_status status = cwf_instance_to_json(inst, &text);
  if (status != CWF_OK) {
    cwf_instance_free(inst);
    die(status);
  }
  int code = kExitAffirmative;
  if (emit_path.empty() || emit_path == "-") {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(emit_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << emit_path << "\n";
      code = kExitValidation;
    }
  }
  cwf_string_free(text);
  cwf_instance_free(inst);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for controlled operator-valued frames "
               "and their weavings"};
  app.require_subcommand(1);
  app.fallthrough();

  cwf_tolerances tol{1e-9, 1e-10, 1e-8};
  app.add_option("--tol-psd", tol.psd_tol,
                 "relative positive-semidefinite slack (default 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-bisect", tol.bisect_tol,
                 "absolute bisection width for optimal lower bounds "
                 "(default 1e-10)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-commute", tol.commute_tol,
                 "relative commutator slack (default 1e-8)")
      ->check(CLI::PositiveNumber);

  std::string check_path;
  CLI::App* check = app.add_subcommand(
      "check", "optimal frame bounds of a problem file ('-' reads stdin)");
  check->add_option("file", check_path, "problem JSON")->required();

  std::string weave_path;
  bool weave_exhaustive = false;
  std::uint64_t weave_sample = 0;
  std::uint64_t weave_seed = 1;
  CLI::App* weave = app.add_subcommand(
      "weave", "universal weaving bounds of a pair over its braids");
  weave->add_option("file", weave_path, "problem JSON with an omega family")
      ->required();
  CLI::Option_group* weave_mode =
      weave->add_option_group("mode", "braid enumeration mode");
  weave_mode->add_flag("--exhaustive", weave_exhaustive,
                       "enumerate all 2^m braids");
  weave_mode->add_option("--sample", weave_sample, "number of sampled braids")
      ->check(CLI::PositiveNumber);
  weave_mode->require_option(1);  // exactly one of --exhaustive / --sample
  weave->add_option("--seed", weave_seed, "sampling seed (default 1)");

  std::string theorem_id;
  std::string theorem_path;
  std::string theorem_candidate = "auto";
  std::string theorem_direction = "forward";
  std::string theorem_mode = "per-index";
  std::string theorem_atoms = "identity";
  CLI::App* theorem = app.add_subcommand(
      "theorem", "check one statement's hypotheses and claimed bounds");
  theorem
      ->add_option("id", theorem_id,
                   "bessel-sum | characterization | perturbation | "
                   "cross-synthesis | atomic | positive-gap")
      ->required()
      ->check(CLI::IsMember({"bessel-sum", "characterization", "perturbation",
                             "cross-synthesis", "atomic", "positive-gap"}));
  theorem->add_option("file", theorem_path, "problem JSON with an omega family")
      ->required();
  theorem->add_option("--candidate", theorem_candidate,
                      "characterization lower scale (number or 'auto')");
  theorem
      ->add_option("--direction", theorem_direction, "atomic transfer direction")
      ->check(CLI::IsMember({"forward", "backward"}));
  theorem->add_option("--mode", theorem_mode, "positive-gap variant")
      ->check(CLI::IsMember({"per-index", "all-subsets"}));
  theorem->add_option("--atoms", theorem_atoms, "atomic local frames")
      ->check(CLI::IsMember({"identity", "stored"}));

  int example_dim = 12;
  std::string example_emit;
  CLI::App* example = app.add_subcommand(
      "example", "emit the built-in banded pair with its expansion table");
  example->add_option("--dim", example_dim, "ambient dimension (>= 6)")
      ->required();
  example->add_option("--emit", example_emit, "output path (default stdout)");

  std::uint64_t gen_seed = 1;
  int gen_dim = 4;
  int gen_members = 4;
  std::string gen_emit;
  CLI::App* gen = app.add_subcommand(
      "gen", "emit a seeded random commuting weaving pair");
  gen->add_option("--seed", gen_seed, "generator seed (default 1)")->required();
  gen->add_option("--dim", gen_dim, "ambient dimension (default 4)");
  gen->add_option("--members", gen_members, "member count (default 4)");
  gen->add_option("--emit", gen_emit, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (check->parsed()) {
    cwf_instance* inst = load_instance(check_path, tol);
    cwf_report* report = nullptr;
    const cwf_status status = cwf_check_bounds(inst, &tol, &report);
    if (status != CWF_OK) {
      cwf_instance_free(inst);
      die(status);
    }
    return finish_with_report(inst, report);
  }

  if (weave->parsed()) {
    cwf_instance* inst = load_instance(weave_path, tol);
    cwf_report* report = nullptr;
    const cwf_status status =
        weave_sample > 0
            ? cwf_weave_sampled(inst, weave_sample, weave_seed, &tol, &report)
            : cwf_weave_exhaustive(inst, &tol, &report);
    if (status != CWF_OK) {
      cwf_instance_free(inst);
      die(status);
    }
    return finish_with_report(inst, report);
  }

  if (theorem->parsed()) {
    std::string options = "{";
    options += "\"direction\":\"" + theorem_direction + "\"";
    options += ",\"mode\":\"" + theorem_mode + "\"";
    options += ",\"atoms\":\"" + theorem_atoms + "\"";
    if (theorem_candidate != "auto") {
      char* end = nullptr;
      const double value = std::strtod(theorem_candidate.c_str(), &end);
      if (end == theorem_candidate.c_str() || *end != '\0') {
        std::cerr << "error: --candidate must be a number or 'auto'\n";
        return kExitParse;
      }
      options += ",\"candidate\":" + std::to_string(value);
    }
    options += "}";

    cwf_instance* inst = load_instance(theorem_path, tol);
    cwf_report* report = nullptr;
    const cwf_status status = cwf_check_theorem(inst, theorem_id.c_str(),
                                                options.c_str(), &tol, &report);
    if (status != CWF_OK) {
      cwf_instance_free(inst);
      die(status);
    }
    return finish_with_report(inst, report);
  }

  if (example->parsed()) {
    cwf_instance* inst = nullptr;
    const cwf_status status = cwf_instance_example(example_dim, &tol, &inst);
    if (status != CWF_OK) die(status);
    return emit_instance(inst, example_emit);
  }

  // gen
  cwf_instance* inst = nullptr;
  const cwf_status status =
      cwf_instance_random(gen_seed, gen_dim, gen_members, &tol, &inst);
  if (status != CWF_OK) die(status);
  return emit_instance(inst, gen_emit);
}
