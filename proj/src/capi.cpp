#include "cwframes.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

#include <json.hpp>

#include "cwf/corpus.hpp"
#include "cwf/io.hpp"
#include "cwf/theorems.hpp"
#include "cwf/weaving.hpp"

struct cwf_instance {
  cwf::io::ProblemFile problem;
};

struct cwf_report {
  bool verdict = false;
  double lower = 0.0;
  double upper = 0.0;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

cwf_status argument_error(const std::string& message) {
  g_last_error = message;
  return CWF_ERR_ARGUMENT;
}

cwf::Tolerances to_tolerances(const cwf_tolerances* tol) {
  cwf::Tolerances out;
  if (tol != nullptr) {
    out.psd_tol = tol->psd_tol;
    out.bisect_tol = tol->bisect_tol;
    out.commute_tol = tol->commute_tol;
  }
  return out;
}

template <typename Fn>
cwf_status guarded(Fn&& fn) {
  try {
    fn();
    return CWF_OK;
  } catch (const cwf::ParseError& e) {
    g_last_error = e.what();
    return CWF_ERR_PARSE;
  } catch (const cwf::ValidationError& e) {
    g_last_error = e.what();
    return CWF_ERR_VALIDATE;
  } catch (const cwf::CapExceededError& e) {
    g_last_error = e.what();
    return CWF_ERR_CAP;
  } catch (const cwf::NumericError& e) {
    g_last_error = e.what();
    return CWF_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return CWF_ERR_NUMERIC;
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

const cwf::WeavingInstance& require_pair(const cwf_instance& inst,
                                         const char* who) {
  if (!inst.problem.weaving) {
    throw cwf::ValidationError(std::string(who) +
                               ": the instance must be a weaving pair "
                               "(no omega family present)");
  }
  return *inst.problem.weaving;
}

cwf_report* report_from_certificate(const cwf::BoundCertificate& cert,
                                    std::string json) {
  return new cwf_report{cert.verdict, cert.lower, cert.upper, std::move(json)};
}

}  // namespace

extern "C" {

const char* cwf_last_error(void) { return g_last_error.c_str(); }

cwf_status cwf_instance_from_json(const char* text, const cwf_tolerances* tol,
                                  cwf_instance** out) {
  if (text == nullptr || out == nullptr) {
    return argument_error("cwf_instance_from_json: null argument");
  }
  return guarded([&] {
    *out = new cwf_instance{cwf::io::parse_problem(text, to_tolerances(tol))};
  });
}

cwf_status cwf_instance_from_file(const char* path, const cwf_tolerances* tol,
                                  cwf_instance** out) {
  if (path == nullptr || out == nullptr) {
    return argument_error("cwf_instance_from_file: null argument");
  }
  return guarded([&] {
    *out = new cwf_instance{cwf::io::load_problem(path, to_tolerances(tol))};
  });
}

cwf_status cwf_instance_example(int dim, const cwf_tolerances* tol,
                                cwf_instance** out) {
  if (out == nullptr) return argument_error("cwf_instance_example: null output");
  return guarded([&] {
    cwf::corpus::ExpandedPair pair =
        cwf::corpus::banded_pair(dim, to_tolerances(tol));
    cwf::io::ProblemFile problem;
    problem.weaving = std::move(pair.instance);
    problem.expansion = std::move(pair.expansion);
    *out = new cwf_instance{std::move(problem)};
  });
}

cwf_status cwf_instance_random(uint64_t seed, int dim, int members,
                               const cwf_tolerances* tol, cwf_instance** out) {
  if (out == nullptr) return argument_error("cwf_instance_random: null output");
  return guarded([&] {
    cwf::corpus::RandomSpec spec;
    spec.seed = seed;
    spec.dim = dim;
    spec.members = members;
    cwf::io::ProblemFile problem;
    problem.weaving = cwf::corpus::random_pair(spec, to_tolerances(tol));
    *out = new cwf_instance{std::move(problem)};
  });
}

cwf_status cwf_instance_to_json(const cwf_instance* inst, char** out_text) {
  if (inst == nullptr || out_text == nullptr) {
    return argument_error("cwf_instance_to_json: null argument");
  }
  return guarded([&] {
    const cwf::io::ProblemFile& p = inst->problem;
    const std::string text =
        p.weaving ? cwf::io::emit_weaving(
                        *p.weaving, p.expansion ? &*p.expansion : nullptr,
                        p.atoms ? &*p.atoms : nullptr)
                  : cwf::io::emit_single(*p.single);
    char* copy = copy_string(text);
    if (copy == nullptr) throw std::bad_alloc();
    *out_text = copy;
  });
}

int cwf_instance_is_pair(const cwf_instance* inst) {
  return inst != nullptr && inst->problem.weaving ? 1 : 0;
}

int cwf_instance_dim(const cwf_instance* inst) {
  return inst == nullptr ? 0 : inst->problem.dim();
}

int cwf_instance_members(const cwf_instance* inst) {
  if (inst == nullptr) return 0;
  return inst->problem.weaving ? inst->problem.weaving->members()
                               : inst->problem.single->family.size();
}

void cwf_instance_free(cwf_instance* inst) { delete inst; }

cwf_status cwf_check_bounds(const cwf_instance* inst, const cwf_tolerances* tol,
                            cwf_report** out) {
  if (inst == nullptr || out == nullptr) {
    return argument_error("cwf_check_bounds: null argument");
  }
  return guarded([&] {
    const cwf::Tolerances t = to_tolerances(tol);
    if (inst->problem.weaving) {
      const cwf::WeavingInstance& w = *inst->problem.weaving;
      const cwf::BoundCertificate lc = optimal_bounds(w.lambda_instance(), t);
      const cwf::BoundCertificate oc = optimal_bounds(w.omega_instance(), t);
      auto* report = new cwf_report;
      report->verdict = lc.verdict && oc.verdict;
      report->lower = std::min(lc.lower, oc.lower);
      report->upper = std::max(lc.upper, oc.upper);
      report->json =
          cwf::io::report_check_pair(lc, oc, t, cwf::io::digest_weaving(w));
      *out = report;
    } else {
      const cwf::ControlledInstance& single = *inst->problem.single;
      const cwf::BoundCertificate cert = optimal_bounds(single, t);
      *out = report_from_certificate(
          cert, cwf::io::report_check(cert, t, cwf::io::digest_single(single)));
    }
  });
}

cwf_status cwf_weave_exhaustive(const cwf_instance* inst,
                                const cwf_tolerances* tol, cwf_report** out) {
  if (inst == nullptr || out == nullptr) {
    return argument_error("cwf_weave_exhaustive: null argument");
  }
  return guarded([&] {
    const cwf::WeavingInstance& w = require_pair(*inst, "cwf_weave_exhaustive");
    const cwf::Tolerances t = to_tolerances(tol);
    const cwf::BoundCertificate cert = universal_bounds_exhaustive(w, t);
    *out = report_from_certificate(
        cert, cwf::io::report_weave(cert, w.members(), t,
                                    cwf::io::digest_weaving(w)));
  });
}

cwf_status cwf_weave_sampled(const cwf_instance* inst, uint64_t trials,
                             uint64_t seed, const cwf_tolerances* tol,
                             cwf_report** out) {
  if (inst == nullptr || out == nullptr) {
    return argument_error("cwf_weave_sampled: null argument");
  }
  return guarded([&] {
    const cwf::WeavingInstance& w = require_pair(*inst, "cwf_weave_sampled");
    const cwf::Tolerances t = to_tolerances(tol);
    const cwf::BoundCertificate cert = universal_bounds_sampled(w, trials, seed, t);
    *out = report_from_certificate(
        cert, cwf::io::report_weave(cert, w.members(), t,
                                    cwf::io::digest_weaving(w)));
  });
}

cwf_status cwf_check_theorem(const cwf_instance* inst, const char* theorem_id,
                             const char* options_json, const cwf_tolerances* tol,
                             cwf_report** out) {
  if (inst == nullptr || theorem_id == nullptr || out == nullptr) {
    return argument_error("cwf_check_theorem: null argument");
  }
  const std::string id = theorem_id;
  const bool known = id == "bessel-sum" || id == "characterization" ||
                     id == "perturbation" || id == "cross-synthesis" ||
                     id == "atomic" || id == "positive-gap";
  if (!known) {
    return argument_error("cwf_check_theorem: unknown theorem id '" + id + "'");
  }

  nlohmann::json options = nlohmann::json::object();
  if (options_json != nullptr && options_json[0] != '\0') {
    try {
      options = nlohmann::json::parse(options_json);
    } catch (const nlohmann::json::exception& e) {
      g_last_error = std::string("cwf_check_theorem: invalid options JSON (") +
                     e.what() + ")";
      return CWF_ERR_PARSE;
    }
    if (!options.is_object()) {
      return argument_error("cwf_check_theorem: options must be a JSON object");
    }
  }

  return guarded([&] {
    const cwf::WeavingInstance& w = require_pair(*inst, "cwf_check_theorem");
    const cwf::Tolerances t = to_tolerances(tol);
    cwf::TheoremReport report;

    if (id == "bessel-sum") {
      report = cwf::check_bessel_sum(w, t);
    } else if (id == "characterization") {
      const cwf::BoundCertificate oracle = universal_bounds_exhaustive(w, t);
      double candidate = oracle.lower;
      if (options.contains("candidate") && !options["candidate"].is_string()) {
        if (!options["candidate"].is_number()) {
          throw cwf::ValidationError("characterization: 'candidate' must be a "
                                     "number or \"auto\"");
        }
        candidate = options["candidate"].get<double>();
      }
      report = cwf::check_characterization(w, candidate, t, &oracle);
    } else if (id == "perturbation") {
      if (!inst->problem.expansion) {
        throw cwf::ValidationError("perturbation check requires expansion data "
                                   "in the instance");
      }
      report = cwf::check_perturbation_scalars(w, *inst->problem.expansion, t);
    } else if (id == "cross-synthesis") {
      report = cwf::check_cross_synthesis(w, t);
    } else if (id == "atomic") {
      cwf::AtomicDirection direction = cwf::AtomicDirection::forward;
      if (options.contains("direction")) {
        const std::string d = options["direction"].get<std::string>();
        if (d == "backward") {
          direction = cwf::AtomicDirection::backward;
        } else if (d != "forward") {
          throw cwf::ValidationError("atomic: 'direction' must be \"forward\" "
                                     "or \"backward\"");
        }
      }
      cwf::AtomicSystem atoms;
      const std::string which =
          options.contains("atoms") ? options["atoms"].get<std::string>()
                                    : std::string("identity");
      if (which == "stored") {
        if (!inst->problem.atoms) {
          throw cwf::ValidationError("atomic: the instance carries no stored "
                                     "atoms");
        }
        atoms = *inst->problem.atoms;
      } else if (which == "identity") {
        atoms = cwf::corpus::identity_atoms(w);
      } else {
        throw cwf::ValidationError("atomic: 'atoms' must be \"identity\" or "
                                   "\"stored\"");
      }
      report = cwf::check_atomic_equivalence(w, atoms, direction, t);
    } else {  // positive-gap
      cwf::GapMode mode = cwf::GapMode::per_index;
      if (options.contains("mode")) {
        const std::string m = options["mode"].get<std::string>();
        if (m == "all-subsets") {
          mode = cwf::GapMode::all_subsets;
        } else if (m != "per-index") {
          throw cwf::ValidationError("positive-gap: 'mode' must be "
                                     "\"per-index\" or \"all-subsets\"");
        }
      }
      report = cwf::check_positive_gap(w, mode, t);
    }

    auto* result = new cwf_report;
    result->verdict = report.hypotheses_hold &&
                      (!report.oracle_agrees || *report.oracle_agrees);
    result->lower = report.claimed_lower;
    result->upper = report.claimed_upper;
    result->json = cwf::io::report_theorem(report, t, cwf::io::digest_weaving(w));
    *out = result;
  });
}

int cwf_report_verdict(const cwf_report* report) {
  return report != nullptr && report->verdict ? 1 : 0;
}

double cwf_report_lower(const cwf_report* report) {
  return report == nullptr ? std::numeric_limits<double>::quiet_NaN()
                           : report->lower;
}

double cwf_report_upper(const cwf_report* report) {
  return report == nullptr ? std::numeric_limits<double>::quiet_NaN()
                           : report->upper;
}

cwf_status cwf_report_json(const cwf_report* report, char** out_text) {
  if (report == nullptr || out_text == nullptr) {
    return argument_error("cwf_report_json: null argument");
  }
  char* copy = copy_string(report->json);
  if (copy == nullptr) {
    g_last_error = "cwf_report_json: allocation failed";
    return CWF_ERR_NUMERIC;
  }
  *out_text = copy;
  return CWF_OK;
}

void cwf_report_free(cwf_report* report) { delete report; }

void cwf_string_free(char* text) { std::free(text); }

}  // extern "C"
