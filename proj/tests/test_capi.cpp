#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>

#include "cwframes.h"
#include "doctest.h"
#include "json.hpp"

namespace {

struct InstanceGuard {
  cwf_instance* ptr = nullptr;
  ~InstanceGuard() { cwf_instance_free(ptr); }
};

struct ReportGuard {
  cwf_report* ptr = nullptr;
  ~ReportGuard() { cwf_report_free(ptr); }
};

std::string report_text(const cwf_report* report) {
  char* text = nullptr;
  REQUIRE(cwf_report_json(report, &text) == CWF_OK);
  std::string out(text);
  cwf_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("the packaged example instance exposes its shape and bounds") {
  InstanceGuard inst;
  REQUIRE(cwf_instance_example(12, nullptr, &inst.ptr) == CWF_OK);
  CHECK(cwf_instance_is_pair(inst.ptr) == 1);
  CHECK(cwf_instance_dim(inst.ptr) == 12);
  CHECK(cwf_instance_members(inst.ptr) == 9);

  ReportGuard report;
  REQUIRE(cwf_check_bounds(inst.ptr, nullptr, &report.ptr) == CWF_OK);
  CHECK(cwf_report_verdict(report.ptr) == 1);
  // Pair check: lower is the smaller of the two family lower bounds, upper
  // the larger of the two uppers.
  CHECK(std::abs(cwf_report_lower(report.ptr) - 1.0) < 1e-9);
  CHECK(std::abs(cwf_report_upper(report.ptr) - 2.5625) < 1e-9);

  const auto doc = nlohmann::json::parse(report_text(report.ptr));
  CHECK(doc.at("command") == "check");
  CHECK(doc.at("lambda").at("upper").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("round trip through JSON preserves the instance digest") {
  InstanceGuard inst;
  REQUIRE(cwf_instance_example(8, nullptr, &inst.ptr) == CWF_OK);

  char* text = nullptr;
  REQUIRE(cwf_instance_to_json(inst.ptr, &text) == CWF_OK);
  InstanceGuard back;
  REQUIRE(cwf_instance_from_json(text, nullptr, &back.ptr) == CWF_OK);

  char* text2 = nullptr;
  REQUIRE(cwf_instance_to_json(back.ptr, &text2) == CWF_OK);
  CHECK(std::strcmp(text, text2) == 0);
  cwf_string_free(text);
  cwf_string_free(text2);
}

TEST_CASE("exhaustive weaving verdicts flow through the C surface") {
  InstanceGuard inst;
  REQUIRE(cwf_instance_example(7, nullptr, &inst.ptr) == CWF_OK);

  ReportGuard weave;
  REQUIRE(cwf_weave_exhaustive(inst.ptr, nullptr, &weave.ptr) == CWF_OK);
  CHECK(cwf_report_verdict(weave.ptr) == 1);
  CHECK(std::abs(cwf_report_lower(weave.ptr) - 1.0) < 1e-9);
  CHECK(std::abs(cwf_report_upper(weave.ptr) - 2.5625) < 1e-9);

  ReportGuard sampled;
  REQUIRE(cwf_weave_sampled(inst.ptr, 8, 42, nullptr, &sampled.ptr) == CWF_OK);
  const auto doc = nlohmann::json::parse(report_text(sampled.ptr));
  CHECK(doc.at("sampled").get<bool>());
  CHECK(cwf_report_lower(sampled.ptr) >= cwf_report_lower(weave.ptr) - 1e-12);
  CHECK(cwf_report_upper(sampled.ptr) <= cwf_report_upper(weave.ptr) + 1e-12);
}

TEST_CASE("theorem checks accept options and report through JSON") {
  InstanceGuard inst;
  REQUIRE(cwf_instance_example(9, nullptr, &inst.ptr) == CWF_OK);

  SUBCASE("perturbation uses the stored expansion") {
    ReportGuard report;
    REQUIRE(cwf_check_theorem(inst.ptr, "perturbation", nullptr, nullptr,
                              &report.ptr) == CWF_OK);
    CHECK(cwf_report_verdict(report.ptr) == 1);
    const auto doc = nlohmann::json::parse(report_text(report.ptr));
    CHECK(doc.at("theorem") == "perturbation");
    CHECK(doc.at("hypotheses_hold").get<bool>());
    CHECK(doc.at("oracle").at("agrees").get<bool>());
  }

  SUBCASE("characterization respects an explicit candidate") {
    ReportGuard accept;
    REQUIRE(cwf_check_theorem(inst.ptr, "characterization",
                              R"({"candidate": 0.5})", nullptr,
                              &accept.ptr) == CWF_OK);
    CHECK(cwf_report_verdict(accept.ptr) == 1);

    ReportGuard reject;
    REQUIRE(cwf_check_theorem(inst.ptr, "characterization",
                              R"({"candidate": 1.5})", nullptr,
                              &reject.ptr) == CWF_OK);
    CHECK(cwf_report_verdict(reject.ptr) == 0);
  }

  SUBCASE("atomic direction and identity atoms") {
    ReportGuard report;
    REQUIRE(cwf_check_theorem(inst.ptr, "atomic",
                              R"({"direction": "backward", "atoms": "identity"})",
                              nullptr, &report.ptr) == CWF_OK);
    CHECK(cwf_report_verdict(report.ptr) == 1);
  }

  SUBCASE("positive gap mode selection") {
    ReportGuard report;
    REQUIRE(cwf_check_theorem(inst.ptr, "positive-gap",
                              R"({"mode": "per-index"})", nullptr,
                              &report.ptr) == CWF_OK);
    // The banded omega family shrinks nothing but scales one coordinate up;
    // gaps are PSD, so the sufficient condition holds here.
    CHECK(cwf_report_verdict(report.ptr) == 1);
  }
}

TEST_CASE("failures map to stable status codes with readable messages") {
  SUBCASE("malformed JSON") {
    cwf_instance* out = nullptr;
    CHECK(cwf_instance_from_json("{ nope", nullptr, &out) == CWF_ERR_PARSE);
    CHECK(out == nullptr);
    CHECK(std::strlen(cwf_last_error()) > 0);
  }
  SUBCASE("example dimension below the construction's minimum") {
    cwf_instance* out = nullptr;
    CHECK(cwf_instance_example(4, nullptr, &out) == CWF_ERR_VALIDATE);
    CHECK(out == nullptr);
  }
  SUBCASE("missing file") {
    cwf_instance* out = nullptr;
    CHECK(cwf_instance_from_file("/nonexistent/problem.json", nullptr, &out) ==
          CWF_ERR_PARSE);
  }
  SUBCASE("weaving a single-family instance") {
    const char* single = R"({
      "ambient_dim": 1,
      "controls": {
        "C": {"rows": 1, "cols": 1, "entries": [[1,0]]},
        "Cprime": {"rows": 1, "cols": 1, "entries": [[1,0]]}
      },
      "k_operator": {"rows": 1, "cols": 1, "entries": [[1,0]]},
      "lambda": [{"rows": 1, "cols": 1, "entries": [[1,0]]}]
    })";
    InstanceGuard inst;
    REQUIRE(cwf_instance_from_json(single, nullptr, &inst.ptr) == CWF_OK);
    CHECK(cwf_instance_is_pair(inst.ptr) == 0);
    cwf_report* report = nullptr;
    CHECK(cwf_weave_exhaustive(inst.ptr, nullptr, &report) == CWF_ERR_VALIDATE);
    CHECK(report == nullptr);

    ReportGuard bounds;
    REQUIRE(cwf_check_bounds(inst.ptr, nullptr, &bounds.ptr) == CWF_OK);
    CHECK(cwf_report_verdict(bounds.ptr) == 1);
  }
  SUBCASE("unknown theorem id and malformed options") {
    InstanceGuard inst;
    REQUIRE(cwf_instance_example(7, nullptr, &inst.ptr) == CWF_OK);
    cwf_report* report = nullptr;
    CHECK(cwf_check_theorem(inst.ptr, "interpolation", nullptr, nullptr,
                            &report) == CWF_ERR_ARGUMENT);
    CHECK(cwf_check_theorem(inst.ptr, "atomic", "{ bad", nullptr, &report) ==
          CWF_ERR_PARSE);
    CHECK(cwf_check_theorem(inst.ptr, "atomic", R"(["array"])", nullptr,
                            &report) == CWF_ERR_ARGUMENT);
    CHECK(report == nullptr);
  }
  SUBCASE("null arguments are rejected, not dereferenced") {
    CHECK(cwf_instance_from_json(nullptr, nullptr, nullptr) ==
          CWF_ERR_ARGUMENT);
    CHECK(cwf_check_bounds(nullptr, nullptr, nullptr) == CWF_ERR_ARGUMENT);
    CHECK(cwf_report_verdict(nullptr) == 0);
    CHECK(std::isnan(cwf_report_lower(nullptr)));
    cwf_instance_free(nullptr);
    cwf_report_free(nullptr);
    cwf_string_free(nullptr);
  }
  SUBCASE("random generator validates its arguments") {
    cwf_instance* out = nullptr;
    CHECK(cwf_instance_random(1, 0, 4, nullptr, &out) == CWF_ERR_VALIDATE);
    REQUIRE(cwf_instance_random(1, 4, 4, nullptr, &out) == CWF_OK);
    InstanceGuard inst;
    inst.ptr = out;
    CHECK(cwf_instance_dim(inst.ptr) == 4);
    CHECK(cwf_instance_members(inst.ptr) == 4);
  }
}
