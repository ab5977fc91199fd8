#pragma once

#include <string>
#include <vector>

#include "qholo/potential.hpp"
#include "qholo/verify.hpp"

namespace qholo {

// Process exit codes. Stable contract: scripts and CI key off these.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

// A scenario document plus the artifact settings it names. The JSON schema is
// documented in docs/config-schema.md; everything except alpha has a default.
struct ScenarioConfig {
    Scenario scenario;
    Vec2 window_lo{-2.0, -2.0};  // grid window for the field command
    Vec2 window_hi{2.0, 2.0};
    int resolution = 64;         // grid points per axis
    std::string output;          // artifact path; empty means stdout
};

// Parses one scenario document. Throws std::invalid_argument with a
// human-readable diagnostic on malformed input.
ScenarioConfig parse_scenario_json(const std::string& text);

// The ascending series behind the kernel is trusted for |alpha| times the
// curve diameter up to 8; configs beyond that are rejected with guidance.
bool alpha_within_validity(complex_t alpha, const Curve& curve);

// Shortest decimal string that parses back to exactly v ("nan" for NaN).
std::string fmt_double(double v);

// Grid evaluation of the boundary transform: header plus resolution^2 rows,
// scanline order (y outer ascending, x inner ascending), endpoints inclusive.
// Points in the unreliable band along the curve keep their row but carry
// mask=1 and nan values.
std::string field_csv(const Scenario& sc, Vec2 lo, Vec2 hi, int resolution);

// Jump survey at equispaced boundary parameters.
struct JumpSurvey {
    std::vector<JumpReport> reports;
    bool all_pass = false;
};
JumpSurvey jump_survey(const Scenario& sc, int samples);
std::string jump_json(const Scenario& sc, const JumpSurvey& survey);

// Certification reports as a JSON payload / markdown table. Payloads carry
// no timestamps, so identical configs give byte-identical bytes.
std::string reports_json(const std::vector<CheckReport>& reports);
std::string reports_markdown(const std::vector<CheckReport>& reports);

// Full command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace qholo
