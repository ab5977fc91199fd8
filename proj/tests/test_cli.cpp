#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fcntl.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qholo/cli.hpp"

using namespace qholo;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

// run cli_main on a mutable argv copy, the way main() would
int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qholo");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return cli_main(int(argv.size()), argv.data());
}

// same, with stdout parked in /dev/null (for commands that print there)
int run_cli_quiet(std::vector<std::string> args) {
    std::fflush(stdout);
    const int saved = dup(1);
    const int sink = open("/dev/null", O_WRONLY);
    dup2(sink, 1);
    const int code = run_cli(std::move(args));
    std::fflush(stdout);
    dup2(saved, 1);
    close(sink);
    close(saved);
    return code;
}

const char* kHeader = "x,y,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im,mask";

}  // namespace

TEST_CASE("scenario configs parse with defaults") {
    const ScenarioConfig cfg = parse_scenario_json("{\"alpha\": 1}");
    CHECK(cfg.scenario.alpha == complex_t{1.0, 0.0});
    CHECK(cfg.scenario.curve.kind() == Curve::Kind::Circle);
    CHECK(cfg.scenario.curve.diameter() == doctest::Approx(2.0));
    CHECK(cfg.scenario.density.describe() == "const(1+0i, 0+0i, 0+0i, 0+0i)");
    CHECK(cfg.resolution == 64);
    CHECK(cfg.window_lo.x == -2.0);
    CHECK(cfg.window_hi.y == 2.0);
    CHECK(cfg.output.empty());
    CHECK(cfg.scenario.boundary_samples == 8);
}

TEST_CASE("scenario configs parse every documented field") {
    const char* text = R"({
        "alpha": {"re": 1.0, "im": 0.5},
        "curve": {"kind": "ellipse", "center": [0.1, 0.0], "rx": 1.5, "ry": 0.75},
        "density": {"builtin": "fourier", "k": 2},
        "quad": {
            "boundary_nodes": 1024,
            "area_resolution": 128,
            "delta_schedule": [0.1, 0.05],
            "approach_hs": [1e-2, 1e-3],
            "extrapolation": "none"
        },
        "fd": {"h": 5e-4, "clearance": 0.25, "points": 6},
        "boundary_samples": 4,
        "label": "roundtrip",
        "window": {"lo": [-1, -1], "hi": [1, 1], "resolution": 16},
        "output": "field.csv"
    })";
    const ScenarioConfig cfg = parse_scenario_json(text);
    CHECK(cfg.scenario.alpha == complex_t{1.0, 0.5});
    CHECK(cfg.scenario.curve.kind() == Curve::Kind::Ellipse);
    CHECK(cfg.scenario.density.describe() == "fourier(2)");
    CHECK(cfg.scenario.quad.boundary_nodes == 1024);
    CHECK(cfg.scenario.quad.area_resolution == 128);
    CHECK(cfg.scenario.quad.delta_schedule == std::vector<double>{0.1, 0.05});
    CHECK(cfg.scenario.quad.approach_hs == std::vector<double>{1e-2, 1e-3});
    CHECK(cfg.scenario.quad.extrapolation == QuadSpec::Extrapolation::None);
    CHECK(cfg.scenario.fd_h == 5e-4);
    CHECK(cfg.scenario.fd_clearance == 0.25);
    CHECK(cfg.scenario.fd_points == 6);
    CHECK(cfg.scenario.boundary_samples == 4);
    CHECK(cfg.scenario.label == "roundtrip");
    CHECK(cfg.window_lo.x == -1.0);
    CHECK(cfg.resolution == 16);
    CHECK(cfg.output == "field.csv");

    const ScenarioConfig expr = parse_scenario_json(
        "{\"alpha\": 0, \"density\": \"x + y*i1\"}");
    CHECK(expr.scenario.density.describe() == "x + y*i1");

    const ScenarioConfig poly = parse_scenario_json(
        "{\"alpha\": 0, \"curve\": {\"kind\": \"polygon\","
        " \"vertices\": [[1,1], [-1,1], [-1,-1], [1,-1]]}}");
    CHECK(poly.scenario.curve.kind() == Curve::Kind::Polygon);
}

TEST_CASE("malformed configs are rejected with a diagnostic") {
    for (const char* bad : {
             "not json at all",
             "[1, 2, 3]",
             "{}",
             "{\"alpha\": \"one\"}",
             "{\"alpha\": 1, \"curve\": {\"kind\": \"square\"}}",
             "{\"alpha\": 1, \"curve\": {\"kind\": \"circle\"}}",
             "{\"alpha\": 1, \"density\": {\"builtin\": \"bessel\"}}",
             "{\"alpha\": 1, \"density\": {\"builtin\": \"constant\", \"value\": [1, 2]}}",
             "{\"alpha\": 1, \"quad\": {\"extrapolation\": \"richardson9\"}}",
             "{\"alpha\": 1, \"window\": {\"lo\": [0, 0], \"hi\": [0, 1]}}",
             "{\"alpha\": 1, \"window\": {\"lo\": [-1, -1], \"hi\": [1, 1], \"resolution\": 0}}",
             "{\"alpha\": 1, \"boundary_samples\": 0}",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_scenario_json(bad), std::invalid_argument);
    }
}

TEST_CASE("series validity gate keys on the curve diameter") {
    const Curve small = Curve::circle({0, 0}, 1.0);
    const Curve big = Curve::circle({0, 0}, 5.0);
    CHECK(alpha_within_validity({1.0, 0.0}, small));
    CHECK(alpha_within_validity({0.0, 0.0}, big));       // closed forms, no series
    CHECK(alpha_within_validity({4.0, 0.0}, small));     // 4 * 2 = 8, inclusive
    CHECK_FALSE(alpha_within_validity({4.1, 0.0}, small));
    CHECK_FALSE(alpha_within_validity({1.0, 0.0}, big)); // 1 * 10 > 8
}

TEST_CASE("doubles print as their shortest faithful decimal") {
    for (double v : {0.5, 0.1, 1.0 / 3.0, -2.25e-7, 123456.0}) {
        const std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(std::nan("")) == "nan");
}

TEST_CASE("field grids carry the exact header and full row count") {
    Scenario sc;
    sc.alpha = complex_t{};
    const std::string csv = field_csv(sc, {-2, -2}, {2, 2}, 3);

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == kHeader);
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 9);

    // scanline order: y outer, x inner, endpoints inclusive
    CHECK(rows[0].rfind("-2,-2,", 0) == 0);
    CHECK(rows[1].rfind("0,-2,", 0) == 0);
    CHECK(rows[2].rfind("2,-2,", 0) == 0);
    CHECK(rows[8].rfind("2,2,", 0) == 0);

    // zero wave number, unit density: indicator of the disk, up to roundoff
    auto fields = [](const std::string& row) {
        std::vector<double> out;
        std::istringstream ss(row);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(std::strtod(cell.c_str(), nullptr));
        return out;
    };
    const std::vector<double> center = fields(rows[4]);
    REQUIRE(center.size() == 11);
    CHECK(center[2] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k : {3, 4, 5, 6, 7, 8, 9}) CHECK(std::abs(center[k]) < 1e-14);
    CHECK(center[10] == 0.0);
    const std::vector<double> corner = fields(rows[0]);
    for (int k : {2, 3, 4, 5, 6, 7, 8, 9}) CHECK(std::abs(corner[k]) < 1e-14);
    CHECK(corner[10] == 0.0);

    // a single-point grid evaluates the window midpoint
    const std::string mid = field_csv(sc, {-1, -1}, {1, 1}, 1);
    CHECK(mid.find("\n0,0,1,") != std::string::npos);
}

TEST_CASE("field rows on the curve are masked but kept") {
    Scenario sc;
    sc.alpha = complex_t{};
    // window [-1,1]^2 at resolution 3 puts four grid points on the circle
    const std::string csv = field_csv(sc, {-1, -1}, {1, 1}, 3);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    int masked = 0, rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.back() == '1') {
            ++masked;
            CHECK(line.find("nan") != std::string::npos);
        }
    }
    CHECK(rows == 9);
    CHECK(masked == 4);
}

TEST_CASE("field rows beyond the series range are masked") {
    Scenario sc;
    sc.alpha = complex_t{4.0, 0.0};  // within validity on the unit circle
    const std::string csv = field_csv(sc, {-2, -2}, {2, 2}, 2);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    // every corner sees curve points further than 8/4 = 2 away
    int masked = 0;
    while (std::getline(in, line))
        if (line.back() == '1') ++masked;
    CHECK(masked == 4);
}

TEST_CASE("json payloads are deterministic") {
    Scenario sc;
    sc.alpha = complex_t{};
    sc.density = Density::fourier(1);
    const JumpSurvey survey = jump_survey(sc, 2);
    CHECK(survey.all_pass);
    REQUIRE(survey.reports.size() == 2);
    const std::string a = jump_json(sc, survey);
    const std::string b = jump_json(sc, jump_survey(sc, 2));
    CHECK(a == b);

    const json doc = json::parse(a);
    CHECK(doc.at("command") == "jump");
    CHECK(doc.at("samples") == 2);
    CHECK(doc.at("all_pass") == true);
    REQUIRE(doc.at("reports").size() == 2);
    const json& r0 = doc.at("reports")[0];
    for (const char* key : {"param", "point", "f_t", "plus", "minus", "approach_hs",
                            "rhs_plus", "rhs_minus", "resid_plus", "resid_minus",
                            "resid_jump", "tolerance", "pass"}) {
        CAPTURE(key);
        CHECK(r0.contains(key));
    }

    const std::string f1 = field_csv(sc, {-2, -2}, {2, 2}, 4);
    const std::string f2 = field_csv(sc, {-2, -2}, {2, 2}, 4);
    CHECK(f1 == f2);
}

TEST_CASE("certification reports serialize faithfully") {
    CheckReport rep;
    rep.claim = "norm-bound";
    rep.title = "Product norm bound";
    rep.scenario = "alpha=1 curve=circle";
    rep.measurements = {{"worst_excess", 0.0}, {"witness_gap", 1e-16}};
    rep.residual = 1e-16;
    rep.tolerance = 1e-12;
    rep.pass = true;
    rep.notes = "sharp witness attained";

    CheckReport fail = rep;
    fail.claim = "jump-formulas";
    fail.pass = false;
    fail.order_estimate = 2.03;
    fail.notes = "needs a finer schedule";

    const std::string payload = reports_json({rep, fail});
    CHECK(payload == reports_json({rep, fail}));

    const json doc = json::parse(payload);
    CHECK(doc.at("command") == "certify");
    CHECK(doc.at("tolerance_table") == "v1");
    CHECK(doc.at("report_count") == 2);
    CHECK(doc.at("all_pass") == false);
    const json& r0 = doc.at("reports")[0];
    CHECK(r0.at("claim") == "norm-bound");
    CHECK(r0.at("order_estimate").is_null());
    CHECK(r0.at("measurements")[0][0] == "worst_excess");
    CHECK(doc.at("reports")[1].at("order_estimate").get<double>() == 2.03);

    const std::string md = reports_markdown({rep, fail});
    CHECK(md.find("# Certification summary") != std::string::npos);
    CHECK(md.find("norm-bound") != std::string::npos);
    CHECK(md.find("## Failures") != std::string::npos);
    CHECK(md.find("needs a finer schedule") != std::string::npos);
    // no failure section when everything passes
    CHECK(reports_markdown({rep}).find("## Failures") == std::string::npos);
}

TEST_CASE("cli entry point enforces the exit code contract") {
    CHECK(run_cli({}) == kExitConfigError);
    CHECK(run_cli_quiet({"--help"}) == kExitOk);
    CHECK(run_cli({"transmogrify"}) == kExitConfigError);
    CHECK(run_cli({"field"}) == kExitConfigError);             // missing config
    CHECK(run_cli({"field", "/nonexistent.json"}) == kExitConfigError);

    spit("/tmp/qholo_bad.json", "alpha: 1");
    CHECK(run_cli({"field", "/tmp/qholo_bad.json"}) == kExitConfigError);

    // series validity rejection
    spit("/tmp/qholo_wild.json", "{\"alpha\": 100}");
    CHECK(run_cli({"field", "/tmp/qholo_wild.json", "-o", "/tmp/qholo_wild.csv"}) ==
          kExitConfigError);
    CHECK(run_cli({"jump", "/tmp/qholo_wild.json", "-o", "/tmp/qholo_wild.jump"}) ==
          kExitConfigError);

    CHECK(run_cli_quiet({"kernel-eval", "--x", "1", "--y", "0"}) == kExitOk);  // alpha defaults to 0
    CHECK(run_cli({"kernel-eval", "--alpha-re", "1", "--x", "0", "--y", "0"}) ==
          kExitConfigError);  // singular point
    CHECK(run_cli({"kernel-eval", "--alpha-re", "1", "--x", "9", "--y", "0"}) ==
          kExitConfigError);  // series out of range
}

TEST_CASE("field command writes byte-identical artifacts with a sidecar") {
    spit("/tmp/qholo_field.json",
         "{\"alpha\": 0, \"window\": {\"lo\": [-2,-2], \"hi\": [2,2], \"resolution\": 4}}");
    CHECK(run_cli({"-q", "field", "/tmp/qholo_field.json", "-o", "/tmp/qholo_f1.csv"}) ==
          kExitOk);
    CHECK(run_cli({"-q", "field", "/tmp/qholo_field.json", "-o", "/tmp/qholo_f2.csv"}) ==
          kExitOk);
    const std::string f1 = slurp("/tmp/qholo_f1.csv");
    CHECK(f1 == slurp("/tmp/qholo_f2.csv"));
    CHECK(f1.rfind(kHeader, 0) == 0);

    const std::string meta = slurp("/tmp/qholo_f1.csv.meta.json");
    const json m = json::parse(meta);
    CHECK(m.at("tool") == "qholo");
    CHECK(m.at("written_at").get<std::string>().size() == 20);  // ISO-8601 UTC
    CHECK(m.at("path") == "/tmp/qholo_f1.csv");
}

TEST_CASE("jump command surveys the boundary and reports pass") {
    spit("/tmp/qholo_jump.json",
         "{\"alpha\": 0, \"density\": {\"builtin\": \"fourier\", \"k\": 1},"
         " \"boundary_samples\": 2}");
    CHECK(run_cli({"-q", "jump", "/tmp/qholo_jump.json", "-o", "/tmp/qholo_jump_out.json"}) ==
          kExitOk);
    const json doc = json::parse(slurp("/tmp/qholo_jump_out.json"));
    CHECK(doc.at("all_pass") == true);
    CHECK(doc.at("reports").size() == 2);
}

TEST_CASE("certify command runs scenario sets and claim filters") {
    // a claim filter against the reference set yields exactly one report
    CHECK(run_cli({"-q", "certify", "reference", "--claim", "norm-bound", "-o",
                   "/tmp/qholo_cert1.json"}) == kExitOk);
    const json one = json::parse(slurp("/tmp/qholo_cert1.json"));
    CHECK(one.at("report_count") == 1);
    CHECK(one.at("reports")[0].at("claim") == "norm-bound");
    CHECK(one.at("all_pass") == true);

    CHECK(run_cli({"-q", "certify", "reference", "--claim", "no-such-claim"}) ==
          kExitConfigError);

    // scenario set with explicit claims
    spit("/tmp/qholo_set.json",
         "{\"scenarios\": [{\"alpha\": 1, \"claims\": [\"norm-bound\", \"pair-dictionary\"]}]}");
    CHECK(run_cli({"-q", "certify", "/tmp/qholo_set.json", "-o", "/tmp/qholo_cert2.json",
                   "--summary", "/tmp/qholo_cert2.md"}) == kExitOk);
    const json two = json::parse(slurp("/tmp/qholo_cert2.json"));
    CHECK(two.at("report_count") == 2);
    CHECK(two.at("all_pass") == true);
    CHECK(slurp("/tmp/qholo_cert2.md").find("# Certification summary") != std::string::npos);

    // determinism: the same filter run twice gives identical payloads
    CHECK(run_cli({"-q", "certify", "reference", "--claim", "norm-bound", "-o",
                   "/tmp/qholo_cert3.json"}) == kExitOk);
    CHECK(slurp("/tmp/qholo_cert1.json") == slurp("/tmp/qholo_cert3.json"));

    // a failing check exits 1, not 2: vector claims reject out-of-class input
    spit("/tmp/qholo_fail.json",
         "{\"scenarios\": [{\"alpha\": 1, \"density\": {\"builtin\": \"coordinate\"},"
         " \"fd\": {\"points\": 4}, \"boundary_samples\": 2,"
         " \"claims\": [\"vector-jump-formulas\"]}]}");
    CHECK(run_cli({"-q", "certify", "/tmp/qholo_fail.json", "-o", "/tmp/qholo_fail_out.json"}) ==
          kExitCheckFailure);
    const json failed = json::parse(slurp("/tmp/qholo_fail_out.json"));
    CHECK(failed.at("all_pass") == false);
}
