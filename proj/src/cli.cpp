#include "qholo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "qholo/kernel.hpp"

namespace qholo {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Artifacts are deterministic; anything time-like lives in this sidecar.
void write_sidecar(const std::string& path) {
    json meta;
    meta["path"] = path;
    meta["tool"] = "qholo";
    meta["written_at"] = iso_utc_now();
    write_file(path + ".meta.json", meta.dump(2) + "\n");
}

void emit(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    write_file(path, content);
    write_sidecar(path);
}

json quat_json(const CQuat& q) {
    return json::array({q.q0.real(), q.q0.imag(), q.q1.real(), q.q1.imag(), q.q2.real(),
                        q.q2.imag(), q.q3.real(), q.q3.imag()});
}

Vec2 parse_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument(std::string(what) + " must be a [x, y] array");
    return {j[0].get<double>(), j[1].get<double>()};
}

complex_t parse_alpha(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object())
        return {j.value("re", 0.0), j.value("im", 0.0)};
    throw std::invalid_argument("alpha must be a number or {\"re\":..., \"im\":...}");
}

Curve parse_curve(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("curve must be an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle") {
        const Vec2 c = j.contains("center") ? parse_point(j.at("center"), "curve.center")
                                            : Vec2{0.0, 0.0};
        return Curve::circle(c, j.at("radius").get<double>());
    }
    if (kind == "ellipse") {
        const Vec2 c = j.contains("center") ? parse_point(j.at("center"), "curve.center")
                                            : Vec2{0.0, 0.0};
        return Curve::ellipse(c, j.at("rx").get<double>(), j.at("ry").get<double>());
    }
    if (kind == "polygon") {
        std::vector<Vec2> verts;
        for (const json& v : j.at("vertices")) verts.push_back(parse_point(v, "vertex"));
        return Curve::polygon(std::move(verts));
    }
    throw std::invalid_argument("unknown curve kind: " + kind);
}

Density parse_density(const json& j) {
    if (j.is_string()) return Density::parse(j.get<std::string>());
    if (!j.is_object())
        throw std::invalid_argument(
            "density must be an expression string or an object with \"builtin\" or "
            "\"expression\"");
    if (j.contains("expression")) return Density::parse(j.at("expression").get<std::string>());
    const std::string name = j.at("builtin").get<std::string>();
    if (name == "constant") {
        CQuat q = CQuat::scalar(1.0);
        if (j.contains("value")) {
            const json& v = j.at("value");
            if (!v.is_array() || v.size() != 8)
                throw std::invalid_argument(
                    "constant density value must be 8 numbers (re/im of 4 components)");
            q = CQuat{{v[0].get<double>(), v[1].get<double>()},
                      {v[2].get<double>(), v[3].get<double>()},
                      {v[4].get<double>(), v[5].get<double>()},
                      {v[6].get<double>(), v[7].get<double>()}};
        }
        return Density::constant(q);
    }
    if (name == "fourier") return Density::fourier(j.value("k", 1));
    if (name == "fourier_scalar") return Density::fourier_scalar(j.value("k", 1));
    if (name == "coordinate") return Density::coordinate();
    if (name == "coordinate_scalar") return Density::coordinate_scalar();
    throw std::invalid_argument("unknown builtin density: " + name);
}

void parse_quad(const json& j, QuadSpec& q) {
    if (!j.is_object()) throw std::invalid_argument("quad must be an object");
    q.boundary_nodes = j.value("boundary_nodes", q.boundary_nodes);
    q.max_boundary_nodes = j.value("max_boundary_nodes", q.max_boundary_nodes);
    q.area_resolution = j.value("area_resolution", q.area_resolution);
    q.exclusion_radius = j.value("exclusion_radius", q.exclusion_radius);
    if (j.contains("delta_schedule"))
        q.delta_schedule = j.at("delta_schedule").get<std::vector<double>>();
    if (j.contains("approach_hs"))
        q.approach_hs = j.at("approach_hs").get<std::vector<double>>();
    if (j.contains("extrapolation")) {
        const std::string mode = j.at("extrapolation").get<std::string>();
        if (mode == "none")
            q.extrapolation = QuadSpec::Extrapolation::None;
        else if (mode == "richardson1")
            q.extrapolation = QuadSpec::Extrapolation::Richardson1;
        else
            throw std::invalid_argument("extrapolation must be \"none\" or \"richardson1\"");
    }
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
        ScenarioConfig cfg;
        if (!doc.contains("alpha")) throw std::invalid_argument("config needs an alpha field");
        cfg.scenario.alpha = parse_alpha(doc.at("alpha"));
        if (doc.contains("curve")) cfg.scenario.curve = parse_curve(doc.at("curve"));
        if (doc.contains("density")) cfg.scenario.density = parse_density(doc.at("density"));
        if (doc.contains("quad")) parse_quad(doc.at("quad"), cfg.scenario.quad);
        if (doc.contains("fd")) {
            const json& fd = doc.at("fd");
            cfg.scenario.fd_h = fd.value("h", cfg.scenario.fd_h);
            cfg.scenario.fd_clearance = fd.value("clearance", cfg.scenario.fd_clearance);
            cfg.scenario.fd_points = fd.value("points", cfg.scenario.fd_points);
        }
        cfg.scenario.boundary_samples = doc.value("boundary_samples", cfg.scenario.boundary_samples);
        cfg.scenario.label = doc.value("label", std::string{});
        if (doc.contains("window")) {
            const json& w = doc.at("window");
            cfg.window_lo = parse_point(w.at("lo"), "window.lo");
            cfg.window_hi = parse_point(w.at("hi"), "window.hi");
            cfg.resolution = w.value("resolution", cfg.resolution);
        }
        cfg.output = doc.value("output", std::string{});
        if (cfg.resolution < 1) throw std::invalid_argument("window.resolution must be >= 1");
        if (cfg.scenario.boundary_samples < 1)
            throw std::invalid_argument("boundary_samples must be >= 1");
        if (!(cfg.window_hi.x > cfg.window_lo.x) || !(cfg.window_hi.y > cfg.window_lo.y))
            throw std::invalid_argument("window.hi must exceed window.lo in both coordinates");
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
}

bool alpha_within_validity(complex_t alpha, const Curve& curve) {
    return std::abs(alpha) * curve.diameter() <= 8.0;
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string field_csv(const Scenario& sc, Vec2 lo, Vec2 hi, int resolution) {
    const KernelCtx ctx = KernelCtx::make(sc.alpha);
    const double band = 3.0 * sc.curve.length() / sc.quad.max_boundary_nodes;
    std::string out = "x,y,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im,mask\n";
    auto coord = [resolution](double a, double b, int i) {
        return resolution == 1 ? 0.5 * (a + b) : a + i * (b - a) / (resolution - 1);
    };
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const Vec2 z{coord(lo.x, hi.x, ix), coord(lo.y, hi.y, iy)};
            // Masked: too close to the curve for reliable quadrature, or far
            // enough out that the kernel series leaves its trusted range.
            const bool masked = sc.curve.contains(z) == Region::Boundary ||
                                sc.curve.boundary_distance(z) < band ||
                                std::abs(sc.alpha) * sc.curve.max_distance(z) > 8.0;
            out += fmt_double(z.x);
            out += ',';
            out += fmt_double(z.y);
            if (masked) {
                out += ",nan,nan,nan,nan,nan,nan,nan,nan,1\n";
                continue;
            }
            const CQuat q = cauchy_integral(ctx, sc.curve, sc.density, z, sc.quad);
            for (complex_t c : {q.q0, q.q1, q.q2, q.q3}) {
                out += ',';
                out += fmt_double(c.real());
                out += ',';
                out += fmt_double(c.imag());
            }
            out += ",0\n";
        }
    }
    return out;
}

JumpSurvey jump_survey(const Scenario& sc, int samples) {
    const KernelCtx ctx = KernelCtx::make(sc.alpha);
    JumpSurvey survey;
    survey.all_pass = true;
    for (int k = 0; k < samples; ++k) {
        const double param = 2.0 * 3.14159265358979323846 * (k + 0.5) / samples;
        survey.reports.push_back(jump_report(ctx, sc.curve, sc.density, param, sc.quad));
        survey.all_pass = survey.all_pass && survey.reports.back().pass;
    }
    return survey;
}

std::string jump_json(const Scenario& sc, const JumpSurvey& survey) {
    json doc;
    doc["command"] = "jump";
    doc["scenario"] = scenario_digest(sc);
    doc["samples"] = survey.reports.size();
    doc["all_pass"] = survey.all_pass;
    json reports = json::array();
    for (const JumpReport& r : survey.reports) {
        json jr;
        jr["param"] = r.param;
        jr["point"] = json::array({r.t.x, r.t.y});
        jr["f_t"] = quat_json(r.f_t);
        jr["plus"] = quat_json(r.plus.limit);
        jr["minus"] = quat_json(r.minus.limit);
        jr["approach_hs"] = r.plus.hs;
        jr["rhs_plus"] = quat_json(r.rhs_plus);
        jr["rhs_minus"] = quat_json(r.rhs_minus);
        jr["resid_plus"] = r.resid_plus;
        jr["resid_minus"] = r.resid_minus;
        jr["resid_jump"] = r.resid_jump;
        jr["tolerance"] = r.tolerance;
        jr["pass"] = r.pass;
        reports.push_back(std::move(jr));
    }
    doc["reports"] = std::move(reports);
    return doc.dump(2) + "\n";
}

std::string reports_json(const std::vector<CheckReport>& reports) {
    json doc;
    doc["command"] = "certify";
    doc["tolerance_table"] = tolerance_table_version();
    bool all = true;
    json arr = json::array();
    for (const CheckReport& r : reports) {
        all = all && r.pass;
        json jr;
        jr["claim"] = r.claim;
        jr["title"] = r.title;
        jr["scenario"] = r.scenario;
        json ms = json::array();
        for (const auto& [name, value] : r.measurements)
            ms.push_back(json::array({name, value}));
        jr["measurements"] = std::move(ms);
        jr["residual"] = r.residual;
        jr["order_estimate"] = r.order_estimate ? json(*r.order_estimate) : json(nullptr);
        jr["tolerance"] = r.tolerance;
        jr["pass"] = r.pass;
        jr["notes"] = r.notes;
        arr.push_back(std::move(jr));
    }
    doc["report_count"] = reports.size();
    doc["all_pass"] = all;
    doc["reports"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string reports_markdown(const std::vector<CheckReport>& reports) {
    size_t passed = 0;
    for (const CheckReport& r : reports) passed += r.pass ? 1 : 0;
    char line[512];
    std::string out = "# Certification summary\n\n";
    std::snprintf(line, sizeof line, "Tolerance table %s. %zu checks, %zu passed.\n\n",
                  tolerance_table_version(), reports.size(), passed);
    out += line;
    out += "| claim | scenario | residual | tolerance | pass |\n";
    out += "| --- | --- | ---: | ---: | :-: |\n";
    for (const CheckReport& r : reports) {
        std::snprintf(line, sizeof line, "| %s | %s | %.3g | %.3g | %s |\n", r.claim.c_str(),
                      r.scenario.c_str(), r.residual, r.tolerance, r.pass ? "yes" : "NO");
        out += line;
    }
    bool any_fail = passed != reports.size();
    if (any_fail) {
        out += "\n## Failures\n\n";
        for (const CheckReport& r : reports) {
            if (r.pass) continue;
            std::snprintf(line, sizeof line, "- **%s** (%s): %s\n", r.claim.c_str(),
                          r.scenario.c_str(), r.notes.c_str());
            out += line;
        }
    }
    return out;
}

namespace {

int reject_validity(const Scenario& sc) {
    std::fprintf(stderr,
                 "config error: |alpha| * curve diameter = %.3g exceeds 8, the trusted "
                 "range of the kernel series; shrink the curve or the parameter\n",
                 std::abs(sc.alpha) * sc.curve.diameter());
    return kExitConfigError;
}

int run_field(const std::string& config_path, const std::string& out_override) {
    const ScenarioConfig cfg = parse_scenario_json(read_file(config_path));
    if (!alpha_within_validity(cfg.scenario.alpha, cfg.scenario.curve))
        return reject_validity(cfg.scenario);
    const std::string csv = field_csv(cfg.scenario, cfg.window_lo, cfg.window_hi, cfg.resolution);
    emit(csv, out_override.empty() ? cfg.output : out_override);
    return kExitOk;
}

int run_jump(const std::string& config_path, const std::string& out_override) {
    const ScenarioConfig cfg = parse_scenario_json(read_file(config_path));
    if (!alpha_within_validity(cfg.scenario.alpha, cfg.scenario.curve))
        return reject_validity(cfg.scenario);
    const JumpSurvey survey = jump_survey(cfg.scenario, cfg.scenario.boundary_samples);
    emit(jump_json(cfg.scenario, survey), out_override.empty() ? cfg.output : out_override);
    return survey.all_pass ? kExitOk : kExitCheckFailure;
}

CheckReport guarded_certify(ClaimId id, const Scenario& sc) {
    try {
        return certify(id, sc);
    } catch (const std::exception& e) {
        CheckReport rep;
        rep.claim = claim_id(id);
        rep.title = claim_title(id);
        rep.scenario = scenario_digest(sc);
        rep.tolerance = claim_tolerance(id);
        rep.pass = false;
        rep.notes = std::string("not evaluated: ") + e.what();
        return rep;
    }
}

int run_certify(const std::string& set_arg, const std::string& claim_filter,
                const std::string& out_path, const std::string& summary_path) {
    std::optional<ClaimId> filter;
    if (!claim_filter.empty()) {
        filter = parse_claim(claim_filter);
        if (!filter) {
            std::fprintf(stderr, "config error: unknown claim id \"%s\"; known ids:",
                         claim_filter.c_str());
            for (ClaimId id : all_claims()) std::fprintf(stderr, " %s", claim_id(id));
            std::fprintf(stderr, "\n");
            return kExitConfigError;
        }
    }

    std::vector<CheckReport> reports;
    if (set_arg == "reference") {
        if (filter) {
            // one claim on its primary reference scenario: exactly one report
            for (const ReferenceCase& rc : reference_matrix()) {
                if (rc.id != *filter) continue;
                reports.push_back(certify(rc.id, rc.scenario));
                break;
            }
        } else {
            reports = certify_reference();
        }
    } else {
        json doc;
        try {
            doc = json::parse(read_file(set_arg));
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("scenario set is not valid JSON: ") +
                                        e.what());
        }
        if (!doc.is_object() || !doc.contains("scenarios") || !doc.at("scenarios").is_array())
            throw std::invalid_argument("scenario set needs a \"scenarios\" array");
        for (const json& entry : doc.at("scenarios")) {
            const ScenarioConfig cfg = parse_scenario_json(entry.dump());
            if (!alpha_within_validity(cfg.scenario.alpha, cfg.scenario.curve))
                return reject_validity(cfg.scenario);
            std::vector<ClaimId> claims;
            if (filter) {
                claims = {*filter};
            } else if (entry.contains("claims")) {
                for (const json& c : entry.at("claims")) {
                    const auto id = parse_claim(c.get<std::string>());
                    if (!id)
                        throw std::invalid_argument("unknown claim id in scenario set: " +
                                                    c.get<std::string>());
                    claims.push_back(*id);
                }
            } else {
                claims = all_claims();
            }
            for (ClaimId id : claims) reports.push_back(guarded_certify(id, cfg.scenario));
        }
    }

    bool all = true;
    for (const CheckReport& r : reports) all = all && r.pass;
    emit(reports_json(reports), out_path);
    if (!summary_path.empty()) {
        write_file(summary_path, reports_markdown(reports));
        write_sidecar(summary_path);
    }
    return all ? kExitOk : kExitCheckFailure;
}

int run_kernel_eval(complex_t alpha, Vec2 z) {
    if (z.x == 0.0 && z.y == 0.0) {
        std::fprintf(stderr, "config error: the kernel has a pole at the origin\n");
        return kExitConfigError;
    }
    if (std::abs(alpha) * abs(z) > 8.0) {
        std::fprintf(stderr,
                     "config error: |alpha| * |z| = %.3g exceeds 8, the trusted range of "
                     "the kernel series\n",
                     std::abs(alpha) * abs(z));
        return kExitConfigError;
    }
    const KernelCtx ctx = KernelCtx::make(alpha);
    const complex_t th = theta(ctx, z);
    const CQuat k = cauchy_kernel(ctx, z);
    json doc;
    doc["command"] = "kernel-eval";
    doc["alpha"] = json::array({alpha.real(), alpha.imag()});
    doc["point"] = json::array({z.x, z.y});
    doc["branch"] = ctx.p;
    doc["theta"] = json::array({th.real(), th.imag()});
    doc["kernel"] = quat_json(k);
    const std::string text = doc.dump(2) + "\n";
    std::fwrite(text.data(), 1, text.size(), stdout);
    return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"planar quaternionic boundary transforms and their certification"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress notes on stderr");

    std::string field_config, field_out;
    CLI::App* field = app.add_subcommand(
        "field", "evaluate the boundary transform on a grid, CSV out");
    field->add_option("config", field_config, "scenario JSON file")->required();
    field->add_option("-o,--output", field_out, "output path (default: config, else stdout)");

    std::string jump_config, jump_out;
    CLI::App* jump = app.add_subcommand(
        "jump", "survey one-sided boundary limits against the reconstruction formulas");
    jump->add_option("config", jump_config, "scenario JSON file")->required();
    jump->add_option("-o,--output", jump_out, "output path (default: config, else stdout)");

    std::string certify_set, certify_claim, certify_out, certify_summary;
    CLI::App* cert = app.add_subcommand(
        "certify", "run claim certifications over a scenario set or the reference set");
    cert->add_option("set", certify_set, "scenario-set JSON file, or the word \"reference\"")
        ->required();
    cert->add_option("--claim", certify_claim, "run a single claim id");
    cert->add_option("-o,--output", certify_out, "JSON report path (default stdout)");
    cert->add_option("--summary", certify_summary, "also write a markdown summary here");

    double ke_are = 0.0, ke_aim = 0.0, ke_x = 0.0, ke_y = 0.0;
    CLI::App* keval = app.add_subcommand(
        "kernel-eval", "print kernel and fundamental-solution values at one point");
    keval->add_option("--alpha-re", ke_are, "parameter, real part");
    keval->add_option("--alpha-im", ke_aim, "parameter, imaginary part");
    keval->add_option("--x", ke_x, "point, first coordinate")->required();
    keval->add_option("--y", ke_y, "point, second coordinate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (const char* tv = std::getenv("QHOLO_THREADS")) {
        if (!quiet && std::strcmp(tv, "1") != 0)
            std::fprintf(stderr, "note: evaluation is single-threaded; QHOLO_THREADS=%s ignored\n",
                         tv);
    }

    try {
        if (field->parsed()) return run_field(field_config, field_out);
        if (jump->parsed()) return run_jump(jump_config, jump_out);
        if (cert->parsed())
            return run_certify(certify_set, certify_claim, certify_out, certify_summary);
        if (keval->parsed()) return run_kernel_eval({ke_are, ke_aim}, {ke_x, ke_y});
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace qholo
