#include "minkhelix/cli.hpp"

#include "minkhelix/acceptance.hpp"
#include "minkhelix/curve_io.hpp"
#include "minkhelix/presets.hpp"
#include "minkhelix/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

namespace minkhelix {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind)
{
    switch (error_class(kind)) {
    case ErrorClass::Input: return exit_code::input_error;
    case ErrorClass::Geometry: return exit_code::geometry_error;
    case ErrorClass::Numerical: return exit_code::numerical_error;
    }
    return exit_code::internal_error;
}

namespace {

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int verdict_code(HelixVerdict v)
{
    switch (v) {
    case HelixVerdict::Helix: return exit_code::helix;
    case HelixVerdict::NotHelix: return exit_code::not_helix;
    case HelixVerdict::InvariantConstantNonHelix: return exit_code::invariant_constant_non_helix;
    }
    return exit_code::internal_error;
}

json read_json_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::FileNotFound, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::FileNotFound, "cannot write " + path.string());
    return out;
}

struct AnalyzeArgs {
    std::string input, preset, plot_csv, report, frames_csv;
    std::optional<double> h, s_max, tol_H, tol_U;
};

/// A curve plus a label for the report.
struct ResolvedInput {
    Curve curve;
    std::string label;
};

ResolvedInput resolve_input(const AnalyzeArgs& a)
{
    if (a.input.empty() == a.preset.empty()) throw UsageError("analyze needs exactly one of <input> or --preset");

    auto from_request = [&](PresetRequest request, std::string label) {
        if (a.h) request.h = a.h;
        if (a.s_max) request.s_max = a.s_max;
        return ResolvedInput{preset_curve(request), std::move(label)};
    };

    if (!a.preset.empty()) return from_request(PresetRequest{a.preset, {}, {}, {}, {}}, "preset:" + a.preset);

    const fs::path path(a.input);
    if (path.extension() == ".json") {
        json spec = read_json_file(path);
        if (spec.is_object() && spec.contains("kind")) {
            if (a.h) spec["h"] = *a.h;
            if (a.s_max) spec["s_max"] = *a.s_max;
            return ResolvedInput{synthesize(profile_from_json(spec)).curve, a.input};
        }
        return from_request(preset_request_from_json(spec), a.input);
    }
    if (a.s_max) throw UsageError("--s-max applies to presets and specs, not curve files");
    SampledCurve curve = load_curve(path);
    if (a.h) curve = reparameterize_arclength(curve, *a.h);
    return ResolvedInput{std::move(curve), a.input};
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out)
{
    const ResolvedInput in = resolve_input(a);
    HelixTolerances tol;
    tol.tol_H = a.tol_H;
    tol.tol_U = a.tol_U;
    const HelixReport report = detect_helix(in.curve, tol);

    json j = report_to_json(report);
    j["source"] = in.label;
    const std::string text = j.dump(2);
    out << text << '\n';
    if (!a.report.empty()) open_output(a.report) << text << '\n';
    if (!a.plot_csv.empty()) {
        auto csv = open_output(a.plot_csv);
        write_plot_csv(report, csv);
    }
    if (!a.frames_csv.empty()) {
        auto csv = open_output(a.frames_csv);
        write_frame_field_csv(compute_frame_field(in.curve), csv);
    }
    return verdict_code(report.verdict);
}

struct SynthesizeArgs {
    std::string spec, output;
    std::optional<double> h, s_max;
};

int cmd_synthesize(const SynthesizeArgs& a, std::ostream& out)
{
    json spec = read_json_file(a.spec);
    if (spec.is_object()) {
        if (a.h) spec["h"] = *a.h;
        if (a.s_max) spec["s_max"] = *a.s_max;
    }
    const CurvatureProfile profile = profile_from_json(spec);
    const SynthesizedCurve synth = synthesize(profile);
    {
        auto csv = open_output(a.output);
        write_curve_csv(synth.curve, csv);
    }
    json summary{
        {"output", a.output},
        {"rows", synth.curve.points.size()},
        {"eps1", profile.eps1},
        {"eps2", profile.eps2},
        {"kind", to_string(profile.kind)},
        {"h", profile.grid.h},
        {"s_max", profile.grid.back()},
        {"gram_drift", synth.gram_drift},
    };
    out << summary.dump(2) << '\n';
    return exit_code::ok;
}

struct VerifyArgs {
    std::vector<std::string> only;
    std::optional<double> tol_H;
    std::string report;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
    AcceptanceOptions options;
    options.only = a.only;
    options.tol_H = a.tol_H;
    const auto start = std::chrono::steady_clock::now();
    const auto results = run_acceptance(options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& r : results) err << format_result_line(r) << '\n';
    const json summary = acceptance_summary(results, seconds);
    const std::string text = summary.dump(2);
    out << text << '\n';
    if (!a.report.empty()) open_output(a.report) << text << '\n';
    return summary.at("passed").get<bool>() ? exit_code::ok : exit_code::verify_failed;
}

int cmd_presets(std::ostream& out)
{
    for (const auto& p : preset_catalog()) {
        out << p.name << " (" << p.kind << ", s in [" << p.s_min << ", " << p.s_max << "])\n";
        out << "    " << p.description << '\n';
        out << "    " << p.provenance << '\n';
        if (!p.params.empty()) {
            out << "    params:";
            for (const auto& [k, v] : p.params) out << ' ' << k << '=' << std::setprecision(6) << v;
            out << '\n';
        }
    }
    return exit_code::ok;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spacelike curves and general helices in Minkowski 4-space", "minkhelix"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Reconstruct frames and test a curve for the helix property");
    an->add_option("input", analyze.input, "Curve CSV (s,x1,x2,x3,x4), preset spec JSON or profile spec JSON");
    an->add_option("--preset", analyze.preset, "Preset name (see `presets`)");
    an->add_option("--h", analyze.h, "Sampling step")->check(CLI::PositiveNumber);
    an->add_option("--s-max", analyze.s_max, "End of the parameter interval");
    an->add_option("--tol-H", analyze.tol_H, "Invariant spread tolerance")->check(CLI::NonNegativeNumber);
    an->add_option("--tol-U", analyze.tol_U, "Axis residual tolerance")->check(CLI::NonNegativeNumber);
    an->add_option("--plot-csv", analyze.plot_csv, "Write per-point series");
    an->add_option("--report", analyze.report, "Also write the JSON report here");
    an->add_option("--frames-csv", analyze.frames_csv, "Write the reconstructed frame field");

    SynthesizeArgs synth;
    auto* sy = app.add_subcommand("synthesize", "Integrate a curvature profile into a curve CSV");
    sy->add_option("spec", synth.spec, "Profile spec JSON")->required();
    sy->add_option("output", synth.output, "Output curve CSV")->required();
    sy->add_option("--h", synth.h, "Integration step")->check(CLI::PositiveNumber);
    sy->add_option("--s-max", synth.s_max, "End of the parameter interval")->check(CLI::PositiveNumber);

    VerifyArgs verify;
    auto* ve = app.add_subcommand("verify", "Run the acceptance criteria");
    ve->add_option("--only", verify.only, "Restrict to these groups")
        ->check(CLI::IsMember(acceptance_groups()))
        ->take_all();
    ve->add_option("--tol-H", verify.tol_H, "Invariant tolerance on reconstructed frames")
        ->check(CLI::NonNegativeNumber);
    ve->add_option("--report", verify.report, "Also write the summary JSON here");

    auto* pr = app.add_subcommand("presets", "List the preset catalog");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage_error;
    }

    try {
        if (an->parsed()) return cmd_analyze(analyze, out);
        if (sy->parsed()) return cmd_synthesize(synth, out);
        if (ve->parsed()) return cmd_verify(verify, out, err);
        if (pr->parsed()) return cmd_presets(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage_error;
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what();
        if (e.at_s) err << " (at s = " << *e.at_s << ")";
        err << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal_error;
    }
    return exit_code::internal_error;
}

}  // namespace minkhelix
