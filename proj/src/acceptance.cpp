#include "minkhelix/acceptance.hpp"

#include "minkhelix/cli.hpp"
#include "minkhelix/curve_io.hpp"
#include "minkhelix/error.hpp"
#include "minkhelix/helix.hpp"
#include "minkhelix/presets.hpp"
#include "minkhelix/schema.hpp"
#include "minkhelix/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <sstream>

namespace minkhelix {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& acceptance_groups()
{
    static const std::vector<std::string> groups{"metric", "invariants", "controls", "roundtrip",
                                                 "gamma", "reparam", "cli"};
    return groups;
}

namespace {

/// Records measured values and the checks made on them.
class Recorder {
public:
    explicit Recorder(CriterionResult& r) : r_(r) {}

    void info(const std::string& key, const json& value) { r_.measured[key] = value; }

    void at_most(const std::string& key, double value, double limit)
    {
        info(key, value);
        if (!(value <= limit)) failed(key + " = " + num(value) + " exceeds " + num(limit));
    }

    void above(const std::string& key, double value, double limit)
    {
        info(key, value);
        if (!(value > limit)) failed(key + " = " + num(value) + " is not above " + num(limit));
    }

    void at_least(const std::string& key, double value, double limit)
    {
        info(key, value);
        if (!(value >= limit)) failed(key + " = " + num(value) + " is below " + num(limit));
    }

    void near(const std::string& key, double value, double target, double tol)
    {
        info(key, value);
        if (!(std::abs(value - target) <= tol))
            failed(key + " = " + num(value) + " is not within " + num(tol) + " of " + num(target));
    }

    void expect(const std::string& key, bool ok, const std::string& detail = {})
    {
        info(key, ok);
        if (!ok) failed(key + (detail.empty() ? "" : ": " + detail));
    }

    void equal(const std::string& key, const json& value, const json& want)
    {
        info(key, value);
        if (value != want) failed(key + " = " + value.dump() + ", expected " + want.dump());
    }

    template <class F>
    void guarded(const std::string& key, F&& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            failed(key + " threw: " + e.what());
        }
    }

private:
    static std::string num(double v)
    {
        std::ostringstream os;
        os.precision(6);
        os << v;
        return os.str();
    }

    void failed(const std::string& message)
    {
        r_.passed = false;
        r_.failures.push_back(message);
    }

    CriterionResult& r_;
};

double max_abs_dev(const std::vector<double>& v, double target)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x - target));
    return m;
}

CurvatureProfile preset_profile(const std::string& name, std::optional<double> h = {})
{
    PresetRequest request{name, {}, {}, {}, h};
    return std::get<CurvatureProfile>(make_preset(request));
}

const std::vector<std::string>& profile_presets()
{
    static const std::vector<std::string> names{"eq21_trig", "eq21_cosh", "exponential", "w_curve", "linear_theta"};
    return names;
}

double max_gram_defect(const FrameField& f)
{
    double m = 0.0;
    for (const auto& a : f.points) m = std::max(m, gram_defect(a));
    return m;
}

bool signature_ok(const FrameField& f)
{
    for (const auto& a : f.points)
        if (a.eps1 == -1 && a.eps2 == -1) return false;
    return true;
}

struct HelixRun {
    HelixReport carried, reconstructed;
};

HelixRun run_both(const std::string& preset, const AcceptanceOptions& options)
{
    const SynthesizedCurve synth = synthesize(preset_profile(preset));
    HelixTolerances recon;
    recon.tol_H = options.tol_H;
    return {analyze_field(synth.frames), detect_helix(Curve{synth.curve}, recon)};
}

double recon_tol_H(const AcceptanceOptions& options) { return options.tol_H.value_or(1e-3); }

void criterion_metric(Recorder& rec, const AcceptanceOptions&)
{
    double basis = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Vec4 ei{}, ej{};
            ei[i] = 1.0;
            ej[j] = 1.0;
            const double want = i != j ? 0.0 : (i == 0 ? -1.0 : 1.0);
            basis = std::max(basis, std::abs(inner(ei, ej) - want));
        }
    rec.at_most("basis_metric_defect", basis, 0.0);

    rec.guarded("hyperbolic_circular", [&] {
        const FrameField f = compute_frame_field(preset_curve({"hyperbolic_circular", {}, {}, {}, {}}));
        rec.at_most("hyperbolic_circular.analytic_gram_defect", max_gram_defect(f), 1e-9);
        rec.expect("hyperbolic_circular.signature_rule", signature_ok(f));
    });
    bool line_rejected = false;
    try {
        compute_frame_field(preset_curve({"line", {}, {}, {}, {}}));
    } catch (const Error& e) {
        line_rejected = e.kind() == ErrorKind::CurvatureVanishes;
    }
    rec.expect("line.frames_rejected", line_rejected, "a straight line has no Frenet frame");

    for (const auto& name : profile_presets()) {
        rec.guarded(name, [&] {
            const auto profile = preset_profile(name);
            const SynthesizedCurve synth = synthesize(profile);
            rec.at_most(name + ".carried_gram_defect", synth.gram_drift, 1e-9);
            rec.expect(name + ".carried_signature_rule", signature_ok(synth.frames));
            const FrameField f = compute_frame_field(Curve{synth.curve});
            rec.at_most(name + ".reconstructed_gram_defect", max_gram_defect(f), 1e-4);
            rec.expect(name + ".reconstructed_signature_rule", signature_ok(f));
            rec.equal(name + ".reconstructed_eps", json::array({f.eps1(), f.eps2()}),
                      json::array({profile.eps1, profile.eps2}));
        });
    }
}

void criterion_trig(Recorder& rec, const AcceptanceOptions& options)
{
    const auto run = run_both("eq21_trig", options);
    const double tol = recon_tol_H(options);
    // r = 2 cos + sin gives H = C1^2 + C2^2.
    const double m_target = 5.0;
    for (const auto& [label, rep, tol_H] :
         {std::tuple{"carried", &run.carried, 1e-6}, std::tuple{"reconstructed", &run.reconstructed, tol}}) {
        const std::string p = label;
        rec.at_most(p + ".H_spread", rep->invariant_spread, tol_H);
        rec.near(p + ".m_value", rep->m_value, m_target, tol_H);
        rec.near(p + ".fit_C1", rep->fit_C1.value_or(NAN), 2.0, 1e-3);
        rec.near(p + ".fit_C2", rep->fit_C2.value_or(NAN), 1.0, 1e-3);
        rec.at_most(p + ".axis_residual", rep->axis_residual, 1e-3);
        rec.expect(p + ".is_helix", rep->is_helix, std::string(to_string(rep->verdict)));
    }
}

void criterion_cosh(Recorder& rec, const AcceptanceOptions& options)
{
    const auto run = run_both("eq21_cosh", options);
    const double tol = recon_tol_H(options);
    for (const auto& [label, rep, tol_H] :
         {std::tuple{"carried", &run.carried, 1e-6}, std::tuple{"reconstructed", &run.reconstructed, tol}}) {
        const std::string p = label;
        rec.at_most(p + ".H_max_dev_from_1", max_abs_dev(rep->series.H, 1.0), tol_H);
        rec.at_most(p + ".f_residual", rep->f_residual, 1e-4);
        rec.at_most(p + ".m_max_dev_from_1", max_abs_dev(rep->series.m, 1.0), 1e-3);
        rec.at_most(p + ".n_max_dev_from_0", max_abs_dev(rep->series.n, 0.0), 1e-3);
        rec.info(p + ".axis_class", std::string(to_string(rep->axis_class)));
        rec.expect(p + ".is_helix", rep->is_helix, std::string(to_string(rep->verdict)));
    }
}

void criterion_exponential(Recorder& rec, const AcceptanceOptions& options)
{
    const auto run = run_both("exponential", options);
    const double tol = recon_tol_H(options);
    for (const auto& [label, rep, tol_H] :
         {std::tuple{"carried", &run.carried, 1e-6}, std::tuple{"reconstructed", &run.reconstructed, tol}}) {
        const std::string p = label;
        rec.at_most(p + ".H_max_abs", max_abs_dev(rep->series.H, 0.0), tol_H);
        double f_minus_r = 0.0;
        for (std::size_t i = 0; i < rep->series.f.size(); ++i)
            f_minus_r = std::max(f_minus_r, std::abs(rep->series.f[i] - rep->series.r[i]));
        rec.at_most(p + ".f_minus_r", f_minus_r, 1e-4);
        rec.near(p + ".fit_D", rep->fit_D.value_or(NAN), 1.0, 1e-3);
    }
}

/// Constant curvatures: H is constant but there is no axis.
void criterion_w_curve(Recorder& rec, const AcceptanceOptions& options)
{
    const auto profile = preset_profile("w_curve");
    const double k1 = profile.params.at("k1"), k2 = profile.params.at("k2"), k3 = profile.params.at("k3");
    const double f_target = std::abs(k3) * k1 / k2;
    rec.info("f_residual_target", f_target);

    const SynthesizedCurve synth = synthesize(profile);
    const HelixReport carried = analyze_field(synth.frames);
    rec.at_most("carried.H_spread", carried.invariant_spread, 1e-6);
    rec.above("carried.axis_residual", carried.axis_residual, 1e-1);
    rec.near("carried.f_residual", carried.f_residual, f_target, 1e-3);
    rec.equal("carried.verdict", std::string(to_string(carried.verdict)), "invariant_constant_non_helix");

    HelixTolerances tol;
    tol.tol_H = options.tol_H;
    const HelixReport recon = detect_helix(Curve{synth.curve}, tol);
    rec.at_most("reconstructed.H_spread", recon.invariant_spread, recon_tol_H(options));
    rec.above("reconstructed.axis_residual", recon.axis_residual, 1e-1);
    rec.info("reconstructed.f_residual", recon.f_residual);
    rec.expect("reconstructed.is_helix_false", !recon.is_helix);
    rec.equal("reconstructed.verdict", std::string(to_string(recon.verdict)), "invariant_constant_non_helix");

    // The closed-form preset, on exact frames.
    rec.guarded("hyperbolic_circular", [&] {
        const Curve hc = preset_curve({"hyperbolic_circular", {}, {}, {}, {}});
        const HelixReport rep = detect_helix(hc);
        const auto& a = compute_apparatus(hc, 0.0);
        const double target = std::abs(a.k3) * a.k1 / a.k2;
        rec.at_most("hyperbolic_circular.H_spread", rep.invariant_spread, 1e-6);
        rec.above("hyperbolic_circular.axis_residual", rep.axis_residual, 1e-1);
        rec.near("hyperbolic_circular.f_residual", rep.f_residual, target, 1e-3);
        rec.equal("hyperbolic_circular.verdict", std::string(to_string(rep.verdict)), "invariant_constant_non_helix");
    });
}

void criterion_linear_theta(Recorder& rec, const AcceptanceOptions& options)
{
    const auto run = run_both("linear_theta", options);
    for (const auto& [label, rep] :
         {std::pair{"carried", &run.carried}, std::pair{"reconstructed", &run.reconstructed}}) {
        const std::string p = label;
        rec.above(p + ".H_spread", rep->invariant_spread, 0.1);
        rec.above(p + ".fit_residual", rep->fit_residual.value_or(NAN), 0.05);
        rec.expect(p + ".is_helix_false", !rep->is_helix);
    }
}

/// Largest relative curvature error of a reconstruction against its profile.
double curvature_error(const FrameField& f, const CurvatureProfile& p)
{
    double e = 0.0;
    for (const auto& a : f.points)
        e = std::max({e, std::abs(a.k1 / p.k1(a.s) - 1.0), std::abs(a.k2 / p.k2(a.s) - 1.0),
                      std::abs(a.k3 / p.k3(a.s) - 1.0)});
    return e;
}

void criterion_roundtrip(Recorder& rec, const AcceptanceOptions&)
{
    for (const auto& name : profile_presets()) {
        rec.guarded(name, [&] {
            const auto coarse = preset_profile(name, 1e-3);
            const auto fine = preset_profile(name, 5e-4);
            const SynthesizedCurve sc = synthesize(coarse);
            const SynthesizedCurve sf = synthesize(fine);

            const FrameField def = compute_frame_field(Curve{sc.curve});
            rec.at_most(name + ".default_rel_error", curvature_error(def, coarse), 1e-3);

            // Fourth-order stencils with a spacing fixed in samples, so halving h
            // halves the stencil width.
            FrameOptions conv;
            conv.accuracy = 4;
            conv.stride = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::lround(0.2 / (sc.frames.max_curvature() * coarse.grid.h))));
            const FrameField fc = compute_frame_field(Curve{sc.curve}, conv);
            const FrameField ff = compute_frame_field(Curve{sf.curve}, conv);
            const double e1 = curvature_error(fc, coarse), e2 = curvature_error(ff, fine);
            rec.info(name + ".stride", fc.stride);
            rec.at_most(name + ".rel_error_h", e1, 1e-3);
            rec.info(name + ".rel_error_h_over_2", e2);
            rec.at_least(name + ".improvement", e1 / e2, 8.0);
            rec.equal(name + ".eps", json::array({fc.eps1(), fc.eps2()}), json::array({coarse.eps1, coarse.eps2}));
        });
    }
}

void criterion_gamma(Recorder& rec, const AcceptanceOptions& options)
{
    for (const std::string name : {"eq21_trig", "eq21_cosh"}) {
        const auto run = run_both(name, options);
        for (const auto& [label, rep] :
             {std::pair{"carried", &run.carried}, std::pair{"reconstructed", &run.reconstructed}}) {
            const std::string p = name + "." + label;
            rec.at_most(p + ".gamma_ode_residual", rep->gamma_ode_residual, 1e-2);
            rec.at_most(p + ".beta_residual", rep->beta_residual, 1e-4);
        }
    }
}

void criterion_reparam(Recorder& rec, const AcceptanceOptions&)
{
    // speed^2 = a^2 alpha^2 (-sinh^2 + cosh^2) + b^2 beta^2 = 1 + 3/4.
    const double a = 1.0, alpha = 1.0, b = std::sqrt(3.0) / 2.0, beta = 1.0, s_max = 5.0;
    const double exact = std::sqrt(a * a * alpha * alpha + b * b * beta * beta) * s_max;
    const AnalyticCurve curve = hyperbolic_circular(a, alpha, b, beta, 0.0, s_max, 1e-3);
    rec.info("input_speed_defect", speed_defect(Curve{curve}));

    const SampledCurve out = reparameterize_arclength(Curve{curve}, 1e-3);
    const auto velocity = out.derivative_samples(1, 1, 6);
    double defect = 0.0;
    for (const auto& v : velocity.values) defect = std::max(defect, std::abs(inner(v, v) - 1.0));
    rec.at_most("speed_defect", defect, 1e-6);
    rec.info("exact_arclength", exact);
    rec.near("grid_span_rel", (out.grid.back() - out.grid.s0) / exact, 1.0, 1e-8);
    rec.near("arclength_rel", total_arclength(Curve{out}) / exact, 1.0, 1e-8);
}

struct CliRun {
    int code = 0;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_cli(Recorder& rec, const AcceptanceOptions&)
{
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("minkhelix-accept-" + std::to_string(rd()));
    fs::create_directories(dir);

    auto schema_ok = [&](const std::string& key, const std::string& text, const std::string& schema_name) {
        std::vector<std::string> problems;
        try {
            problems = validate_json(json::parse(text), schema(schema_name));
        } catch (const std::exception& e) {
            problems.push_back(e.what());
        }
        rec.expect(key, problems.empty(), problems.empty() ? "" : problems.front());
    };

    const std::vector<std::pair<std::string, int>> presets{
        {"eq21_trig", exit_code::helix},
        {"eq21_cosh", exit_code::helix},
        {"exponential", exit_code::helix},
        {"linear_theta", exit_code::not_helix},
        {"w_curve", exit_code::invariant_constant_non_helix},
        {"hyperbolic_circular", exit_code::invariant_constant_non_helix},
        {"line", exit_code::geometry_error},
    };
    for (const auto& [name, want] : presets) {
        const CliRun r = cli({"analyze", "--preset", name});
        rec.equal("analyze." + name + ".exit", r.code, want);
        if (r.code < exit_code::input_error) schema_ok("analyze." + name + ".schema", r.out, "helix_report");
    }
    rec.equal("analyze.missing_file.exit", cli({"analyze", (dir / "missing.csv").string()}).code,
              exit_code::input_error);
    rec.equal("analyze.unknown_flag.exit", cli({"analyze", "--preset", "w_curve", "--bogus"}).code,
              exit_code::usage_error);

    const fs::path spec = dir / "eq21.json";
    std::ofstream(spec) << R"({"eps1": -1, "eps2": 1, "kind": "eq21", "params": {"C1": 2, "C2": 1}})";
    const fs::path out1 = dir / "a.csv", out2 = dir / "b.csv";
    const CliRun s1 = cli({"synthesize", spec.string(), out1.string()});
    const CliRun s2 = cli({"synthesize", spec.string(), out2.string()});
    rec.equal("synthesize.exit", s1.code, exit_code::ok);
    if (s1.code == exit_code::ok) {
        schema_ok("synthesize.schema", s1.out, "synthesize_summary");
        rec.equal("synthesize.rows", json::parse(s1.out).at("rows"), 10001);
    }
    const std::string b1 = slurp(out1), b2 = slurp(out2);
    rec.expect("synthesize.byte_identical", s2.code == exit_code::ok && !b1.empty() && b1 == b2);
    const CliRun csv = cli({"analyze", out1.string()});
    rec.equal("analyze.synthesized_csv.exit", csv.code, exit_code::helix);
    if (csv.code < exit_code::input_error) schema_ok("analyze.synthesized_csv.schema", csv.out, "helix_report");

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"eps1": -1, "eps2": -1, "kind": "constant", "params": {"k1": 1, "k2": 1, "k3": 1}})";
    const CliRun sb = cli({"synthesize", bad.string(), (dir / "c.csv").string()});
    rec.equal("synthesize.signature_violation.exit", sb.code, exit_code::input_error);
    rec.expect("synthesize.signature_violation.message", sb.err.find("SignatureRuleViolation") != std::string::npos,
               sb.err);

    std::error_code ec;
    fs::remove_all(dir, ec);
}

struct Criterion {
    int id;
    const char* name;
    const char* group;
    void (*run)(Recorder&, const AcceptanceOptions&);
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {1, "frame Gram matrix and signature rule", "metric", criterion_metric},
        {2, "trigonometric ratio helix (eps1 = -1)", "invariants", criterion_trig},
        {3, "hyperbolic ratio helix (eps1 = +1)", "invariants", criterion_cosh},
        {4, "exponential ratio helix", "invariants", criterion_exponential},
        {5, "constant-curvature control", "controls", criterion_w_curve},
        {6, "linear-theta control", "controls", criterion_linear_theta},
        {7, "curvature round trip and convergence", "roundtrip", criterion_roundtrip},
        {8, "gamma ODE and beta relation", "gamma", criterion_gamma},
        {9, "arclength reparameterization", "reparam", criterion_reparam},
        {10, "command-line contract", "cli", criterion_cli},
    };
    return list;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options)
{
    for (const auto& g : options.only)
        if (std::find(acceptance_groups().begin(), acceptance_groups().end(), g) == acceptance_groups().end())
            fail(ErrorKind::InvalidSpec, "unknown acceptance group '" + g + "'");

    std::vector<std::future<CriterionResult>> jobs;
    for (const auto& c : criteria()) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.group) == options.only.end())
            continue;
        jobs.push_back(std::async(std::launch::async, [&c, &options] {
            CriterionResult r;
            r.id = c.id;
            r.name = c.name;
            r.group = c.group;
            Recorder rec(r);
            rec.guarded("criterion", [&] { c.run(rec, options); });
            return r;
        }));
    }
    std::vector<CriterionResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    return results;
}

json acceptance_summary(const std::vector<CriterionResult>& results, double runtime_seconds)
{
    json criteria = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        json c{{"id", r.id}, {"name", r.name}, {"group", r.group}, {"passed", r.passed}, {"measured", r.measured}};
        if (!r.failures.empty()) c["failures"] = r.failures;
        criteria.push_back(std::move(c));
    }
    return {{"passed", all}, {"criteria", criteria}, {"runtime_seconds", runtime_seconds}};
}

std::string format_result_line(const CriterionResult& r)
{
    std::string line = std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.group + ": " +
                       r.name;
    if (!r.failures.empty()) {
        line += " (" + r.failures.front();
        if (r.failures.size() > 1) line += "; +" + std::to_string(r.failures.size() - 1) + " more";
        line += ")";
    }
    return line;
}

}  // namespace minkhelix
