#include "minkhelix/schema.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("minkhelix-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliRun run(const std::string& args)
    {
        const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
        const std::string cmd = std::string(MINKHELIX_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    fs::path write(const std::string& name, const std::string& text)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

bool valid(const std::string& text, const char* schema_name)
{
    return minkhelix::validate_json(json::parse(text), minkhelix::schema(schema_name)).empty();
}

}  // namespace

TEST_F(Cli, AnalyzePresetsExitCodes)
{
    const CliRun w = run("analyze --preset w_curve");
    EXPECT_EQ(w.code, 4);
    EXPECT_FALSE(json::parse(w.out).at("is_helix").get<bool>());
    EXPECT_TRUE(valid(w.out, "helix_report"));

    const CliRun t = run("analyze --preset eq21_trig");
    EXPECT_EQ(t.code, 0);
    EXPECT_TRUE(json::parse(t.out).at("is_helix").get<bool>());
    EXPECT_TRUE(t.err.empty());

    EXPECT_EQ(run("analyze --preset linear_theta").code, 3);
    const CliRun line = run("analyze --preset line");
    EXPECT_EQ(line.code, 11);
    EXPECT_NE(line.err.find("CurvatureVanishes"), std::string::npos);
    EXPECT_TRUE(line.out.empty());
}

TEST_F(Cli, AnalyzeInputs)
{
    const CliRun missing = run("analyze " + (dir_ / "missing.csv").string());
    EXPECT_EQ(missing.code, 10);
    EXPECT_FALSE(missing.err.empty());

    const fs::path bad = write("bad.csv", "s,x1,x2,x3,x4\n0,0,0,0\n");
    EXPECT_EQ(run("analyze " + bad.string()).code, 10);

    const fs::path spec = write("p.json", R"({"preset": "eq21_cosh", "s_max": 1.5})");
    const CliRun p = run("analyze " + spec.string());
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(json::parse(p.out).at("source"), spec.string());

    const fs::path prof = write("q.json", R"({"kind": "control", "params": {"name": "w_curve"}, "s_max": 4})");
    EXPECT_EQ(run("analyze " + prof.string()).code, 4);

    EXPECT_EQ(run("analyze --preset w_curve " + spec.string()).code, 13);
    EXPECT_EQ(run("analyze").code, 13);
}

TEST_F(Cli, AnalyzeOutputs)
{
    const fs::path plot = dir_ / "plot.csv", report = dir_ / "report.json", frames = dir_ / "frames.csv";
    const CliRun r = run("analyze --preset exponential --h 0.002 --s-max 3 --tol-H 1e-3 --tol-U 1e-2 --plot-csv " +
                      plot.string() + " --report " + report.string() + " --frames-csv " + frames.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(slurp(report), r.out);
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("tolerances").at("tol_U"), 1e-2);
    std::istringstream csv(slurp(plot));
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "s,r,theta,H,f,m,n,axis_residual_pointwise");
    EXPECT_EQ(slurp(frames).rfind("s,k1,k2,k3,eps1,eps2", 0), 0u);
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run("analyze --preset w_curve --bogus").code, 13);
    EXPECT_EQ(run("frobnicate").code, 13);
    EXPECT_EQ(run("").code, 13);
    EXPECT_EQ(run("analyze --preset w_curve --h -1").code, 13);
    EXPECT_EQ(run("verify --only nothing").code, 13);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("analyze --help").code, 0);
}

TEST_F(Cli, SynthesizeIsDeterministic)
{
    const fs::path spec = write("eq21.json", R"({"eps1": -1, "eps2": 1, "kind": "eq21", "params": {"C1": 2, "C2": 1}})");
    const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
    const CliRun ra = run("synthesize " + spec.string() + " " + a.string());
    const CliRun rb = run("synthesize " + spec.string() + " " + b.string());
    ASSERT_EQ(ra.code, 0) << ra.err;
    ASSERT_EQ(rb.code, 0);
    EXPECT_TRUE(valid(ra.out, "synthesize_summary"));
    const json s = json::parse(ra.out);
    EXPECT_EQ(s.at("rows"), 10001);
    EXPECT_LE(s.at("gram_drift").get<double>(), 1e-8);
    EXPECT_EQ(slurp(a), slurp(b));

    const CliRun analyzed = run("analyze " + a.string());
    EXPECT_EQ(analyzed.code, 0) << analyzed.err;

    const CliRun shorter = run("synthesize " + spec.string() + " " + a.string() + " --s-max 2 --h 0.002");
    EXPECT_EQ(json::parse(shorter.out).at("rows"), 1001);
}

TEST_F(Cli, SynthesizeRejectsBadSpecs)
{
    const fs::path bad = write("bad.json", R"({"eps1": -1, "eps2": -1, "kind": "eq21", "params": {"C1": 2, "C2": 1}})");
    const CliRun r = run("synthesize " + bad.string() + " " + (dir_ / "x.csv").string());
    EXPECT_EQ(r.code, 10);
    EXPECT_NE(r.err.find("SignatureRuleViolation"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "x.csv"));

    const fs::path broken = write("broken.json", "{not json");
    EXPECT_EQ(run("synthesize " + broken.string() + " " + (dir_ / "y.csv").string()).code, 10);
    EXPECT_EQ(run("synthesize " + bad.string()).code, 13);
}

TEST_F(Cli, VerifySubsetAndTolerance)
{
    const CliRun sub = run("verify --only invariants");
    EXPECT_EQ(sub.code, 0) << sub.err;
    EXPECT_TRUE(valid(sub.out, "verify_summary"));
    const json j = json::parse(sub.out);
    ASSERT_EQ(j.at("criteria").size(), 3u);
    for (const auto& c : j.at("criteria")) EXPECT_EQ(c.at("group"), "invariants");
    EXPECT_NE(sub.err.find("[PASS] 2 invariants"), std::string::npos);

    const CliRun tight = run("verify --only invariants --tol-H 1e-12");
    EXPECT_EQ(tight.code, 1);
    EXPECT_FALSE(json::parse(tight.out).at("passed").get<bool>());
    EXPECT_NE(tight.err.find("[FAIL]"), std::string::npos);
}

TEST_F(Cli, PresetsListing)
{
    const CliRun r = run("presets");
    EXPECT_EQ(r.code, 0);
    for (const char* n : {"hyperbolic_circular", "line", "eq21_trig", "eq21_cosh", "exponential", "w_curve", "linear_theta"})
        EXPECT_NE(r.out.find(n), std::string::npos) << n;
}
