#include "app.hpp"
#include "output.hpp"

#include "selfsim/error.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using selfsim::cli::run;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / (std::string("selfsim-cli-") + info->name());
        fs::remove_all(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

}  // namespace

TEST(Cli, DispersionAtZero) {
    const auto r = invoke({"dispersion", "--delta", "1", "--h", "1", "--zeta", "1", "--k", "0"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "k,omega2\n0,0\n");
}

TEST(Cli, DiffusionCauchyOrigin) {
    const auto r = invoke({"diffusion", "--delta", "1", "--t", "1", "--grid", "0.1,524288", "--window", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "x,W_t1");
    const double w0 = std::stod(row.substr(row.find(',') + 1));
    EXPECT_NEAR(w0, 1.0 / (M_PI * M_PI), 1e-8);
}

TEST(Cli, ValidationBeforeCompute) {
    TempDir tmp;
    const auto r = invoke({"diffusion", "--delta", "2.5", "--out", tmp.path().string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("DeltaOutOfRange"), std::string::npos);
    EXPECT_FALSE(fs::exists(tmp.path()));
}

TEST(Cli, RejectsUnknownKeys) {
    TempDir tmp;
    fs::create_directories(tmp.path());
    const auto cfg = tmp.path() / "cfg.json";
    std::ofstream(cfg) << R"({"medium": {"delta": 0.5, "gamma": 1}})";
    EXPECT_EQ(invoke({"dispersion", "--config", cfg.string()}).code, 1);
    std::ofstream(cfg) << R"({"medium": {"delta": 0.5}, "alphas": [1]})";
    EXPECT_EQ(invoke({"dispersion", "--config", cfg.string()}).code, 1);
    std::ofstream(cfg) << R"({"medium": {"delta": 0.5}, "k": [0.5, 2]})";
    const auto ok = invoke({"dispersion", "--config", cfg.string()});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(std::count(ok.out.begin(), ok.out.end(), '\n'), 3);
}

TEST(Cli, FlagsOverrideConfig) {
    TempDir tmp;
    fs::create_directories(tmp.path());
    const auto cfg = tmp.path() / "cfg.json";
    std::ofstream(cfg) << R"({"medium": {"delta": 0.5}, "k": [1]})";
    const auto a = invoke({"dispersion", "--config", cfg.string(), "--delta", "1"});
    const auto b = invoke({"dispersion", "--delta", "1", "--k", "1"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"nonsense"}).code, 1);
    EXPECT_EQ(invoke({"dispersion"}).code, 1);  // delta missing
    EXPECT_EQ(invoke({"dispersion", "--delta", "0.5", "--bogus"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
    TempDir tmp;
    fs::create_directories(tmp.path());
    const auto cfg = tmp.path() / "cfg.json";
    std::ofstream(cfg) << R"({"medium": {"delta": 0.5}, "series": {"max_terms": 3}, "x": [0.5], "times": [4]})";
    const auto r = invoke({"kernels", "--config", cfg.string()});
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_NE(r.err.find("SeriesBudgetExceeded"), std::string::npos);
}

TEST(Cli, ByteIdenticalReruns) {
    TempDir tmp;
    const auto a = tmp.path() / "a";
    const auto b = tmp.path() / "b";
    for (const auto& dir : {a, b})
        ASSERT_EQ(invoke({"mc", "--delta", "0.7", "--samples", "2000", "--seed", "3", "--out", dir.string()}).code, 0);
    for (const auto* name : {"mc.csv", "mc.json", "mc.gp"}) EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    for (const auto& e : fs::directory_iterator(a)) EXPECT_EQ(e.path().extension().string().find("tmp"), std::string::npos);
}

TEST(Cli, Envelope) {
    TempDir tmp;
    ASSERT_EQ(invoke({"potentials", "--alpha", "-0.5,0.5,1.5", "--out", tmp.path().string()}).code, 0);
    const auto env = nlohmann::json::parse(slurp(tmp.path() / "potentials.json"));
    EXPECT_EQ(env["tool"], "selfsim");
    EXPECT_TRUE(env.contains("version"));
    EXPECT_EQ(env["config_hash"].get<std::string>().rfind("fnv1a64:", 0), 0u);
    EXPECT_FALSE(env.contains("wall_time_s"));
    EXPECT_EQ(env["tables"][0]["columns"].size(), 4u);
    const auto script = slurp(tmp.path() / "potentials.gp");
    EXPECT_NE(script.find("'potentials.csv'"), std::string::npos);
    std::size_t curves = 0;
    for (auto pos = script.find("with lines"); pos != std::string::npos; pos = script.find("with lines", pos + 1)) ++curves;
    EXPECT_EQ(curves, 3u);

    TempDir other;
    ASSERT_EQ(invoke({"potentials", "--alpha", "-0.5,0.5,1.5", "--record-timing", "--out", other.path().string()}).code, 0);
    const auto timed = nlohmann::json::parse(slurp(other.path() / "potentials.json"));
    EXPECT_TRUE(timed.contains("wall_time_s"));
    EXPECT_EQ(timed["config_hash"], env["config_hash"]);
}

TEST(Cli, TailPlotIsLogLog) {
    TempDir tmp;
    fs::create_directories(tmp.path());
    const auto cfg = tmp.path() / "cfg.json";
    std::ofstream(cfg) << R"({"medium": {"delta": 1.5}, "grid": {"dx": 0.1, "n": 1024}, "tail": {"x_lo": 100, "x_hi": 10000}})";
    ASSERT_EQ(invoke({"diffusion", "--config", cfg.string(), "--out", tmp.path().string()}).code, 0);
    const auto script = slurp(tmp.path() / "diffusion_tail.gp");
    EXPECT_NE(script.find("set logscale xy"), std::string::npos);
    EXPECT_NE(script.find("fitted slope"), std::string::npos);
    const auto env = nlohmann::json::parse(slurp(tmp.path() / "diffusion.json"));
    EXPECT_NEAR(env["results"]["tail"]["slope"].get<double>(), -2.5, 0.05);
}

TEST(Table, HeaderOnlyAndColumns) {
    selfsim::cli::Table t;
    t.headers = {"x", "value"};
    EXPECT_EQ(selfsim::cli::to_csv(t), "x,value\n");
    selfsim::cli::Table u;
    u.add("x", {1.0, 2.0});
    u.add("value", {0.1, 1e-300});
    u.add("value2", {-0.0, 3.0});
    EXPECT_EQ(selfsim::cli::to_csv(u), "x,value,value2\n1,0.1,-0\n2,1e-300,3\n");
    EXPECT_THROW(u.add("bad", {1.0}), selfsim::Error);
}

TEST(Table, RoundTripFormatting) {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.5})
        EXPECT_EQ(std::strtod(selfsim::cli::format_double(v).c_str(), nullptr), v);
}
