#include "app.hpp"

#include "commands.hpp"
#include "output.hpp"

#include "selfsim/error.hpp"
#include "selfsim/selfsim.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace selfsim::cli {
namespace {

struct Flags {
    std::string command;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta, h, zeta, omega, x_probe, window, t, dx;
    std::optional<std::uint64_t> n, samples;
    std::vector<double> k, x, times, alphas, eps, grid;
    std::string method;
    bool record_timing = false;
    bool ks = false;
};

std::string usage_commands() {
    std::string s;
    for (const auto& c : commands()) s += (s.empty() ? "" : ", ") + c.name;
    return s;
}

json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        fail(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
}

// Flags override scalar config fields; list flags replace the whole list.
void apply_flags(const Flags& f, json& cfg) {
    auto set = [&](const char* key, const auto& v) {
        if (v) cfg[key] = *v;
    };
    auto set_in = [&](const char* blk, const char* key, const auto& v) {
        if (v) cfg[blk][key] = *v;
    };
    auto set_list = [&](const char* key, const std::vector<double>& v) {
        if (!v.empty()) cfg[key] = v;
    };
    set_in("medium", "delta", f.delta);
    set_in("medium", "h", f.h);
    set_in("medium", "zeta", f.zeta);
    set("seed", f.seed);
    set("omega", f.omega);
    set("x_probe", f.x_probe);
    set("t", f.t);
    set("samples", f.samples);
    set_in("grid", "dx", f.dx);
    set_in("grid", "n", f.n);
    set_in("grid", "window", f.window);
    if (!f.grid.empty()) {
        if (f.grid.size() != 2 || !(f.grid[1] >= 0.0) || f.grid[1] != std::floor(f.grid[1]))
            fail(ErrorCode::InvalidArgument, "--grid takes dx,n");
        cfg["grid"]["dx"] = f.grid[0];
        cfg["grid"]["n"] = static_cast<std::uint64_t>(f.grid[1]);
    }
    set_list("k", f.k);
    set_list("x", f.x);
    set_list("times", f.times);
    set_list("alphas", f.alphas);
    if (!f.eps.empty()) {
        if (f.command == "potentials") {
            if (f.eps.size() != 1) fail(ErrorCode::InvalidArgument, "potentials takes a single --eps");
            cfg["eps"] = f.eps.front();
        } else {
            cfg["eps"] = f.eps;
        }
    }
    if (!f.method.empty()) cfg["method"] = f.method;
    if (f.record_timing) cfg["record_timing"] = true;
    if (f.ks) cfg["ks"] = true;
    if (!f.out.empty()) cfg["out"] = f.out;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int report(std::ostream& err, ErrorCode code, const std::string& msg) {
    ordered_json e;
    e["error"] = std::string(to_string(code));
    e["message"] = msg;
    err << e.dump() << '\n';
    return is_numeric_failure(code) ? kExitNumeric : kExitValidation;
}

int execute(const Flags& flags, std::ostream& out, std::ostream& err) {
    const Command* cmd = find_command(flags.command);
    if (!cmd) fail(ErrorCode::InvalidArgument, "unknown command '" + flags.command + "' (one of: " + usage_commands() + ")");
    json cfg = flags.config.empty() ? json::object() : load_config(flags.config);
    if (!cfg.is_object()) fail(ErrorCode::InvalidArgument, "config must be a JSON object");
    apply_flags(flags, cfg);
    validate_config(*cmd, cfg);
    if (cmd->needs_medium) medium_from(cfg);  // delta is checked before anything runs

    const std::string out_dir = cfg.value("out", std::string());
    const bool timing = cfg.value("record_timing", false);
    // The echo omits where and how the run is recorded; only compute inputs are hashed.
    json echo = cfg;
    echo.erase("out");
    echo.erase("record_timing");
    echo["command"] = cmd->name;
    const std::string canonical = echo.dump();

    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream log;
    auto result = cmd->exec(cfg, cmd->name == "selftest" ? out : log);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ordered_json env;
    env["tool"] = "selfsim";
    env["version"] = version();
    env["command"] = cmd->name;
    env["config_hash"] = "fnv1a64:" + hex64(fnv1a64(canonical));
    env["config"] = echo;
    ordered_json prov;
    prov["library_version"] = version();
    if (cfg.contains("seed")) prov["seed"] = cfg["seed"];
    const auto q = quadrature_from(cfg);
    prov["quadrature"] = {{"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}, {"tau_split", q.tau_split}};
    env["provenance"] = prov;
    env["results"] = result.results;
    auto tables = ordered_json::array();
    for (const auto& t : result.tables)
        tables.push_back({{"name", t.name}, {"file", t.name + ".csv"}, {"columns", t.table.headers}, {"rows", t.table.rows()}});
    env["tables"] = tables;
    if (timing) env["wall_time_s"] = wall;

    if (out_dir.empty()) {
        if (cmd->name != "selftest" && !result.tables.empty()) out << to_csv(result.tables.front().table);
    } else {
        const std::filesystem::path dir(out_dir);
        for (const auto& t : result.tables) {
            write_atomic(dir / (t.name + ".csv"), to_csv(t.table));
            write_atomic(dir / (t.name + ".gp"), plot_script(t.plot));
        }
        write_atomic(dir / (cmd->name + ".json"), env.dump(2) + "\n");
    }
    return result.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app("Self-similar media toolkit", "selfsim");
    app.set_help_flag("--help", "print this help");  // -h would clash with --h
    app.add_option("command", f.command, "one of: " + usage_commands())->required();
    app.add_option("--config", f.config, "JSON RunConfig");
    app.add_option("--out", f.out, "output directory (CSV to stdout if omitted)");
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--delta", f.delta, "scaling exponent, 0 < delta < 2");
    app.add_option("--h", f.h, "lattice spacing");
    app.add_option("--zeta", f.zeta, "scaling ratio");
    app.add_option("--k", f.k, "wavenumbers")->delimiter(',');
    app.add_option("--x", f.x, "positions")->delimiter(',');
    app.add_option("--t,--times", f.times, "times")->delimiter(',');
    app.add_option("--alpha", f.alphas, "potential exponents")->delimiter(',');
    app.add_option("--eps", f.eps, "regularization(s)")->delimiter(',');
    app.add_option("--omega", f.omega, "Helmholtz frequency");
    app.add_option("--x-probe", f.x_probe, "Helmholtz probe position");
    app.add_option("--grid", f.grid, "dx,n")->delimiter(',');
    app.add_option("--dx", f.dx, "grid spacing");
    app.add_option("--n", f.n, "grid size");
    app.add_option("--window", f.window, "tabulate |x| <= window");
    app.add_option("--samples", f.samples, "Monte Carlo sample count");
    app.add_option("--method", f.method, "laplacian method: spectral, grid, point");
    app.add_flag("--ks", f.ks, "mc: KS distance against the numeric CDF");
    app.add_flag("--record-timing", f.record_timing, "include wall time in the envelope");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return report(err, ErrorCode::InvalidArgument, e.what());
    }
    // mc reads its time as a scalar; other commands take a list.
    if (f.command == "mc" && !f.times.empty()) {
        if (f.times.size() != 1) return report(err, ErrorCode::InvalidArgument, "mc takes a single --t");
        f.t = f.times.front();
        f.times.clear();
    }

    try {
        return execute(f, out, err);
    } catch (const Error& e) {
        return report(err, e.code(), e.what());
    } catch (const json::exception& e) {
        return report(err, ErrorCode::InvalidArgument, e.what());
    } catch (const std::exception& e) {
        return report(err, ErrorCode::QuadratureNoConvergence, e.what());
    }
}

}  // namespace selfsim::cli
