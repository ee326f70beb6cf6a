#include "commands.hpp"

#include "selftest.hpp"

#include "selfsim/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace selfsim::cli {
namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::InvalidArgument, msg); }

const json& empty_object() {
    static const json e = json::object();
    return e;
}

const json& block(const json& cfg, const char* key) {
    auto it = cfg.find(key);
    return it == cfg.end() ? empty_object() : *it;
}

double num(const json& o, const char* key, double def) {
    auto it = o.find(key);
    if (it == o.end()) return def;
    if (!it->is_number()) bad(std::string("'") + key + "' must be a number");
    return it->get<double>();
}

std::uint64_t count(const json& o, const char* key, std::uint64_t def) {
    auto it = o.find(key);
    if (it == o.end()) return def;
    if (!it->is_number_unsigned()) bad(std::string("'") + key + "' must be a non-negative integer");
    return it->get<std::uint64_t>();
}

std::vector<double> nums(const json& o, const char* key, std::vector<double> def) {
    auto it = o.find(key);
    if (it == o.end()) return def;
    if (it->is_number()) return {it->get<double>()};
    if (!it->is_array()) bad(std::string("'") + key + "' must be a number or an array of numbers");
    std::vector<double> v;
    for (const auto& e : *it) {
        if (!e.is_number()) bad(std::string("'") + key + "' must contain numbers only");
        v.push_back(e.get<double>());
    }
    if (v.empty()) bad(std::string("'") + key + "' must not be empty");
    return v;
}

std::string text(const json& o, const char* key, std::string def) {
    auto it = o.find(key);
    if (it == o.end()) return def;
    if (!it->is_string()) bad(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

bool flag(const json& o, const char* key, bool def) {
    auto it = o.find(key);
    if (it == o.end()) return def;
    if (!it->is_boolean()) bad(std::string("'") + key + "' must be true or false");
    return it->get<bool>();
}

const std::map<std::string, std::set<std::string>>& nested_schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"medium", {"delta", "h", "zeta"}},
        {"grid", {"dx", "n", "window"}},
        {"quadrature", {"abs_tol", "rel_tol", "tau_split", "max_subdivisions"}},
        {"series", {"max_terms", "abs_tol", "ratio_guard"}},
        {"profile", {"kind", "width", "center", "amplitude", "k"}},
        {"velocity", {"kind", "width", "center", "amplitude", "k"}},
        {"tail", {"x_lo", "x_hi", "points", "t"}},
    };
    return s;
}

std::string label(double v) { return format_double(v); }

SeriesPolicy series_from(const json& cfg) {
    const auto& s = block(cfg, "series");
    SeriesPolicy p;
    p.max_terms = static_cast<int>(count(s, "max_terms", static_cast<std::uint64_t>(p.max_terms)));
    p.abs_tol = num(s, "abs_tol", p.abs_tol);
    p.ratio_guard = num(s, "ratio_guard", p.ratio_guard);
    p.validate();
    return p;
}

struct GridSpec {
    Grid1D grid;
    double window;
};

GridSpec grid_from(const json& cfg, double dx_def, std::uint64_t n_def) {
    const auto& g = block(cfg, "grid");
    const double dx = num(g, "dx", dx_def);
    const auto n = count(g, "n", n_def);
    const double window = num(g, "window", 20.0);
    if (!(window > 0.0)) bad("grid.window must be positive");
    return {Grid1D::centered(dx, n), window};
}

// Indices of the grid nodes inside the output window.
std::vector<std::size_t> window_nodes(const GridSpec& gs) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < gs.grid.size(); ++i)
        if (std::abs(gs.grid.x(i)) <= gs.window) idx.push_back(i);
    return idx;
}

std::vector<double> pick(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
}

TestFunction profile_from(const json& p, const char* name) {
    const auto kind = text(p, "kind", "gaussian");
    const double amp = num(p, "amplitude", 1.0);
    if (kind == "gaussian") {
        const double w = num(p, "width", 1.0);
        if (!(w > 0.0)) bad(std::string(name) + ".width must be positive");
        return TestFunction::gaussian(w, num(p, "center", 0.0), amp);
    }
    if (kind == "cosine") {
        const double k = num(p, "k", 1.0);
        if (!(k > 0.0)) bad(std::string(name) + ".k must be positive");
        return TestFunction::cosine(k, amp);
    }
    bad(std::string(name) + ".kind must be 'gaussian' or 'cosine'");
}

PlotSpec lines_plot(const std::string& csv, const Table& t, const std::string& title, const std::string& ylabel,
                    std::size_t first_curve = 1) {
    PlotSpec p{csv, title, t.headers.front(), ylabel, false, {}, {}};
    for (std::size_t c = first_curve; c < t.headers.size(); ++c)
        p.curves.push_back({static_cast<int>(c + 1), t.headers[c]});
    return p;
}

NamedTable named(std::string name, Table t, const std::string& title, const std::string& ylabel) {
    auto plot = lines_plot(name + ".csv", t, title, ylabel);
    return {std::move(name), std::move(t), std::move(plot)};
}

// ---- commands --------------------------------------------------------------

CommandOutput cmd_dispersion(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto ks = nums(cfg, "k", {0.1, 1.0, 10.0});
    Table t;
    std::vector<double> w2;
    for (double k : ks) {
        if (!std::isfinite(k)) bad("k must be finite");
        w2.push_back(dispersion(p, k));
    }
    t.add("k", ks);
    t.add("omega2", w2);
    CommandOutput out;
    out.results["a_delta"] = p.a_delta();
    out.tables.push_back(named("dispersion", std::move(t), "dispersion relation", "omega^2"));
    return out;
}

CommandOutput cmd_greens_static(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto xs = nums(cfg, "x", {0.5, 1.0, 2.0, 4.0});
    const double g0 = greens_static_prefactor(p);
    std::vector<double> g;
    for (double x : xs) g.push_back(greens_static(p, x));
    Table t;
    t.add("x", xs);
    t.add("g", g);
    CommandOutput out;
    out.results["g0"] = g0;
    out.tables.push_back(named("greens-static", std::move(t), "static Green's function", "g(x)"));
    return out;
}

CommandOutput cmd_laplacian(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto method = text(cfg, "method", "spectral");
    const auto f = profile_from(block(cfg, "profile"), "profile");
    Table t;
    if (method == "point") {
        const auto q = quadrature_from(cfg);
        const auto xs = nums(cfg, "x", {-2.0, -1.0, 0.0, 1.0, 2.0});
        std::vector<double> fv, lv;
        for (double x : xs) {
            fv.push_back(f(x));
            lv.push_back(laplacian_apply_point(p, f, x, q));
        }
        t.add("x", xs);
        t.add("f", fv);
        t.add("laplacian", lv);
    } else if (method == "spectral" || method == "grid") {
        if (cfg.contains("x")) bad("'x' applies to method 'point' only");
        const auto gs = grid_from(cfg, 0.05, 4096);
        const auto field = RealField::sample(gs.grid, f.value);
        const auto lf = method == "spectral" ? laplacian_apply_spectral(p, field) : laplacian_apply_grid(p, field);
        const auto idx = window_nodes(gs);
        std::vector<double> xs;
        for (auto i : idx) xs.push_back(gs.grid.x(i));
        t.add("x", xs);
        t.add("f", pick(field.values, idx));
        t.add("laplacian", pick(lf.values, idx));
    } else {
        bad("method must be 'spectral', 'grid' or 'point'");
    }
    CommandOutput out;
    out.results["method"] = method;
    out.tables.push_back(named("laplacian", std::move(t), "self-similar Laplacian (" + method + ")", "value"));
    return out;
}

CommandOutput cmd_cauchy(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto gs = grid_from(cfg, 0.05, 4096);
    const auto times = nums(cfg, "times", {0.5, 1.0});
    const auto u0 = RealField::sample(gs.grid, profile_from(block(cfg, "profile"), "profile").value);
    RealField v0(gs.grid);
    if (cfg.contains("velocity")) v0 = RealField::sample(gs.grid, profile_from(cfg["velocity"], "velocity").value);
    const CauchyState s0(u0, v0);
    const double e0 = energy(p, s0);
    const auto idx = window_nodes(gs);
    std::vector<double> xs;
    for (auto i : idx) xs.push_back(gs.grid.x(i));
    Table t;
    t.add("x", xs);
    t.add("u_t0", pick(u0.values, idx));
    CommandOutput out;
    out.results["energy_initial"] = e0;
    auto energies = ordered_json::array();
    double drift = 0.0;
    for (double tt : times) {
        const auto s = cauchy_evolve(p, s0, tt);
        const double e = energy(p, s);
        energies.push_back({{"t", tt}, {"energy", e}});
        if (e0 > 0.0) drift = std::max(drift, std::abs(e - e0) / e0);
        t.add("u_t" + label(tt), pick(s.u.values, idx));
    }
    out.results["energy"] = energies;
    out.results["max_relative_energy_drift"] = drift;
    out.tables.push_back(named("cauchy", std::move(t), "Cauchy problem displacement", "u(x,t)"));
    return out;
}

CommandOutput cmd_kernels(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto policy = series_from(cfg);
    const auto xs = nums(cfg, "x", {1.0, 2.0, 3.0, 4.0, 5.0});
    const auto times = nums(cfg, "times", {1.0});
    for (double x : xs)
        if (x == 0.0) fail(ErrorCode::OriginSingular, "kernels are tabulated for x != 0");
    Table t;
    t.add("x", xs);
    double worst = 0.0;
    for (double tt : times) {
        std::vector<double> qs, qds, qf, qdf;
        for (double x : xs) {
            qs.push_back(kernel_Q_series(p, x, tt, policy));
            qds.push_back(kernel_Qdot_series(p, x, tt, policy));
            qf.push_back(kernel_Q_fourier(p, x, tt));
            qdf.push_back(kernel_Qdot_fourier(p, x, tt));
            for (auto [a, b] : {std::pair{qs.back(), qf.back()}, std::pair{qds.back(), qdf.back()}})
                if (b != 0.0) worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        const auto tl = "_t" + label(tt);
        t.add("Q_series" + tl, qs);
        t.add("Qdot_series" + tl, qds);
        t.add("Q_fourier" + tl, qf);
        t.add("Qdot_fourier" + tl, qdf);
    }
    CommandOutput out;
    out.results["max_relative_series_fourier_difference"] = worst;
    out.tables.push_back(named("kernels", std::move(t), "Cauchy kernels", "value"));
    return out;
}

CommandOutput cmd_helmholtz(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto gs = grid_from(cfg, 0.05, 1u << 16);
    const double omega = num(cfg, "omega", 0.0);
    const auto eps = nums(cfg, "eps", {0.8, 0.4, 0.2});
    const double xp = num(cfg, "x_probe", 1.0);
    for (double e : eps)
        if (!(e > 0.0)) fail(ErrorCode::EpsNonPositive, "eps must be positive");
    const auto idx = window_nodes(gs);
    std::vector<double> xs;
    for (auto i : idx) xs.push_back(gs.grid.x(i));
    Table t;
    t.add("x", xs);
    std::vector<double> probe;
    for (double e : eps) {
        const auto h = helmholtz_green(p, gs.grid, omega, e);
        std::vector<double> re, im;
        for (auto i : idx) {
            re.push_back(h.values[i].real());
            im.push_back(h.values[i].imag());
        }
        t.add("re_eps" + label(e), re);
        t.add("im_eps" + label(e), im);
        probe.push_back(h.values[gs.grid.index_of(xp)].real());
    }
    CommandOutput out;
    out.results["x_probe"] = gs.grid.x(gs.grid.index_of(xp));
    out.results["probe_values"] = probe;
    if (omega == 0.0 && eps.size() >= 3) {
        // G_eps = g + eps^2 (a + b log eps); least squares over all eps.
        double m[3][3] = {}, r[3] = {};
        for (std::size_t i = 0; i < eps.size(); ++i) {
            const double row[3] = {1.0, eps[i] * eps[i], eps[i] * eps[i] * std::log(eps[i])};
            for (int a = 0; a < 3; ++a) {
                r[a] += row[a] * probe[i];
                for (int b = 0; b < 3; ++b) m[a][b] += row[a] * row[b];
            }
        }
        for (int c = 0; c < 3; ++c)
            for (int i = c + 1; i < 3; ++i) {
                const double f = m[i][c] / m[c][c];
                for (int j = c; j < 3; ++j) m[i][j] -= f * m[c][j];
                r[i] -= f * r[c];
            }
        const double c2 = r[2] / m[2][2];
        const double c1 = (r[1] - m[1][2] * c2) / m[1][1];
        const double c0 = (r[0] - m[0][1] * c1 - m[0][2] * c2) / m[0][0];
        out.results["static_limit"] = c0;
        if (std::abs(p.delta() - 1.0) > kDeltaPoleGuard)
            out.results["greens_static"] = greens_static(p, out.results["x_probe"].get<double>());
    }
    out.tables.push_back(named("helmholtz", std::move(t), "Helmholtz Green's function", "G"));
    return out;
}

CommandOutput cmd_diffusion(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto gs = grid_from(cfg, 0.05, 1u << 16);
    const auto times = nums(cfg, "times", {1.0});
    for (double tt : times)
        if (!(tt > 0.0)) fail(ErrorCode::TimeNonPositive, "times must be positive");
    const auto idx = window_nodes(gs);
    std::vector<double> xs;
    for (auto i : idx) xs.push_back(gs.grid.x(i));
    Table t;
    t.add("x", xs);
    CommandOutput out;
    auto per_t = ordered_json::array();
    for (double tt : times) {
        const auto w = propagator_W(p, gs.grid, tt);
        per_t.push_back({{"t", tt}, {"mass", w.mass()}, {"W_origin", w.values[gs.grid.index_of(0.0)]}});
        t.add("W_t" + label(tt), pick(w.values, idx));
    }
    out.results["profiles"] = per_t;
    out.tables.push_back(named("diffusion", std::move(t), "diffusion propagator", "W(x,t)"));

    if (cfg.contains("tail")) {
        const auto& tl = cfg["tail"];
        const double lo = num(tl, "x_lo", 100.0);
        const double hi = num(tl, "x_hi", 1e4);
        const auto pts = count(tl, "points", 32);
        const double tt = num(tl, "t", times.front());
        if (!(lo > 0.0) || !(hi > lo) || pts < 2 || pts > 100000) bad("tail window needs 0 < x_lo < x_hi and points >= 2");
        const double slope = tail_slope(p, tt, lo, hi, static_cast<int>(pts));
        std::vector<double> tx, tw;
        for (std::uint64_t i = 0; i < pts; ++i) {
            const double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                                         static_cast<double>(pts - 1));
            tx.push_back(x);
            tw.push_back(propagator_W_fourier(p, x, tt));
        }
        Table tt_table;
        tt_table.add("x", tx);
        tt_table.add("W", tw);
        out.results["tail"] = {{"t", tt}, {"x_lo", lo}, {"x_hi", hi}, {"slope", slope}, {"expected", -(1.0 + p.delta())}};
        auto plot = lines_plot("diffusion_tail.csv", tt_table, "far-field tail", "W(x,t)");
        plot.loglog = true;
        plot.annotations.push_back("fitted slope " + label(slope));
        out.tables.push_back({"diffusion_tail", std::move(tt_table), std::move(plot)});
    }
    return out;
}

CommandOutput cmd_mc(const json& cfg, std::ostream&) {
    const auto p = medium_from(cfg);
    const auto n = count(cfg, "samples", 100000);
    const double tt = num(cfg, "t", 1.0);
    const auto seed = count(cfg, "seed", 1);
    const bool ks = flag(cfg, "ks", false);
    if (n == 0 || n > (1ull << 28)) bad("samples must be in [1, 2^28]");
    const auto batch = sample_levy(p, tt, n, seed);
    Table t;
    t.add("sample", batch.samples);
    CommandOutput out;
    out.results["scale"] = batch.scale;
    out.results["samples"] = n;
    if (ks) out.results["ks_distance"] = ks_distance(batch.samples, [&](double x) { return propagator_cdf(p, x, tt); });
    PlotSpec plot{"mc.csv", "stable samples", "index", "sample", false, {}, {}};
    plot.curves.push_back({1, "sample"});
    out.tables.push_back({"mc", std::move(t), std::move(plot)});
    return out;
}

CommandOutput cmd_potentials(const json& cfg, std::ostream&) {
    const auto alphas = nums(cfg, "alphas", {-0.5, 0.5, 1.5});
    std::vector<double> def;
    for (int i = 1; i <= 16; ++i) def.push_back(0.25 * i);
    const auto xs = nums(cfg, "x", def);
    const double eps = num(cfg, "eps", 0.0);
    if (eps < 0.0) bad("eps must be >= 0");
    Table t;
    t.add("x", xs);
    CommandOutput out;
    auto integrals = ordered_json::array();
    for (double a : alphas) {
        std::vector<double> b;
        for (double x : xs) b.push_back(potential_b(a, x, eps));
        t.add("b_alpha" + label(a), b);
        if (a > 0.0 && std::fmod(a, 2.0) != 0.0)
            integrals.push_back({{"alpha", a}, {"I_at_1", integral_I(a, 1.0)}, {"J_at_1", integral_J(a, 1.0)}});
    }
    out.results["integrals"] = integrals;
    out.tables.push_back(named("potentials", std::move(t), "self-similar potentials", "b_alpha(x)"));
    return out;
}

CommandOutput cmd_selftest(const json&, std::ostream& log) {
    const auto cases = selftest::run_all(&log);
    CommandOutput out;
    auto arr = ordered_json::array();
    bool ok = true;
    for (const auto& c : cases) {
        arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        ok = ok && c.passed;
    }
    out.results["cases"] = arr;
    out.results["passed"] = ok;
    out.exit_code = ok ? 0 : 3;
    return out;
}

}  // namespace

const std::set<std::string>& common_keys() {
    static const std::set<std::string> k = {"command", "medium", "out", "record_timing", "seed", "quadrature",
                                            "series"};
    return k;
}

const std::vector<Command>& commands() {
    static const std::vector<Command> cmds = {
        {"dispersion", {"k"}, true, cmd_dispersion},
        {"greens-static", {"x"}, true, cmd_greens_static},
        {"laplacian", {"grid", "profile", "method", "x"}, true, cmd_laplacian},
        {"cauchy", {"grid", "profile", "velocity", "times"}, true, cmd_cauchy},
        {"kernels", {"x", "times"}, true, cmd_kernels},
        {"helmholtz", {"grid", "omega", "eps", "x_probe"}, true, cmd_helmholtz},
        {"diffusion", {"grid", "times", "tail"}, true, cmd_diffusion},
        {"mc", {"samples", "t", "ks"}, true, cmd_mc},
        {"potentials", {"alphas", "x", "eps"}, false, cmd_potentials},
        {"selftest", {}, false, cmd_selftest},
    };
    return cmds;
}

const Command* find_command(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return &c;
    return nullptr;
}

void validate_config(const Command& cmd, const json& cfg) {
    if (!cfg.is_object()) bad("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (!common_keys().count(key) && !cmd.keys.count(key))
            bad("unknown key '" + key + "' for command " + cmd.name);
        auto it = nested_schema().find(key);
        if (it == nested_schema().end()) continue;
        if (!value.is_object()) bad("'" + key + "' must be an object");
        for (const auto& [sub, _] : value.items())
            if (!it->second.count(sub)) bad("unknown key '" + key + "." + sub + "'");
    }
    if (cfg.contains("command") && cfg["command"] != cmd.name)
        bad("config is for command " + cfg["command"].dump() + ", not " + cmd.name);
    if (cmd.needs_medium && !block(cfg, "medium").contains("delta")) bad("medium.delta is required");
    if (cfg.contains("out") && !cfg["out"].is_string()) bad("'out' must be a string");
    if (cfg.contains("seed")) count(cfg, "seed", 0);
    if (cfg.contains("record_timing")) flag(cfg, "record_timing", false);
    quadrature_from(cfg);
    series_from(cfg);
}

MediumParams medium_from(const json& cfg) {
    const auto& m = block(cfg, "medium");
    auto it = m.find("delta");
    if (it == m.end()) bad("medium.delta is required");
    return make_params(num(m, "delta", 0.0), num(m, "h", 1.0), num(m, "zeta", 1.0));
}

QuadratureConfig quadrature_from(const json& cfg) {
    const auto& q = block(cfg, "quadrature");
    QuadratureConfig c;
    c.abs_tol = num(q, "abs_tol", c.abs_tol);
    c.rel_tol = num(q, "rel_tol", c.rel_tol);
    c.tau_split = num(q, "tau_split", c.tau_split);
    c.max_subdivisions = static_cast<int>(count(q, "max_subdivisions", static_cast<std::uint64_t>(c.max_subdivisions)));
    c.validate();
    return c;
}

}  // namespace selfsim::cli
