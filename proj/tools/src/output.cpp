#include "output.hpp"

#include "selfsim/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace selfsim::cli {

void Table::add(std::string header, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().size())
        fail(ErrorCode::InvalidArgument, "table columns must have equal length");
    headers.push_back(std::move(header));
    columns.push_back(std::move(values));
}

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.front().size(); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        if (c) out += ',';
        out += table.headers[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string plot_script(const PlotSpec& spec) {
    std::string s;
    s += "# gnuplot script; run from this directory\n";
    s += "set datafile separator ','\n";
    s += "set key autotitle columnhead\n";
    s += "set title '" + spec.title + "'\n";
    s += "set xlabel '" + spec.xlabel + "'\n";
    s += "set ylabel '" + spec.ylabel + "'\n";
    if (spec.loglog) s += "set logscale xy\nset format y '%g'\n";
    float y = 0.92f;
    for (const auto& a : spec.annotations) {
        s += "set label '" + a + "' at graph 0.05, graph " + format_double(y) + "\n";
        y -= 0.06f;
    }
    s += "plot ";
    for (std::size_t i = 0; i < spec.curves.size(); ++i) {
        if (i) s += ", \\\n     ";
        s += (i ? "''" : "'" + spec.csv_name + "'");
        s += " using 1:" + std::to_string(spec.curves[i].column) + " with lines title '" + spec.curves[i].title + "'";
    }
    s += "\n";
    return s;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorCode::IoError, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorCode::IoError, "cannot rename onto " + path.string());
    }
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace selfsim::cli
