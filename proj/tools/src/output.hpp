#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim::cli {

/// Column-major numeric table; every column has the same length.
struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;

    void add(std::string header, std::vector<double> values);
    std::size_t rows() const;
};

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

/// Header row plus one line per row, comma separated, LF endings.
std::string to_csv(const Table& table);

struct PlotCurve {
    int column;  // 1-based CSV column for the ordinate
    std::string title;
};

struct PlotSpec {
    std::string csv_name;  // relative to the script
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool loglog = false;
    std::vector<PlotCurve> curves;
    std::vector<std::string> annotations;
};

/// Gnuplot script text referencing the CSV by relative path.
std::string plot_script(const PlotSpec& spec);

/// Writes via a temporary file and a rename. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace selfsim::cli
