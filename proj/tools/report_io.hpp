#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "jcdem/analysis.hpp"

namespace jcdem::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes to `path + ".tmp"` and renames over `path`; nothing is left behind on failure.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Header row, then one row per sample; numbers as %.12e, LF line endings.
std::string time_series_csv(const TimeSeries& series);
std::string lambda_scan_csv(const LambdaScan& scan);

struct PlotData {
    std::string title;
    std::string x_label;
    std::vector<double> x;
    std::vector<Column> columns;
};

/// Standalone SVG 1.1, 800x500. Throws std::invalid_argument for empty input.
std::string render_svg(const PlotData& plot);

void render_plot(const TimeSeries& series, const std::string& path, const std::string& title);
void render_plot(const LambdaScan& scan, const std::string& path, const std::string& title);

} // namespace jcdem::cli
