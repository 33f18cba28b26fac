#include "report_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <system_error>

namespace jcdem::cli {

namespace {

std::string fmt_sci(double v)
{
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12e", v);
    return buf.data();
}

std::string fmt_fixed(double v, int digits = 2)
{
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
    return buf.data();
}

std::string fmt_tick(double v)
{
    if (std::abs(v) < 1e-12) {
        v = 0.0;
    }
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%g", v);
    return buf.data();
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

struct Axis {
    double lo = 0;
    double hi = 1;
    double step = 0.2;
};

// 1-2-5 tick spacing with bounds snapped outward to whole ticks.
Axis nice_axis(double lo, double hi)
{
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0 ? 0.5 * std::abs(lo) : 0.5;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    Axis a;
    a.step = step;
    a.lo = std::floor(lo / step + 1e-9) * step;
    a.hi = std::ceil(hi / step - 1e-9) * step;
    return a;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

} // namespace

void write_file_atomic(const std::string& path, const std::string& contents)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp + " for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write to " + tmp + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        std::filesystem::remove(tmp, ignore);
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

std::string time_series_csv(const TimeSeries& series)
{
    std::string out = "t";
    for (const auto& c : series.columns) {
        out += "," + c.name;
    }
    out += "\n";
    for (std::size_t k = 0; k < series.rows(); ++k) {
        out += fmt_sci(series.times[k]);
        for (const auto& c : series.columns) {
            out += "," + fmt_sci(c.values[k]);
        }
        out += "\n";
    }
    return out;
}

std::string lambda_scan_csv(const LambdaScan& scan)
{
    std::string out = "lambda0";
    for (int k : scan.ks) {
        out += ",dem_T" + std::to_string(k);
    }
    out += ",conjecture_holds\n";
    for (std::size_t j = 0; j < scan.lambdas.size(); ++j) {
        out += fmt_sci(scan.lambdas[j]);
        for (const auto& row : scan.dem_at_T) {
            out += "," + fmt_sci(row[j]);
        }
        out += scan.conjecture_holds[j] ? ",1\n" : ",0\n";
    }
    return out;
}

std::string render_svg(const PlotData& plot)
{
    if (plot.x.empty() || plot.columns.empty()) {
        throw std::invalid_argument("render_plot: empty series");
    }
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (const auto& c : plot.columns) {
        if (c.values.size() != plot.x.size() || c.values.empty()) {
            throw std::invalid_argument("render_plot: column '" + c.name +
                                        "' is empty or misaligned");
        }
        for (double v : c.values) {
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    if (!std::isfinite(ymin)) {
        throw std::invalid_argument("render_plot: no finite values");
    }
    const auto [xmin_it, xmax_it] = std::minmax_element(plot.x.begin(), plot.x.end());
    const Axis xa = nice_axis(*xmin_it, *xmax_it);
    const Axis ya = nice_axis(std::min(ymin, 0.0), ymax);

    constexpr double W = 800, H = 500;
    constexpr double left = 70, right = 640, top = 50, bottom = 440;
    const auto px = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * (right - left); };
    const auto py = [&](double y) { return bottom - (y - ya.lo) / (ya.hi - ya.lo) * (bottom - top); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + fmt_fixed(W, 0) + "\" height=\"" + fmt_fixed(H, 0) +
         "\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt_fixed((left + right) / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         xml_escape(plot.title) + "</text>\n";

    // axes
    s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + fmt_fixed(left) + "\" y1=\"" + fmt_fixed(bottom) + "\" x2=\"" +
         fmt_fixed(right) + "\" y2=\"" + fmt_fixed(bottom) + "\"/>\n";
    s += "<line x1=\"" + fmt_fixed(left) + "\" y1=\"" + fmt_fixed(top) + "\" x2=\"" +
         fmt_fixed(left) + "\" y2=\"" + fmt_fixed(bottom) + "\"/>\n";
    s += "</g>\n";

    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    const long nx = std::lround((xa.hi - xa.lo) / xa.step);
    for (long i = 0; i <= nx; ++i) {
        const double v = xa.lo + static_cast<double>(i) * xa.step;
        const double x = px(v);
        s += "<line x1=\"" + fmt_fixed(x) + "\" y1=\"" + fmt_fixed(bottom) + "\" x2=\"" +
             fmt_fixed(x) + "\" y2=\"" + fmt_fixed(bottom + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt_fixed(x) + "\" y=\"" + fmt_fixed(bottom + 18) +
             "\" text-anchor=\"middle\">" + fmt_tick(v) + "</text>\n";
    }
    const long ny = std::lround((ya.hi - ya.lo) / ya.step);
    for (long i = 0; i <= ny; ++i) {
        const double v = ya.lo + static_cast<double>(i) * ya.step;
        const double y = py(v);
        s += "<line x1=\"" + fmt_fixed(left - 5) + "\" y1=\"" + fmt_fixed(y) + "\" x2=\"" +
             fmt_fixed(left) + "\" y2=\"" + fmt_fixed(y) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt_fixed(left - 8) + "\" y=\"" + fmt_fixed(y + 4) +
             "\" text-anchor=\"end\">" + fmt_tick(v) + "</text>\n";
    }
    s += "<text x=\"" + fmt_fixed((left + right) / 2) + "\" y=\"" + fmt_fixed(bottom + 40) +
         "\" text-anchor=\"middle\">" + xml_escape(plot.x_label) + "</text>\n";
    s += "</g>\n";

    for (std::size_t c = 0; c < plot.columns.size(); ++c) {
        const auto& col = plot.columns[c];
        const char* color = kPalette[c % kPalette.size()];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (std::size_t k = 0; k < plot.x.size(); ++k) {
            if (!std::isfinite(col.values[k])) {
                continue;
            }
            if (!first) {
                s += ' ';
            }
            first = false;
            s += fmt_fixed(px(plot.x[k])) + "," + fmt_fixed(py(col.values[k]));
        }
        s += "\"/>\n";

        const double ly = top + 10 + 20 * static_cast<double>(c);
        s += "<line x1=\"660\" y1=\"" + fmt_fixed(ly) + "\" x2=\"690\" y2=\"" + fmt_fixed(ly) +
             "\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"696\" y=\"" + fmt_fixed(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(col.name) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

void render_plot(const TimeSeries& series, const std::string& path, const std::string& title)
{
    PlotData plot{title, "t", series.times, series.columns};
    write_file_atomic(path, render_svg(plot));
}

void render_plot(const LambdaScan& scan, const std::string& path, const std::string& title)
{
    PlotData plot{title, "lambda0", scan.lambdas, {}};
    for (std::size_t i = 0; i < scan.ks.size(); ++i) {
        plot.columns.push_back({"dem_T" + std::to_string(scan.ks[i]), scan.dem_at_T[i]});
    }
    write_file_atomic(path, render_svg(plot));
}

} // namespace jcdem::cli
