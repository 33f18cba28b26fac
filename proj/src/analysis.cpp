#include "jcdem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jcdem {

bool TimeSeries::has(std::string_view name) const
{
    return std::any_of(columns.begin(), columns.end(),
                       [name](const Column& c) { return c.name == name; });
}

const std::vector<double>& TimeSeries::column(std::string_view name) const
{
    for (const auto& c : columns) {
        if (c.name == name) {
            return c.values;
        }
    }
    throw std::out_of_range("TimeSeries: no column named " + std::string(name));
}

std::vector<double> time_grid(double t_max, double dt)
{
    if (!(dt > 0.0) || !(t_max > dt) || !std::isfinite(t_max)) {
        throw std::invalid_argument("time_grid: requires 0 < dt < t_max");
    }
    const double steps = std::floor(t_max / dt + 1e-9);
    if (steps + 1.0 > static_cast<double>(kMaxGridPoints)) {
        throw std::invalid_argument("time_grid: more than 1e6 grid points");
    }
    const auto n = static_cast<std::size_t>(steps) + 1;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = static_cast<double>(k) * dt;
    }
    return t;
}

std::vector<double> unit_grid(std::size_t points)
{
    if (points < 2) {
        throw std::invalid_argument("unit_grid: need at least 2 points");
    }
    std::vector<double> out(points);
    for (std::size_t k = 0; k < points; ++k) {
        out[k] = static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return out;
}

double collapse_time(const ModelParams& params) { return 1.0 / params.g; }

double revival_time(const FieldConfig& field, const ModelParams& params, int k)
{
    return static_cast<double>(k) * 2.0 * std::numbers::pi * std::abs(field.theta) / params.g;
}

double oscillation_amplitude(const std::vector<double>& times, const std::vector<double>& values,
                             double center, double width)
{
    const double half = 0.5 * width + 1e-12;
    auto lo = std::lower_bound(times.begin(), times.end(), center - half);
    auto hi = std::upper_bound(times.begin(), times.end(), center + half);
    if (lo == hi) {
        return 0.0;
    }
    const auto first = values.begin() + (lo - times.begin());
    const auto last = values.begin() + (hi - times.begin());
    const auto [mn, mx] = std::minmax_element(first, last);
    return *mx - *mn;
}

double max_oscillation_amplitude(const std::vector<double>& times,
                                 const std::vector<double>& values, double lo, double hi,
                                 double width)
{
    double best = 0.0;
    for (double t : times) {
        if (t >= lo - 1e-12 && t <= hi + 1e-12) {
            best = std::max(best, oscillation_amplitude(times, values, t, width));
        }
    }
    return best;
}

namespace {

double excited_population(const DensityMatrix& joint, Dims dims)
{
    const auto atom = partial_trace(joint.matrix(), dims, Subsystem::Atom);
    const auto e = static_cast<Index>(AtomLevel::Excited);
    return std::real(atom(e, e));
}

} // namespace

TimeSeries scan_transition(const FieldConfig& field, const ModelParams& params, double t_max,
                           double dt)
{
    TimeSeries out;
    out.times = time_grid(t_max, dt);
    const JcEvolution excited(AtomState{0.0, 1.0}, field, params);
    std::vector<double> c_closed, c_exact;
    c_closed.reserve(out.rows());
    c_exact.reserve(out.rows());
    for (double t : out.times) {
        c_closed.push_back(
            transition_probability_closed(t, field.mean_photons(), params.g, field.n_max));
        c_exact.push_back(excited_population(excited.state(t), excited.dims()));
    }
    out.columns = {{"c_closed", std::move(c_closed)}, {"c_exact", std::move(c_exact)}};
    return out;
}

TimeSeries scan_time(const AtomState& atom, const FieldConfig& field, const ModelParams& params,
                     double t_max, double dt, LogBase base)
{
    TimeSeries out = scan_transition(field, params, t_max, dt);
    const JcEvolution evolution(atom, field, params);
    const std::size_t n = out.rows();
    std::vector<double> dem(n), dem_closed(n), s_atom(n), s_field(n), s_joint(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = out.times[k];
        const EntropyReport r = dem_exact(evolution.state(t), evolution.dims(), base);
        dem[k] = r.dem;
        s_atom[k] = r.s_atom;
        s_field[k] = r.s_field;
        s_joint[k] = r.s_joint;
        dem_closed[k] = dem_closed_form(closed_form_coeffs(t, atom, field, params), base);
    }
    out.columns.push_back({"dem_exact", std::move(dem)});
    out.columns.push_back({"dem_closed", std::move(dem_closed)});
    out.columns.push_back({"s_atom", std::move(s_atom)});
    out.columns.push_back({"s_field", std::move(s_field)});
    out.columns.push_back({"s_joint", std::move(s_joint)});
    return out;
}

RevivalReport revival_analysis(const FieldConfig& field, const ModelParams& params, int k_max,
                               const TimeSeries& series)
{
    params.validate();
    if (k_max < 1) {
        throw std::invalid_argument("revival_analysis: k_max must be >= 1");
    }
    if (!(field.mean_photons() > 0.0)) {
        throw std::invalid_argument("revival_analysis: vacuum field has no revivals");
    }
    RevivalReport report;
    report.t_collapse = collapse_time(params);
    for (int k = 1; k <= k_max; ++k) {
        report.revival_times.push_back(revival_time(field, params, k));
    }

    const double t1 = report.revival_times.front();
    if (series.times.empty() || series.times.back() < t1) {
        throw std::invalid_argument("revival_analysis: series does not reach T1");
    }
    const auto& c = series.has("c_exact") ? series.column("c_exact") : series.column("c_closed");

    const auto n_ref = static_cast<Index>(std::floor(field.mean_photons()));
    const double width = 2.0 * std::numbers::pi / rabi_frequency(n_ref, params.g);
    double best = -1.0;
    for (double t : series.times) {
        if (t < 0.5 * t1 || t > 1.5 * t1) {
            continue;
        }
        const double amp = oscillation_amplitude(series.times, c, t, width);
        if (amp > best) {
            best = amp;
            report.detected_revival = t;
        }
    }
    return report;
}

LambdaScan scan_lambda(const FieldConfig& field, const ModelParams& params,
                       const std::vector<double>& lambda_grid, const std::vector<int>& ks,
                       LogBase base)
{
    if (ks.empty()) {
        throw std::invalid_argument("scan_lambda: no revival indices");
    }
    for (double l : lambda_grid) {
        if (!(l >= 0.0 && l <= 1.0)) {
            throw std::invalid_argument("scan_lambda: lambda0 outside [0,1]");
        }
    }
    LambdaScan scan;
    scan.lambdas = lambda_grid;
    scan.ks = ks;
    scan.dem_at_T.assign(ks.size(), std::vector<double>(lambda_grid.size()));
    scan.conjecture_holds.assign(lambda_grid.size(), true);

    for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
        const JcEvolution evolution(AtomState::from_ground_weight(lambda_grid[j]), field, params);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double t = revival_time(field, params, ks[i]);
            scan.dem_at_T[i][j] = dem_exact(evolution.state(t), evolution.dims(), base).dem;
        }
        for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
            const double drop = scan.dem_at_T[i][j] - scan.dem_at_T[i + 1][j];
            scan.max_violation = std::max(scan.max_violation, drop);
            if (drop > kConjectureTol) {
                scan.conjecture_holds[j] = false;
            }
        }
    }
    return scan;
}

double max_abs_gap(const TimeSeries& series, std::string_view a, std::string_view b)
{
    const auto& x = series.column(a);
    const auto& y = series.column(b);
    double gap = 0.0;
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        gap = std::max(gap, std::abs(x[k] - y[k]));
    }
    return gap;
}

} // namespace jcdem
