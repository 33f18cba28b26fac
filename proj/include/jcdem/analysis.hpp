#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jcdem/entropy.hpp"
#include "jcdem/jc_model.hpp"

namespace jcdem {

struct Column {
    std::string name;
    std::vector<double> values;
};

/// Time grid plus named, equal-length columns (times in units of 1/g).
struct TimeSeries {
    std::vector<double> times;
    std::vector<Column> columns;

    bool has(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    const std::vector<double>& column(std::string_view name) const;
    std::size_t rows() const { return times.size(); }
};

struct LambdaScan {
    std::vector<double> lambdas;
    std::vector<int> ks;                        // revival indices k of T_k
    std::vector<std::vector<double>> dem_at_T;  // dem_at_T[i][j]: k = ks[i], lambda = lambdas[j]
    std::vector<bool> conjecture_holds;         // per lambda
    double max_violation = 0;                   // largest dem(T_k) - dem(T_{k+1}) seen, >= 0
};

struct RevivalReport {
    double t_collapse = 0;
    std::vector<double> revival_times;  // T_1..T_kmax
    double detected_revival = 0;
};

inline constexpr double kConjectureTol = 1e-9;
inline constexpr double kCollapseWindow = 2.0;
inline constexpr std::size_t kMaxGridPoints = 1'000'000;

/// {0, dt, 2 dt, ...} up to t_max inclusive; floor(t_max/dt) + 1 points.
std::vector<double> time_grid(double t_max, double dt);

/// n evenly spaced points on [0, 1], endpoints included.
std::vector<double> unit_grid(std::size_t points);

double collapse_time(const ModelParams& params);
/// T_k = k 2 pi |theta| / g.
double revival_time(const FieldConfig& field, const ModelParams& params, int k);

/// max - min of `values` over samples with |t - center| <= width/2.
double oscillation_amplitude(const std::vector<double>& times, const std::vector<double>& values,
                             double center, double width);
/// Largest windowed amplitude over window centers (grid samples) inside [lo, hi].
double max_oscillation_amplitude(const std::vector<double>& times,
                                 const std::vector<double>& values, double lo, double hi,
                                 double width);

/// FIG.1 data: c_closed and c_exact for an excited-start atom.
TimeSeries scan_transition(const FieldConfig& field, const ModelParams& params, double t_max,
                           double dt);

/// Columns: c_closed, c_exact, dem_exact, dem_closed, s_atom, s_field, s_joint.
TimeSeries scan_time(const AtomState& atom, const FieldConfig& field, const ModelParams& params,
                     double t_max, double dt, LogBase base = LogBase::E);

RevivalReport revival_analysis(const FieldConfig& field, const ModelParams& params, int k_max,
                               const TimeSeries& series);

LambdaScan scan_lambda(const FieldConfig& field, const ModelParams& params,
                       const std::vector<double>& lambda_grid,
                       const std::vector<int>& ks = {1, 2, 3}, LogBase base = LogBase::E);

/// max_t |a(t) - b(t)| between two columns.
double max_abs_gap(const TimeSeries& series, std::string_view a, std::string_view b);

} // namespace jcdem
