#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unruhmet/model.hpp"

namespace unruhmet {

enum class AxisName { nu, a, T, omega, delta, theta };

const char* to_string(AxisName name);
std::optional<AxisName> parse_axis_name(const std::string& s);

enum class AxisScale { linear, log };

/// One sweep axis: an inclusive [start, stop] grid with points >= 2,
/// spaced linearly or logarithmically. Grid endpoints are exact.
struct AxisSpec {
    AxisName name;
    double start;
    double stop;
    int points;
    AxisScale scale = AxisScale::linear;

    void validate() const; // throws std::invalid_argument
    std::vector<double> grid() const;
};

/// One evaluated grid point. Records for points whose parameters raise a
/// model error carry an "error:<Name>" flag and NaN values; points are
/// never dropped, so grids stay rectangular.
struct SweepRecord {
    std::vector<std::pair<AxisName, double>> coordinates;
    double qfi = 0.0;
    double concurrence = 0.0;
    StateCoefficients coefficients{0.0, 0.0, 0.0};
    std::vector<std::string> flags;
};

/// Result of a 1-d QFI maximisation. refined is false (and the bracket sits
/// on the grid boundary) when the coarse scan peaks at an endpoint, i.e.
/// no interior maximum was found.
struct OptimumReport {
    AxisName axis;
    double argmax;
    double max_qfi;
    double bracket_lo;
    double bracket_hi;
    bool refined;
};

/// Evaluates QFI, concurrence and the mixing weights over the full grid of
/// one or two axes, in row-major order (first axis outermost). Output
/// ordering is by grid index and identical across runs.
std::vector<SweepRecord> sweep(const ModelParams& base,
                               const std::vector<AxisSpec>& axes);

/// Coarse grid scan of QFI along one axis followed by golden-section
/// refinement inside the bracketing cell, to 1e-6 absolute on the axis
/// variable. Falls back to the unrefined endpoint when the coarse maximum
/// sits on the grid edge.
OptimumReport maximize(const ModelParams& base, const AxisSpec& axis);

enum class FigureId { fig1, fig2, fig3 };

/// Optional parameter overrides for the canned figure sweeps.
struct FigureOverrides {
    std::optional<double> theta;
    std::optional<double> omega;
    std::optional<double> nu;
    std::optional<double> acceleration;
    std::vector<double> delta_set; // fig3 only; default {15, 30, 45}
};

/// Axes used by a canned figure sweep (in record-coordinate order).
std::vector<AxisSpec> figure_axes(FigureId which,
                                  const FigureOverrides& overrides = {});

/// Canned sweeps behind the three reference figures:
///   fig1: theta=pi/4, Omega=1, grid over (nu, a);
///   fig2: theta=pi/4, Omega=1/(2*pi), nu=0.1, grid over a;
///   fig3: theta=pi/4, a=0.4*pi, physical coupling with
///         epsilon=2*pi*1e-3, kappa=0.02, grid over Omega for each delta.
std::vector<SweepRecord> figure_data(FigureId which,
                                     const FigureOverrides& overrides = {});

} // namespace unruhmet
