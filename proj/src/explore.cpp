#include "unruhmet/explore.hpp"

#include <cmath>
#include <limits>

#include "unruhmet/entanglement.hpp"
#include "unruhmet/estimation.hpp"

namespace unruhmet {

const char* to_string(AxisName name) {
    switch (name) {
        case AxisName::nu: return "nu";
        case AxisName::a: return "a";
        case AxisName::T: return "T";
        case AxisName::omega: return "omega";
        case AxisName::delta: return "delta";
        case AxisName::theta: return "theta";
    }
    return "?";
}

std::optional<AxisName> parse_axis_name(const std::string& s) {
    if (s == "nu") return AxisName::nu;
    if (s == "a") return AxisName::a;
    if (s == "T") return AxisName::T;
    if (s == "omega") return AxisName::omega;
    if (s == "delta") return AxisName::delta;
    if (s == "theta") return AxisName::theta;
    return std::nullopt;
}

void AxisSpec::validate() const {
    if (!(start < stop))
        throw std::invalid_argument(std::string("axis ") + to_string(name) +
                                    ": start must be below stop");
    if (points < 2)
        throw std::invalid_argument(std::string("axis ") + to_string(name) +
                                    ": at least 2 points required");
    if (scale == AxisScale::log && !(start > 0.0))
        throw std::invalid_argument(std::string("axis ") + to_string(name) +
                                    ": log scale requires start > 0");
}

std::vector<double> AxisSpec::grid() const {
    validate();
    std::vector<double> values(points);
    if (scale == AxisScale::linear) {
        const double step = (stop - start) / (points - 1);
        for (int i = 0; i < points; ++i) values[i] = start + i * step;
    } else {
        const double lo = std::log(start);
        const double step = (std::log(stop) - lo) / (points - 1);
        for (int i = 0; i < points; ++i) values[i] = std::exp(lo + i * step);
    }
    values.front() = start; // endpoints exact
    values.back() = stop;
    return values;
}

namespace {

ModelParams with_axis_value(const ModelParams& base, AxisName name,
                            double value) {
    ModelParams p = base;
    switch (name) {
        case AxisName::nu:
            p.coupling = DirectNu{value};
            break;
        case AxisName::a:
            p.kinematics = Acceleration{value};
            break;
        case AxisName::T:
            p.kinematics = Temperature{value};
            break;
        case AxisName::omega:
            p.omega = DetectorGap(value);
            break;
        case AxisName::delta: {
            auto* phys = std::get_if<PhysicalCoupling>(&p.coupling);
            if (phys == nullptr)
                throw std::invalid_argument(
                    "delta axis requires physical coupling parameters");
            phys->delta = value;
            break;
        }
        case AxisName::theta:
            p.theta = ProbeAngle(value);
            break;
    }
    return p;
}

SweepRecord evaluate_point(
    const ModelParams& base,
    const std::vector<std::pair<AxisName, double>>& coordinates) {
    SweepRecord record;
    record.coordinates = coordinates;
    try {
        ModelParams params = base;
        for (const auto& [name, value] : coordinates)
            params = with_axis_value(params, name, value);

        const ValidityFlags validity = params.validity();
        if (validity.nu_soft_limit_exceeded)
            record.flags.push_back("nu_soft_limit_exceeded");
        if (validity.scale_hierarchy_violated)
            record.flags.push_back("scale_hierarchy_violated");

        record.coefficients = state_coefficients(
            params.theta, params.nu(), params.omega, params.temperature());
        record.qfi = qfi_closed(params);
        record.concurrence = concurrence(as_x_state(evolved_state(params)));
    } catch (const ModelError& error) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        record.qfi = nan;
        record.concurrence = nan;
        record.coefficients = StateCoefficients{nan, nan, nan};
        record.flags.push_back("error:" + error.name());
    } catch (const std::invalid_argument&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        record.qfi = nan;
        record.concurrence = nan;
        record.coefficients = StateCoefficients{nan, nan, nan};
        record.flags.push_back("error:InvalidParameter");
    }
    return record;
}

} // namespace

std::vector<SweepRecord> sweep(const ModelParams& base,
                               const std::vector<AxisSpec>& axes) {
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("sweep takes one or two axes");
    for (const AxisSpec& axis : axes) axis.validate();

    std::vector<SweepRecord> records;
    if (axes.size() == 1) {
        const std::vector<double> grid = axes[0].grid();
        records.reserve(grid.size());
        for (double v : grid)
            records.push_back(evaluate_point(base, {{axes[0].name, v}}));
    } else {
        const std::vector<double> outer = axes[0].grid();
        const std::vector<double> inner = axes[1].grid();
        records.reserve(outer.size() * inner.size());
        for (double v0 : outer)
            for (double v1 : inner)
                records.push_back(evaluate_point(
                    base, {{axes[0].name, v0}, {axes[1].name, v1}}));
    }
    return records;
}

OptimumReport maximize(const ModelParams& base, const AxisSpec& axis) {
    axis.validate();
    const std::vector<double> grid = axis.grid();

    const auto objective = [&](double v) {
        return qfi_closed(with_axis_value(base, axis.name, v));
    };

    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        const double f = objective(grid[i]);
        if (f > best_value) {
            best_value = f;
            best = i;
        }
    }

    OptimumReport report{axis.name, grid[best], best_value, grid[best],
                         grid[best], false};
    if (best == 0 || best == static_cast<int>(grid.size()) - 1) {
        // Maximum on the grid edge: no interior bracket to refine.
        report.bracket_lo = best == 0 ? grid.front() : grid[grid.size() - 2];
        report.bracket_hi = best == 0 ? grid[1] : grid.back();
        return report;
    }

    // Golden-section refinement inside the bracketing cell.
    constexpr double kInvPhi = 0.61803398874989484820458683436564;
    constexpr double kTol = 1e-6;
    double lo = grid[best - 1];
    double hi = grid[best + 1];
    report.bracket_lo = lo;
    report.bracket_hi = hi;

    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    while (hi - lo > kTol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = objective(d);
        }
    }
    report.argmax = 0.5 * (lo + hi);
    report.max_qfi = objective(report.argmax);
    report.refined = true;
    return report;
}

std::vector<AxisSpec> figure_axes(FigureId which, const FigureOverrides&) {
    switch (which) {
        case FigureId::fig1:
            return {AxisSpec{AxisName::nu, 0.01, 0.2, 20, AxisScale::linear},
                    AxisSpec{AxisName::a, 0.05, 20.0, 60, AxisScale::log}};
        case FigureId::fig2:
            return {AxisSpec{AxisName::a, 0.02, 2.0, 100, AxisScale::linear}};
        case FigureId::fig3:
            // Swept per delta in the configured set.
            return {AxisSpec{AxisName::omega, 0.1, 3.0, 60, AxisScale::linear}};
    }
    throw std::invalid_argument("unknown figure id");
}

std::vector<SweepRecord> figure_data(FigureId which,
                                     const FigureOverrides& overrides) {
    constexpr double kQuarterPi = 0.78539816339744830961566084581988;
    const double theta = overrides.theta.value_or(kQuarterPi);

    switch (which) {
        case FigureId::fig1: {
            const ModelParams base{
                ProbeAngle(theta), DetectorGap(overrides.omega.value_or(1.0)),
                DirectNu{overrides.nu.value_or(0.1)},
                Acceleration{overrides.acceleration.value_or(1.0)}};
            return sweep(base, figure_axes(which, overrides));
        }
        case FigureId::fig2: {
            const ModelParams base{
                ProbeAngle(theta),
                DetectorGap(overrides.omega.value_or(1.0 / kTwoPi)),
                DirectNu{overrides.nu.value_or(0.1)},
                Acceleration{overrides.acceleration.value_or(1.0)}};
            return sweep(base, figure_axes(which, overrides));
        }
        case FigureId::fig3: {
            std::vector<double> deltas = overrides.delta_set;
            if (deltas.empty()) deltas = {15.0, 30.0, 45.0};
            const double acceleration =
                overrides.acceleration.value_or(0.2 * kTwoPi); // a = 0.4*pi
            const ModelParams base{
                ProbeAngle(theta), DetectorGap(1.0),
                PhysicalCoupling{kTwoPi * 1e-3, deltas.front(), 0.02},
                Acceleration{acceleration}};
            const AxisSpec omega_axis = figure_axes(which, overrides).front();
            const std::vector<double> omegas = omega_axis.grid();

            std::vector<SweepRecord> records;
            records.reserve(deltas.size() * omegas.size());
            for (double delta : deltas)
                for (double omega : omegas)
                    records.push_back(evaluate_point(
                        base,
                        {{AxisName::delta, delta}, {AxisName::omega, omega}}));
            return records;
        }
    }
    throw std::invalid_argument("unknown figure id");
}

} // namespace unruhmet
