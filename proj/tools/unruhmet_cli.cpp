// Command-line front end: single-point evaluation, parameter sweeps,
// reference-figure regeneration, 1-d optimisation and the built-in
// selftest. Exit codes: 0 success, 1 usage error, 2 computation error,
// 3 selftest failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unruhmet/entanglement.hpp"
#include "unruhmet/estimation.hpp"
#include "unruhmet/explore.hpp"
#include "unruhmet/output.hpp"
#include "unruhmet/selftest.hpp"

namespace {

using namespace unruhmet;

constexpr double kQuarterPi = 0.78539816339744830961566084581988;

struct CommonFlags {
    double theta = kQuarterPi;
    double omega = 1.0;
    std::optional<double> nu;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> kappa;
    std::optional<double> acceleration;
    std::optional<double> temperature;
    std::string format = "json";
    std::string output;
};

void add_param_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--theta", flags.theta,
                    "Probe angle in [0, pi/2] (default pi/4)");
    cmd->add_option("--omega", flags.omega,
                    "Detector energy gap, > 0 (default 1)");
    auto* nu = cmd->add_option("--nu", flags.nu,
                               "Effective coupling in [0, 1) (default 0.1)");
    auto* eps =
        cmd->add_option("--epsilon", flags.epsilon, "Coupling constant, > 0");
    auto* delta =
        cmd->add_option("--delta", flags.delta, "Interaction duration, > 0");
    auto* kappa =
        cmd->add_option("--kappa", flags.kappa, "Detector smearing width, > 0");
    nu->excludes(eps)->excludes(delta)->excludes(kappa);
    eps->needs(delta)->needs(kappa);
    delta->needs(eps)->needs(kappa);
    kappa->needs(eps)->needs(delta);

    auto* accel = cmd->add_option("--acceleration", flags.acceleration,
                                  "Proper acceleration, > 0");
    auto* temp = cmd->add_option("--temperature", flags.temperature,
                                 "Unruh temperature, > 0 (default 1)");
    accel->excludes(temp);

    cmd->add_option("--format", flags.format, "Output format (default json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", flags.output, "Output path (default stdout)");
}

ModelParams build_params(const CommonFlags& flags) {
    CouplingSpec coupling = DirectNu{flags.nu.value_or(0.1)};
    if (flags.epsilon)
        coupling = PhysicalCoupling{*flags.epsilon, *flags.delta, *flags.kappa};
    Kinematics kinematics = Temperature{flags.temperature.value_or(1.0)};
    if (flags.acceleration) kinematics = Acceleration{*flags.acceleration};
    validate(coupling);
    validate(kinematics);
    return ModelParams{ProbeAngle(flags.theta), DetectorGap(flags.omega),
                       coupling, kinematics};
}

AxisSpec parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(token);
            token.clear();
        } else {
            token += ch;
        }
    }
    parts.push_back(token);
    if (parts.size() < 4 || parts.size() > 5)
        throw std::invalid_argument(
            "axis must be NAME:START:STOP:POINTS[:log|:linear], got '" + text +
            "'");

    const std::optional<AxisName> name = parse_axis_name(parts[0]);
    if (!name)
        throw std::invalid_argument("unknown axis name '" + parts[0] +
                                    "' (expected nu|a|T|omega|delta|theta)");
    AxisSpec axis{*name, std::stod(parts[1]), std::stod(parts[2]),
                  std::stoi(parts[3]), AxisScale::linear};
    if (parts.size() == 5) {
        if (parts[4] == "log")
            axis.scale = AxisScale::log;
        else if (parts[4] != "linear")
            throw std::invalid_argument("axis scale must be log or linear");
    }
    axis.validate();
    return axis;
}

nlohmann::json params_meta(const ModelParams& params) {
    nlohmann::json coupling;
    if (const auto* phys = std::get_if<PhysicalCoupling>(&params.coupling)) {
        coupling["mode"] = "physical";
        coupling["epsilon"] = phys->epsilon;
        coupling["delta"] = phys->delta;
        coupling["kappa"] = phys->kappa;
    } else {
        coupling["mode"] = "direct";
    }
    coupling["nu"] = params.nu();

    nlohmann::json meta;
    meta["theta"] = params.theta.value();
    meta["omega"] = params.omega.value();
    meta["coupling"] = coupling;
    meta["kinematics"] = {{"acceleration", params.acceleration()},
                          {"temperature", params.temperature()}};

    const ValidityFlags validity = params.validity();
    nlohmann::json flags = nlohmann::json::array();
    if (validity.nu_soft_limit_exceeded)
        flags.push_back("nu_soft_limit_exceeded");
    if (validity.scale_hierarchy_violated)
        flags.push_back("scale_hierarchy_violated");
    meta["validity_flags"] = flags;
    return meta;
}

int write_out(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "cannot open output file '" << path << "'\n";
        return 2;
    }
    file << payload;
    return 0;
}

SweepRecord evaluate_single(const ModelParams& params) {
    SweepRecord record;
    const ValidityFlags validity = params.validity();
    if (validity.nu_soft_limit_exceeded)
        record.flags.push_back("nu_soft_limit_exceeded");
    if (validity.scale_hierarchy_violated)
        record.flags.push_back("scale_hierarchy_violated");
    record.coefficients = state_coefficients(
        params.theta, params.nu(), params.omega, params.temperature());
    record.qfi = qfi_closed(params);
    record.concurrence = concurrence(as_x_state(evolved_state(params)));
    return record;
}

int run_eval(const CommonFlags& flags, std::optional<std::int64_t> n_trials) {
    const ModelParams params = build_params(flags);
    const SweepRecord record = evaluate_single(params);

    std::optional<CramerRaoBound> bound;
    if (n_trials) bound = cramer_rao(record.qfi, *n_trials);

    if (flags.format == "csv") {
        std::string csv = "qfi,concurrence,alpha,beta,gamma";
        if (bound) csv += ",n_trials,variance_bound";
        csv += ",flags\n";
        csv += format_double(record.qfi) + "," +
               format_double(record.concurrence) + "," +
               format_double(record.coefficients.alpha) + "," +
               format_double(record.coefficients.beta) + "," +
               format_double(record.coefficients.gamma);
        if (bound)
            csv += "," + std::to_string(bound->n_trials) + "," +
                   format_double(bound->variance_bound);
        csv += ",";
        for (std::size_t i = 0; i < record.flags.size(); ++i)
            csv += (i > 0 ? ";" : "") + record.flags[i];
        csv += "\n";
        return write_out(flags.output, csv);
    }

    nlohmann::json meta = params_meta(params);
    meta["command"] = "eval";
    if (bound) {
        meta["cramer_rao"] = {{"n_trials", bound->n_trials},
                              {"variance_bound", bound->variance_bound}};
    }
    return write_out(flags.output, records_to_json(meta, {record}));
}

int run_sweep(const CommonFlags& flags,
              const std::vector<std::string>& axis_specs) {
    std::vector<AxisSpec> axes;
    for (const std::string& text : axis_specs) axes.push_back(parse_axis(text));

    const ModelParams base = build_params(flags);
    const std::vector<SweepRecord> records = sweep(base, axes);

    if (flags.format == "csv")
        return write_out(flags.output, records_to_csv(records));

    nlohmann::json meta = params_meta(base);
    meta["command"] = "sweep";
    nlohmann::json axes_json = nlohmann::json::array();
    for (const AxisSpec& axis : axes) axes_json.push_back(axis_to_json(axis));
    meta["axes"] = axes_json;
    return write_out(flags.output, records_to_json(meta, records));
}

int run_figure(const CommonFlags& flags, const std::string& which,
               const std::vector<double>& delta_set, bool theta_set,
               bool omega_set, bool nu_set) {
    FigureId id;
    if (which == "fig1")
        id = FigureId::fig1;
    else if (which == "fig2")
        id = FigureId::fig2;
    else if (which == "fig3")
        id = FigureId::fig3;
    else
        throw std::invalid_argument("figure must be fig1, fig2 or fig3");

    FigureOverrides overrides;
    if (theta_set) overrides.theta = flags.theta;
    if (omega_set) overrides.omega = flags.omega;
    if (nu_set) overrides.nu = flags.nu;
    if (flags.acceleration) overrides.acceleration = flags.acceleration;
    overrides.delta_set = delta_set;

    const std::vector<SweepRecord> records = figure_data(id, overrides);
    if (flags.format == "csv")
        return write_out(flags.output, records_to_csv(records));

    nlohmann::json meta;
    meta["command"] = "figure";
    meta["figure"] = which;
    nlohmann::json axes_json = nlohmann::json::array();
    for (const AxisSpec& axis : figure_axes(id, overrides))
        axes_json.push_back(axis_to_json(axis));
    meta["axes"] = axes_json;
    if (id == FigureId::fig3)
        meta["delta_set"] = delta_set.empty()
                                ? std::vector<double>{15.0, 30.0, 45.0}
                                : delta_set;
    return write_out(flags.output, records_to_json(meta, records));
}

int run_optimize(const CommonFlags& flags, const std::string& axis_spec) {
    const AxisSpec axis = parse_axis(axis_spec);
    const ModelParams base = build_params(flags);
    const OptimumReport report = maximize(base, axis);

    if (flags.format == "csv") {
        std::string csv = "axis,argmax,max_qfi,bracket_lo,bracket_hi,refined\n";
        csv += std::string(to_string(report.axis)) + "," +
               format_double(report.argmax) + "," +
               format_double(report.max_qfi) + "," +
               format_double(report.bracket_lo) + "," +
               format_double(report.bracket_hi) + "," +
               (report.refined ? "true" : "false") + "\n";
        return write_out(flags.output, csv);
    }

    nlohmann::json meta = params_meta(base);
    meta["command"] = "optimize";
    nlohmann::json doc;
    doc["meta"] = meta;
    doc["optimum"] = {{"axis", to_string(report.axis)},
                      {"argmax", report.argmax},
                      {"max_qfi", report.max_qfi},
                      {"bracket", {report.bracket_lo, report.bracket_hi}},
                      {"refined", report.refined},
                      {"no_interior_max", !report.refined}};
    return write_out(flags.output, doc.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unruh temperature estimation toolkit"};
    app.require_subcommand(1);

    CommonFlags eval_flags;
    std::optional<std::int64_t> n_trials;
    CLI::App* eval = app.add_subcommand(
        "eval", "Evaluate QFI, concurrence and state weights at one point");
    add_param_flags(eval, eval_flags);
    eval->add_option("--n-trials", n_trials,
                     "Report the Cramer-Rao variance bound for n repetitions")
        ->check(CLI::PositiveNumber);

    CommonFlags sweep_flags;
    std::vector<std::string> sweep_axes;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Evaluate a 1-d or 2-d parameter grid");
    add_param_flags(sweep_cmd, sweep_flags);
    sweep_cmd
        ->add_option("--axis", sweep_axes,
                     "Axis NAME:START:STOP:POINTS[:log|:linear]; repeat for 2-d")
        ->required()
        ->expected(1, 2);

    CommonFlags figure_flags;
    std::string figure_name;
    std::vector<double> delta_set;
    CLI::App* figure_cmd = app.add_subcommand(
        "figure", "Regenerate a reference figure data set (fig1|fig2|fig3)");
    add_param_flags(figure_cmd, figure_flags);
    figure_cmd->add_option("name", figure_name, "fig1, fig2 or fig3")
        ->required();
    figure_cmd
        ->add_option("--delta-set", delta_set,
                     "Interaction durations for fig3 (comma separated)")
        ->delimiter(',');

    CommonFlags optimize_flags;
    std::string optimize_axis;
    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "Locate the QFI maximum along one axis");
    add_param_flags(optimize_cmd, optimize_flags);
    optimize_cmd
        ->add_option("--axis", optimize_axis,
                     "Axis NAME:START:STOP:POINTS[:log|:linear]")
        ->required();

    CLI::App* selftest_cmd = app.add_subcommand(
        "selftest", "Run the built-in cross-route agreement suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (eval->parsed()) return run_eval(eval_flags, n_trials);
        if (sweep_cmd->parsed()) return run_sweep(sweep_flags, sweep_axes);
        if (figure_cmd->parsed())
            return run_figure(figure_flags, figure_name, delta_set,
                              figure_cmd->count("--theta") > 0,
                              figure_cmd->count("--omega") > 0,
                              figure_cmd->count("--nu") > 0);
        if (optimize_cmd->parsed())
            return run_optimize(optimize_flags, optimize_axis);
        if (selftest_cmd->parsed()) {
            const SelftestResult result = run_selftest();
            std::cout << format_selftest(result);
            return result.all_passed ? 0 : 3;
        }
    } catch (const std::invalid_argument& error) {
        std::cerr << "usage error: " << error.what() << "\n";
        return 1;
    } catch (const ModelError& error) {
        std::cerr << "computation error [" << error.name()
                  << "]: " << error.what() << "\n";
        return 2;
    }
    return 1;
}
