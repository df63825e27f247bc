#include "unruhmet/selftest.hpp"

#include <cmath>
#include <cstdio>

#include "unruhmet/estimation.hpp"
#include "unruhmet/sampling.hpp"
#include "unruhmet/spectral.hpp"

namespace unruhmet {

namespace {

constexpr std::uint64_t kSelftestSeed = 0x9e3779b97f4a7c15ULL;

double rel_to(double value, double reference) {
    return std::abs(value - reference) / std::max(reference, 1e-12);
}

} // namespace

SelftestResult run_selftest() {
    SelftestResult result;
    std::mt19937_64 rng(kSelftestSeed);

    // Closed-form spectrum against the Jacobi solver, and the two
    // independent expressions for alpha, over the full parameter box.
    double worst_eigen = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < 256; ++i) {
        const ModelParams params = draw_box_params(rng);
        const SpectralData analytic = model_spectrum(params);
        const SpectralData numeric = numeric_eigensystem(evolved_state(params));
        for (int k = 0; k < 4; ++k)
            worst_eigen = std::max(
                worst_eigen,
                std::abs(analytic.eigenvalues[k] - numeric.eigenvalues[k]));

        const StateCoefficients w = state_coefficients(
            params.theta, params.nu(), params.omega, params.temperature());
        const double norm2 = final_state_norm_squared(
            params.theta, params.nu(), params.omega, params.acceleration());
        worst_norm = std::max(worst_norm, std::abs(w.alpha * norm2 - 1.0));
    }
    result.checks.push_back({"eigensystem-oracle", worst_eigen, 1e-10,
                             worst_eigen < 1e-10});
    result.checks.push_back(
        {"state-norm-consistency", worst_norm, 1e-12, worst_norm < 1e-12});

    // Route agreement and measurement optimality inside the validity
    // region, where all routes resolve the temperature signal.
    double worst_sld = 0.0;
    double worst_fidelity = 0.0;
    double worst_cfi = 0.0;
    for (int i = 0; i < 64; ++i) {
        const ModelParams params = draw_validity_params(rng);
        const double closed = qfi_closed(params);
        worst_sld = std::max(worst_sld, rel_to(qfi_sld(params), closed));
        const double step = 1e-4 * params.temperature();
        worst_fidelity = std::max(
            worst_fidelity, rel_to(qfi_fidelity_oracle(params, step), closed));
        const double cfi =
            classical_fi(params, optimal_povm(params),
                         default_cfi_step(params.temperature()),
                         DerivativeMode::analytic);
        worst_cfi = std::max(worst_cfi, rel_to(cfi, closed));
    }
    result.checks.push_back(
        {"qfi-sld-route-agreement", worst_sld, 1e-8, worst_sld < 1e-8});
    result.checks.push_back({"qfi-fidelity-route-agreement", worst_fidelity,
                             1e-3, worst_fidelity < 1e-3});
    result.checks.push_back(
        {"optimal-measurement-cfi", worst_cfi, 1e-6, worst_cfi < 1e-6});

    // Finite-difference route of the classical FI at a reference point.
    {
        const ModelParams canonical{ProbeAngle(0.78539816339744831),
                                    DetectorGap(1.0), DirectNu{0.1},
                                    Temperature{1.4426950408889634}};
        const double closed = qfi_closed(canonical);
        const double cfi = classical_fi(canonical, optimal_povm(canonical),
                                        default_cfi_step(canonical.temperature()),
                                        DerivativeMode::finite_difference);
        const double observed = rel_to(cfi, closed);
        result.checks.push_back(
            {"optimal-measurement-cfi-fd", observed, 1e-6, observed < 1e-6});
    }

    for (const auto& check : result.checks)
        result.all_passed = result.all_passed && check.passed;
    return result;
}

std::string format_selftest(const SelftestResult& result) {
    std::string out;
    int passed = 0;
    for (const auto& check : result.checks) {
        char line[160];
        std::snprintf(line, sizeof(line), "%s %-32s observed=%.3e tol=%.0e\n",
                      check.passed ? "PASS" : "FAIL", check.name.c_str(),
                      check.observed, check.tolerance);
        out += line;
        if (check.passed) ++passed;
    }
    char tail[64];
    std::snprintf(tail, sizeof(tail), "selftest: %d/%zu checks passed\n",
                  passed, result.checks.size());
    out += tail;
    return out;
}

} // namespace unruhmet
