#include "unruhmet/sampling.hpp"

#include <cmath>

namespace unruhmet {

namespace {
constexpr double kHalfPi = 1.5707963267948966192313216916398;
}

ModelParams draw_box_params(std::mt19937_64& rng) {
    const double theta = uniform(rng, 0.0, kHalfPi);
    const double nu = uniform(rng, 0.0, 0.3);
    const double omega = uniform(rng, 0.1, 10.0);
    const double temperature = uniform(rng, 0.01, 10.0);
    return ModelParams{ProbeAngle(theta), DetectorGap(omega), DirectNu{nu},
                       Temperature{temperature}};
}

ModelParams draw_validity_params(std::mt19937_64& rng) {
    for (;;) {
        ModelParams params = draw_box_params(rng);
        const double nu = params.nu();
        if (nu < 0.01) continue;
        const double ratio = params.omega.value() / params.temperature();
        if (ratio < 0.2 || ratio > 8.0) continue;

        const StateCoefficients w = state_coefficients(
            params.theta, nu, params.omega, params.temperature());
        const double s = std::sin(params.theta.value());
        const double c = std::cos(params.theta.value());
        if (w.alpha < 1e-6) continue;
        if (s > 0.0 && w.beta < 1e-6) continue;
        if (c > 0.0 && w.gamma < 1e-6) continue;
        return params;
    }
}

} // namespace unruhmet
