#include "unruhmet/model.hpp"

#include <cmath>

namespace unruhmet {

namespace {

constexpr double kHalfPi = 1.5707963267948966192313216916398;

[[noreturn]] void bad_argument(const std::string& msg) {
    throw std::invalid_argument(msg);
}

} // namespace

ProbeAngle::ProbeAngle(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi))
        bad_argument("probe angle must lie in [0, pi/2], got " +
                     std::to_string(theta));
}

DetectorGap::DetectorGap(double omega) : omega_(omega) {
    if (!(omega > 0.0))
        bad_argument("energy gap must be positive, got " +
                     std::to_string(omega));
}

void validate(const CouplingSpec& coupling) {
    if (const auto* d = std::get_if<DirectNu>(&coupling)) {
        if (!(d->nu >= 0.0 && d->nu < 1.0))
            bad_argument("nu must lie in [0, 1), got " + std::to_string(d->nu));
    } else {
        const auto& p = std::get<PhysicalCoupling>(coupling);
        if (!(p.epsilon > 0.0 && p.delta > 0.0 && p.kappa > 0.0))
            bad_argument("physical coupling knobs must all be positive");
    }
}

void validate(const Kinematics& kinematics) {
    if (const auto* a = std::get_if<Acceleration>(&kinematics)) {
        if (!(a->a > 0.0))
            bad_argument("acceleration must be positive, got " +
                         std::to_string(a->a));
    } else {
        const auto& t = std::get<Temperature>(kinematics);
        if (!(t.t > 0.0))
            bad_argument("temperature must be positive, got " +
                         std::to_string(t.t));
    }
}

double ModelParams::nu() const { return effective_coupling(coupling, omega); }

double ModelParams::temperature() const { return unruh_temperature(kinematics); }

double ModelParams::acceleration() const { return to_acceleration(kinematics); }

ValidityFlags ModelParams::validity() const {
    ValidityFlags flags;
    flags.nu_soft_limit_exceeded = nu() >= kNuSoftLimit;
    if (const auto* p = std::get_if<PhysicalCoupling>(&coupling)) {
        const double inv_omega = 1.0 / omega.value();
        // a << b is read as 10a <= b.
        flags.scale_hierarchy_violated =
            !(10.0 * p->epsilon <= inv_omega && 10.0 * inv_omega <= p->delta);
    }
    return flags;
}

double DensityMatrix4::hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

double DensityMatrix4::trace_defect() const {
    return std::abs(m.trace() - Complex(1.0, 0.0));
}

Vector4c probe_ket(ProbeAngle theta) {
    Vector4c psi = Vector4c::Zero();
    psi(k01) = std::sin(theta.value());
    psi(k10) = std::cos(theta.value());
    return psi;
}

DensityMatrix4 probe_state(ProbeAngle theta) {
    const Vector4c psi = probe_ket(theta);
    return DensityMatrix4{psi * psi.adjoint()};
}

double unruh_temperature(const Kinematics& kin) {
    validate(kin);
    if (const auto* a = std::get_if<Acceleration>(&kin)) return a->a / kTwoPi;
    return std::get<Temperature>(kin).t;
}

double to_acceleration(const Kinematics& kin) {
    validate(kin);
    if (const auto* a = std::get_if<Acceleration>(&kin)) return a->a;
    return kTwoPi * std::get<Temperature>(kin).t;
}

double effective_coupling(const CouplingSpec& coupling, DetectorGap omega) {
    validate(coupling);
    if (const auto* d = std::get_if<DirectNu>(&coupling)) return d->nu;

    const auto& p = std::get<PhysicalCoupling>(coupling);
    const double w = omega.value();
    const double nu = p.epsilon * std::sqrt(w * p.delta / kTwoPi) *
                      std::exp(-0.5 * w * w * p.kappa * p.kappa);
    if (!(nu < 1.0))
        throw CouplingOutOfRange(
            "effective coupling nu = " + std::to_string(nu) +
            " >= 1; the perturbative closed form does not apply");
    return nu;
}

StateCoefficients state_coefficients(ProbeAngle theta, double nu,
                                     DetectorGap omega, double temperature) {
    if (!(temperature > 0.0))
        throw DegenerateTemperature(
            "temperature must be positive, got " + std::to_string(temperature));

    const double x = omega.value() / temperature;
    const double e = std::exp(-x);
    const double one_minus_e = -std::expm1(-x); // well conditioned for x -> 0
    const double s = std::sin(theta.value());
    const double c = std::cos(theta.value());
    const double n2 = nu * nu;
    const double denom = one_minus_e + n2 * s * s + n2 * c * c * e;
    return StateCoefficients{one_minus_e / denom, n2 * s * s / denom,
                             n2 * c * c * e / denom};
}

StateCoefficientDerivatives
state_coefficient_derivatives(ProbeAngle theta, double nu, DetectorGap omega,
                              double temperature) {
    if (!(temperature > 0.0))
        throw DegenerateTemperature(
            "temperature must be positive, got " + std::to_string(temperature));

    const double x = omega.value() / temperature;
    const double e = std::exp(-x);
    const double one_minus_e = -std::expm1(-x);
    const double s = std::sin(theta.value());
    const double c = std::cos(theta.value());
    const double n2 = nu * nu;
    const double n2c2 = n2 * c * c;
    const double denom = one_minus_e + n2 * s * s + n2c2 * e;
    const double denom2 = denom * denom;

    // d/dE of each weight; dD/dE = -(1 - nu^2 cos^2).
    const double dalpha_de = (-denom + one_minus_e * (1.0 - n2c2)) / denom2;
    const double dbeta_de = n2 * s * s * (1.0 - n2c2) / denom2;
    const double dgamma_de = n2c2 * (denom + e * (1.0 - n2c2)) / denom2;
    const double de_dt = omega.value() / (temperature * temperature) * e;

    return StateCoefficientDerivatives{dalpha_de * de_dt, dbeta_de * de_dt,
                                       dgamma_de * de_dt};
}

DensityMatrix4 evolved_state(const ModelParams& params) {
    const double nu = params.nu();
    const double t = params.temperature();
    const StateCoefficients w =
        state_coefficients(params.theta, nu, params.omega, t);

    Matrix4c rho = w.alpha * probe_state(params.theta).m;
    rho(k00, k00) += w.beta;
    rho(k11, k11) += w.gamma;
    return DensityMatrix4{rho};
}

double final_state_norm_squared(ProbeAngle theta, double nu,
                                DetectorGap omega, double acceleration) {
    if (!(acceleration > 0.0))
        bad_argument("acceleration must be positive");
    const double x = kTwoPi * omega.value() / acceleration;
    const double e = std::exp(-x);
    const double one_minus_e = -std::expm1(-x);
    const double s = std::sin(theta.value());
    const double c = std::cos(theta.value());
    return 1.0 + nu * nu * s * s / one_minus_e +
           nu * nu * c * c * e / one_minus_e;
}

} // namespace unruhmet
