#pragma once

#include <complex>
#include <variant>

#include <Eigen/Dense>

#include "unruhmet/errors.hpp"

namespace unruhmet {

using Complex  = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Computational basis ordering for the two-detector Hilbert space, Alice
// first: (|00>, |01>, |10>, |11>).
enum BasisIndex : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Probe preparation angle theta, restricted to [0, pi/2]; this covers all
/// distinct probe states up to a global phase.
class ProbeAngle {
public:
    explicit ProbeAngle(double theta);
    double value() const noexcept { return theta_; }

private:
    double theta_;
};

/// Detector energy gap Omega (> 0) in natural units c = hbar = k_B = 1.
class DetectorGap {
public:
    explicit DetectorGap(double omega);
    double value() const noexcept { return omega_; }

private:
    double omega_;
};

/// Dimensionless effective coupling given directly; 0 <= nu < 1.
struct DirectNu {
    double nu;
};

/// Effective coupling given by the physical knobs: coupling constant
/// epsilon, interaction duration delta, detector smearing width kappa
/// (all strictly positive).
struct PhysicalCoupling {
    double epsilon;
    double delta;
    double kappa;
};

using CouplingSpec = std::variant<DirectNu, PhysicalCoupling>;

/// Proper acceleration of the non-inertial detector, a > 0.
struct Acceleration {
    double a;
};

/// Unruh temperature given directly, t > 0.
struct Temperature {
    double t;
};

using Kinematics = std::variant<Acceleration, Temperature>;

void validate(const CouplingSpec& coupling);
void validate(const Kinematics& kinematics);

// Soft perturbative-regime boundary on nu. Exceeding it raises a flag on
// records, never an error, so sweeps can probe across it.
inline constexpr double kNuSoftLimit = 0.3;

struct ValidityFlags {
    bool nu_soft_limit_exceeded = false;
    // Physical-coupling mode only: the scale chain epsilon << 1/Omega <<
    // delta, read with factor-of-10 separations.
    bool scale_hierarchy_violated = false;
};

/// Full physical parameter set of the two-detector model.
struct ModelParams {
    ProbeAngle theta;
    DetectorGap omega;
    CouplingSpec coupling;
    Kinematics kinematics;

    /// Resolved effective coupling; throws CouplingOutOfRange if the
    /// physical knobs give nu >= 1.
    double nu() const;

    /// Resolved Unruh temperature.
    double temperature() const;

    /// Resolved proper acceleration (2*pi*T when given a temperature).
    double acceleration() const;

    ValidityFlags validity() const;
};

/// 4x4 density matrix over (|00>, |01>, |10>, |11>). Constructors in this
/// library guarantee Hermiticity, unit trace and positivity analytically;
/// validate() re-checks them numerically.
struct DensityMatrix4 {
    Matrix4c m;

    double hermiticity_defect() const;
    double trace_defect() const;
};

/// Mixing weights of the evolved state: alpha on the probe projector, beta
/// on |00><00|, gamma on |11><11|. They sum to one.
struct StateCoefficients {
    double alpha;
    double beta;
    double gamma;
};

/// Temperature derivatives of the mixing weights; they sum to zero.
struct StateCoefficientDerivatives {
    double dalpha;
    double dbeta;
    double dgamma;
};

/// Rank-1 projector onto sin(theta)|01> + cos(theta)|10>.
DensityMatrix4 probe_state(ProbeAngle theta);

/// The probe ket itself, (0, sin theta, cos theta, 0).
Vector4c probe_ket(ProbeAngle theta);

/// T = a/(2*pi) when given an acceleration; the stored value otherwise.
double unruh_temperature(const Kinematics& kin);

/// a = 2*pi*T when given a temperature; the stored value otherwise.
double to_acceleration(const Kinematics& kin);

/// Resolves the coupling spec to the dimensionless nu. For physical knobs,
/// nu = epsilon * sqrt(Omega*delta/(2*pi)) * exp(-Omega^2*kappa^2/2);
/// throws CouplingOutOfRange if the result reaches 1.
double effective_coupling(const CouplingSpec& coupling, DetectorGap omega);

/// Mixing weights at temperature T > 0. With E = exp(-Omega/T) and
/// D = (1-E) + nu^2 sin^2(theta) + nu^2 cos^2(theta) E:
///   alpha = (1-E)/D, beta = nu^2 sin^2(theta)/D,
///   gamma = nu^2 cos^2(theta) E / D.
StateCoefficients state_coefficients(ProbeAngle theta, double nu,
                                     DetectorGap omega, double temperature);

/// Analytic d/dT of the mixing weights via the chain rule through E.
StateCoefficientDerivatives
state_coefficient_derivatives(ProbeAngle theta, double nu, DetectorGap omega,
                              double temperature);

/// State of the detector pair after the accelerated interaction period:
/// alpha * probe + beta |00><00| + gamma |11><11|. X-structured with a
/// vanishing (|00>,|11>) coherence.
DensityMatrix4 evolved_state(const ModelParams& params);

/// Squared norm of the unnormalised post-interaction state, computed from
/// the acceleration-side expression
///   1 + nu^2 sin^2(theta)/(1-E) + nu^2 cos^2(theta) E/(1-E),
/// E = exp(-2*pi*Omega/a). Independent consistency route: alpha times this
/// equals one.
double final_state_norm_squared(ProbeAngle theta, double nu,
                                DetectorGap omega, double acceleration);

} // namespace unruhmet
