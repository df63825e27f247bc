#include "unruhmet/estimation.hpp"

#include <cmath>
#include <limits>

namespace unruhmet {

namespace {

using LongComplex = std::complex<long double>;
using Matrix4cl = Eigen::Matrix<LongComplex, 4, 4>;

// Extended-precision evolved state. The fidelity oracle divides a
// second-order-small quantity by step^2, so the quadratic signal at the
// default step sits near the double-precision noise floor; 80-bit
// arithmetic keeps the oracle meaningful there.
Matrix4cl evolved_state_ld(long double theta, long double nu,
                           long double omega, long double temperature) {
    const long double x = omega / temperature;
    const long double e = std::exp(-x);
    const long double one_minus_e = -std::expm1(-x);
    const long double s = std::sin(theta);
    const long double c = std::cos(theta);
    const long double n2 = nu * nu;
    const long double denom = one_minus_e + n2 * s * s + n2 * c * c * e;
    const long double alpha = one_minus_e / denom;
    const long double beta = n2 * s * s / denom;
    const long double gamma = n2 * c * c * e / denom;

    Matrix4cl rho = Matrix4cl::Zero();
    rho(k00, k00) = beta;
    rho(k01, k01) = alpha * s * s;
    rho(k10, k10) = alpha * c * c;
    rho(k01, k10) = alpha * s * c;
    rho(k10, k01) = alpha * s * c;
    rho(k11, k11) = gamma;
    return rho;
}

// sqrt(F) as the trace norm of sqrt(sigma) sqrt(rho): the singular values
// equal the square roots of the eigenvalues of sqrt(rho) sigma sqrt(rho)
// but, unlike them, carry no sqrt-amplified rounding noise near the kernel.
template <typename Scalar>
Scalar sqrt_fidelity(const Eigen::Matrix<std::complex<Scalar>, 4, 4>& rho,
                     const Eigen::Matrix<std::complex<Scalar>, 4, 4>& sigma) {
    const Eigen::Matrix<std::complex<Scalar>, 4, 4> b =
        detail::psd_sqrt<Scalar>(sigma) * detail::psd_sqrt<Scalar>(rho);
    const std::array<Scalar, 4> s = detail::singular_values<Scalar>(b);
    return s[0] + s[1] + s[2] + s[3];
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex standard_complex_normal(std::mt19937_64& rng) {
    // Box-Muller on the raw engine bits; avoids the implementation-defined
    // std::normal_distribution so streams reproduce across toolchains.
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)) /
           std::sqrt(2.0);
}

} // namespace

void Povm::validate() const {
    if (elements.empty()) throw InvalidPovm("POVM has no elements");
    Matrix4c sum = Matrix4c::Zero();
    for (const Matrix4c& e : elements) {
        const DensityMatrix4 wrap{e};
        if (wrap.hermiticity_defect() > 1e-10)
            throw InvalidPovm("POVM element is not Hermitian");
        std::array<double, 4> values;
        Matrix4c vectors;
        detail::jacobi_hermitian<double>(e, values, vectors);
        if (values[3] < -1e-10)
            throw InvalidPovm("POVM element has eigenvalue " +
                              std::to_string(values[3]) + " < -1e-10");
        sum += e;
    }
    const double defect = (sum - Matrix4c::Identity()).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw InvalidPovm("POVM completeness defect " + std::to_string(defect) +
                          " exceeds 1e-10");
}

double qfi_closed(const ModelParams& params) {
    const double nu = params.nu();
    const double t = params.temperature();
    const StateCoefficients w =
        state_coefficients(params.theta, nu, params.omega, t);
    const StateCoefficientDerivatives d =
        state_coefficient_derivatives(params.theta, nu, params.omega, t);
    const double s = std::sin(params.theta.value());
    const double c = std::cos(params.theta.value());

    struct Term {
        double p;
        double dp;
        bool analytically_zero;
    };
    const std::array<Term, 3> terms{
        Term{w.alpha, d.dalpha, false},
        Term{w.beta, d.dbeta, nu == 0.0 || s == 0.0},
        Term{w.gamma, d.dgamma, nu == 0.0 || c == 0.0}};

    double fisher = 0.0;
    for (const Term& term : terms) {
        if (term.analytically_zero) continue;
        // In the deep-frozen regime both the weight and its derivative
        // underflow together; the limiting contribution is zero.
        if (term.dp == 0.0 || term.p <= 0.0) continue;
        fisher += term.dp * term.dp / term.p;
    }
    return fisher;
}

double qfi_from_state(const DensityMatrix4& rho, const Matrix4c& drho) {
    const SpectralData spectral = numeric_eigensystem(rho);
    const SldMatrix l = sld(spectral, drho);
    return (rho.m * l.m * l.m).trace().real();
}

double qfi_sld(const ModelParams& params) {
    return qfi_from_state(evolved_state(params), state_derivative(params));
}

double uhlmann_fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma) {
    const double s = sqrt_fidelity<double>(rho.m, sigma.m);
    return s * s;
}

double qfi_fidelity_oracle(const ModelParams& params, double step) {
    const double t = params.temperature();
    if (!(step > 0.0)) throw StepTooLarge("step must be positive");
    if (step > 0.1 * t)
        throw StepTooLarge("step " + std::to_string(step) +
                           " exceeds 0.1 * T = " + std::to_string(0.1 * t));

    const long double theta = params.theta.value();
    const long double nu = params.nu();
    const long double omega = params.omega.value();
    const long double t_lo = static_cast<long double>(t) - static_cast<long double>(step) / 2.0L;
    const long double t_hi = static_cast<long double>(t) + static_cast<long double>(step) / 2.0L;

    const Matrix4cl rho_lo = evolved_state_ld(theta, nu, omega, t_lo);
    const Matrix4cl rho_hi = evolved_state_ld(theta, nu, omega, t_hi);
    const long double sqrt_f = sqrt_fidelity<long double>(rho_lo, rho_hi);
    const long double h = t_hi - t_lo;
    return static_cast<double>(8.0L * (1.0L - sqrt_f) / (h * h));
}

double default_cfi_step(double temperature) {
    return 1e-4 * std::max(temperature, 0.1);
}

double classical_fi(const ModelParams& params, const Povm& povm, double step,
                    DerivativeMode mode) {
    povm.validate();
    if (!(step > 0.0)) throw StepTooLarge("step must be positive");

    const double t = params.temperature();
    const DensityMatrix4 rho = evolved_state(params);

    std::vector<double> probs(povm.elements.size());
    std::vector<double> derivs(povm.elements.size());

    if (mode == DerivativeMode::analytic) {
        const Matrix4c drho = state_derivative(params);
        for (std::size_t k = 0; k < povm.elements.size(); ++k) {
            probs[k] = (povm.elements[k] * rho.m).trace().real();
            derivs[k] = (povm.elements[k] * drho).trace().real();
        }
    } else {
        if (step >= t)
            throw StepTooLarge("finite-difference step must be below T");
        ModelParams lo = params;
        lo.kinematics = Temperature{t - step};
        ModelParams hi = params;
        hi.kinematics = Temperature{t + step};
        const DensityMatrix4 rho_lo = evolved_state(lo);
        const DensityMatrix4 rho_hi = evolved_state(hi);
        for (std::size_t k = 0; k < povm.elements.size(); ++k) {
            probs[k] = (povm.elements[k] * rho.m).trace().real();
            derivs[k] = ((povm.elements[k] * rho_hi.m).trace().real() -
                         (povm.elements[k] * rho_lo.m).trace().real()) /
                        (2.0 * step);
        }
    }

    double fisher = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k)
        if (probs[k] > kSupportCutoff)
            fisher += derivs[k] * derivs[k] / probs[k];
    return fisher;
}

Povm optimal_povm(const ModelParams& params) {
    const SpectralData spectral = model_spectrum(params);
    Povm povm;
    povm.elements.reserve(4);
    for (int k = 0; k < 4; ++k)
        povm.elements.push_back(spectral.eigenvectors[k] *
                                spectral.eigenvectors[k].adjoint());
    return povm;
}

CramerRaoBound cramer_rao(double qfi, std::int64_t n_trials) {
    if (n_trials < 1)
        throw std::invalid_argument("n_trials must be at least 1");
    if (qfi < 0.0) throw std::invalid_argument("qfi must be non-negative");
    const double bound = qfi > 0.0
                             ? 1.0 / (static_cast<double>(n_trials) * qfi)
                             : std::numeric_limits<double>::infinity();
    return CramerRaoBound{n_trials, bound};
}

FisherReport fisher_report(const ModelParams& params, double fidelity_step) {
    if (fidelity_step <= 0.0) fidelity_step = 1e-4 * params.temperature();
    FisherReport report{};
    report.qfi_closed = qfi_closed(params);
    report.qfi_sld = qfi_sld(params);
    report.qfi_fidelity = qfi_fidelity_oracle(params, fidelity_step);
    const double scale = std::max(report.qfi_closed, 1e-12);
    report.max_rel_disagreement =
        std::max(std::abs(report.qfi_closed - report.qfi_sld),
                 std::abs(report.qfi_closed - report.qfi_fidelity)) /
        scale;
    return report;
}

Povm random_projective_povm(std::mt19937_64& rng) {
    Matrix4c ginibre;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ginibre(i, j) = standard_complex_normal(rng);

    // Modified Gram-Schmidt; unitary up to rounding, and the column phases
    // cancel in the rank-1 projectors.
    Matrix4c q = ginibre;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < j; ++i) {
            const Complex proj = q.col(i).adjoint() * q.col(j);
            q.col(j) -= proj * q.col(i);
        }
        q.col(j) /= q.col(j).norm();
    }

    Povm povm;
    povm.elements.reserve(4);
    for (int k = 0; k < 4; ++k)
        povm.elements.push_back(q.col(k) * q.col(k).adjoint());
    return povm;
}

} // namespace unruhmet
