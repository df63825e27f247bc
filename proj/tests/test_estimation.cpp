#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "unruhmet/estimation.hpp"

#include "test_support.hpp"

using namespace unruhmet;
using namespace testsupport;

namespace {

double rel_to(double value, double reference) {
    return std::abs(value - reference) / std::max(reference, 1e-12);
}

// Finite-difference Fisher information of the model eigenvalue
// distribution; fully independent of the analytic derivative chain.
double fd_spectrum_fisher(const ModelParams& params, double step) {
    const double t = params.temperature();
    const auto weights = [&](double temp) {
        return state_coefficients(params.theta, params.nu(), params.omega,
                                  temp);
    };
    const StateCoefficients mid = weights(t);
    const StateCoefficients lo = weights(t - step);
    const StateCoefficients hi = weights(t + step);

    double fisher = 0.0;
    const auto add = [&](double p, double dp) {
        if (p > 1e-12) fisher += dp * dp / p;
    };
    add(mid.alpha, (hi.alpha - lo.alpha) / (2.0 * step));
    add(mid.beta, (hi.beta - lo.beta) / (2.0 * step));
    add(mid.gamma, (hi.gamma - lo.gamma) / (2.0 * step));
    return fisher;
}

} // namespace

TEST_CASE("closed-route QFI") {
    SUBCASE("nu = 0 carries no information, exactly") {
        ModelParams params = reference_params();
        params.coupling = DirectNu{0.0};
        CHECK(qfi_closed(params) == 0.0);
    }

    SUBCASE("reference point against the frozen value") {
        CHECK(qfi_closed(reference_params()) ==
              doctest::Approx(kRefQfi).epsilon(1e-13));
    }

    SUBCASE("reference point against an independent finite difference") {
        const ModelParams params = reference_params();
        const double fd = fd_spectrum_fisher(params, 1e-6);
        CHECK(rel_to(qfi_closed(params), fd) < 1e-7);
    }

    SUBCASE("theta = 0 reduces to the binary-distribution Fisher information") {
        ModelParams params = reference_params();
        params.theta = ProbeAngle(0.0);
        const double fd = fd_spectrum_fisher(params, 1e-6);
        CHECK(rel_to(qfi_closed(params), fd) < 1e-7);
    }

    SUBCASE("tiny coupling gives tiny information") {
        ModelParams params = reference_params();
        params.coupling = DirectNu{1e-6};
        CHECK(qfi_closed(params) < 1e-8);
    }
}

TEST_CASE("SLD-route QFI") {
    SUBCASE("nu = 0 gives zero") {
        ModelParams params = reference_params();
        params.coupling = DirectNu{0.0};
        CHECK(qfi_sld(params) == 0.0);
    }

    SUBCASE("agrees with the closed route at the reference point") {
        CHECK(rel_to(qfi_sld(reference_params()), kRefQfi) < 1e-10);
    }

    SUBCASE("both trace forms coincide") {
        std::mt19937_64 rng(0xBEEFULL);
        for (int i = 0; i < 100; ++i) {
            const ModelParams params = draw_validity_params(rng);
            const DensityMatrix4 rho = evolved_state(params);
            const Matrix4c drho = state_derivative(params);
            const SldMatrix l = sld(numeric_eigensystem(rho), drho);
            const double via_square = (rho.m * l.m * l.m).trace().real();
            const double via_derivative = (drho * l.m).trace().real();
            CHECK(rel_to(via_square, via_derivative) < 1e-8);
        }
    }
}

TEST_CASE("fidelity-oracle QFI") {
    const ModelParams params = reference_params();

    SUBCASE("identical states at nu = 0") {
        ModelParams pure = params;
        pure.coupling = DirectNu{0.0};
        CHECK(std::abs(qfi_fidelity_oracle(pure, 1e-4 * kRefTemperature)) <
              1e-10);
    }

    SUBCASE("matches the closed route at step 1e-4") {
        CHECK(rel_to(qfi_fidelity_oracle(params, 1e-4), kRefQfi) < 1e-4);
    }

    SUBCASE("second-order convergence under step halving") {
        const double coarse =
            std::abs(qfi_fidelity_oracle(params, 0.05 * kRefTemperature) -
                     kRefQfi);
        const double fine =
            std::abs(qfi_fidelity_oracle(params, 0.025 * kRefTemperature) -
                     kRefQfi);
        CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
    }

    SUBCASE("oversized steps are rejected") {
        CHECK_THROWS_AS(qfi_fidelity_oracle(params, 0.2 * kRefTemperature),
                        StepTooLarge);
        CHECK_THROWS_AS(qfi_fidelity_oracle(params, 0.0), StepTooLarge);
    }
}

TEST_CASE("Uhlmann fidelity") {
    const DensityMatrix4 rho = evolved_state(reference_params());

    SUBCASE("self-fidelity is one") {
        CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("symmetric in its arguments") {
        ModelParams other = reference_params();
        other.kinematics = Temperature{0.9};
        const DensityMatrix4 sigma = evolved_state(other);
        CHECK(uhlmann_fidelity(rho, sigma) ==
              doctest::Approx(uhlmann_fidelity(sigma, rho)).epsilon(1e-12));
    }

    SUBCASE("classical formula on commuting diagonal states") {
        Matrix4c p = Matrix4c::Zero();
        Matrix4c q = Matrix4c::Zero();
        const double pv[4] = {0.4, 0.3, 0.2, 0.1};
        const double qv[4] = {0.1, 0.2, 0.3, 0.4};
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) {
            p(k, k) = pv[k];
            q(k, k) = qv[k];
            sum += std::sqrt(pv[k] * qv[k]);
        }
        CHECK(uhlmann_fidelity(DensityMatrix4{p}, DensityMatrix4{q}) ==
              doctest::Approx(sum * sum).epsilon(1e-13));
    }

    SUBCASE("pure-state overlap") {
        const DensityMatrix4 probe = probe_state(ProbeAngle(kQuarterPi));
        const double overlap = (probe.m * rho.m).trace().real();
        CHECK(uhlmann_fidelity(probe, rho) ==
              doctest::Approx(overlap).epsilon(1e-12));
    }
}

TEST_CASE("route agreement across validity-region draws") {
    std::mt19937_64 rng(0xF15E5EEDULL);
    double worst_sld = 0.0;
    double worst_fid = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams params = draw_validity_params(rng);
        const double closed = qfi_closed(params);
        worst_sld = std::max(worst_sld, rel_to(qfi_sld(params), closed));
        worst_fid = std::max(
            worst_fid,
            rel_to(qfi_fidelity_oracle(params, 1e-4 * params.temperature()),
                   closed));
    }
    CHECK(worst_sld < 1e-8);
    CHECK(worst_fid < 1e-3);
}

TEST_CASE("classical Fisher information") {
    const ModelParams params = reference_params();

    SUBCASE("optimal measurement attains the QFI, finite-difference route") {
        const double cfi =
            classical_fi(params, optimal_povm(params),
                         default_cfi_step(params.temperature()));
        CHECK(rel_to(cfi, kRefQfi) < 1e-6);
    }

    SUBCASE("optimal measurement attains the QFI, analytic route") {
        std::mt19937_64 rng(0xCF1ULL);
        for (int i = 0; i < 50; ++i) {
            const ModelParams draw = draw_validity_params(rng);
            const double cfi =
                classical_fi(draw, optimal_povm(draw),
                             default_cfi_step(draw.temperature()),
                             DerivativeMode::analytic);
            CHECK(rel_to(cfi, qfi_closed(draw)) < 1e-6);
        }
    }

    SUBCASE("the trivial measurement carries no information") {
        Povm trivial;
        trivial.elements.push_back(Matrix4c::Identity());
        // p = 1 identically; only probability rounding survives the
        // finite difference.
        CHECK(classical_fi(params, trivial, 1e-4) < 1e-20);
        CHECK(classical_fi(params, trivial, 1e-4, DerivativeMode::analytic) <
              1e-20);
    }

    SUBCASE("random projective measurements never beat the QFI") {
        std::mt19937_64 rng(0xAB5EEDULL);
        const double qfi = qfi_closed(params);
        for (int i = 0; i < 100; ++i) {
            const Povm povm = random_projective_povm(rng);
            const double cfi = classical_fi(
                params, povm, default_cfi_step(params.temperature()),
                DerivativeMode::analytic);
            CHECK(cfi <= qfi + 1e-9);
        }
    }

    SUBCASE("invalid measurements are rejected") {
        Povm incomplete;
        incomplete.elements.push_back(0.5 * Matrix4c::Identity());
        CHECK_THROWS_AS(classical_fi(params, incomplete, 1e-4), InvalidPovm);

        Povm negative;
        Matrix4c bad = Matrix4c::Identity();
        bad(0, 0) = -0.1;
        negative.elements.push_back(bad);
        negative.elements.push_back(Matrix4c::Identity() - bad);
        CHECK_THROWS_AS(classical_fi(params, negative, 1e-4), InvalidPovm);
    }
}

TEST_CASE("optimal POVM structure") {
    SUBCASE("completeness") {
        std::mt19937_64 rng(0x0BADF00DULL);
        for (int i = 0; i < 50; ++i) {
            const Povm povm = optimal_povm(draw_box_params(rng));
            Matrix4c sum = Matrix4c::Zero();
            for (const Matrix4c& e : povm.elements) sum += e;
            CHECK(max_abs(sum - Matrix4c::Identity()) < 1e-12);
        }
    }

    SUBCASE("theta = pi/6 top projector") {
        ModelParams params = reference_params();
        params.theta = ProbeAngle(kPi / 6.0);
        const Povm povm = optimal_povm(params);
        Vector4c expected = Vector4c::Zero();
        expected(k01) = 0.5;
        expected(k10) = std::sqrt(3.0) / 2.0;
        const double weight =
            (expected.adjoint() * povm.elements[0] * expected)(0).real();
        CHECK(weight == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("theta = pi/4 projects onto the Bell pair and the poles") {
        const Povm povm = optimal_povm(reference_params());
        Vector4c bell_plus = Vector4c::Zero();
        bell_plus(k01) = 1.0 / std::sqrt(2.0);
        bell_plus(k10) = 1.0 / std::sqrt(2.0);
        CHECK((bell_plus.adjoint() * povm.elements[0] * bell_plus)(0).real() ==
              doctest::Approx(1.0).epsilon(1e-14));
        CHECK(povm.elements[1](k00, k00).real() ==
              doctest::Approx(1.0).epsilon(1e-14));
        CHECK(povm.elements[2](k11, k11).real() ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("Cramer-Rao bound") {
    CHECK(cramer_rao(4.0, 1).variance_bound == doctest::Approx(0.25));
    CHECK(cramer_rao(4.0, 100).variance_bound == doctest::Approx(0.0025));
    CHECK(std::isinf(cramer_rao(0.0, 10).variance_bound));
    CHECK_THROWS_AS(cramer_rao(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(cramer_rao(-1.0, 1), std::invalid_argument);
}

TEST_CASE("QFI is invariant under a fixed basis change") {
    // Any temperature-independent unitary relabelling of the basis must
    // leave all routes unchanged.
    std::mt19937_64 rng(0x44D5EEDULL);
    const Povm frame = random_projective_povm(rng); // orthonormal columns
    Matrix4c unitary;
    for (int k = 0; k < 4; ++k) {
        // Recover the basis vector from each rank-1 projector column space.
        Eigen::Index row;
        frame.elements[k].diagonal().real().maxCoeff(&row);
        unitary.col(k) = frame.elements[k].col(row).normalized();
    }

    const ModelParams params = reference_params();
    const DensityMatrix4 rho = evolved_state(params);
    const Matrix4c drho = state_derivative(params);
    const DensityMatrix4 rotated{unitary * rho.m * unitary.adjoint()};
    const Matrix4c rotated_drho = unitary * drho * unitary.adjoint();

    CHECK(std::abs(qfi_from_state(rotated, rotated_drho) -
                   qfi_from_state(rho, drho)) < 1e-10);

    // Fidelity route: conjugating both states leaves F unchanged, hence the
    // oracle value too. (The closed route never sees the basis at all.)
    ModelParams shifted = params;
    shifted.kinematics = Temperature{params.temperature() + 0.05};
    const DensityMatrix4 sigma = evolved_state(shifted);
    const DensityMatrix4 rotated_sigma{unitary * sigma.m * unitary.adjoint()};
    CHECK(std::abs(uhlmann_fidelity(rotated, rotated_sigma) -
                   uhlmann_fidelity(rho, sigma)) < 1e-10);
}

TEST_CASE("fisher report aggregates the three routes") {
    const FisherReport report = fisher_report(reference_params());
    CHECK(report.qfi_closed == doctest::Approx(kRefQfi).epsilon(1e-13));
    CHECK(rel_to(report.qfi_sld, report.qfi_closed) < 1e-10);
    CHECK(rel_to(report.qfi_fidelity, report.qfi_closed) < 1e-4);
    CHECK(report.max_rel_disagreement < 1e-4);
}

TEST_CASE("seeded POVM sampling is reproducible and valid") {
    std::mt19937_64 a(42);
    std::mt19937_64 b(42);
    const Povm first = random_projective_povm(a);
    const Povm second = random_projective_povm(b);
    for (int k = 0; k < 4; ++k)
        CHECK(max_abs(first.elements[k] - second.elements[k]) == 0.0);
    first.validate();

    Matrix4c sum = Matrix4c::Zero();
    for (const Matrix4c& e : first.elements) sum += e;
    CHECK(max_abs(sum - Matrix4c::Identity()) < 1e-13);
}
