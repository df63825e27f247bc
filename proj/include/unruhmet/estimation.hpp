#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "unruhmet/model.hpp"
#include "unruhmet/spectral.hpp"

namespace unruhmet {

/// Generalized measurement: positive elements summing to the identity.
struct Povm {
    std::vector<Matrix4c> elements;

    /// Throws InvalidPovm if an element fails positivity (1e-10) or the
    /// elements do not sum to the identity (1e-10).
    void validate() const;
};

/// Quantum Fisher information from each computation route, plus the largest
/// pairwise disagreement relative to max(qfi_closed, 1e-12).
struct FisherReport {
    double qfi_closed;
    double qfi_sld;
    double qfi_fidelity;
    double max_rel_disagreement;
};

struct CramerRaoBound {
    std::int64_t n_trials;
    double variance_bound;
};

enum class DerivativeMode {
    finite_difference, // central difference of outcome probabilities
    analytic           // exact Tr[Pi * drho/dT]
};

/// QFI from the spectrum route: sum of (dp/dT)^2 / p over the analytically
/// nonzero eigenvalues. Exactly zero at nu = 0.
double qfi_closed(const ModelParams& params);

/// QFI as Tr[rho L^2] with L built from the numeric eigensystem and the
/// analytic state derivative.
double qfi_sld(const ModelParams& params);

/// QFI for explicit state and derivative matrices (the Tr[rho L^2] route).
double qfi_from_state(const DensityMatrix4& rho, const Matrix4c& drho);

/// Brute-force QFI estimate from the Bures expansion,
/// 8 (1 - sqrt(F(rho(T - step/2), rho(T + step/2)))) / step^2,
/// evaluated symmetrically about T so the estimate converges at second
/// order in the step. Throws StepTooLarge if step > 0.1 * T.
double qfi_fidelity_oracle(const ModelParams& params, double step);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma);

/// Default derivative step used by the finite-difference classical FI.
double default_cfi_step(double temperature);

/// Classical Fisher information of the outcome distribution p_k = Tr[Pi_k
/// rho_T], summed over outcomes with p_k above the support cutoff. The
/// probability derivative uses a central finite difference of the given
/// step, or the analytic state derivative in analytic mode.
double classical_fi(const ModelParams& params, const Povm& povm, double step,
                    DerivativeMode mode = DerivativeMode::finite_difference);

/// Rank-1 projectors onto the model eigenvectors; the measurement whose
/// classical FI attains the QFI.
Povm optimal_povm(const ModelParams& params);

/// Variance bound 1/(n * qfi); +infinity when qfi = 0 (an uninformative
/// state is a legitimate sweep point, not an error).
CramerRaoBound cramer_rao(double qfi, std::int64_t n_trials);

/// Evaluates all three QFI routes at once.
FisherReport fisher_report(const ModelParams& params, double fidelity_step = 0.0);

/// Haar-style random rank-1 projective measurement from a QR-orthonormalised
/// complex Gaussian matrix. Deterministic for a given engine state; the
/// engine is the only state involved, so each worker owns its own.
Povm random_projective_povm(std::mt19937_64& rng);

} // namespace unruhmet
