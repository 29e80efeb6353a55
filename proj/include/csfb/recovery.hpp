#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "csfb/feedback.hpp"

namespace csfb::recovery {

/// Stopping rule for the greedy recovery loop. `tol` is relative to the
/// whitened measurement norm; iteration also stops at a support fixed point
/// (an unchanged support reproduces the same residual forever).
struct Halting {
    double tol = 1e-9;
    int max_iterations = 50;
};

/// Raw output of the greedy support search.
struct CosampResult {
    std::vector<int> support;  ///< recovered block indices, ascending
    int iterations = 0;
    double residual_norm = 0.0;  ///< final whitened residual / whitened ‖y‖
};

/// Support plus refined per-user SNR estimates and the error-variance model
/// that applies to them.
struct RecoveryResult {
    std::vector<int> support;            ///< user indices, ascending
    std::map<int, double> snr_estimates; ///< keyed exactly by support
    double error_variance = 0.0;         ///< σ_e² of the mode's estimator law
    int iterations = 0;
    double residual_norm = 0.0;
};

/// How a scalar SNR is read out of a recovered length-J coefficient block
/// [v₀, v₁, …] ≈ [γ, ργ, ρ²γ, …].
enum class ExtractMode {
    kFirstEntry,  ///< take v₀ (no knowledge of ρ assumed)
    kSiWeighted,  ///< Σ_j ρ^j v_j / Σ_j ρ^{2j} (requires ρ known at the BS)
};

/// Model-based (block) CoSaMP on a dictionary whose columns are grouped into
/// contiguous length-`block_size` blocks. The measurement and dictionary are
/// whitened by the inverse Cholesky factor of `noise_cov` so the greedy proxy
/// agrees with the BLUE metric under correlated noise. Per iteration: rank
/// blocks by the ℓ2 energy of the proxy, keep the top 2·K_t, merge with the
/// current support, least-squares refit on the merged blocks, prune to the
/// K_t highest-energy coefficient blocks, update the residual.
/// Ties rank lower block index first, so reruns are deterministic.
/// Throws std::invalid_argument on inconsistent dimensions or if
/// M < 2·K_t·block_size, and std::runtime_error if a merged subproblem is
/// numerically rank-deficient. Non-convergence is NOT an error; it is visible
/// through residual_norm.
CosampResult block_cosamp(const Eigen::MatrixXd& dictionary, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& noise_cov, int block_size,
                          int target_sparsity, Halting halting = {});

/// Ordinary least squares x̂ = (AᵀA)⁻¹Aᵀy on the support submatrix.
/// Throws std::runtime_error on rank deficiency, std::invalid_argument if the
/// system is underdetermined (cols >= rows).
Eigen::VectorXd ls_estimate(const Eigen::MatrixXd& a_sub, const Eigen::VectorXd& y);

/// Best linear unbiased estimate v̂ = (BᵀΣ⁻¹B)⁻¹BᵀΣ⁻¹y under noise covariance
/// Σ. Equivalent to ls_estimate when Σ ∝ I.
Eigen::VectorXd blue_estimate(const Eigen::MatrixXd& b_sub, const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& noise_cov);

/// Asymptotic LS error variance σ_e² = M/(M−S−1)·noise_var.
/// Throws std::domain_error if M <= S+1.
double ls_error_variance(int m, int support_size, double noise_var);

/// Asymptotic BLUE error variance σ_e² = M/tr(Σ⁻¹). Guards the asymptotic
/// law's hypothesis (bounded ‖Σ⁻¹‖) with a Gershgorin bound on the smallest
/// eigenvalue and throws std::domain_error when that bound is not positive.
double blue_error_variance(int m, const Eigen::MatrixXd& noise_cov);

/// Reads per-user SNR estimates out of the stacked coefficient vector
/// returned for `block_support` (one length-`block_size` block per entry).
std::map<int, double> extract_user_snrs(const Eigen::VectorXd& coeffs,
                                        const std::vector<int>& block_support,
                                        int block_size,
                                        ExtractMode mode = ExtractMode::kFirstEntry,
                                        double rho = 0.0);

/// End-to-end recovery for one measurement batch: support search, LS (HD) or
/// BLUE (FD) refinement, SNR extraction, and the matching error-variance law.
RecoveryResult recover_feedback(const feedback::MeasurementBatch& batch, int block_size,
                                int target_sparsity, Halting halting = {},
                                ExtractMode mode = ExtractMode::kFirstEntry,
                                double rho = 0.0);

}  // namespace csfb::recovery
