#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <vector>

#include "csfb/channels.hpp"

namespace csfb::feedback {

/// Relaying mode of the feedback phase. HD forwards over two orthogonal
/// mini-slots (white effective noise); FD overlaps reception and
/// transmission, leaving residual self-interference in the measurements.
enum class Mode { kHd, kFd };

/// Thresholded feedback vector: x_n = γ_n if γ_n > γ_th, else 0.
struct SparseFeedback {
    Eigen::VectorXd x;          ///< length N
    std::vector<int> support;   ///< indices with x_n > 0, ascending
    double threshold;           ///< γ_th used to build it
};

/// Mini-slot budget for one coherence interval: M measurements, L mini-slots
/// of air time (L = M for FD, L = 2M for HD since each measurement crosses
/// two hops).
struct MeasurementBudget {
    int m;
    int l;
};

/// Everything the receiver sees in one coherence interval.
struct MeasurementBatch {
    Eigen::MatrixXd sensing;     ///< A: M×N
    Eigen::MatrixXd dictionary;  ///< B: M×JN (equals A when J = 1)
    Eigen::VectorXd received;    ///< y_s, length M
    Eigen::MatrixXd noise_cov;   ///< Σ_ẑ: M×M symmetric positive-definite
    Mode mode;
};

/// Feedback threshold γ_th = −γ̄·ln(1 − P_o^{1/N}): the level at which the
/// probability that no user reports equals the scheduling-outage target P_o.
/// Throws std::domain_error unless 0 < P_o < 1 and N >= 1.
double feedback_threshold(double mean_snr, int n_users, double outage_prob);

/// Applies the threshold rule to instantaneous SNRs. An empty support is
/// allowed and signals a scheduling outage downstream.
SparseFeedback build_sparse_vector(const std::vector<double>& snrs, double threshold);

/// Expected number of reporting users S̄ = N(1 − P_o^{1/N}).
double expected_feedback_users(int n_users, double outage_prob);

/// Measurement and air-time budget:
///   FD: M = L = ceil(C·(J·S̄ + S̄·ln(J·N/S̄)))
///   HD: M = ceil(C·S̄·ln(N/S̄)), L = 2M
/// Natural logarithm. Throws std::domain_error on invalid inputs or when the
/// computed M >= N·J (no undersampling left, the compressed protocol is
/// degenerate).
MeasurementBudget measurement_budget(int n_users, double expected_users,
                                     double oversampling, int block_size, Mode mode);

/// M×N sensing matrix with i.i.d. zero-mean Gaussian entries of variance 1/M.
/// Undersampling (M < N·J) is enforced where the budget is computed, not
/// here: FD budgets legitimately exceed N at small N while staying far below
/// the J·N dictionary width.
Eigen::MatrixXd generate_sensing_matrix(int m, int n_users, std::mt19937_64& rng);

/// Block dictionary B: column n of A contributes J columns, the j-th being A's
/// column delayed by j slots (j leading zeros), j = 0..J−1.
Eigen::MatrixXd expand_block_dictionary(const Eigen::MatrixXd& a, int block_size);

/// HD received vector y_s = A·x + z_r + w/f with white relay noise
/// z_r ~ N(0, N0·I) and equalized BS noise w/f ~ N(0, (N0/|f|²)·I).
Eigen::VectorXd synthesize_hd(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                              double first_hop_gain, const channels::NetworkParams& params,
                              std::mt19937_64& rng);

/// FD received vector from the exact self-interference recursion
///   y_r(m) = a_{r,m}·x + ρ·y_r(m−1) + z_r(m),   y_r(0) = 0,
/// then per-slot BS equalization y_s(m) = y_r(m) + w(m)/f. No truncation is
/// applied here; the receiver's truncated model lives in the dictionary and
/// noise covariance, so model mismatch is part of the simulation.
Eigen::VectorXd synthesize_fd(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                              double first_hop_gain, const channels::NetworkParams& params,
                              std::mt19937_64& rng);

/// Effective-noise covariance of the receiver model.
///   HD: α·I with α = N0(1 + E[1/|f|²]).
///   FD: N0·T·Tᵀ + N0·E[1/|f|²]·I where T[m, m−k] = ρ^k for k = 0..⌈J/2⌉−1,
///       i.e. banded with bandwidth ⌈J/2⌉−1. For J = 3 this is the symmetric
///       tridiagonal matrix with first diagonal entry α₁ = N0(1+E[1/|f|²]),
///       remaining diagonal α₂ = N0(1+ρ²+E[1/|f|²]), off-diagonal α₃ = ρN0.
/// E[1/|f|²] = 1/((d−1)θ) by default (requires d > 1, else std::domain_error);
/// pass `realized_first_hop_gain` to condition on the current |f|² instead.
Eigen::MatrixXd noise_covariance(const channels::NetworkParams& params, Mode mode, int m,
                                 std::optional<double> realized_first_hop_gain = std::nullopt);

}  // namespace csfb::feedback
