#pragma once

#include "csfb/channels.hpp"
#include "csfb/feedback.hpp"

namespace csfb::analytics {

/// Parameters feeding every closed-form expression: the equivalent SNR
/// γ_eq = min(first-hop SINR, strongest reported user's SNR) is the min of a
/// scaled Gamma variable (shape d, scale θ/λ) and the max of N exponentials
/// with mean γ̄.
struct AnalyticInputs {
    int n_users;
    double mean_user_snr;      ///< γ̄
    double nakagami_d;         ///< d > 1
    double nakagami_theta;     ///< θ
    double sinr_scale;         ///< λ = (Pr·ρ² + N0)/Ps
    double outage_prob;        ///< P_o
    double oversampling;       ///< C
    int block_size;            ///< J
    double minislot_fraction;  ///< τ = T_ms/T_c

    static AnalyticInputs from_params(const channels::NetworkParams& params, double c,
                                      double p_o, double tau);
    /// Throws std::invalid_argument when d <= 1, λ <= 0, or τ outside (0,1).
    void validate() const;
};

/// Decomposition of the mean equivalent SNR, with the evaluation route taken.
/// `via_quadrature` is true when the alternating binomial sums were too
/// ill-conditioned at double precision and the density was integrated
/// numerically instead.
struct MeanSnrParts {
    double mu1;  ///< contribution of the max-user density term
    double mu2;  ///< contribution of the first-hop density term
    bool via_quadrature;
};

/// CDF of γ_eq:
///   F(x) = 1 − [1 − P(d, λx/θ)]·[1 − (1 − e^{−x/γ̄})^N]
/// where P is the regularized lower incomplete gamma.
double equivalent_snr_cdf(double x, const AnalyticInputs& inputs);

/// Density of γ_eq, the sum of
///   G₁(x) = (N/γ̄)·e^{−x/γ̄}(1−e^{−x/γ̄})^{N−1}·Q(d, λx/θ)         and
///   G₂(x) = [1 − (1−e^{−x/γ̄})^N]·Gamma-pdf(x; shape d, scale θ/λ).
double equivalent_snr_pdf(double x, const AnalyticInputs& inputs);

/// Mean equivalent SNR γ̄_eq = μ₁ + μ₂.
///   μ₁ = N·(λ/θ)^d·d(d+1)/(2γ̄) · Σ_{n=0}^{N−1} (−1)^n C(N−1,n)
///        (λ/θ + (n+1)/γ̄)^{−d−2} ₂F₁(1, d+2; 3; β/(λ/θ+β)),  β = (n+1)/γ̄
///   μ₂ = d·(λ/θ)^d · Σ_{n=1}^{N} (−1)^{n+1} C(N,n) (λ/θ + n/γ̄)^{−d−1}
/// The alternating sums are evaluated with compensated summation under a
/// cancellation monitor; when the estimated double-precision error exceeds
/// 1e-7 (or a term overflows / the hypergeometric series fails), both pieces
/// fall back to adaptive quadrature of x·G₁ and x·G₂.
MeanSnrParts mean_equivalent_snr_parts(const AnalyticInputs& inputs);
double mean_equivalent_snr(const AnalyticInputs& inputs);

/// Jensen upper bound on the scheduled rate,
///   log₂(1+γ̄_eq−Δ)·(1−P_o)·(1−Q(Δ/σ_e)),
/// reported in bits/s/Hz. Throws std::domain_error if Δ >= γ̄_eq.
double rate_upper_bound(double mean_eq_snr, double delta, double sigma_e,
                        double outage_prob);

/// Feedback air time (mini-slots) of the compressed protocol at the stated
/// mode, via the measurement budget with S̄ = expected_feedback_users(N, P_o).
int feedback_load(int n_users, double outage_prob, double oversampling, int block_size,
                  feedback::Mode mode);

/// Net throughput rate·max(0, 1 − L·τ): the feedback air time is lost to the
/// data phase, and the product clamps at zero once feedback fills the
/// coherence interval.
double throughput(double rate, double load, double tau);

}  // namespace csfb::analytics
